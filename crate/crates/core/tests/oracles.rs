//! A deliberately naive reference implementation written straight from the definitions,
//! cross-checked against the library, plus frozen hand-derived values.

use rigid_fingerprint::engine::{sp_map, ConditionSet, IiiVariant};
use rigid_fingerprint::partition::{
    enumerate_rigid, enumerate_rigid_pairs, parse_partition, OperatorPair, Partition, Theory,
};
use rigid_fingerprint::tagged::{CombineMode, TieBreak};
use rigid_fingerprint::{fingerprint, FingerprintOptions};

mod reference {
    use std::collections::BTreeMap;

    pub fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - k, k) {
                rest.insert(0, k);
                out.push(rest);
            }
        }
        out
    }

    fn mult(p: &[u32], v: u32) -> usize {
        p.iter().filter(|&&x| x == v).count()
    }

    pub fn member(p: &[u32], t: char) -> bool {
        let s: u32 = p.iter().sum();
        let (total_odd, restricted_parity) = match t {
            'B' => (true, 0),
            'D' => (false, 0),
            _ => (false, 1),
        };
        (s % 2 == 1) == total_odd && p.iter().all(|&v| v % 2 != restricted_parity || mult(p, v).is_multiple_of(2))
    }

    pub fn rigid(p: &[u32], t: char) -> bool {
        if t == 'D' && p == [1, 1] {
            return true;
        }
        let mut q = p.to_vec();
        q.push(0);
        if q.windows(2).any(|w| w[0] - w[1] > 1) {
            return false;
        }
        let doubled_parity = if t == 'C' { 0 } else { 1 };
        !p.iter().any(|&v| mult(p, v) == 2 && v % 2 == doubled_parity)
    }

    pub fn rigid_of(t: char, rank: u32) -> Vec<Vec<u32>> {
        let n = if t == 'B' { 2 * rank + 1 } else { 2 * rank };
        let mut v: Vec<_> = partitions(n, n).into_iter().filter(|p| member(p, t) && rigid(p, t)).collect();
        v.sort();
        v
    }

    pub fn sp(vals: &[u32]) -> Vec<u32> {
        let mut s = 0u32;
        let mut mu = Vec::new();
        for i in 0..vals.len() {
            s += vals[i];
            let v = vals[i];
            let neighbour = if s.is_multiple_of(2) {
                if i == 0 {
                    None
                } else {
                    Some(vals[i - 1])
                }
            } else {
                Some(vals.get(i + 1).copied().unwrap_or(0))
            };
            if v % 2 == 1 && neighbour != Some(v) {
                mu.push(if s.is_multiple_of(2) { v + 1 } else { v - 1 });
            } else {
                mu.push(v);
            }
        }
        mu
    }

    /// `Some((alpha, beta))`, or `None` when some value cannot be paired.
    pub fn fingerprint(
        x: &[u32],
        y: &[u32],
        sum_mode: bool,
        dprime_first: bool,
        variant: &str,
        use_ii: bool,
    ) -> Option<(Vec<u32>, Vec<u32>)> {
        // (value, lambda'-datum) per row.
        let rows: Vec<(u32, Option<u32>)> = if sum_mode {
            let l = x.len().max(y.len());
            (0..l)
                .map(|i| {
                    let a = x.get(i).copied().unwrap_or(0);
                    (a + y.get(i).copied().unwrap_or(0), Some(a))
                })
                .collect()
        } else {
            let mut r: Vec<(u32, Option<u32>, u8)> = x.iter().map(|&v| (v, Some(v), 0)).collect();
            r.extend(y.iter().map(|&v| (v, None, 1)));
            r.sort_by_key(|&(v, _, o)| (std::cmp::Reverse(v), if dprime_first { 1 - o } else { o }));
            r.into_iter().map(|(v, d, _)| (v, d)).collect()
        };
        let vals: Vec<u32> = rows.iter().map(|r| r.0).collect();
        let mu = sp(&vals);
        let mut tau: BTreeMap<u32, i8> = BTreeMap::new();
        let mut delta = 0i64;
        for i in 0..vals.len() {
            delta += i64::from(mu[i]) - i64::from(vals[i]);
            let m = mu[i];
            if m == 0 || m % 2 == 1 {
                continue;
            }
            let iii = match (variant, rows[i].1) {
                ("so", Some(d)) => d % 2 == 1,
                ("sp", Some(d)) => d % 2 == 0,
                _ => false,
            };
            let hit = vals[i] != m || (use_ii && delta != 0) || iii;
            let e = tau.entry(m).or_insert(1);
            if hit {
                *e = -1;
            }
        }
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        let mut values: Vec<u32> = mu.iter().copied().filter(|&m| m > 0).collect();
        values.sort_unstable_by(|a, b| b.cmp(a));
        values.dedup();
        for v in values {
            let k = mult(&mu, v);
            if v % 2 == 0 && tau[&v] == -1 {
                beta.extend(std::iter::repeat_n(v / 2, k));
            } else if k % 2 == 1 {
                return None;
            } else {
                alpha.extend(std::iter::repeat_n(v, k / 2));
            }
        }
        beta.sort_unstable_by(|a, b| b.cmp(a));
        Some((alpha, beta))
    }
}

fn part(s: &str) -> Partition {
    parse_partition(s).unwrap()
}

fn letter(t: Theory) -> char {
    t.to_string().chars().next().unwrap()
}

#[test]
fn enumeration_matches_reference() {
    for t in Theory::ALL {
        for n in 0..=9 {
            let ours: Vec<Vec<u32>> = enumerate_rigid(t, n).into_iter().map(Partition::into_parts).collect();
            assert_eq!(ours, reference::rigid_of(letter(t), n), "{t} rank {n}");
        }
    }
}

#[test]
fn sp_matches_reference() {
    for n in 1..=18 {
        for p in reference::partitions(n, n) {
            assert_eq!(sp_map(&p).mu, reference::sp(&p), "{p:?}");
        }
    }
}

#[test]
fn fingerprints_match_reference() {
    for t in Theory::ALL {
        for n in 0..=7 {
            for q in enumerate_rigid_pairs(t, n) {
                for mode in CombineMode::ALL {
                    for tb in TieBreak::ALL {
                        for variant in IiiVariant::ALL {
                            for use_ii in [true, false] {
                                let conditions: ConditionSet =
                                    if use_ii { "i,ii,iii" } else { "i,iii" }.parse().unwrap();
                                let opts = FingerprintOptions::default_for(t)
                                    .with_mode(mode)
                                    .with_tie_break(tb)
                                    .with_variant(variant)
                                    .with_conditions(conditions);
                                let ours = fingerprint(&q, &opts)
                                    .weyl
                                    .ok()
                                    .map(|w| (w.alpha.into_parts(), w.beta.into_parts()));
                                let theirs = reference::fingerprint(
                                    q.lambda_prime.parts(),
                                    q.lambda_dprime.parts(),
                                    mode == CombineMode::Componentwise,
                                    tb == TieBreak::DPrime,
                                    &variant.to_string(),
                                    use_ii,
                                );
                                assert_eq!(ours, theirs, "{q} {mode} {tb} {variant} ii={use_ii}");
                            }
                        }
                    }
                }
            }
        }
    }
}

fn weyl(a: &str, b: &str, t: Theory, opts: FingerprintOptions) -> Option<(Partition, Partition)> {
    let q = OperatorPair::new(part(a), part(b), t).unwrap();
    fingerprint(&q, &opts).weyl.ok().map(|w| (w.alpha, w.beta))
}

#[test]
fn frozen_fingerprints() {
    let b = FingerprintOptions::default_for(Theory::B);
    let c = FingerprintOptions::default_for(Theory::C);
    let frozen = [
        ("2,2,1", "1,1", Theory::B, b, "2,1", ""),
        ("1,1,1", "1,1", Theory::B, b, "1,1", ""),
        ("2,1,1", "1,1", Theory::C, c, "1,1", "1"),
        ("3,2,2,1,1,1,1", "", Theory::B, b, "1", "1,1,1,1"),
        ("2,2,2,2,1", "", Theory::B, b, "2,2", ""),
        ("", "2^4 1^2", Theory::C, c.with_variant(IiiVariant::Vacuous), "2,2,1", ""),
        ("2,1,1", "1,1", Theory::C, c.with_mode(CombineMode::Componentwise), "", "1,1,1"),
        ("1,1,1", "", Theory::B, b, "1", ""),
        ("1", "1,1", Theory::B, b, "1", ""),
    ];
    for (x, y, t, opts, a, be) in frozen {
        assert_eq!(weyl(x, y, t, opts), Some((part(a), part(be))), "({x}; {y}) in {t}");
    }
    assert_eq!(weyl("2,1,1", "1,1", Theory::C, c.with_variant(IiiVariant::Vacuous)), None);
}

#[test]
fn frozen_sp_images() {
    assert_eq!(sp_map(&[3, 2, 2, 1, 1, 1, 1]).mu, vec![2, 2, 2, 2, 1, 1, 0]);
    assert_eq!(sp_map(&[3, 3, 3, 2, 2, 1]).mu, vec![3, 3, 2, 2, 2, 2]);
    assert_eq!(sp_map(&[1]).mu, vec![0]);
}
