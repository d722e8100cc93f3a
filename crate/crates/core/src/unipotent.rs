//! Unipotent classes: parity split, the collapse maps `X_S` / `Y_S` and their inverses, the
//! factored form of `mu`, and closed-form fingerprints.

use serde::{Deserialize, Serialize};

use crate::engine::{sp_map, WeylPair};
use crate::error::Error;
use crate::partition::{is_rigid, is_theory_member, Partition, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParitySplit {
    pub odd_part: Partition,
    pub even_part: Partition,
}

pub fn split_parity(p: &Partition) -> ParitySplit {
    let (odd, even): (Vec<u32>, Vec<u32>) = p.parts().iter().partition(|&&v| v % 2 == 1);
    ParitySplit { odd_part: Partition::from_unsorted(odd), even_part: Partition::from_unsorted(even) }
}

fn check_all_odd(sigma: &Partition, total_odd: bool) -> Result<(), Error> {
    if let Some(v) = sigma.parts().iter().find(|&&v| v % 2 == 0) {
        return Err(Error::Domain(format!("{sigma} has even part {v}")));
    }
    if (sigma.total() % 2 == 1) != total_odd {
        let want = if total_odd { "odd" } else { "even" };
        return Err(Error::Domain(format!("{sigma} must have {want} total")));
    }
    Ok(())
}

/// The C-collapse on all-odd partitions of odd size: one box is lost.
pub fn xs_map(sigma: &Partition) -> Result<Partition, Error> {
    check_all_odd(sigma, true)?;
    Ok(sp_map(sigma.parts()).mu_partition())
}

/// The D-collapse on all-odd partitions of even size: no box is lost.
pub fn ys_map(sigma: &Partition) -> Result<Partition, Error> {
    check_all_odd(sigma, false)?;
    Ok(sp_map(sigma.parts()).mu_partition())
}

/// Inverse of [`xs_map`], found by expanding each even part to a neighbouring odd value.
pub fn xs_inverse(nu: &Partition) -> Result<Partition, Error> {
    expand(nu, true)
}

/// Inverse of [`ys_map`].
pub fn ys_inverse(nu: &Partition) -> Result<Partition, Error> {
    expand(nu, false)
}

// Sp moves each odd part by at most one and turns changed parts even, so any preimage keeps the
// odd parts of `nu`, replaces each even part `e` by `e - 1` or `e + 1`, and (for odd size)
// may carry one extra trailing 1 that Sp deleted.
fn expand(nu: &Partition, odd_total: bool) -> Result<Partition, Error> {
    let forward = if odd_total { xs_map } else { ys_map };
    let mut found: Vec<Partition> = Vec::new();
    let tails: &[bool] = if odd_total { &[false, true] } else { &[false] };
    for &extra_one in tails {
        let target = nu.total() + u32::from(odd_total);
        let mut candidate = Vec::with_capacity(nu.len() + 1);
        search(nu.parts(), 0, extra_one, target, &mut candidate, &mut |c| {
            let sigma = Partition::from_unsorted(c.to_vec());
            if forward(&sigma).ok().as_ref() == Some(nu) && !found.contains(&sigma) {
                found.push(sigma);
            }
        });
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::Domain(format!("{nu} has no preimage"))),
        k => Err(Error::Domain(format!("{nu} has {k} preimages"))),
    }
}

fn search(nu: &[u32], i: usize, extra_one: bool, target: u32, acc: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if i == nu.len() {
        if extra_one {
            acc.push(1);
        }
        let ok = acc.iter().sum::<u32>() == target && acc.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            emit(acc);
        }
        if extra_one {
            acc.pop();
        }
        return;
    }
    let v = nu[i];
    let options: &[u32] = if v % 2 == 1 { &[v, v] } else { &[v + 1, v - 1] };
    let distinct = if v % 2 == 1 { 1 } else { 2 };
    for &c in &options[..distinct] {
        if c == 0 || acc.last().is_some_and(|&prev| prev < c) {
            continue;
        }
        acc.push(c);
        search(nu, i + 1, extra_one, target, acc, emit);
        acc.pop();
    }
}

/// `mu` assembled from the collapse of the odd parts plus the untouched even parts.
///
/// B uses `X_S`, D uses `Y_S`, and C leaves the partition alone.
pub fn unipotent_mu_factored(p: &Partition, t: Theory) -> Result<Partition, Error> {
    if !is_theory_member(p, t) {
        return Err(Error::NotInTheory { partition: p.to_string(), theory: t });
    }
    let split = split_parity(p);
    let collapsed = match t {
        Theory::B => xs_map(&split.odd_part)?,
        Theory::D => ys_map(&split.odd_part)?,
        Theory::C => return Ok(p.clone()),
    };
    Ok(collapsed.union(&split.even_part))
}

/// `[prod_i i^(n_i/2); ()]` for a rigid C partition whose multiplicities are all even.
pub fn closed_form_fingerprint_c(p: &Partition) -> Result<WeylPair, Error> {
    if !is_theory_member(p, Theory::C) || !is_rigid(p, Theory::C) {
        return Err(Error::Domain(format!("{p} is not a rigid C partition")));
    }
    let mut alpha = Vec::new();
    for (value, mult) in p.groups() {
        if mult % 2 == 1 {
            return Err(Error::Domain(format!("exponent n_{value}/2 = {mult}/2 is not an integer")));
        }
        alpha.extend(std::iter::repeat_n(value, mult / 2));
    }
    Ok(WeylPair { alpha: Partition::from_unsorted(alpha), beta: Partition::empty(), rank: p.total() / 2 })
}

/// Fingerprint of a rigid B or D partition assembled group by group from the transpose.
///
/// With `c_r` the length of transpose row `r` and `n_r = c_r - c_{r+1}`, values pair up as
/// `(i, i-1)` for odd `i >= 3`; the value 1 stands alone. A pair is odd or even with the
/// parity of `c_i`, and the pair above it matters only through `c_{i+1}`:
///
/// * odd pair: `alpha += i^((n_i - 1)/2)` if `c_{i+1}` is even, else `i^((n_i - 2)/2)`;
///   `beta += ((i-1)/2)^(n_{i-1} + 2)`.
/// * even pair: `alpha += i^floor(n_i/2) (i-1)^(n_{i-1}/2)`.
/// * value 1, B: `alpha += 1^((n_1 - 1)/2)` if `c_2` is even, else `1^((n_1 - 2)/2)`.
/// * value 1, D: `alpha += 1^floor(n_1/2)`.
pub fn closed_form_fingerprint_bd(p: &Partition, t: Theory) -> Result<WeylPair, Error> {
    if t == Theory::C || !is_theory_member(p, t) || !is_rigid(p, t) {
        return Err(Error::Domain(format!("{p} is not a rigid {t} partition")));
    }
    let rows = p.transpose();
    let c = |r: u32| -> i64 {
        if r == 0 {
            return 0;
        }
        rows.parts().get(r as usize - 1).map_or(0, |&x| i64::from(x))
    };
    let n = |r: u32| c(r) - c(r + 1);
    let mut alpha: Vec<u32> = Vec::new();
    let mut beta: Vec<u32> = Vec::new();
    let push = |out: &mut Vec<u32>, value: u32, count: i64| -> Result<(), Error> {
        if count < 0 {
            return Err(Error::Domain(format!("negative exponent for {value} in {p}")));
        }
        out.extend(std::iter::repeat_n(value, count as usize));
        Ok(())
    };

    let mut i = 3;
    while i <= p.largest() + 1 {
        let above_odd = c(i + 1) % 2 == 1;
        if c(i) % 2 == 1 {
            let kept = if above_odd { n(i) - 2 } else { n(i) - 1 };
            push(&mut alpha, i, kept / 2)?;
            push(&mut beta, (i - 1) / 2, n(i - 1) + 2)?;
        } else {
            push(&mut alpha, i, n(i) / 2)?;
            push(&mut alpha, i - 1, n(i - 1) / 2)?;
        }
        i += 2;
    }

    let ones = match t {
        Theory::B if c(2) % 2 == 1 => (n(1) - 2) / 2,
        Theory::B => (n(1) - 1) / 2,
        _ => n(1) / 2,
    };
    if p.largest() >= 1 {
        push(&mut alpha, 1, ones)?;
    }
    Ok(WeylPair {
        alpha: Partition::from_unsorted(alpha),
        beta: Partition::from_unsorted(beta),
        rank: (p.total() - t.theta()) / 2,
    })
}
