use proptest::prelude::*;

use rigid_fingerprint::engine::{sp_map, Sign};
use rigid_fingerprint::partition::{is_theory_member, parse_partition, OperatorPair, Partition, Theory};
use rigid_fingerprint::tagged::{combine, CombineMode, TieBreak};
use rigid_fingerprint::{fingerprint, FingerprintOptions};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..9, 0..12).prop_map(Partition::from_unsorted)
}

fn theory() -> impl Strategy<Value = Theory> {
    prop::sample::select(Theory::ALL.to_vec())
}

/// A member of `t`: fix even (B/D) or odd (C) values to even multiplicity, then the total parity.
fn member_of(t: Theory, p: &Partition) -> Partition {
    let restricted = if t == Theory::C { 1 } else { 0 };
    let mut parts: Vec<u32> = Vec::new();
    for (v, m) in p.groups() {
        let m = if v % 2 == restricted && m % 2 == 1 { m + 1 } else { m };
        parts.extend(std::iter::repeat_n(v, m));
    }
    let total: u32 = parts.iter().sum();
    let want_odd = t == Theory::B;
    if (total % 2 == 1) != want_odd {
        // An extra 1 fixes the parity in B/D; in C the total is already even.
        parts.push(1);
    }
    Partition::from_unsorted(parts)
}

proptest! {
    #[test]
    fn display_parse_round_trip(p in partition()) {
        prop_assert_eq!(parse_partition(&p.to_string()).unwrap(), p.clone());
        let listed = p.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_partition(&listed).unwrap(), p);
    }

    #[test]
    fn transpose_is_an_involution(p in partition()) {
        prop_assert_eq!(p.transpose().total(), p.total());
        prop_assert_eq!(p.transpose().transpose(), p);
    }

    #[test]
    fn sp_is_local_and_parity_preserving(p in partition()) {
        let t = sp_map(p.parts());
        prop_assert_eq!(t.mu.len(), p.len());
        for i in 0..t.len() {
            let (l, m) = (t.lambda[i], t.mu[i]);
            prop_assert!(l.abs_diff(m) <= 1);
            if l != m {
                prop_assert!(l % 2 == 1 && m % 2 == 0);
                prop_assert_eq!(m > l, t.sign[i] == Sign::Plus);
            }
            prop_assert!(matches!(t.partial_sum_delta[i], -1 | 0));
        }
        for (v, n) in t.mu_partition().groups() {
            prop_assert!(v % 2 == 0 || n % 2 == 0, "odd value {} appears {} times", v, n);
        }
    }

    #[test]
    fn combine_preserves_boxes(t in theory(), a in partition(), b in partition()) {
        let (sa, sb) = t.pair_sides();
        let q = OperatorPair::new(member_of(sa, &a), member_of(sb, &b), t).unwrap();
        for mode in CombineMode::ALL {
            for tb in TieBreak::ALL {
                let tp = combine(&q, mode, tb);
                prop_assert_eq!(tp.total(), q.total());
                prop_assert!(tp.values().windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn successful_extractions_are_rank_consistent(t in theory(), a in partition(), b in partition()) {
        let (sa, sb) = t.pair_sides();
        let x = member_of(sa, &a);
        let y = member_of(sb, &b);
        prop_assume!(is_theory_member(&x, sa) && is_theory_member(&y, sb));
        let q = OperatorPair::new(x, y, t).unwrap();
        for mode in CombineMode::ALL {
            let r = fingerprint(&q, &FingerprintOptions::default_for(t).with_mode(mode));
            if let Ok(w) = &r.weyl {
                prop_assert_eq!(w.size(), q.rank());
            }
        }
    }
}

#[test]
fn every_catalog_record_round_trips() {
    use rigid_fingerprint::catalog::CatalogRecord;
    use rigid_fingerprint::partition::enumerate_rigid_pairs;
    for t in Theory::ALL {
        for n in 0..=5 {
            for q in enumerate_rigid_pairs(t, n) {
                for mode in CombineMode::ALL {
                    let r = CatalogRecord::compute(&q, &FingerprintOptions::default_for(t).with_mode(mode));
                    let line = r.to_json_line();
                    assert!(!line.contains('\n'));
                    assert_eq!(CatalogRecord::from_json_line(&line).unwrap(), r);
                }
            }
        }
    }
}
