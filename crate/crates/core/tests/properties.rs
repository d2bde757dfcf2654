mod common;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sftgroup::matrix::{mat_mul, trace_of_power, IntMatrix, RectMatrix};
use sftgroup::poly::{char_poly_reciprocal, poly_lcm};
use sftgroup::quotient::{
    brute_orbit_counts, burnside_counts, classify_quotient, quotient_period_counts, stabilizer_scan, Verdict,
    DEFAULT_CAP,
};
use sftgroup::reduce::{build_eta, left_reduce, right_reduce, transpose_duality_check};
use sftgroup::sft::{enumerate_cycles, higher_block, trim_essential};
use sftgroup::snf::bowen_franks;
use sftgroup::sse::{
    amalgamation_code, in_split, induced_conjugacy, out_split, theorem38_square, transport_splits, Direction,
    GroupPairing,
};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u32..=2, n), n))
}

fn zero_one_matrix() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u32..=1, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cycle_counts_are_traces(rows in small_matrix()) {
        let p = trim_essential(&IntMatrix::new(rows).unwrap()).unwrap();
        for n in 1..=5u64 {
            let c = enumerate_cycles(&p, n as usize, DEFAULT_CAP).unwrap().len();
            prop_assert_eq!(BigInt::from(c), trace_of_power(p.matrix(), n));
        }
    }

    #[test]
    fn trimming_is_idempotent(rows in small_matrix()) {
        let once = trim_essential(&IntMatrix::new(rows).unwrap()).unwrap();
        let twice = trim_essential(once.matrix()).unwrap();
        prop_assert!(once.matrix().same_entries(twice.matrix()));
    }

    #[test]
    fn zeta_polynomial_annihilates_traces(rows in small_matrix()) {
        let a = IntMatrix::new(rows).unwrap();
        let p = char_poly_reciprocal(&a);
        let traces: Vec<BigInt> = (1..=(a.dim() as u64 + 6)).map(|n| trace_of_power(&a, n)).collect();
        prop_assert!(p.recurrence_residuals(&traces).iter().all(|r| r.is_zero()));
    }

    #[test]
    fn bowen_franks_order_is_determinant(rows in small_matrix()) {
        let a = IntMatrix::new(rows).unwrap();
        let bf = bowen_franks(&a);
        prop_assert!(bf.is_valid());
        // det(I - A) is the zeta polynomial at t = 1.
        let det: BigInt = char_poly_reciprocal(&a).coefficients().iter().sum();
        if det.is_zero() {
            prop_assert!(bf.free_rank > 0);
        } else {
            prop_assert_eq!(bf.free_rank, 0);
            prop_assert_eq!(bf.torsion_order(), det.abs());
        }
    }

    #[test]
    fn higher_blocks_keep_periodic_counts(rows in zero_one_matrix()) {
        let p = trim_essential(&IntMatrix::new(rows).unwrap()).unwrap();
        for k in 2..=3 {
            let (hb, _) = higher_block(&p, k).unwrap();
            for n in 1..=5 {
                prop_assert_eq!(trace_of_power(hb.matrix(), n), trace_of_power(p.matrix(), n));
            }
        }
    }

    #[test]
    fn lcm_is_a_common_multiple(a in small_matrix(), b in small_matrix()) {
        let p = char_poly_reciprocal(&IntMatrix::new(a).unwrap());
        let q = char_poly_reciprocal(&IntMatrix::new(b).unwrap());
        let l = poly_lcm(&[p.clone(), q.clone()]).unwrap();
        prop_assert!(l.div_exact(&p).is_some());
        prop_assert!(l.div_exact(&q).is_some());
        prop_assert!(l.degree() <= Some(p.degree().unwrap() + q.degree().unwrap()));
    }

    #[test]
    fn reductions_and_selectors(seed in any::<u64>()) {
        let a = common::random_action(&mut common::rng(seed), 6, 6);
        let r = right_reduce(&a).unwrap();
        let uav = mat_mul(&mat_mul(&r.u, &a.matrix().to_rect()).unwrap(), &r.v).unwrap();
        prop_assert_eq!(uav.rows(), r.matrix.rows());
        prop_assert_eq!(mat_mul(&r.u, &r.v).unwrap(), RectMatrix::identity(r.orbits.len()));
        for (o, members) in r.orbits.iter().enumerate() {
            let row: BigInt = (0..r.orbits.len()).map(|j| r.matrix.get(o, j).clone()).sum();
            prop_assert_eq!(row, BigInt::from(a.presentation().followers(members[0]).len()));
        }
        prop_assert!(transpose_duality_check(&a).unwrap());
        let eta = build_eta(&a).unwrap();
        prop_assert!(eta.is_right_resolving());
        prop_assert!(eta.is_onto_edges());
        let left = left_reduce(&a).unwrap().matrix;
        for n in 1..=8 {
            prop_assert_eq!(trace_of_power(&left, n), trace_of_power(&r.matrix, n));
        }
    }

    #[test]
    fn orbit_counts_agree(seed in any::<u64>()) {
        let a = common::random_action(&mut common::rng(seed), 5, 6);
        let b = burnside_counts(&a, 5).unwrap();
        prop_assert_eq!(&brute_orbit_counts(&a, 5, DEFAULT_CAP).unwrap(), &b.counts);
        let q = quotient_period_counts(&a, 5, DEFAULT_CAP).unwrap();
        let left = left_reduce(&a).unwrap().matrix;
        let expected: Vec<BigInt> = (1..=5).map(|n| trace_of_power(&left, n)).collect();
        prop_assert_eq!(q, expected);
    }

    #[test]
    fn classifier_matches_scan(seed in any::<u64>()) {
        let a = common::random_irreducible_action(&mut common::rng(seed), 5, 6);
        let c = classify_quotient(&a).unwrap();
        let scan = stabilizer_scan(&a, 8, DEFAULT_CAP).unwrap();
        prop_assert!(scan.witness.is_some() || scan.lengths_scanned >= a.dim());
        prop_assert_eq!(c.verdict == Verdict::Nonexpansive, scan.witness.is_some());
    }

    #[test]
    fn splits_transport_and_conjugate(seed in any::<u64>(), out in any::<bool>()) {
        let mut rng = common::rng(seed);
        let a = common::random_action(&mut rng, 5, 4);
        let dir = if out { Direction::Out } else { Direction::In };
        let d = common::random_compatible_split(&mut rng, &a, dir);
        let s = if out { out_split(&a, &d) } else { in_split(&a, &d) }.unwrap();
        let chain = transport_splits(&a, std::slice::from_ref(&s)).unwrap();
        prop_assert!(chain.verify().unwrap());
        let (x, y) = (chain.source().unwrap(), chain.target().unwrap());
        prop_assert_eq!(char_poly_reciprocal(x), char_poly_reciprocal(y));
        prop_assert_eq!(bowen_franks(x), bowen_franks(y));
        prop_assert!(induced_conjugacy(&s.certificate).unwrap().check_paths(6, DEFAULT_CAP).unwrap());
        if !out {
            let code = amalgamation_code(&a, &s).unwrap();
            let pairing = GroupPairing::identity(s.action.group(), a.group()).unwrap();
            let sq = theorem38_square(&code, &s.action, &a, &pairing).unwrap();
            prop_assert!(sq.commutes() && sq.all_right_resolving());
        }
    }
}
