use num_bigint::BigInt;
use proptest::prelude::*;

use gwmirror::algebra::{
    iterated_residue, iterated_residue_generic, normalize, residue_at_zero, same_rational_function, Monomial,
};
use gwmirror::blocks::{e_poly, ordered_partitions, t_poly, w_kernel};
use gwmirror::io::{table_from_json, table_to_json};
use gwmirror::localization::{gw_equivariant_seeded, gw_residue};
use gwmirror::mirror::valid_ns;
use gwmirror::vsc::{vsc_recursive, window_top};
use gwmirror::{ExactRational, GwRequest, Provenance, RatFunExpr, ResidueOrder, SparsePoly, VscKey, VscTable};

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// Small polynomials in `x0, ..., x{vars-1}`.
fn poly(vars: usize, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0u16..4, vars), -6i64..=6), 0..=max_terms).prop_map(|terms| {
        SparsePoly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), q(c, 1))))
    })
}

fn nonzero_poly(vars: usize) -> impl Strategy<Value = SparsePoly> {
    poly(vars, 3).prop_filter("nonzero", |p| !p.is_zero())
}

fn sum_pair(a: &(SparsePoly, SparsePoly), b: &(SparsePoly, SparsePoly)) -> (SparsePoly, SparsePoly) {
    (&(&a.0 * &b.1) + &(&b.0 * &a.1), &a.1 * &b.1)
}

fn provenance() -> impl Strategy<Value = Provenance> {
    prop_oneof![Just(Provenance::Recursion), Just(Provenance::Residue), Just(Provenance::Both)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(a in poly(3, 4), b in poly(3, 4), c in poly(3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SparsePoly::one(), a.clone());
    }

    #[test]
    fn normalize_is_a_ring_morphism(p1 in poly(3, 3), q1 in nonzero_poly(3), p2 in poly(3, 3), q2 in nonzero_poly(3)) {
        let e1 = RatFunExpr::quotient(p1.into(), q1.into());
        let e2 = RatFunExpr::quotient(p2.into(), q2.into());
        let n1 = normalize(&e1).unwrap();
        let n2 = normalize(&e2).unwrap();
        let sum = normalize(&(e1.clone() + e2.clone())).unwrap();
        prop_assert!(same_rational_function(&sum, &sum_pair(&n1, &n2)));
        let prod = normalize(&(e1 * e2)).unwrap();
        prop_assert!(same_rational_function(&prod, &(&n1.0 * &n2.0, &n1.1 * &n2.1)));
    }

    #[test]
    fn residue_is_linear(f in poly(2, 4), g in poly(2, 4), c in -5i64..=5, m in 1u16..4, e in 0u32..3) {
        let den = &SparsePoly::monomial(Monomial::from_exps(&[m]), q(1, 1))
            * &SparsePoly::linear(&[(0, 1), (1, 2)]).pow(e);
        let den = &den * &(&SparsePoly::linear(&[(0, 1)]) + &SparsePoly::int(3));
        let combo = &f + &g.scale(&q(c, 1));
        let lhs = residue_at_zero(&combo, &den, 0).unwrap();
        let rf = residue_at_zero(&f, &den, 0).unwrap();
        let rg = residue_at_zero(&g, &den, 0).unwrap();
        let rhs = sum_pair(&rf, &(rg.0.scale(&q(c, 1)), rg.1));
        prop_assert!(same_rational_function(&lhs, &rhs));
    }

    #[test]
    fn polynomials_have_no_residue(f in poly(2, 5), shift in 1i64..5) {
        let den = &SparsePoly::linear(&[(0, 1), (1, 1)]) + &SparsePoly::int(shift);
        let (num, _) = residue_at_zero(&f, &den, 0).unwrap();
        prop_assert!(num.is_zero());
    }

    #[test]
    fn residue_routes_agree(f in poly(2, 5), m0 in 1u16..4, m1 in 1u16..5, e in 1u32..3) {
        let den = &SparsePoly::monomial(Monomial::from_exps(&[m0, m1]), q(1, 1))
            * &SparsePoly::linear(&[(1, 2), (0, -1)]).pow(e);
        let order = ResidueOrder::ascending(2);
        let expr = RatFunExpr::quotient(f.clone().into(), den.clone().into());
        prop_assert_eq!(
            iterated_residue(&expr, &order).unwrap(),
            iterated_residue_generic(&f, &den, &order).unwrap()
        );
    }

    #[test]
    fn order_must_cover_the_variables(f in nonzero_poly(3)) {
        let den = SparsePoly::monomial(Monomial::from_exps(&[1, 1, 5]), q(1, 1));
        let expr = RatFunExpr::quotient(f.into(), den.into());
        prop_assert!(iterated_residue(&expr, &ResidueOrder::ascending(2)).is_err());
        prop_assert!(ResidueOrder::new([0, 1, 0]).is_err());
    }

    #[test]
    fn e_and_t_are_symmetric(k in 1u32..6, d in 1u32..4, n in 1u32..6) {
        prop_assert_eq!(e_poly(k, d, 0, 1), e_poly(k, d, 1, 0));
        prop_assert_eq!(t_poly(n, d, 0, 1), t_poly(n, d, 1, 0));
        prop_assert_eq!(e_poly(k, d, 0, 1).total_degree(), Some(k * d + 1));
    }

    #[test]
    fn w_kernel_divides_power_difference(a in 0u32..12) {
        let lhs = &SparsePoly::linear(&[(0, 1), (1, -1)]) * &w_kernel(a, 0, 1);
        prop_assert_eq!(lhs, &SparsePoly::var(0).pow(a) - &SparsePoly::var(1).pow(a));
    }

    #[test]
    fn ordered_partitions_are_compositions(d in 1u32..7) {
        let parts = ordered_partitions(d);
        prop_assert_eq!(parts.len(), 1 << (d - 1));
        prop_assert!(parts.iter().all(|p| p.degree() == d && p.parts().iter().all(|&x| x >= 1)));
    }

    #[test]
    fn reflection_symmetry(k in 1u32..7, extra in 0u32..12, d in 1u32..4, n in 0i64..30) {
        let big_n = 3 + extra.min(2 * k - 1);
        prop_assume!(n <= window_top(big_n, k, d));
        let key = VscKey::new(big_n, k, d, n);
        let mut table = VscTable::new();
        prop_assert_eq!(vsc_recursive(key, &mut table).unwrap(), vsc_recursive(key.reflected(), &mut table).unwrap());
    }

    #[test]
    fn dimension_filter(big_n in 3u32..7, k in 1u32..7, d in 1u32..3, a in 0u32..8, b in 0u32..8) {
        let req = GwRequest::new(big_n, k, d, a, b);
        prop_assume!(!req.passes_dimension_filter());
        prop_assert_eq!(gw_residue(&req).unwrap(), q(0, 1));
    }

    #[test]
    fn cache_round_trip(
        entries in prop::collection::btree_map(
            (1u32..10, 1u32..7, 1u32..4, 0i64..12),
            (-10_000i64..10_000, 1i64..500, provenance()),
            0..40,
        )
    ) {
        let mut table = VscTable::new();
        for ((big_n, k, d, n), (num, den, prov)) in entries {
            table.record(VscKey::new(big_n, k, d, n), q(num, den), prov).unwrap();
        }
        let text = table_to_json(&table);
        let back = table_from_json(&text).unwrap();
        prop_assert_eq!(table_to_json(&back), text);
        prop_assert!(back.entries().eq(table.entries()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn localization_is_character_independent(big_n in 4u32..7, k in 2u32..7, d in 1u32..3, seed in 0u64..40, pick in 0usize..8) {
        let ns = valid_ns(big_n, k, d);
        prop_assume!(!ns.is_empty());
        let req = GwRequest::from_n(big_n, k, d, ns[pick % ns.len()]).unwrap();
        prop_assert_eq!(gw_equivariant_seeded(&req, seed).unwrap(), gw_residue(&req).unwrap());
    }
}
