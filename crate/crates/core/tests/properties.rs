use macmahon::motivic::{class_fixed_component, fixed_component_from_grid};
use macmahon::partitions::{plane_partitions, DiagramTuple, PlanePartition, YoungDiagram};
use macmahon::series::{
    exps, q_factorial, FactorProduct, TruncatedSeries, TruncationProfile, UniPoly, Var,
};
use macmahon::torus::{d_plus_formula, default_alpha, tangent_character};
use macmahon::vuletic;
use num_bigint::BigInt;
use proptest::prelude::*;

fn profile() -> TruncationProfile {
    TruncationProfile::new(&[(Var::Q, 4), (Var::T, 3)])
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((0u32..=5, 0u32..=4, -20i64..=20), 0..10).prop_map(|terms| {
        let p = profile();
        TruncatedSeries::from_terms(
            p,
            terms
                .into_iter()
                .map(|(q, t, c)| (exps(&[(Var::Q, q), (Var::T, t)]), BigInt::from(c))),
        )
        .unwrap()
    })
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (series(), any::<bool>()).prop_map(|(s, neg)| {
        let c = if neg { -1 } else { 1 };
        let head = TruncatedSeries::constant(profile(), BigInt::from(c) - s.constant_term());
        s.add(&head).unwrap()
    })
}

fn factor_product() -> impl Strategy<Value = FactorProduct> {
    prop::collection::vec((0u32..=3, 0u32..=2, -2i64..=2), 0..5).prop_map(|atoms| {
        atoms
            .into_iter()
            .filter(|(q, t, _)| q + t > 0)
            .map(|(q, t, m)| FactorProduct::atom_pow(exps(&[(Var::Q, q), (Var::T, t)]), m).unwrap())
            .product()
    })
}

fn diagram() -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(0u32..=4, 0..4).prop_map(|mut rows| {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram::new(rows).unwrap()
    })
}

fn plane_partition() -> impl Strategy<Value = PlanePartition> {
    (0u32..=6).prop_flat_map(|n| {
        let all = plane_partitions(n, None);
        (0..all.len()).prop_map(move |k| all[k].clone())
    })
}

proptest! {
    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().mul(&c).unwrap(), a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&TruncatedSeries::one(profile())).unwrap(), a);
    }

    #[test]
    fn division_inverts_multiplication(a in series(), u in unit_series()) {
        prop_assert_eq!(a.mul(&u).unwrap().div(&u).unwrap(), a);
    }

    #[test]
    fn expansion_is_multiplicative(f in factor_product(), g in factor_product()) {
        let p = profile();
        let lhs = (&f * &g).expand(&p).unwrap();
        let rhs = f.expand(&p).unwrap().mul(&g.expand(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(f.inv().expand(&p).unwrap().mul(&f.expand(&p).unwrap()).unwrap(), TruncatedSeries::one(p));
    }

    #[test]
    fn q_factorial_is_a_polynomial_of_the_right_degree(n in 0u32..=8) {
        let poly = q_factorial(n).to_unipoly(Var::Q).unwrap();
        prop_assert_eq!(poly.degree(), Some((n * (n + 1) / 2) as usize));
        prop_assert_eq!(poly.coeff(0), BigInt::from(1));
        let at_one = if n == 0 { 1 } else { 0 };
        prop_assert_eq!(poly.eval(&BigInt::from(1)), BigInt::from(at_one));
    }

    #[test]
    fn enumerated_plane_partitions_are_valid(pi in plane_partition()) {
        let rows = pi.to_rows();
        prop_assert_eq!(PlanePartition::new(rows).unwrap(), pi.clone());
        prop_assert_eq!(pi.transpose().transpose(), pi.clone());
        prop_assert_eq!(pi.to_string().parse::<PlanePartition>().unwrap(), pi.clone());
        prop_assert_eq!(vuletic::weight(&pi.transpose()), vuletic::weight(&pi));
    }

    #[test]
    fn fixed_component_classes_are_positive(pi in plane_partition(), extra in 0u32..=3) {
        let r = pi.corner() + extra;
        let class = class_fixed_component(r, &pi).unwrap();
        let poly: &UniPoly = class.polynomial().unwrap();
        prop_assert!(poly.has_nonnegative_coeffs());
        prop_assert_eq!(poly.coeff(0), BigInt::from(1));
        prop_assert_eq!(&fixed_component_from_grid(r, &pi).unwrap(), class.factors());
    }

    #[test]
    fn attracting_dimension_of_random_tuples(ds in prop::collection::vec(diagram(), 1..=3)) {
        let tuple = DiagramTuple::new(ds);
        let r = tuple.rank();
        let n = tuple.weight();
        let pi = tuple.plane_partition().unwrap();
        let ch = tangent_character(&tuple);
        prop_assert_eq!(ch.len() as u64, 2 * r as u64 * n);
        let expected = d_plus_formula(&pi, r as u32).unwrap() as usize;
        prop_assert_eq!(ch.positive(default_alpha(n)), expected);
        prop_assert_eq!(ch.negative(default_alpha(n)), 2 * r * n as usize - expected - ch.neutral(default_alpha(n)));
        prop_assert_eq!(tuple.to_string().parse::<DiagramTuple>().unwrap(), tuple);
    }
}
