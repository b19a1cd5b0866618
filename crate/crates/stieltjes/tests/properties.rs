//! Property-based checks of the algebraic core: ring axioms, inversion and
//! square-root round trips, substitution composition, reduction commuting
//! with multiplication, and the recurrence/matrix-product agreement.

use proptest::prelude::*;

use stieltjes::cfrac;
use stieltjes::ring::{Domain, Poly, Series};
use stieltjes::seq::SignSequence;

const Z: Domain = Domain::Integers;
const M4: Domain = Domain::Residues(4);

fn small_poly(domain: Domain) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 0..8)
        .prop_map(move |coeffs| Poly::from_i64_coeffs(domain, &coeffs))
}

fn series_mod4(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(0i64..4, order + 1..=order + 1).prop_map(move |coeffs| {
        Series::from_coeffs(M4, coeffs.iter().map(|&v| M4.from_i64(v)).collect())
    })
}

fn unit_series_mod4(order: usize) -> impl Strategy<Value = Series> {
    (series_mod4(order), prop::sample::select(vec![1i64, 3])).prop_map(move |(s, unit)| {
        let mut coeffs: Vec<_> = s.coeffs().to_vec();
        coeffs[0] = M4.from_i64(unit);
        Series::from_coeffs(M4, coeffs)
    })
}

fn sign_values(max_len: usize) -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1]), 2..=max_len)
}

proptest! {
    #[test]
    fn ring_axioms_over_z(a in small_poly(Z), b in small_poly(Z), c in small_poly(Z)) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        let expand = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(dist, expand);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    }

    #[test]
    fn ring_axioms_mod_4(a in small_poly(M4), b in small_poly(M4), c in small_poly(M4)) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        let expand = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(dist, expand);
    }

    #[test]
    fn reduction_commutes_with_multiplication(a in small_poly(Z), b in small_poly(Z)) {
        let product_then_reduce = a.mul(&b).unwrap().reduce(M4).unwrap();
        let reduce_then_product = a.reduce(M4).unwrap().mul(&b.reduce(M4).unwrap()).unwrap();
        prop_assert_eq!(product_then_reduce, reduce_then_product);
    }

    #[test]
    fn negate_argument_is_an_involution(a in small_poly(Z)) {
        prop_assert_eq!(a.negate_argument().negate_argument(), a);
    }

    #[test]
    fn substitute_power_composes(s in series_mod4(32)) {
        let twice = s.substitute_power(2).substitute_power(2);
        prop_assert_eq!(twice, s.substitute_power(4));
    }

    #[test]
    fn poly_lines_round_trip(a in small_poly(Z)) {
        prop_assert_eq!(Poly::parse(&a.to_line(), Z).unwrap(), a);
    }

    #[test]
    fn series_lines_round_trip(s in series_mod4(12)) {
        prop_assert_eq!(Series::parse(&s.to_line(), M4).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inversion_round_trips_mod_4(s in unit_series_mod4(64)) {
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.mul(&inv).unwrap(), Series::one(M4, 64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_root_round_trips(coeffs in prop::collection::vec(-6i64..=6, 32)) {
        let mut full = vec![1i64];
        full.extend(coeffs);
        let s = Series::from_coeffs(Z, full.iter().map(|&v| Z.from_i64(v)).collect());
        let root = s.sqrt_exact().unwrap();
        let square = root.series.mul(&root.series).unwrap();
        prop_assert_eq!(square, s.reduce(Domain::Rationals).unwrap());
    }

    #[test]
    fn recurrence_agrees_with_matrix_product(values in sign_values(64)) {
        let n = values.len() - 1;
        let seq = SignSequence::from_values("random", values).unwrap();
        let by_recurrence = cfrac::convergent_quad(&seq, n.max(1), Z).unwrap();
        let by_matrices = cfrac::matrix_product_convergents(&seq, n.max(1), Z).unwrap();
        prop_assert_eq!(by_recurrence, by_matrices);
    }

    #[test]
    fn expansion_mod_reduction_commutes(values in sign_values(48)) {
        let n = values.len() - 2;
        let seq = SignSequence::from_values("random", values).unwrap();
        if n >= 1 {
            let over_z = cfrac::expand_stieltjes(&seq, n - 1, Z).unwrap();
            let mod_4 = cfrac::expand_stieltjes(&seq, n - 1, M4).unwrap();
            prop_assert_eq!(over_z.reduce(M4).unwrap(), mod_4);
        }
    }
}
