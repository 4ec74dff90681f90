mod common;

use gf2trace::enumerate::{enumerate_irreducibles, ScanConfig};
use gf2trace::poly::is_irreducible_by_trial_division;
use gf2trace::{cotrace_coeff, format, parse, reciprocal, signature, trace_coeff, Poly, Poly128, Poly64, Style};
use proptest::prelude::*;

/// Polynomials of degree ≤ 64, held in 128 bits.
fn deg64() -> impl Strategy<Value = Poly128> {
    (any::<u64>(), any::<bool>()).prop_map(|(lo, top)| Poly128::from_bits(u128::from(lo) | (u128::from(top) << 64)))
}

/// Degree ≤ 63, so that any product of two fits in 128 bits.
fn deg63() -> impl Strategy<Value = Poly128> {
    any::<u64>().prop_map(|lo| Poly128::from_bits(u128::from(lo)))
}

proptest! {
    #![proptest_config(common::proptest_config(512))]

    #[test]
    fn add_is_associative_commutative_and_self_inverse(a in deg64(), b in deg64(), c in deg64()) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a + b, b + a);
        prop_assert!((a + a).is_zero());
        prop_assert_eq!(a + Poly128::zero(), a);
    }

    #[test]
    fn mul_distributes_over_add(a in deg63(), b in deg63(), c in deg63()) {
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * Poly128::one(), a);
    }

    #[test]
    fn mul_is_associative(a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (Poly128::from_u64(a.into()), Poly128::from_u64(b.into()), Poly128::from_u64(c.into()));
        prop_assert_eq!((a * b) * c, a * (b * c));
    }

    #[test]
    fn division_reconstructs(a in deg63(), m in deg63()) {
        prop_assume!(!m.is_zero());
        let (q, r) = a.div_rem(m).unwrap();
        prop_assert_eq!(q * m + r, a);
        prop_assert!(r.degree() < m.degree());
    }

    #[test]
    fn ext_gcd_bezout(a in any::<u32>(), m in any::<u32>()) {
        let (a, m) = (Poly128::from_u64(a.into()), Poly128::from_u64(m.into()));
        let (g, u, v) = a.ext_gcd(m);
        prop_assert_eq!(u * a + v * m, g);
        prop_assert_eq!(g, a.gcd(m));
    }

    #[test]
    fn square_matches_self_product(a in deg63()) {
        prop_assert_eq!(a.square().unwrap(), a * a);
    }

    #[test]
    fn hex_and_symbolic_round_trip(bits in any::<u64>()) {
        let f = Poly64::from_bits(bits);
        prop_assert_eq!(parse::<u64>(&format(f, Style::Hex)).unwrap(), f);
        prop_assert_eq!(parse::<u64>(&format(f, Style::Symbolic)).unwrap(), f);
    }
}

#[test]
fn rabin_agrees_with_trial_division_up_to_degree_14() {
    for bits in 2u64..1 << 15 {
        let f = Poly::<u64>::from_u64(bits);
        assert_eq!(f.is_irreducible().unwrap(), is_irreducible_by_trial_division(f).unwrap(), "{f:?}");
    }
}

#[test]
fn reciprocal_is_an_involution_that_swaps_trace_and_cotrace() {
    for bits in (5u64..1 << 14).step_by(2) {
        let f = Poly::<u64>::from_u64(bits);
        let r = reciprocal(f).unwrap();
        assert_eq!(reciprocal(r).unwrap(), f);
        assert_eq!(trace_coeff(r).unwrap(), cotrace_coeff(f).unwrap());
        assert_eq!(cotrace_coeff(r).unwrap(), trace_coeff(f).unwrap());
    }
}

#[test]
fn irreducibles_have_an_odd_number_of_terms() {
    let config = ScanConfig::default();
    for n in 2..=20 {
        for f in enumerate_irreducibles(n, &config).unwrap() {
            assert_eq!(f.weight() % 2, 1, "{f:?}");
        }
    }
}

#[test]
fn signature_vanishes_at_degrees_two_and_three() {
    for bits in 4u64..16 {
        assert!(!signature(Poly::<u64>::from_u64(bits)).unwrap());
    }
}
