use std::collections::BTreeSet;

use gf2trace::enumerate::{enumerate_irreducibles, ScanConfig};
use gf2trace::transforms::{gl2_apply, is_self_reciprocal, q_root, q_transform};
use gf2trace::{cotrace_coeff, Gl2Matrix, Poly};

fn irreducibles(max_degree: u32) -> Vec<Poly> {
    let config = ScanConfig::default();
    (2..=max_degree).flat_map(|n| enumerate_irreducibles(n, &config).unwrap()).collect()
}

#[test]
fn gl2_acts_on_the_right() {
    let all = Gl2Matrix::all();
    for f in irreducibles(8) {
        for &m1 in &all {
            let once = gl2_apply(m1, f).unwrap();
            for &m2 in &all {
                assert_eq!(gl2_apply(m1 * m2, f).unwrap(), gl2_apply(m2, once).unwrap(), "{m1} {m2} {f:?}");
            }
        }
    }
}

#[test]
fn gl2_permutes_irreducibles_of_each_degree() {
    let config = ScanConfig::default();
    for n in 2..=10 {
        let set: BTreeSet<Poly> = enumerate_irreducibles(n, &config).unwrap().into_iter().collect();
        for m in Gl2Matrix::all() {
            let image: BTreeSet<Poly> = set.iter().map(|&f| gl2_apply(m, f).unwrap()).collect();
            assert_eq!(image, set, "{m} at degree {n}");
        }
    }
}

#[test]
fn q_image_is_irreducible_exactly_when_cotrace_is_one() {
    let x_plus_1 = Poly::<u64>::from_u64(0b11);
    for bits in [0b10u64, 0b11] {
        let f = Poly::<u64>::from_u64(bits);
        assert_eq!(q_transform(f).unwrap().is_irreducible().unwrap(), f == x_plus_1);
    }
    for f in irreducibles(12) {
        let q = q_transform(f).unwrap();
        assert_eq!(q.is_irreducible().unwrap(), cotrace_coeff(f).unwrap(), "{f:?}");
    }
}

#[test]
fn q_transform_is_self_reciprocal_of_double_degree() {
    for bits in 1u64..1 << 11 {
        let f = Poly::<u64>::from_u64(bits);
        let q = q_transform(f).unwrap();
        assert!(is_self_reciprocal(q), "{f:?}");
        assert_eq!(q.degree(), f.degree().map(|d| 2 * d));
    }
}

#[test]
fn q_root_inverts_q_transform() {
    for bits in (1u64..1 << 11).step_by(2) {
        let f = Poly::<u64>::from_u64(bits);
        assert_eq!(q_root(q_transform(f).unwrap()).unwrap(), f, "{f:?}");
    }
}
