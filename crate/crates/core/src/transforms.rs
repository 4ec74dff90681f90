//! Degree-preserving substitutions on irreducibles and the Q-transform.
//!
//! A matrix `(a b; c d)` of `GL_2(F_2)` acts on a degree-`n` polynomial by
//! `f ↦ (cx + d)^n f((ax + b)/(cx + d))`. The six matrices include the
//! reciprocal `(0 1; 1 0)`, `ψ = (0 1; 1 1)` and `ψ⁻¹ = (1 1; 1 0)`.
//!
//! Because the substitution composes inside `f`, applying `m₁` and then `m₂`
//! is the same as applying the single matrix `m₁·m₂`: the action is a right
//! action.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::classify::reverse;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gl2Matrix {
    a: bool,
    b: bool,
    c: bool,
    d: bool,
}

impl Gl2Matrix {
    pub const IDENTITY: Gl2Matrix = Gl2Matrix { a: true, b: false, c: false, d: true };
    /// `x ↦ 1/x`, the reciprocal transform.
    pub const RECIPROCAL: Gl2Matrix = Gl2Matrix { a: false, b: true, c: true, d: false };
    /// `f ↦ (x+1)^n f(1/(x+1))`.
    pub const PSI: Gl2Matrix = Gl2Matrix { a: false, b: true, c: true, d: true };
    /// `f ↦ x^n f((x+1)/x)`.
    pub const PSI_INV: Gl2Matrix = Gl2Matrix { a: true, b: true, c: true, d: false };

    pub fn new(a: bool, b: bool, c: bool, d: bool) -> Result<Self> {
        if (a & d) ^ (b & c) {
            Ok(Self { a, b, c, d })
        } else {
            Err(Error::SingularMatrix)
        }
    }

    /// The six invertible matrices over `F_2`.
    pub fn all() -> Vec<Gl2Matrix> {
        (0u8..16).filter_map(|m| Self::new(m & 8 != 0, m & 4 != 0, m & 2 != 0, m & 1 != 0).ok()).collect()
    }

    pub fn entries(self) -> [bool; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Over `F_2` the adjugate is the inverse, since the determinant is one.
    pub fn inverse(self) -> Self {
        Self { a: self.d, b: self.b, c: self.c, d: self.a }
    }
}

impl Mul for Gl2Matrix {
    type Output = Gl2Matrix;

    fn mul(self, r: Self) -> Self {
        Self {
            a: (self.a & r.a) ^ (self.b & r.c),
            b: (self.a & r.b) ^ (self.b & r.d),
            c: (self.c & r.a) ^ (self.d & r.c),
            d: (self.c & r.b) ^ (self.d & r.d),
        }
    }
}

impl fmt::Display for Gl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries().map(u8::from);
        write!(f, "({a},{b};{c},{d})")
    }
}

fn linear<W: Word>(lead: bool, constant: bool) -> Poly<W> {
    let mut bits = W::zero();
    if lead {
        bits = bits | W::with_bit(1);
    }
    if constant {
        bits = bits | W::one();
    }
    Poly::from_bits(bits)
}

/// `Σ_k f_k · num^k · den^(n-k)` by Horner accumulation, where `n = deg f`.
fn homogenize<W: Word>(f: Poly<W>, num: Poly<W>, den: Poly<W>) -> Result<Poly<W>> {
    let n = f.degree().ok_or(Error::DegreeTooSmall { min: 1, got: None })?;
    let mut acc = Poly::one();
    let mut den_pow = Poly::one();
    for k in (0..n).rev() {
        den_pow = den_pow.checked_mul(den)?;
        acc = acc.checked_mul(num)?;
        if f.coeff(k) {
            acc += den_pow;
        }
    }
    Ok(acc)
}

/// `(cx + d)^n f((ax + b)/(cx + d))` for `f` of degree at least two.
///
/// Only irreducibles of degree ≥ 2 are guaranteed to keep their degree; the
/// irreducibility of the input is not re-checked here.
pub fn gl2_apply<W: Word>(m: Gl2Matrix, f: Poly<W>) -> Result<Poly<W>> {
    match f.degree() {
        Some(n) if n >= 2 => {}
        got => return Err(Error::DegreeTooSmall { min: 2, got }),
    }
    if m == Gl2Matrix::RECIPROCAL && f.constant_term() {
        return Ok(reverse(f, f.degree().unwrap_or(0)));
    }
    homogenize(f, linear(m.a, m.b), linear(m.c, m.d))
}

pub fn psi<W: Word>(f: Poly<W>) -> Result<Poly<W>> {
    gl2_apply(Gl2Matrix::PSI, f)
}

pub fn psi_inv<W: Word>(f: Poly<W>) -> Result<Poly<W>> {
    gl2_apply(Gl2Matrix::PSI_INV, f)
}

/// `f^Q = x^n f(x + 1/x)`, self-reciprocal of degree `2n`.
pub fn q_transform<W: Word>(f: Poly<W>) -> Result<Poly<W>> {
    match f.degree() {
        None => Err(Error::DegreeTooSmall { min: 0, got: None }),
        Some(n) if 2 * n >= W::BITS => Err(Error::WordOverflow { bits: W::BITS }),
        Some(_) => homogenize(f, Poly::from_u64(0b101), Poly::x()),
    }
}

/// The unique `g` of degree `m` with `g^Q = f`, for self-reciprocal `f` of
/// degree `2m`.
///
/// `g^Q = Σ_k g_k x^{m-k} (x²+1)^k`, and the `k`-th basis term has leading
/// monomial `x^{m+k}`, so the coefficients fall out top-down by elimination.
pub fn q_root<W: Word>(f: Poly<W>) -> Result<Poly<W>> {
    let deg = f.degree().ok_or(Error::DegreeTooSmall { min: 0, got: None })?;
    if deg % 2 == 1 {
        return Err(Error::OddDegree(deg));
    }
    if !f.constant_term() {
        return Err(Error::ZeroConstantTerm);
    }
    if !is_self_reciprocal(f) {
        return Err(Error::NotSelfReciprocal);
    }
    let m = deg / 2;
    // basis[k] = x^{m-k} (x²+1)^k
    let x2_plus_1 = Poly::<W>::from_u64(0b101);
    let mut basis = Vec::with_capacity(m as usize + 1);
    let mut pow = Poly::<W>::one();
    for k in 0..=m {
        basis.push(pow.shl(m - k)?);
        if k < m {
            pow = pow.checked_mul(x2_plus_1)?;
        }
    }
    let mut rest = f;
    let mut root = W::zero();
    for k in (0..=m).rev() {
        if rest.coeff(m + k) {
            root = root | W::with_bit(k);
            rest += basis[k as usize];
        }
    }
    if !rest.is_zero() {
        return Err(Error::NotQImage);
    }
    Ok(Poly::from_bits(root))
}

/// `f* = f`. The zero polynomial counts as self-reciprocal; a polynomial
/// divisible by `x` never does.
pub fn is_self_reciprocal<W: Word>(f: Poly<W>) -> bool {
    match f.degree() {
        None => true,
        Some(n) => f.constant_term() && reverse(f, n) == f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u64) -> Poly {
        Poly::from_u64(bits)
    }

    /// Independent evaluation of `Σ f_k num^k den^{n-k}` by separate powers.
    fn homogenize_naive(f: Poly, num: Poly, den: Poly) -> Poly {
        let n = f.degree().unwrap();
        let pow = |b: Poly, e: u32| (0..e).fold(Poly::one(), |acc, _| acc * b);
        (0..=n).filter(|&k| f.coeff(k)).fold(Poly::zero(), |acc, k| acc + pow(num, k) * pow(den, n - k))
    }

    #[test]
    fn six_invertible_matrices() {
        let all = Gl2Matrix::all();
        assert_eq!(all.len(), 6);
        for &m in &all {
            assert_eq!(m * m.inverse(), Gl2Matrix::IDENTITY);
            for &k in &all {
                assert!(all.contains(&(m * k)));
            }
        }
        assert_eq!(Gl2Matrix::new(true, true, true, true), Err(Error::SingularMatrix));
        assert_eq!(Gl2Matrix::PSI.inverse(), Gl2Matrix::PSI_INV);
    }

    #[test]
    fn gl2_examples() {
        assert_eq!(gl2_apply(Gl2Matrix::IDENTITY, p(0x3B)).unwrap(), p(0x3B));
        assert_eq!(gl2_apply(Gl2Matrix::RECIPROCAL, p(0b1011)).unwrap(), p(0b1101));
        assert_eq!(gl2_apply(Gl2Matrix::PSI, p(0x3B)).unwrap(), p(0x25));
        assert!(gl2_apply(Gl2Matrix::PSI, p(0b11)).is_err());
    }

    #[test]
    fn horner_matches_naive_expansion() {
        for bits in 4u64..512 {
            let f = p(bits);
            for m in Gl2Matrix::all() {
                let got = gl2_apply(m, f).unwrap();
                let want = homogenize_naive(f, linear(m.a, m.b), linear(m.c, m.d));
                assert_eq!(got, want, "{m} on {f:?}");
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(p(0x3B)).unwrap(), p(0x25));
        assert_eq!(psi_inv(p(0x37)).unwrap(), p(0x29));
        assert_eq!(psi_inv(psi(p(0b1011)).unwrap()).unwrap(), p(0b1011));
        assert_eq!(psi(psi_inv(p(0b1011)).unwrap()).unwrap(), p(0b1011));
    }

    #[test]
    fn q_transform_examples() {
        assert_eq!(q_transform(p(0b11)).unwrap(), p(0b111));
        assert_eq!(q_transform(p(0b111)).unwrap(), p(0b11111));
        assert!(q_transform(p(0b111)).unwrap().is_irreducible().unwrap());
        assert!(q_transform(Poly::<u64>::zero()).is_err());
        assert!(q_transform(Poly::<u32>::monomial(16).unwrap()).is_err());
    }

    #[test]
    fn q_root_examples() {
        assert_eq!(q_root(p(0b111)).unwrap(), p(0b11));
        assert_eq!(q_root(p(0b11111)).unwrap(), p(0b111));
        assert_eq!(q_root(p(0b1011)), Err(Error::OddDegree(3)));
        assert_eq!(q_root(p(0b10011)), Err(Error::NotSelfReciprocal));
        // x^4 + x^2 + 1 is palindromic; q_root recovers x^2 + 1 regardless.
        assert_eq!(q_root(p(0b10101)).unwrap(), p(0b101));
    }

    #[test]
    fn self_reciprocal_examples() {
        assert!(is_self_reciprocal(p(0b111)));
        assert!(!is_self_reciprocal(p(0b1011)));
        assert!(is_self_reciprocal(p(0b11111)));
        assert!(!is_self_reciprocal(p(0b110)));
    }
}
