//! Exact scalars: integer polynomials in `α` and the ring `ℤ[α, β]/(α² + β² − 1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Dense integer polynomial in `α`, lowest degree first, no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::from_coeffs(vec![c.into()])
    }

    /// `α^k`.
    pub fn alpha_pow(k: usize) -> Poly {
        Poly::monomial(BigInt::one(), k)
    }

    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Poly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Poly::from_coeffs(coeffs)
    }

    /// `1 − α²`.
    pub fn one_minus_alpha_sq() -> Poly {
        Poly::from_coeffs(vec![BigInt::one(), BigInt::zero(), -BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(<BigRational as Zero>::zero(), |acc, c| {
                acc * x + BigRational::from(c.clone())
            })
    }

    /// Pretty form in `α`, highest degree first, e.g. `2α^6 - 2α^4 + α^2`.
    pub fn to_pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, false) => out.push_str(&mag.to_string()),
                _ => {}
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = rhs.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty("α"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Serialized as the dense coefficient list, lowest degree first.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

/// Serde helper: rationals as `"p/q"` strings.
pub mod ratio_str {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }
}

/// `p(α) + β·q(α)` with `β² = 1 − α²` reduced eagerly.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RingElem {
    p: Poly,
    q: Poly,
}

impl RingElem {
    pub fn new(p: Poly, q: Poly) -> RingElem {
        RingElem { p, q }
    }

    pub fn zero() -> RingElem {
        RingElem::default()
    }

    pub fn one() -> RingElem {
        RingElem::from_poly(Poly::one())
    }

    pub fn alpha() -> RingElem {
        RingElem::from_poly(Poly::alpha_pow(1))
    }

    pub fn beta() -> RingElem {
        RingElem::new(Poly::zero(), Poly::one())
    }

    pub fn from_poly(p: Poly) -> RingElem {
        RingElem { p, q: Poly::zero() }
    }

    /// `α^a β^b`, with even powers of `β` folded into `(1 − α²)^{b/2}`.
    pub fn alpha_beta(a: usize, b: usize) -> RingElem {
        let base = &Poly::alpha_pow(a) * &Poly::one_minus_alpha_sq().pow(b / 2);
        if b.is_multiple_of(2) {
            RingElem::from_poly(base)
        } else {
            RingElem::new(Poly::zero(), base)
        }
    }

    /// The `β`-free part.
    pub fn p(&self) -> &Poly {
        &self.p
    }

    /// The coefficient of `β`.
    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_beta_free(&self) -> bool {
        self.q.is_zero()
    }

    /// The polynomial in `α` if `β` does not occur.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_beta_free().then_some(&self.p)
    }

    /// Evaluate at a rational `α` when `β`-free.
    pub fn eval_beta_free(&self, alpha: &BigRational) -> Option<BigRational> {
        self.as_poly().map(|p| p.eval(alpha))
    }

    /// Evaluate with an explicit rational value for `β` (used for
    /// Pythagorean `α` such as 3/5, where `β = 4/5`).
    pub fn eval_with(&self, alpha: &BigRational, beta: &BigRational) -> BigRational {
        self.p.eval(alpha) + beta * self.q.eval(alpha)
    }
}

impl Add for &RingElem {
    type Output = RingElem;

    fn add(self, rhs: &RingElem) -> RingElem {
        RingElem {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }
}

impl Sub for &RingElem {
    type Output = RingElem;

    fn sub(self, rhs: &RingElem) -> RingElem {
        RingElem {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }
}

impl Mul for &RingElem {
    type Output = RingElem;

    fn mul(self, rhs: &RingElem) -> RingElem {
        let qq = &(&self.q * &rhs.q) * &Poly::one_minus_alpha_sq();
        RingElem {
            p: &(&self.p * &rhs.p) + &qq,
            q: &(&self.p * &rhs.q) + &(&self.q * &rhs.p),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "β·({})", self.q),
            (false, false) => write!(f, "{} + β·({})", self.p, self.q),
        }
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({self})")
    }
}

/// Operations the partition function needs from its scalars.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for RingElem {
    fn zero() -> Self {
        RingElem::zero()
    }
    fn one() -> Self {
        RingElem::one()
    }
    fn is_zero(&self) -> bool {
        RingElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn beta_squared_reduces() {
        let b = RingElem::beta();
        assert_eq!(&b * &b, RingElem::from_poly(Poly::one_minus_alpha_sq()));
        let a = RingElem::alpha();
        let norm = &(&a * &a) + &(&b * &b);
        assert_eq!(norm, RingElem::one());
    }

    #[test]
    fn alpha_beta_monomials() {
        assert_eq!(
            RingElem::alpha_beta(2, 1),
            &(&RingElem::alpha() * &RingElem::alpha()) * &RingElem::beta()
        );
        let e = RingElem::alpha_beta(1, 4);
        assert_eq!(e.as_poly().unwrap(), &Poly::from_i64s(&[0, 1, 0, -2, 0, 1]));
    }

    #[test]
    fn pretty_printing() {
        let p = Poly::from_i64s(&[0, 0, 1, 0, -2, 0, 2]);
        assert_eq!(p.to_string(), "2α^6 - 2α^4 + α^2");
        assert_eq!(Poly::from_i64s(&[-1, 3]).to_string(), "3α - 1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"["0","0","1","0","-2","0","2"]"#
        );
    }

    #[test]
    fn evaluation() {
        let p = Poly::from_i64s(&[0, 0, 1, 0, -2, 0, 2]);
        assert_eq!(p.eval(&q(1, 2)), q(10, 64));
        let b = RingElem::beta();
        assert_eq!(b.eval_with(&q(3, 5), &q(4, 5)), q(4, 5));
        assert_eq!(b.eval_beta_free(&q(1, 2)), None);
    }
}
