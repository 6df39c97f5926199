//! Dyadic rationals `k / 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `numerator / 2^exponent` in lowest terms (odd numerator or exponent 0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Dyadic {
        let mut numerator = numerator.into();
        let mut exponent = exponent;
        if numerator.is_zero() {
            exponent = 0;
        }
        while exponent > 0 && numerator.is_even() {
            numerator >>= 1;
            exponent -= 1;
        }
        Dyadic {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Dyadic {
        Dyadic::new(1, 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `2^-e`.
    pub fn unit(e: u32) -> Dyadic {
        Dyadic::new(1, e)
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e)
    }

    /// Multiply by `2^shift`.
    pub fn scale_pow2(&self, shift: i64) -> Dyadic {
        if shift >= 0 {
            let s = shift as u32;
            if s <= self.exponent {
                Dyadic::new(self.numerator.clone(), self.exponent - s)
            } else {
                Dyadic::new(&self.numerator << (s - self.exponent), 0)
            }
        } else {
            Dyadic::new(self.numerator.clone(), self.exponent + (-shift) as u32)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    pub fn is_in_unit_interval(&self) -> bool {
        !self.numerator.is_negative() && *self < Dyadic::one()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `k`, `k/m` with `m` a power of two, or `k/2^e`.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dyadic> {
        let s = s.trim();
        let bad = |msg: &str| Error::parse(0, format!("{msg} in dyadic '{s}'"));
        let (num, den) = match s.split_once('/') {
            None => (s, None),
            Some((n, d)) => (n.trim(), Some(d.trim())),
        };
        let numerator: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
        let exponent = match den {
            None => 0,
            Some(d) => {
                if let Some(e) = d.strip_prefix("2^") {
                    e.parse::<u32>().map_err(|_| bad("bad exponent"))?
                } else {
                    let m: u64 = d.parse().map_err(|_| bad("bad denominator"))?;
                    if m == 0 || !m.is_power_of_two() {
                        return Err(bad("denominator is not a power of two"));
                    }
                    m.trailing_zeros()
                }
            }
        };
        Ok(Dyadic::new(numerator, exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let d = Dyadic::new(4, 3);
        assert_eq!((d.numerator().clone(), d.exponent()), (BigInt::from(1), 1));
        assert_eq!(Dyadic::new(0, 5), Dyadic::zero());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("3/2^3".parse::<Dyadic>().unwrap(), Dyadic::new(3, 3));
        assert_eq!("6/16".parse::<Dyadic>().unwrap(), Dyadic::new(3, 3));
        assert_eq!(Dyadic::new(3, 3).to_string(), "3/8");
        assert!("1/3".parse::<Dyadic>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Dyadic::new(1, 2);
        let b = Dyadic::new(3, 3);
        assert_eq!(a.add(&b), Dyadic::new(5, 3));
        assert_eq!(b.sub(&a), Dyadic::new(1, 3));
        assert_eq!(b.scale_pow2(2), Dyadic::new(3, 1));
        assert_eq!(b.scale_pow2(-1), Dyadic::new(3, 4));
        assert!(a < b);
    }
}
