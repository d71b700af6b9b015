//! Exact rational helpers shared by every module: canonical `p/q` text,
//! Pochhammer symbols, binomials, and [`PiScaled`] bookkeeping.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical text form, always `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn format_exact(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`. The result is reduced.
pub fn parse_exact(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("bad numerator in {s:?}"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("bad denominator in {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// Nearest `f64`; saturates to +-inf for values out of range.
pub fn to_f64(x: &BigRational) -> f64 {
    if let Some(v) = x.to_f64() {
        return v;
    }
    // num-rational gives up on huge operands; fall back to scaled bit lengths.
    let n = x.numer();
    let d = x.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let (n2, d2) = if shift > 0 {
        (n.clone(), d << (shift as u64))
    } else {
        (n << ((-shift) as u64), d.clone())
    };
    let m = BigRational::new(n2, d2).to_f64().unwrap_or(f64::NAN);
    m * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Integer binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial `C(x, k) = x (x-1) ... (x-k+1) / k!` for rational `x`.
pub fn binomial_rational(x: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = x.clone();
    for i in 0..k {
        acc *= &term;
        acc /= BigRational::from_integer(BigInt::from(i + 1));
        term -= BigRational::one();
    }
    acc
}

/// Nonnegative integer power of a rational.
pub fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// Greatest common divisor of the numerators and lcm of the denominators of a
/// family of rationals, returned as the single rational content.
pub fn content<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigRational {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        g = g.gcd(v.numer());
        l = l.lcm(v.denom());
    }
    if g.is_zero() {
        return BigRational::zero();
    }
    BigRational::new(g.abs(), l)
}

/// An exact quantity `value * pi^pi_exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiScaled {
    #[serde(with = "serde_exact")]
    pub value: BigRational,
    pub pi_exponent: i64,
}

impl PiScaled {
    pub fn new(value: BigRational, pi_exponent: i64) -> Self {
        Self { value, pi_exponent }
    }

    pub fn rational(value: BigRational) -> Self {
        Self::new(value, 0)
    }

    /// Sum of two quantities carrying the same power of pi. Zero values are
    /// exponent-neutral.
    pub fn checked_add(&self, other: &PiScaled) -> Result<PiScaled> {
        if self.value.is_zero() {
            return Ok(other.clone());
        }
        if other.value.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_exponent != other.pi_exponent {
            return Err(Error::PiExponentMismatch {
                left: self.pi_exponent,
                right: other.pi_exponent,
            });
        }
        Ok(PiScaled::new(&self.value + &other.value, self.pi_exponent))
    }

    pub fn checked_div(&self, other: &PiScaled) -> Option<PiScaled> {
        if other.value.is_zero() {
            return None;
        }
        Some(PiScaled::new(
            &self.value / &other.value,
            self.pi_exponent - other.pi_exponent,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.value) * std::f64::consts::PI.powi(self.pi_exponent as i32)
    }
}

impl Mul for &PiScaled {
    type Output = PiScaled;
    fn mul(self, rhs: &PiScaled) -> PiScaled {
        PiScaled::new(&self.value * &rhs.value, self.pi_exponent + rhs.pi_exponent)
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * pi^{}", format_exact(&self.value), self.pi_exponent)
    }
}

/// Serde adapters that write rationals as `"p/q"` strings.
pub mod serde_exact {
    use super::{format_exact, parse_exact, BigRational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_exact(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_exact(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&format_exact(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| parse_exact(s).map_err(D::Error::custom)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_text_is_reduced() {
        assert_eq!(format_exact(&rat(6, -4)), "-3/2");
        assert_eq!(format_exact(&int(1)), "1/1");
        assert_eq!(parse_exact("10/4").unwrap(), rat(5, 2));
        assert_eq!(parse_exact(" -7 ").unwrap(), int(-7));
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("x/2").is_err());
    }

    #[test]
    fn pochhammer_and_binomials() {
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&int(1), 4), int(24));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        // C(-1/2, 2) = (-1/2)(-3/2)/2 = 3/8
        assert_eq!(binomial_rational(&rat(-1, 2), 2), rat(3, 8));
    }

    #[test]
    fn pi_scaled_sums_require_equal_exponents() {
        let a = PiScaled::new(rat(1, 2), -1);
        let b = PiScaled::new(rat(1, 3), -1);
        assert_eq!(a.checked_add(&b).unwrap(), PiScaled::new(rat(5, 6), -1));
        let c = PiScaled::new(rat(1, 3), -2);
        assert!(matches!(
            a.checked_add(&c),
            Err(Error::PiExponentMismatch { .. })
        ));
        assert_eq!(&a * &c, PiScaled::new(rat(1, 6), -3));
    }

    #[test]
    fn huge_values_convert_to_float() {
        let big = BigRational::new(BigInt::from(3).pow(2000), BigInt::from(3).pow(1999) * 2);
        assert!((to_f64(&big) - 1.5).abs() < 1e-12);
    }

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn text_round_trip(a in small_rat()) {
            prop_assert_eq!(parse_exact(&format_exact(&a)).unwrap(), a);
        }
    }
}
