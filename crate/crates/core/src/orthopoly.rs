//! Gegenbauer, Legendre and Laguerre machinery over exact rationals, plus
//! exact Gaussian moments.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::poly::MultiPoly;
use crate::rational::{factorial, pochhammer, rat, BigRational, PiScaled};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthoFamily {
    /// `C_n^lambda`
    Gegenbauer(BigRational),
    /// `L_n^(alpha)`
    Laguerre(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoPolySpec {
    pub family: OrthoFamily,
    pub degree: usize,
}

impl OrthoPolySpec {
    pub fn coeffs(&self) -> MultiPoly {
        match &self.family {
            OrthoFamily::Gegenbauer(l) => gegenbauer_coeffs(self.degree, l),
            OrthoFamily::Laguerre(a) => laguerre_coeffs(self.degree, a),
        }
    }
}

fn r(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients of `C_n^lambda(z)` from the three-term recurrence
/// `(m+1) C_{m+1} = 2(m+lambda) z C_m - (m+2 lambda-1) C_{m-1}`.
pub fn gegenbauer_coeffs(n: usize, lambda: &BigRational) -> MultiPoly {
    MultiPoly::univariate(&gegenbauer_dense(n, lambda))
}

pub(crate) fn gegenbauer_dense(n: usize, lambda: &BigRational) -> Vec<BigRational> {
    let mut prev = vec![BigRational::one()];
    if n == 0 {
        return prev;
    }
    let two = r(2);
    let mut cur = vec![BigRational::zero(), &two * lambda];
    for m in 1..n {
        let a = &two * (r(m) + lambda);
        let b = r(m) + &two * lambda - BigRational::one();
        let mut next = vec![BigRational::zero(); m + 2];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += &a * c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= &b * c;
        }
        let inv = r(m + 1).recip();
        for c in &mut next {
            *c *= &inv;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Exact values `C_0^lambda(x), ..., C_N^lambda(x)` by the value recurrence.
pub fn gegenbauer_values(x: &BigRational, lambda: &BigRational, n_max: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(BigRational::one());
    if n_max == 0 {
        return out;
    }
    let two = r(2);
    out.push(&two * lambda * x);
    for m in 1..n_max {
        let a = &two * (r(m) + lambda) * x;
        let b = r(m) + &two * lambda - BigRational::one();
        let next = (&a * &out[m] - &b * &out[m - 1]) / r(m + 1);
        out.push(next);
    }
    out
}

/// Coefficients of `L_n^(alpha)(z)` from
/// `(m+1) L_{m+1} = (2m+1+alpha-z) L_m - (m+alpha) L_{m-1}`.
pub fn laguerre_coeffs(n: usize, alpha: &BigRational) -> MultiPoly {
    MultiPoly::univariate(&laguerre_dense(n, alpha))
}

pub(crate) fn laguerre_dense(n: usize, alpha: &BigRational) -> Vec<BigRational> {
    let mut prev = vec![BigRational::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigRational::one() + alpha, -BigRational::one()];
    for m in 1..n {
        let a = r(2 * m + 1) + alpha;
        let b = r(m) + alpha;
        let mut next = vec![BigRational::zero(); m + 2];
        for (k, c) in cur.iter().enumerate() {
            next[k] += &a * c;
            next[k + 1] -= c;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= &b * c;
        }
        let inv = r(m + 1).recip();
        for c in &mut next {
            *c *= &inv;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `int x^(2m) exp(-pi x^2) dx = (1/2)_m pi^(-m)` over the real line.
pub fn gaussian_moment(m: usize) -> PiScaled {
    PiScaled::new(pochhammer(&rat(1, 2), m), -(m as i64))
}

/// `int x^(2r) p(pi x^2) exp(-pi x^2) dx` for a univariate polynomial `p`,
/// accumulated term by term with checked powers of pi.
pub fn weighted_gaussian_integral(p: &MultiPoly, r: usize) -> Result<PiScaled> {
    let mut acc = PiScaled::rational(BigRational::zero());
    for (e, c) in p.terms() {
        let k = e[0] as usize;
        let term = &PiScaled::new(c.clone(), k as i64) * &gaussian_moment(k + r);
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// `||x^r L_n^(r-1/2)(pi x^2) exp(-pi x^2 / 2)||^2 = (1/2)_{n+r} / n! * pi^(-r)`.
pub fn laguerre_norm(n: usize, r: usize) -> PiScaled {
    let v = pochhammer(&rat(1, 2), n + r) / BigRational::from_integer(factorial(n));
    PiScaled::new(v, -(r as i64))
}

/// Streams `q_n = 6^n P_n(1/3)`, which are integers, via
/// `(n+1) q_{n+1} = 2(2n+1) q_n - 36 n q_{n-1}`.
#[derive(Debug, Clone)]
pub struct ScaledLegendreThird {
    n: usize,
    prev: BigInt,
    cur: BigInt,
}

impl ScaledLegendreThird {
    pub fn new() -> Self {
        Self {
            n: 0,
            prev: BigInt::zero(),
            cur: BigInt::one(),
        }
    }

    /// `P_n(1/3)` as an exact rational.
    pub fn to_rational(n: usize, q: &BigInt) -> BigRational {
        BigRational::new(q.clone(), BigInt::from(6).pow(n as u32))
    }
}

impl Default for ScaledLegendreThird {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for ScaledLegendreThird {
    type Item = (usize, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, self.cur.clone());
        let n = self.n as u64;
        let next = if n == 0 {
            BigInt::from(2)
        } else {
            let t: BigInt = &self.cur * (2 * (2 * n + 1)) - &self.prev * (36 * n);
            let (q, rem) = (&t / (n + 1), &t % (n + 1));
            debug_assert!(rem.is_zero());
            q
        };
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n += 1;
        Some(out)
    }
}

/// Outcome of the rational sufficient test
/// `P_n(1/3)^2 n (355/113)(141422/100000) <= 3` over `1 <= n <= n_max`.
#[derive(Debug, Clone, Serialize)]
pub struct BernsteinReport {
    pub n_max: usize,
    pub failures: Vec<usize>,
    /// Largest observed `P_n(1/3)^2 n pi sqrt(2) / 3` (float, for display).
    pub max_ratio: f64,
    pub argmax: usize,
    /// How many indices needed the full-width exact comparison.
    pub exact_fallbacks: usize,
}

impl BernsteinReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const PI_UPPER: (u64, u64) = (355, 113);
const SQRT2_UPPER: (u64, u64) = (141_422, 100_000);

fn top_bits(x: &BigUint, keep: u64) -> (BigUint, u64) {
    let bits = x.bits();
    if bits <= keep {
        (x.clone(), 0)
    } else {
        let s = bits - keep;
        (x >> s, s)
    }
}

/// Checks the sufficient Bernstein test for every `1 <= n <= n_max`.
///
/// Each index is first decided from 64-bit truncations that over-estimate
/// the left side and under-estimate the right side; only when that is
/// inconclusive is the full-width comparison performed.
pub fn bernstein_tail_check(n_max: usize) -> BernsteinReport {
    let k_right = BigUint::from(3 * PI_UPPER.1 * SQRT2_UPPER.1);
    let mut nine_pow = BigUint::one();
    let mut report = BernsteinReport {
        n_max,
        failures: Vec::new(),
        max_ratio: 0.0,
        argmax: 0,
        exact_fallbacks: 0,
    };
    let const_ratio = std::f64::consts::PI * std::f64::consts::SQRT_2 / 3.0;
    for (n, q) in ScaledLegendreThird::new().take(n_max + 1) {
        if n > 0 {
            nine_pow *= 9u32;
        }
        if n == 0 {
            continue;
        }
        let q = q.magnitude();
        let k_left = BigUint::from(n as u64) * PI_UPPER.0 * SQRT2_UPPER.0;

        let (qh, s) = top_bits(q, 64);
        let (nh, t) = top_bits(&nine_pow, 64);
        let q_up = if s == 0 { qh.clone() } else { &qh + 1u32 };
        let lhs = &q_up * &q_up * &k_left;
        let rhs = &nh * &k_right;
        let e_l = 2 * s;
        let e_r = t + 2 * n as u64;
        let fast_pass = if e_r >= e_l {
            lhs <= rhs << (e_r - e_l)
        } else {
            (lhs << (e_l - e_r)) <= rhs
        };

        let ratio = {
            let qf = qh.to_f64().unwrap_or(f64::INFINITY);
            let nf = nh.to_f64().unwrap_or(f64::INFINITY);
            let log2 = 2.0 * qf.log2() + 2.0 * s as f64 - nf.log2() - t as f64 - 2.0 * n as f64;
            2f64.powf(log2) * n as f64 * const_ratio
        };
        if ratio > report.max_ratio {
            report.max_ratio = ratio;
            report.argmax = n;
        }

        if !fast_pass {
            report.exact_fallbacks += 1;
            let lhs = q * q * &k_left;
            let rhs = (&nine_pow << (2 * n as u64)) * &k_right;
            if lhs > rhs {
                report.failures.push(n);
            }
        }
    }
    report
}

/// Signed `P_n(1/3)` as a float, from the scaled integer.
pub fn scaled_third_to_f64(n: usize, q: &BigInt) -> f64 {
    let sign = if q.sign() == Sign::Minus { -1.0 } else { 1.0 };
    let (qh, s) = top_bits(q.magnitude(), 60);
    let qf = qh.to_f64().unwrap_or(0.0);
    if qf == 0.0 {
        return 0.0;
    }
    sign * 2f64.powf(qf.log2() + s as f64 - n as f64 * 6f64.log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::series::TruncatedSeries;

    #[test]
    fn gegenbauer_coefficient_examples() {
        let half = rat(1, 2);
        assert_eq!(gegenbauer_coeffs(0, &half), MultiPoly::one(1));
        assert_eq!(gegenbauer_coeffs(2, &half), MultiPoly::univariate(&[rat(-1, 2), int(0), rat(3, 2)]));
        for l in [rat(1, 2), int(1), rat(7, 3)] {
            assert_eq!(
                gegenbauer_coeffs(1, &l),
                MultiPoly::univariate(&[int(0), &l * int(2)])
            );
        }
    }

    #[test]
    fn gegenbauer_value_examples() {
        let half = rat(1, 2);
        assert!(gegenbauer_values(&int(1), &half, 50).iter().all(|v| v == &int(1)));
        let v = gegenbauer_values(&rat(1, 3), &half, 5);
        assert_eq!(v[3], rat(-11, 27));
        assert_eq!(v[5], rat(1, 3));
    }

    #[test]
    fn values_agree_with_coefficients() {
        let half = rat(1, 2);
        for x in [rat(1, 3), rat(-2, 5), rat(7, 4)] {
            let v = gegenbauer_values(&x, &half, 200);
            for n in (0..=200).step_by(7) {
                assert_eq!(gegenbauer_coeffs(n, &half).eval(std::slice::from_ref(&x)), v[n], "n = {n}");
            }
        }
    }

    #[test]
    fn gegenbauer_generating_function() {
        let order = 24;
        for lambda in [rat(1, 2), int(1), rat(3, 2)] {
            for x in [int(1), rat(1, 3), rat(-1, 3)] {
                // (1 - 2xw + w^2)^(-lambda) built from series primitives.
                let base = TruncatedSeries::from_univariate(order, &[int(1), -&x * int(2), int(1)]);
                let inv_sqrt = base.inv_sqrt().unwrap();
                let expansion = if lambda == rat(1, 2) {
                    inv_sqrt
                } else if lambda == int(1) {
                    base.inv().unwrap()
                } else {
                    base.inv().unwrap().mul(&inv_sqrt).unwrap()
                };
                let values = gegenbauer_values(&x, &lambda, order);
                assert_eq!(expansion.univariate_coeffs(), values.as_slice(), "lambda {lambda}, x {x}");
            }
        }
    }

    #[test]
    fn laguerre_examples() {
        for a in [rat(-1, 2), rat(1, 2)] {
            assert_eq!(laguerre_coeffs(0, &a), MultiPoly::one(1));
            assert_eq!(
                laguerre_coeffs(1, &a),
                MultiPoly::univariate(&[int(1) + &a, int(-1)])
            );
        }
        assert_eq!(
            laguerre_coeffs(1, &rat(1, 2)),
            MultiPoly::univariate(&[rat(3, 2), int(-1)])
        );
    }

    #[test]
    fn laguerre_generating_series() {
        // sum_n L_n^(a)(z) t^n = (1-t)^(-a-1) exp(-z t / (1-t)), as a series in (z, t).
        let order = 10;
        for r in 0..2usize {
            let alpha = rat(2 * r as i64 - 1, 2);
            let one = TruncatedSeries::one(2, order);
            let t = TruncatedSeries::variable(2, order, 1);
            let one_minus_t = one.sub(&t).unwrap();
            let mut prefactor = one_minus_t.inv_sqrt().unwrap();
            if r == 1 {
                prefactor = prefactor.mul(&one_minus_t.inv().unwrap()).unwrap();
            }
            let arg = TruncatedSeries::variable(2, order, 0)
                .mul(&t)
                .unwrap()
                .div(&one_minus_t)
                .unwrap()
                .neg();
            let mut exp = TruncatedSeries::zero(2, order);
            let mut power = one.clone();
            for k in 0..=order {
                exp = exp.add(&power.scale(&BigRational::from_integer(factorial(k)).recip())).unwrap();
                power = power.mul(&arg).unwrap();
            }
            let gen = prefactor.mul(&exp).unwrap();
            for n in 0..=order {
                let l = laguerre_coeffs(n, &alpha);
                for k in 0..=order {
                    assert_eq!(gen.coeff(&[k, n]), &l.coeff_univariate(k), "n={n} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn moment_examples() {
        assert_eq!(gaussian_moment(0), PiScaled::new(int(1), 0));
        assert_eq!(gaussian_moment(1), PiScaled::new(rat(1, 2), -1));
        assert_eq!(gaussian_moment(3), PiScaled::new(rat(15, 8), -3));
    }

    #[test]
    fn laguerre_orthogonality() {
        for r in 0..2usize {
            let alpha = rat(2 * r as i64 - 1, 2);
            let polys: Vec<MultiPoly> = (0..=8).map(|n| laguerre_coeffs(n, &alpha)).collect();
            for m in 0..=8 {
                for n in 0..=8 {
                    let v = weighted_gaussian_integral(&polys[m].mul(&polys[n]), r).unwrap();
                    if m == n {
                        assert_eq!(v, laguerre_norm(n, r));
                        assert_eq!(v.pi_exponent, -(r as i64));
                    } else {
                        assert!(v.value.is_zero(), "m={m} n={n} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn scaled_sweep_matches_rational_recurrence() {
        let exact = gegenbauer_values(&rat(1, 3), &rat(1, 2), 300);
        for (n, q) in ScaledLegendreThird::new().take(301) {
            assert_eq!(ScaledLegendreThird::to_rational(n, &q), exact[n]);
            let f = scaled_third_to_f64(n, &q);
            assert!((f - crate::rational::to_f64(&exact[n])).abs() < 1e-12);
        }
    }

    #[test]
    fn bernstein_small_range() {
        let rep = bernstein_tail_check(3000);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.max_ratio < 1.0 && rep.max_ratio > 0.5);
    }
}
