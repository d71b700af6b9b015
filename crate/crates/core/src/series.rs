//! Dense truncated power series in one to three variables.
//!
//! Truncation is by box: a series of order `N` stores every coefficient
//! whose exponents are each at most `N`. Monomials outside the box form an
//! ideal, so ring operations on truncated series are exact inside the box.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_exact, BigRational};

pub type Exps = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    arity: usize,
    order: usize,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(arity: usize, order: usize) -> Self {
        assert!((1..=3).contains(&arity), "arity must be 1, 2 or 3");
        let len = (order + 1).pow(arity as u32);
        Self {
            arity,
            order,
            coeffs: vec![BigRational::zero(); len],
        }
    }

    pub fn constant(arity: usize, order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(arity, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(arity: usize, order: usize) -> Self {
        Self::constant(arity, order, BigRational::one())
    }

    /// `c * w^e`, or zero if `e` lies outside the box.
    pub fn monomial(arity: usize, order: usize, e: &[usize], c: BigRational) -> Self {
        let mut s = Self::zero(arity, order);
        if e.iter().all(|&k| k <= order) {
            s.set(e, c);
        }
        s
    }

    /// The variable `w_var` (0-based).
    pub fn variable(arity: usize, order: usize, var: usize) -> Self {
        let mut e = [0; 3];
        e[var] = 1;
        Self::monomial(arity, order, &e[..arity], BigRational::one())
    }

    /// Builds a series from sparse `(exponents, coefficient)` terms; terms
    /// outside the box are dropped and repeated exponents accumulate.
    pub fn from_terms<'a, I>(arity: usize, order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a [usize], BigRational)>,
    {
        let mut s = Self::zero(arity, order);
        for (e, c) in terms {
            assert_eq!(e.len(), arity);
            if e.iter().all(|&k| k <= order) {
                let i = s.index(e);
                s.coeffs[i] += c;
            }
        }
        s
    }

    pub fn from_fn(arity: usize, order: usize, mut f: impl FnMut(&[usize]) -> BigRational) -> Self {
        let mut s = Self::zero(arity, order);
        for i in 0..s.coeffs.len() {
            let e = s.exps(i);
            s.coeffs[i] = f(&e[..arity]);
        }
        s
    }

    /// Univariate series from its coefficient list (truncated or zero-padded).
    pub fn from_univariate(order: usize, coeffs: &[BigRational]) -> Self {
        let mut s = Self::zero(1, order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        s
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn stride(&self, var: usize) -> usize {
        (self.order + 1).pow((self.arity - 1 - var) as u32)
    }

    fn index(&self, e: &[usize]) -> usize {
        e.iter().fold(0, |acc, &k| acc * (self.order + 1) + k)
    }

    fn exps(&self, mut i: usize) -> Exps {
        let mut e = [0; 3];
        for v in (0..self.arity).rev() {
            e[v] = i % (self.order + 1);
            i /= self.order + 1;
        }
        e
    }

    /// Coefficient of `w^e`; panics if `e` lies outside the box.
    pub fn coeff(&self, e: &[usize]) -> &BigRational {
        assert_eq!(e.len(), self.arity, "exponent arity");
        assert!(e.iter().all(|&k| k <= self.order), "exponent {e:?} outside box of order {}", self.order);
        &self.coeffs[self.index(e)]
    }

    pub fn get(&self, e: &[usize]) -> Option<&BigRational> {
        if e.len() == self.arity && e.iter().all(|&k| k <= self.order) {
            Some(&self.coeffs[self.index(e)])
        } else {
            None
        }
    }

    pub fn set(&mut self, e: &[usize], c: BigRational) {
        let i = self.index(e);
        self.coeffs[i] = c;
    }

    pub fn constant_term(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in increasing row-major exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exps, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.exps(i), c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    /// Same series viewed at a different box order (truncating or zero-padding).
    pub fn with_order(&self, order: usize) -> Self {
        let mut s = Self::zero(self.arity, order);
        for (e, c) in self.terms() {
            if e[..self.arity].iter().all(|&k| k <= order) {
                s.set(&e[..self.arity], c.clone());
            }
        }
        s
    }

    /// Re-embeds into a series of higher arity; variable `i` of `self`
    /// becomes variable `positions[i]` of the result.
    pub fn embed(&self, arity: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.arity);
        let mut s = Self::zero(arity, self.order);
        for (e, c) in self.terms() {
            let mut f = [0; 3];
            for (i, &p) in positions.iter().enumerate() {
                f[p] += e[i];
            }
            s.set(&f[..arity], c.clone());
        }
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        self.with_coeffs(coeffs)
    }

    fn with_coeffs(&self, coeffs: Vec<BigRational>) -> Self {
        Self {
            arity: self.arity,
            order: self.order,
            coeffs,
        }
    }

    /// Coefficientwise product truncated to the common box.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let nz_a: Vec<(usize, Exps)> = self.nonzero_slots();
        let nz_b: Vec<(usize, Exps)> = other.nonzero_slots();
        let mut out = Self::zero(self.arity, self.order);
        for &(i, ei) in &nz_a {
            let a = &self.coeffs[i];
            for &(j, ej) in &nz_b {
                if (0..self.arity).all(|v| ei[v] + ej[v] <= self.order) {
                    out.coeffs[i + j] += a * &other.coeffs[j];
                }
            }
        }
        Ok(out)
    }

    fn nonzero_slots(&self) -> Vec<(usize, Exps)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| (i, self.exps(i)))
            .collect()
    }

    /// Exact quotient `self / d`; cost is proportional to the number of
    /// nonzero terms of `d`.
    pub fn div(&self, d: &Self) -> Result<Self> {
        self.check_compatible(d)?;
        let d0 = d.coeffs[0].clone();
        if d0.is_zero() {
            return Err(Error::SingularSeries);
        }
        let inv_d0 = d0.recip();
        let tail: Vec<(usize, Exps)> = d.nonzero_slots().into_iter().filter(|&(i, _)| i != 0).collect();
        let mut out = Self::zero(self.arity, self.order);
        for k in 0..out.coeffs.len() {
            let ek = out.exps(k);
            let mut acc = self.coeffs[k].clone();
            for &(j, ej) in &tail {
                if (0..self.arity).all(|v| ej[v] <= ek[v]) {
                    acc -= &d.coeffs[j] * &out.coeffs[k - j];
                }
            }
            out.coeffs[k] = acc * &inv_d0;
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        Self::one(self.arity, self.order).div(self)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: usize) -> Self {
        let mut acc = Self::one(self.arity, self.order);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    /// `self^(-1/2)` by Newton iteration `y <- y (3 - a y^2) / 2`, doubling
    /// the box order at each level. The constant term must be 1.
    pub fn inv_sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant(format_exact(&self.coeffs[0])));
        }
        let target = self.order;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let three = BigRational::from_integer(BigInt::from(3));
        let mut level = 0;
        let mut y = Self::one(self.arity, 0);
        while level < target {
            let next = (2 * level + 1).min(target);
            let a = self.with_order(next);
            y = y.with_order(next);
            // y is exact for every monomial of total degree <= level.
            let mut correct_below = level + 1;
            while correct_below <= self.arity * next {
                let ay2 = a.mul(&y.mul(&y)?)?;
                let factor = Self::constant(self.arity, next, three.clone()).sub(&ay2)?;
                y = y.mul(&factor)?.scale(&half);
                correct_below *= 2;
            }
            level = next;
        }
        Ok(y)
    }

    /// `self^(1/2)` as `self * self^(-1/2)`. The constant term must be 1.
    pub fn sqrt(&self) -> Result<Self> {
        self.mul(&self.inv_sqrt()?)
    }

    /// Partial derivative in `var`; the result has box order `order - 1`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.arity);
        let order = self.order.saturating_sub(1);
        let mut out = Self::zero(self.arity, order);
        if self.order == 0 {
            return out;
        }
        for k in 0..out.coeffs.len() {
            let mut e = out.exps(k);
            let m = e[var] + 1;
            e[var] = m;
            let src = self.index(&e[..self.arity]);
            out.coeffs[k] = &self.coeffs[src] * BigRational::from_integer(BigInt::from(m));
        }
        out
    }

    /// Multiplies by `w_var`, dropping terms pushed out of the box.
    pub fn shift(&self, var: usize) -> Self {
        let mut out = Self::zero(self.arity, self.order);
        let stride = self.stride(var);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if self.exps(i)[var] < self.order {
                out.coeffs[i + stride] = c.clone();
            }
        }
        out
    }

    /// Univariate coefficient list; panics for arity > 1.
    pub fn univariate_coeffs(&self) -> &[BigRational] {
        assert_eq!(self.arity, 1);
        &self.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn uni(order: usize, c: &[BigRational]) -> TruncatedSeries {
        TruncatedSeries::from_univariate(order, c)
    }

    fn legendre_third_quadratic(order: usize) -> TruncatedSeries {
        uni(order, &[int(1), rat(-2, 3), int(1)])
    }

    #[test]
    fn telescoping_product() {
        let a = uni(2, &[int(1), int(1)]);
        let b = uni(2, &[int(1), int(-1)]);
        assert_eq!(a.mul(&b).unwrap(), uni(2, &[int(1), int(0), int(-1)]));
    }

    #[test]
    fn unit_is_identity() {
        let g = uni(5, &[int(1), rat(1, 3), rat(7, 27), int(0), rat(-2, 9)]);
        assert_eq!(g.mul(&TruncatedSeries::one(1, 5)).unwrap(), g);
    }

    #[test]
    fn inverse_square_root_squares_back() {
        let a = legendre_third_quadratic(20);
        let y = a.inv_sqrt().unwrap();
        let check = y.mul(&y).unwrap().mul(&a).unwrap();
        assert_eq!(check, TruncatedSeries::one(1, 20));
        assert_eq!(y.coeff(&[1]), &rat(1, 3));
        assert_eq!(y.coeff(&[2]), &rat(-1, 3));
        // P_3(1/3) = -11/27
        assert_eq!(y.coeff(&[3]), &rat(-11, 27));
    }

    #[test]
    fn geometric_inverses() {
        let a = uni(6, &[int(1), int(0), int(-1)]);
        let inv = a.inv().unwrap();
        let expect: Vec<_> = (0..=6).map(|k| if k % 2 == 0 { int(1) } else { int(0) }).collect();
        assert_eq!(inv, uni(6, &expect));

        let four = a.scale(&int(4)).inv().unwrap();
        assert_eq!(four.coeff(&[0]), &rat(1, 4));
        assert_eq!(four.coeff(&[2]), &rat(1, 4));
        assert_eq!(four.coeff(&[3]), &int(0));

        let one = TruncatedSeries::one(3, 5);
        let w1w3 = TruncatedSeries::monomial(3, 5, &[1, 0, 1], int(1));
        let inv3 = one.sub(&w1w3).unwrap().inv().unwrap();
        for (e, c) in inv3.terms() {
            assert_eq!(e[0], e[2]);
            assert_eq!(e[1], 0);
            assert_eq!(c, &int(1));
        }
        assert_eq!(inv3.terms().count(), 6);
    }

    #[test]
    fn binomial_square_root() {
        let s = uni(2, &[int(1), int(1)]).sqrt().unwrap();
        assert_eq!(s, uni(2, &[int(1), rat(1, 2), rat(-1, 8)]));
    }

    #[test]
    fn shape_and_domain_errors() {
        let a = TruncatedSeries::one(1, 3);
        let b = TruncatedSeries::one(2, 3);
        let c = TruncatedSeries::one(1, 4);
        assert!(matches!(a.mul(&b), Err(Error::ArityMismatch { .. })));
        assert!(matches!(a.mul(&c), Err(Error::OrderMismatch { .. })));
        let w = TruncatedSeries::variable(1, 3, 0);
        assert_eq!(w.inv(), Err(Error::SingularSeries));
        assert!(matches!(a.scale(&int(4)).sqrt(), Err(Error::NonUnitConstant(_))));
    }

    #[test]
    fn bivariate_square_root() {
        // (1 + x + y)^(1/2) squared
        let a = TruncatedSeries::from_terms(
            2,
            6,
            [(&[0usize, 0][..], int(1)), (&[1, 0][..], int(1)), (&[0, 1][..], int(1))],
        );
        let s = a.sqrt().unwrap();
        assert_eq!(s.mul(&s).unwrap(), a);
        // coefficient of xy is 2 * C(1/2, 2) = -1/4
        assert_eq!(s.coeff(&[1, 1]), &rat(-1, 4));
    }

    #[test]
    fn derivative_and_shift() {
        let a = TruncatedSeries::from_terms(2, 3, [(&[2usize, 1][..], int(5)), (&[0, 3][..], int(2))]);
        let dx = a.derivative(0);
        assert_eq!(dx.order(), 2);
        assert_eq!(dx.coeff(&[1, 1]), &int(10));
        let dy = a.derivative(1);
        assert_eq!(dy.coeff(&[2, 0]), &int(5));
        assert_eq!(dy.coeff(&[0, 2]), &int(6));
        let sx = a.shift(0);
        assert_eq!(sx.coeff(&[3, 1]), &int(5));
        assert_eq!(sx.coeff(&[1, 3]), &int(2));
    }

    fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec((-9i64..10, 1i64..6), order).prop_map(move |v| {
            let mut c = vec![int(1)];
            c.extend(v.into_iter().map(|(n, d)| rat(n, d)));
            TruncatedSeries::from_univariate(order, &c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn sqrt_squares_back(a in (0usize..=40).prop_flat_map(unit_series)) {
            let s = a.sqrt().unwrap();
            prop_assert_eq!(s.mul(&s).unwrap(), a);
        }

        #[test]
        fn inverse_is_involution(a in (0usize..=40).prop_flat_map(unit_series), k in 1i64..7) {
            let a = a.scale(&rat(k, 2));
            prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a);
        }
    }
}
