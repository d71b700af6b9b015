//! Exact multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{content, format_exact, BigRational};

/// Polynomial in `x_1..x_dim`. Terms are keyed by exponent vectors and no
/// stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `x_{i+1}` (0-based index `i`).
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(coeffs: &[BigRational]) -> Self {
        let mut p = Self::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `x^k` of a univariate polynomial.
    pub fn coeff_univariate(&self, k: usize) -> BigRational {
        assert_eq!(self.dim, 1);
        self.coeff(&[k as u32])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|k| k == d),
        }
    }

    /// `Some(true)` if every term is odd in `x_{i+1}`, `Some(false)` if every
    /// term is even, `None` for mixed parity or the zero polynomial.
    pub fn parity_in(&self, i: usize) -> Option<bool> {
        let mut it = self.terms.keys().map(|e| e[i] % 2 == 1);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Leading term under lexicographic order on exponent vectors.
    pub fn leading(&self) -> Option<(&[u32], &BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.dim), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c * BigRational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Exact Laplacian `sum_j d^2 p / dx_j^2`.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            for j in 0..self.dim {
                if e[j] < 2 {
                    continue;
                }
                let mut f = e.clone();
                f[j] -= 2;
                let k = BigInt::from(e[j]) * BigInt::from(e[j] - 1);
                out.add_term(f, c * BigRational::from_integer(k));
            }
        }
        out
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.dim);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Keeps the terms odd in `x_1..x_kappa` and even in the remaining
    /// variables.
    pub fn parity_part(&self, kappa: usize) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().enumerate().all(|(i, &k)| (k % 2 == 1) == (i < kappa)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits `self = scale * primitive` where `primitive` has coprime
    /// integer coefficients and a positive lexicographic leading coefficient.
    pub fn primitive(&self) -> Option<(BigRational, Self)> {
        let (_, lead) = self.leading()?;
        let mut c = content(self.terms.values());
        if lead.is_negative() {
            c = -c;
        }
        Some((c.clone(), self.scale(&c.recip())))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_exact(c))?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(x(0).pow(2).laplacian(), MultiPoly::constant(3, int(2)));
        assert!(x(0).mul(&x(1)).mul(&x(2)).laplacian().is_zero());
        assert_eq!(x(0).pow(3).laplacian(), x(0).scale(&int(6)));
    }

    #[test]
    fn primitive_normalization() {
        let p = x(0).scale(&rat(-3, 4)).add(&x(1).scale(&rat(3, 2)));
        let (s, q) = p.primitive().unwrap();
        assert_eq!(s, rat(-3, 4));
        assert_eq!(q, x(0).sub(&x(1).scale(&int(2))));
        assert!(MultiPoly::zero(3).primitive().is_none());
    }

    #[test]
    fn parity_and_degree_queries() {
        let p = x(0).mul(&x(1).pow(2)).add(&x(0).pow(3));
        assert_eq!(p.degree(), Some(3));
        assert!(p.is_homogeneous());
        assert_eq!(p.parity_in(0), Some(true));
        assert_eq!(p.parity_in(1), Some(false));
        assert_eq!(p.parity_in(2), Some(false));
        assert_eq!(p.parity_part(1), p);
        assert!(p.parity_part(2).is_zero());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(((0u32..4, 0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(3, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], int(k))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn laplacian_is_linear(p in small_poly(), q in small_poly(), k in -4i64..5) {
            let lhs = p.scale(&int(k)).add(&q).laplacian();
            let rhs = p.laplacian().scale(&int(k)).add(&q.laplacian());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn laplacian_product_rule(p in small_poly(), q in small_poly()) {
            // D(pq) = pDq + qDp + 2 grad p . grad q
            let mut rhs = p.mul(&q.laplacian()).add(&q.mul(&p.laplacian()));
            for j in 0..3 {
                rhs = rhs.add(&p.derivative(j).mul(&q.derivative(j)).scale(&int(2)));
            }
            prop_assert_eq!(p.mul(&q).laplacian(), rhs);
        }
    }
}
