//! Linear maps on binary forms encoded by a three-variable series `F`.
//!
//! `R_S(a, b) = [w1^a w2^(S-a) w3^b] F` describes a map `Phi_F` on forms of
//! degree `S` in `u, v`. `F` is special when `Phi_F` commutes with
//! multiplication by `u + v`; equivalently `F` solves a first order linear
//! PDE, its coefficients obey a three-term recursion, or its image
//! `H(x, y, z)` under a change of variables is free of `z`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, UniPoly};
use crate::rational::{binomial, int, BigRational};
use crate::series::TruncatedSeries;

fn need_order(s: &TruncatedSeries, need: usize) -> Result<()> {
    if s.order() < need {
        return Err(Error::InsufficientOrder { have: s.order(), need });
    }
    Ok(())
}

fn need_arity(s: &TruncatedSeries, arity: usize) -> Result<()> {
    if s.arity() != arity {
        return Err(Error::ArityMismatch { left: s.arity(), right: arity });
    }
    Ok(())
}

fn binom_q(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

/// `1 / ((1 - w2)(1 - w1 w3))`, the series of the identity map.
pub fn identity_f(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(3, order, |e| {
        if e[0] == e[2] {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// `1 / (1 + y - x y)`, the two-variable image of [`identity_f`].
pub fn identity_h(order: usize) -> TruncatedSeries {
    // [x^i y^j] = (-1)^(j-i) C(j, i)
    TruncatedSeries::from_fn(2, order, |e| {
        let (i, j) = (e[0], e[1]);
        if i > j {
            return BigRational::zero();
        }
        let b = binom_q(j, i);
        if (j - i) % 2 == 0 {
            b
        } else {
            -b
        }
    })
}

/// `R_S` with rows indexed by `a` and columns by `b`.
pub fn build_rs(f: &TruncatedSeries, s: usize) -> Result<ExactMatrix> {
    need_arity(f, 3)?;
    need_order(f, s)?;
    Ok(ExactMatrix::from_fn(s + 1, |a, b| f.coeff(&[a, s - a, b]).clone()))
}

/// Matrix of `Phi_F` on the monomials `u^b v^(S-b)` (column `a` is the image
/// of `u^a v^(S-a)`).
pub fn phi_matrix(f: &TruncatedSeries, s: usize) -> Result<ExactMatrix> {
    let r = build_rs(f, s)?;
    Ok(ExactMatrix::from_fn(s + 1, |b, a| binom_q(s, b) * r.get(a, b) / binom_q(s, a)))
}

/// Checks `Phi_F[(u+v) p] = (u+v) Phi_F[p]` on every monomial of degree `S`.
pub fn commute_check(f: &TruncatedSeries, s: usize) -> Result<bool> {
    commute_rows(f, s, s + 1)
}

/// The commutation identity for degree `S`, restricted to the coefficients
/// of `u^b v^(S+1-b)` with `b <= b_max`. The `(S, a, b)` entry involves
/// exactly the coefficients of the recursion at `(a, S-a, b)`.
fn commute_rows(f: &TruncatedSeries, s: usize, b_max: usize) -> Result<bool> {
    need_order(f, s + 1)?;
    let lo = phi_matrix(f, s)?;
    let hi = phi_matrix(f, s + 1)?;
    for a in 0..=s {
        // (u+v) u^a v^(S-a) = u^(a+1) v^(S-a) + u^a v^(S+1-a)
        for b in 0..=b_max.min(s + 1) {
            let left = hi.get(b, a + 1) + hi.get(b, a);
            let mut right = BigRational::zero();
            if b >= 1 {
                right += lo.get(b - 1, a);
            }
            if b <= s {
                right += lo.get(b, a);
            }
            if left != right {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(1-w1) F_1 + (1-w2) F_2 + w3 (1-w3) F_3 - (1+w3) F` at order `N - 1`.
pub fn lde_residual(f: &TruncatedSeries, n: usize) -> Result<TruncatedSeries> {
    need_arity(f, 3)?;
    need_order(f, n)?;
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let f = f.with_order(n);
    let d1 = f.derivative(0);
    let d2 = f.derivative(1);
    let d3 = f.derivative(2);
    let base = f.with_order(n - 1);
    let t1 = d1.sub(&d1.shift(0))?;
    let t2 = d2.sub(&d2.shift(1))?;
    let w3d3 = d3.shift(2);
    let t3 = w3d3.sub(&w3d3.shift(2))?;
    let t4 = base.add(&base.shift(2))?;
    t1.add(&t2)?.add(&t3)?.sub(&t4)
}

/// `(a+1)R(a+1,b,c) + (b+1)R(a,b+1,c) = c R(a,b,c-1) + (a+b-c+1) R(a,b,c)`
/// for every `a + b + c + 1 <= N`.
pub fn recursion_check(f: &TruncatedSeries, n: usize) -> Result<bool> {
    recursion_where(f, n, |_, _, _| true)
}

/// The recursion restricted to `c <= a + b + 1`, the relations that only
/// involve coefficients `[w1^a w2^b w3^c]` with `c <= a + b`. These are the
/// coefficients `Phi_F` reads, and this restricted recursion is equivalent
/// to commutation. The full recursion also pins down the remaining
/// coefficients, uniquely.
pub fn support_recursion_check(f: &TruncatedSeries, n: usize) -> Result<bool> {
    recursion_where(f, n, |a, b, c| c <= a + b + 1)
}

fn recursion_where(f: &TruncatedSeries, n: usize, keep: impl Fn(usize, usize, usize) -> bool) -> Result<bool> {
    need_arity(f, 3)?;
    need_order(f, n)?;
    for a in 0..n {
        for b in 0..n - a {
            for c in 0..n - a - b {
                if !keep(a, b, c) {
                    continue;
                }
                let r = |a: usize, b: usize, c: usize| f.coeff(&[a, b, c]);
                let left = int(a as i64 + 1) * r(a + 1, b, c) + int(b as i64 + 1) * r(a, b + 1, c);
                let mut right = int(a as i64 + b as i64 - c as i64 + 1) * r(a, b, c);
                if c > 0 {
                    right += int(c as i64) * r(a, b, c - 1);
                }
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FToH {
    /// The `z = 0` slice `H(x, y)`, exact through box order `N`.
    pub h: TruncatedSeries,
    /// Largest `M <= N` such that every coefficient `[x^i y^j z^k]` with
    /// `k >= 1` and `i + j + k <= M` vanishes.
    pub z_clean_through: usize,
    pub order: usize,
}

impl FToH {
    pub fn z_independent(&self) -> bool {
        self.z_clean_through == self.order
    }
}

/// `H(x,y,z) = (1-z)^2 / (1+y-z) * F(x+z-xz, z, y/(1+y-z))`.
pub fn f_to_h(f: &TruncatedSeries, n: usize) -> Result<FToH> {
    need_arity(f, 3)?;
    need_order(f, n)?;
    let f = f.with_order(n);
    // Variables (x, z) for the inner sums.
    let w1 = TruncatedSeries::from_terms(
        2,
        n,
        [(&[1usize, 0][..], int(1)), (&[0, 1][..], int(1)), (&[1, 1][..], int(-1))],
    );
    let denom = TruncatedSeries::from_terms(
        3,
        n,
        [(&[0usize, 0, 0][..], int(1)), (&[0, 1, 0][..], int(1)), (&[0, 0, 1][..], int(-1))],
    );
    let rho = |a: usize, c: usize| TruncatedSeries::from_fn(2, n, |e| {
        if e[0] == 0 {
            f.coeff(&[a, e[1], c]).clone()
        } else {
            BigRational::zero()
        }
    });
    let mut outer: Option<TruncatedSeries> = None;
    for c in (0..=n).rev() {
        let mut inner = rho(n, c);
        for a in (0..n).rev() {
            inner = inner.mul(&w1)?.add(&rho(a, c))?;
        }
        let p_c = inner.embed(3, &[0, 2]);
        outer = Some(match outer {
            None => p_c,
            Some(acc) => acc.shift(1).div(&denom)?.add(&p_c)?,
        });
    }
    let one_minus_z = TruncatedSeries::from_terms(3, n, [(&[0usize, 0, 0][..], int(1)), (&[0, 0, 1][..], int(-1))]);
    let full = outer
        .expect("n + 1 >= 1 terms")
        .mul(&one_minus_z)?
        .mul(&one_minus_z)?
        .div(&denom)?;

    let h = TruncatedSeries::from_fn(2, n, |e| full.coeff(&[e[0], e[1], 0]).clone());
    let mut first_bad = None;
    for (e, c) in full.terms() {
        let total = e[0] + e[1] + e[2];
        // Exact only where i + k <= N.
        if e[2] >= 1 && e[0] + e[2] <= n && total <= n && !c.is_zero() {
            first_bad = Some(first_bad.map_or(total, |t: usize| t.min(total)));
        }
    }
    Ok(FToH {
        h,
        z_clean_through: first_bad.map_or(n, |t| t - 1),
        order: n,
    })
}

/// `F = H((w1-w2)/(1-w2), w3(1-w2)/(1-w3)) / ((1-w2)(1-w3))` at box order
/// `N`. Every coefficient of `H` with `x`-degree up to `2N` contributes, so
/// `H` must have box order at least `2N`.
pub fn h_to_f(h: &TruncatedSeries, n: usize) -> Result<TruncatedSeries> {
    need_arity(h, 2)?;
    need_order(h, 2 * n)?;
    let one_minus_w2 = TruncatedSeries::from_terms(2, n, [(&[0usize, 0][..], int(1)), (&[0, 1][..], int(-1))]);
    let w1_minus_w2 = TruncatedSeries::from_terms(2, n, [(&[1usize, 0][..], int(1)), (&[0, 1][..], int(-1))]);
    let m = 2 * n;
    let mut outer: Option<TruncatedSeries> = None;
    let one_minus_w3 = TruncatedSeries::from_terms(3, n, [(&[0usize, 0, 0][..], int(1)), (&[0, 0, 1][..], int(-1))]);
    let y_num = TruncatedSeries::from_terms(3, n, [(&[0usize, 0, 1][..], int(1)), (&[0, 1, 1][..], int(-1))]);
    for j in (0..=n).rev() {
        let mut inner = TruncatedSeries::constant(2, n, h.coeff(&[m, j]).clone());
        for i in (0..m).rev() {
            inner = inner
                .mul(&w1_minus_w2)?
                .div(&one_minus_w2)?
                .add(&TruncatedSeries::constant(2, n, h.coeff(&[i, j]).clone()))?;
        }
        let q_j = inner.embed(3, &[0, 1]);
        outer = Some(match outer {
            None => q_j,
            Some(acc) => acc.mul(&y_num)?.div(&one_minus_w3)?.add(&q_j)?,
        });
    }
    let one_minus_w2_3 = one_minus_w2.embed(3, &[0, 1]);
    outer
        .expect("n + 1 >= 1 terms")
        .div(&one_minus_w2_3)?
        .div(&one_minus_w3)
}

/// `e_n = sum_b (-1)^(n-b) C(n,b) [w1^n w3^b] F(w1, 0, w3)`.
pub fn eigen_from_ev(f: &TruncatedSeries, n: usize) -> Result<BigRational> {
    need_arity(f, 3)?;
    need_order(f, n)?;
    let mut acc = BigRational::zero();
    for b in 0..=n {
        let t = binom_q(n, b) * f.coeff(&[n, 0, b]);
        if (n - b).is_multiple_of(2) {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(acc)
}

/// `e_n = [x^n y^n] H`.
pub fn eigen_from_h(h: &TruncatedSeries, n: usize) -> Result<BigRational> {
    need_arity(h, 2)?;
    need_order(h, n)?;
    Ok(h.coeff(&[n, n]).clone())
}

/// `R_S*(a, b) = C(a, b) h_ab`, lower triangular with diagonal `e_0..e_S`.
pub fn r_star(h: &TruncatedSeries, s: usize) -> Result<ExactMatrix> {
    need_arity(h, 2)?;
    need_order(h, s)?;
    Ok(ExactMatrix::from_fn(s + 1, |a, b| {
        if b <= a {
            binom_q(a, b) * h.coeff(&[a, b])
        } else {
            BigRational::zero()
        }
    }))
}

/// Checks `Phi_F P = P R_S*^T`, where column `i` of `P` holds the
/// monomial coefficients of `u^i (u+v)^(S-i)`.
pub fn triangular_conjugate_check(f: &TruncatedSeries, h: &TruncatedSeries, s: usize) -> Result<bool> {
    let phi = phi_matrix(f, s)?;
    let t = r_star(h, s)?.transpose();
    // u^i (u+v)^(S-i) = sum_k C(S-i, k) u^(i+k) v^(S-i-k)
    let p = ExactMatrix::from_fn(s + 1, |b, i| if b >= i { binom_q(s - i, b - i) } else { BigRational::zero() });
    Ok(phi.mul(&p)? == p.mul(&t)?)
}

/// All eigenvalues `e_0..e_S` read from `F`.
pub fn eigenvalues(f: &TruncatedSeries, s: usize) -> Result<Vec<BigRational>> {
    (0..=s).map(|n| eigen_from_ev(f, n)).collect()
}

/// Checks `prod_{n<=S} (R_S - e_n I) = 0`. The recursion is verified first
/// through the full box order of `F`.
pub fn annihilation_check(f: &TruncatedSeries, s: usize) -> Result<bool> {
    need_order(f, s)?;
    if !recursion_check(f, f.order())? {
        return Err(Error::NotSpecial { order: f.order() });
    }
    let r = build_rs(f, s)?;
    let id = ExactMatrix::identity(s + 1);
    let mut acc = id.clone();
    for e in eigenvalues(f, s)? {
        acc = acc.mul(&r.sub(&id.scale(&e))?)?;
    }
    Ok(acc.is_zero())
}

/// `det(x I - R_S)` together with `prod_{n<=S} (x - e_n)`.
pub fn spectrum_realization(f: &TruncatedSeries, s: usize) -> Result<(UniPoly, UniPoly)> {
    let r = build_rs(f, s)?;
    let e = eigenvalues(f, s)?;
    Ok((r.charpoly(), UniPoly::from_roots(&e)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecialityWitness {
    pub commutes: bool,
    pub lde_zero: bool,
    pub recursion: bool,
    pub z_independent: bool,
}

impl SpecialityWitness {
    pub fn all(&self) -> bool {
        self.commutes && self.lde_zero && self.recursion && self.z_independent
    }

    pub fn none(&self) -> bool {
        !(self.commutes || self.lde_zero || self.recursion || self.z_independent)
    }

    /// True when the criteria relate as they must. The differential
    /// equation, the recursion and z-independence are equivalent and each
    /// implies commutation. Commutation alone is weaker: `Phi_F` never reads
    /// the coefficients `[w1^a w2^b w3^c]` with `c > a + b`.
    pub fn consistent(&self) -> bool {
        self.lde_zero == self.recursion && self.recursion == self.z_independent && (!self.lde_zero || self.commutes)
    }
}

/// `F` and its image `H`, with specialness decided through order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialSeriesPair {
    pub f: TruncatedSeries,
    pub h: TruncatedSeries,
    pub order: usize,
    pub witness: SpecialityWitness,
    pub z_clean_through: usize,
}

impl SpecialSeriesPair {
    /// Runs every criterion at order `N >= 1`; `F` needs box order `N`.
    pub fn analyze(f: &TruncatedSeries, n: usize) -> Result<Self> {
        need_arity(f, 3)?;
        need_order(f, n)?;
        if n == 0 {
            return Err(Error::InvalidParameter("order must be at least 1".into()));
        }
        // Every criterion is evaluated on the same relations: those indexed
        // by (a, b, c) with a + b + c < N. Larger windows would let one test
        // see relations the others cannot, and disagree on generic input.
        let mut commutes = true;
        for s in 0..n {
            if !commute_rows(f, s, n - 1 - s)? {
                commutes = false;
                break;
            }
        }
        let lde_zero = lde_residual(f, n)?
            .terms()
            .all(|(e, _)| e.iter().sum::<usize>() >= n);
        let recursion = recursion_check(f, n)?;
        let image = f_to_h(f, n)?;
        Ok(Self {
            f: f.with_order(n),
            h: image.h.clone(),
            order: n,
            witness: SpecialityWitness {
                commutes,
                lde_zero,
                recursion,
                z_independent: image.z_independent(),
            },
            z_clean_through: image.z_clean_through,
        })
    }

    pub fn is_special(&self) -> bool {
        self.witness.all()
    }
}
