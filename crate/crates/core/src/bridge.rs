//! The parity-`kappa` quadratic form on `R^3` as an instance of the
//! special-series framework: the pair `(F_kappa, H_kappa)`, the closed form
//! of its eigenvalues `e_n`, the matrices `M~_S`, and an independent Gram
//! matrix built from Laguerre functions and exact Gaussian moments.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, UniPoly};
use crate::orthopoly::{laguerre_coeffs, laguerre_norm, weighted_gaussian_integral};
use crate::rational::{int, pow, rat, serde_exact, BigRational, PiScaled};
use crate::series::TruncatedSeries;
use crate::special::build_rs;
use crate::spectrum::g_series;

pub use crate::oracle::{kernel_reproduce_check, KernelSample};

/// `p = floor(kappa/2)`, `r = kappa - 2p`, `eps = (-1)^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ApplicationParams {
    pub kappa: usize,
    pub p: usize,
    pub r: usize,
    pub eps: i32,
}

impl ApplicationParams {
    pub fn new(kappa: usize) -> Result<Self> {
        if kappa > 3 {
            return Err(Error::InvalidParameter(format!("kappa = {kappa} must be in 0..=3")));
        }
        let p = kappa / 2;
        let r = kappa - 2 * p;
        Ok(Self {
            kappa,
            p,
            r,
            eps: if r == 0 { 1 } else { -1 },
        })
    }

    /// `(3 - 2 kappa) / (4 * 3^r)`.
    pub fn weight(&self) -> BigRational {
        rat(3 - 2 * self.kappa as i64, 4 * 3i64.pow(self.r as u32))
    }
}

/// `C_m` with `cosh^(3-kappa) x sinh^kappa x = sum_m C_m e^(m x)`, listed for
/// `m = 3, 1, -1, -3`.
pub fn c_coeffs(kappa: usize) -> Result<[(i32, BigRational); 4]> {
    ApplicationParams::new(kappa)?;
    let sign = |m: i32| if m < 0 && kappa % 2 == 1 { -1 } else { 1 };
    let k = kappa as i64;
    Ok([
        (3, rat(sign(3), 8)),
        (1, rat(sign(1) * (3 - 2 * k), 8)),
        (-1, rat(sign(-1) * (3 - 2 * k), 8)),
        (-3, rat(sign(-3), 8)),
    ])
}

fn check_m(m: i32) -> Result<()> {
    if ![-3, -1, 1, 3].contains(&m) {
        return Err(Error::InvalidParameter(format!("m = {m} must be one of -3, -1, 1, 3")));
    }
    Ok(())
}

/// `z_m = w (1 - wt - m^2(1-t)/9) / (1 - wt - m^2 w (1-t)/9)` in `(w, t)`.
pub fn z_m_series(m: i32, order: usize) -> Result<TruncatedSeries> {
    check_m(m)?;
    if m.abs() == 3 {
        return Ok(TruncatedSeries::monomial(2, order, &[1, 1], BigRational::one()));
    }
    let ninth = rat(1, 9);
    let num = TruncatedSeries::from_terms(
        2,
        order,
        [
            (&[1usize, 0][..], BigRational::one() - &ninth),
            (&[2, 1][..], int(-1)),
            (&[1, 1][..], ninth.clone()),
        ],
    );
    let den = TruncatedSeries::from_terms(
        2,
        order,
        [
            (&[0usize, 0][..], int(1)),
            (&[1, 0][..], -ninth.clone()),
            (&[1, 1][..], ninth - int(1)),
        ],
    );
    num.div(&den)
}

/// `z_1` in `(T, w)` with `T = wt`, as numerator and denominator:
/// `(8w/9 - wT + T/9) / (1 - 8T/9 - w/9)`.
fn z1_parts(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let num = TruncatedSeries::from_terms(
        2,
        order,
        [(&[0usize, 1][..], rat(8, 9)), (&[1, 1][..], int(-1)), (&[1, 0][..], rat(1, 9))],
    );
    let den = TruncatedSeries::from_terms(
        2,
        order,
        [(&[0usize, 0][..], int(1)), (&[1, 0][..], rat(-8, 9)), (&[0, 1][..], rat(-1, 9))],
    );
    (num, den)
}

/// `F_kappa(T, w, u) = (1/4 / (1 - T u) + c Y / (1 - z_1 u)) / (1 - w)` with
/// `c = (3-2kappa)/(4 3^r)` and `Y = ((1-w)/(1 - 8T/9 - w/9))^(r+1/2)`,
/// which is `((1-z_1)/(1-T))^(r+1/2)`. The factor `1/(1-w)` comes from the
/// Gaussian integral against the kernel; without it the series is not
/// special.
pub fn f_app_series(kappa: usize, order: usize) -> Result<TruncatedSeries> {
    let params = ApplicationParams::new(kappa)?;
    let (num, den) = z1_parts(order);
    let one_minus_w = TruncatedSeries::from_terms(2, order, [(&[0usize, 0][..], int(1)), (&[0, 1][..], int(-1))]);
    let ratio = one_minus_w.div(&den)?;
    let mut y = ratio.sqrt()?;
    if params.r == 1 {
        y = y.mul(&ratio)?;
    }
    let weight = params.weight();
    let quarter = rat(1, 4);
    let mut out = TruncatedSeries::zero(3, order);
    let mut layer = y.scale(&weight);
    for k in 0..=order {
        for (e, c) in layer.terms() {
            if !c.is_zero() {
                out.set(&[e[0], e[1], k], c.clone());
            }
        }
        let diag = out.coeff(&[k, 0, k]) + &quarter;
        out.set(&[k, 0, k], diag);
        if k < order {
            layer = layer.mul(&num)?.div(&den)?;
        }
    }
    let one_minus_w = TruncatedSeries::from_terms(3, order, [(&[0usize, 0, 0][..], int(1)), (&[0, 1, 0][..], int(-1))]);
    out.div(&one_minus_w)
}

/// `H_kappa(x, y) = 1/4 / (1 - y(x-1)) + c (1 - 8x/9)^(1/2-r) / (1 - 8x/9 - y(x-1))`.
pub fn h_app_series(kappa: usize, order: usize) -> Result<TruncatedSeries> {
    let params = ApplicationParams::new(kappa)?;
    let first = TruncatedSeries::from_terms(2, order, [(&[0usize, 0][..], int(1)), (&[0, 1][..], int(1)), (&[1, 1][..], int(-1))])
        .inv()?
        .scale(&rat(1, 4));
    let base = TruncatedSeries::from_terms(2, order, [(&[0usize, 0][..], int(1)), (&[1, 0][..], rat(-8, 9))]);
    let power = if params.r == 0 { base.sqrt()? } else { base.inv_sqrt()? };
    let den = TruncatedSeries::from_terms(
        2,
        order,
        [(&[0usize, 0][..], int(1)), (&[1, 0][..], rat(-8, 9)), (&[0, 1][..], int(1)), (&[1, 1][..], int(-1))],
    );
    first.add(&power.div(&den)?.scale(&params.weight()))
}

/// `e_n` for `n <= n_max`:
/// `1/4 + c [v^n] D^(-1/2) ((1 + v + sqrt D)/2)^(1/2-r)`, `D = 1 + 14v/9 + v^2`.
pub fn e_closed_sequence(kappa: usize, n_max: usize) -> Result<Vec<BigRational>> {
    let params = ApplicationParams::new(kappa)?;
    let d = TruncatedSeries::from_univariate(n_max, &[int(1), rat(14, 9), int(1)]);
    let d_inv_sqrt = d.inv_sqrt()?;
    let sqrt_d = d.mul(&d_inv_sqrt)?;
    let a = TruncatedSeries::from_univariate(n_max, &[int(1), int(1)])
        .add(&sqrt_d)?
        .scale(&rat(1, 2));
    let a_pow = if params.r == 0 { a.sqrt()? } else { a.inv_sqrt()? };
    let series = d_inv_sqrt.mul(&a_pow)?;
    let weight = params.weight();
    Ok(series
        .univariate_coeffs()
        .iter()
        .map(|c| rat(1, 4) + &weight * c)
        .collect())
}

pub fn e_closed(kappa: usize, n: usize) -> Result<BigRational> {
    Ok(e_closed_sequence(kappa, n)?.pop().expect("nonempty"))
}

/// `e_n = [w^(2n+r)] G_kappa` for every `n <= n_max`.
pub fn e_matches_g(kappa: usize, n_max: usize) -> Result<bool> {
    let params = ApplicationParams::new(kappa)?;
    let e = e_closed_sequence(kappa, n_max)?;
    let g = g_series(kappa, 2 * n_max + params.r)?;
    Ok(e.iter()
        .enumerate()
        .all(|(n, v)| v == g.coeff(&[2 * n + params.r])))
}

/// `M~_S(a, b) = [T^a w^(S+p-a) u^b] F_kappa`, of size `S + p + 1`.
pub fn mtilde_matrix(kappa: usize, s: usize) -> Result<ExactMatrix> {
    let params = ApplicationParams::new(kappa)?;
    let size = s + params.p;
    build_rs(&f_app_series(kappa, size)?, size)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub kappa: usize,
    pub s: usize,
    /// Multi-indices `n` with `|n| = S`, in the row order of `matrix`.
    pub basis: Vec<[usize; 3]>,
    /// `D^-1 G`, similar to the normalized Gram matrix.
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub charpoly: UniPoly,
    /// Nonzero roots with multiplicity, when they could be identified.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_exact_vec")]
    pub nonzero_spectrum: Option<Vec<BigRational>>,
    /// `{e_n : n <= S + p, e_n != 0}`.
    #[serde(with = "serde_exact::vec")]
    pub expected: Vec<BigRational>,
    /// Set when the spectrum equals `expected` only after scaling by this.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_exact")]
    pub global_scalar: Option<BigRational>,
    pub passed: bool,
}

mod opt_exact {
    use super::*;
    use serde::Serializer;
    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => serde_exact::serialize(v, s),
            None => s.serialize_none(),
        }
    }
}

mod opt_exact_vec {
    use super::*;
    use serde::Serializer;
    pub fn serialize<S: Serializer>(x: &Option<Vec<BigRational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => serde_exact::vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }
}

fn compositions3(s: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (0..=s).rev() {
        for b in (0..=s - a).rev() {
            out.push([a, b, s - a - b]);
        }
    }
    out
}

/// Gram matrix of the restrictions `Q~_n(x) = Q_n(x (1,1,1)/sqrt 3)` over
/// `|n| = S`, where `Q_n` is the product of `Q^-` in the first `kappa`
/// coordinates and `Q^+` in the rest, and
/// `Q^eps_n(x) = x^r L_n^(r-1/2)(pi x^2) exp(-pi x^2/2)`.
///
/// Entries are `3^-kappa int x^(2 kappa) P(pi x^2 / 3) exp(-pi x^2) dx` with
/// `P` the product of the six Laguerre factors, evaluated from exact
/// Gaussian moments. Every entry of `G` and `D` carries `pi^-kappa`.
pub fn gram_matrix_exact(kappa: usize, s: usize) -> Result<GramReport> {
    let params = ApplicationParams::new(kappa)?;
    let basis = compositions3(s);
    let parity = |j: usize| usize::from(j < kappa);
    let alpha = |j: usize| rat(2 * parity(j) as i64 - 1, 2);
    let factor = |n: &[usize; 3]| {
        (0..3).fold(crate::poly::MultiPoly::one(1), |acc, j| acc.mul(&laguerre_coeffs(n[j], &alpha(j))))
    };
    let factors: Vec<_> = basis.iter().map(factor).collect();
    let norms: Vec<PiScaled> = basis
        .iter()
        .map(|n| (0..3).fold(PiScaled::rational(int(1)), |acc, j| &acc * &laguerre_norm(n[j], parity(j))))
        .collect();
    let three_k = pow(&rat(1, 3), kappa);
    let dim = basis.len();
    let mut matrix = ExactMatrix::zero(dim);
    for i in 0..dim {
        for j in i..dim {
            let product = factors[i].mul(&factors[j]);
            // P(pi x^2 / 3): scale the coefficient of z^k by 3^-k.
            let scaled = crate::poly::MultiPoly::from_terms(
                1,
                product
                    .terms()
                    .map(|(e, c)| (e.to_vec(), c * pow(&rat(1, 3), e[0] as usize))),
            );
            let g = weighted_gaussian_integral(&scaled, kappa)?;
            let g = PiScaled::new(g.value * &three_k, g.pi_exponent);
            for (row, col) in [(i, j), (j, i)] {
                let q = g.checked_div(&norms[row]).ok_or(Error::SingularSeries)?;
                if !q.value.is_zero() && q.pi_exponent != 0 {
                    return Err(Error::PiExponentMismatch {
                        left: g.pi_exponent,
                        right: norms[row].pi_exponent,
                    });
                }
                matrix.set(row, col, q.value);
            }
        }
    }
    let rank = matrix.rank();
    let charpoly = matrix.charpoly();
    let expected: Vec<BigRational> = e_closed_sequence(kappa, s + params.p)?
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect();
    let (_, stripped) = charpoly.strip_x_power();
    let target = UniPoly::from_roots(&expected);
    let (nonzero_spectrum, global_scalar, passed) = if stripped == target {
        (Some(expected.clone()), None, true)
    } else {
        let m = stripped.degree().unwrap_or(0);
        let sum: BigRational = expected.iter().sum();
        let scalar = (m == expected.len() && m > 0 && !sum.is_zero())
            .then(|| -stripped.coeff(m - 1) / &sum)
            .filter(|c| {
                let scaled: Vec<BigRational> = expected.iter().map(|e| e * c).collect();
                stripped == UniPoly::from_roots(&scaled)
            });
        let spectrum = scalar
            .as_ref()
            .map(|c| expected.iter().map(|e| e * c).collect());
        (spectrum, scalar, false)
    };
    Ok(GramReport {
        kappa,
        s,
        basis,
        matrix,
        rank,
        charpoly,
        nonzero_spectrum,
        expected,
        global_scalar,
        passed,
    })
}
