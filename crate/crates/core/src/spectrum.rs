//! Eigenvalues `lambda_{d,kappa,n}` of the parity-restricted quadratic form,
//! their generating functions `G_kappa`, eigenvector polynomials, and the
//! certified top-two eigenvalues in dimension three.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orthopoly::{gegenbauer_dense, gegenbauer_values, ScaledLegendreThird};
use crate::poly::MultiPoly;
use crate::rational::{binomial, factorial, format_exact, int, pochhammer, rat, serde_exact, to_f64, BigRational};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub d: usize,
    pub kappa: usize,
    pub n: usize,
    #[serde(with = "serde_exact")]
    pub lambda: BigRational,
    pub float: f64,
}

impl SpectrumEntry {
    fn new(d: usize, kappa: usize, n: usize, lambda: BigRational) -> Self {
        let float = to_f64(&lambda);
        Self { d, kappa, n, lambda, float }
    }
}

fn check_params(d: usize, kappa: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("dimension d = {d} must be at least 3")));
    }
    if kappa > d {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} exceeds d = {d}")));
    }
    Ok(())
}

fn check_kappa3(kappa: usize) -> Result<()> {
    if kappa > 3 {
        return Err(Error::InvalidParameter(format!("kappa = {kappa} must be in 0..=3")));
    }
    Ok(())
}

/// Gegenbauer index `d/2 - 1`.
pub fn gegenbauer_index(d: usize) -> BigRational {
    rat(d as i64 - 2, 2)
}

/// Weight of the sign vectors with exactly `k` entries equal to -1,
/// `sum_j (-1)^j C(kappa, j) C(d - kappa, k - j)`.
fn sign_class_weight(d: usize, kappa: usize, k: usize) -> BigInt {
    (0..=k.min(kappa))
        .map(|j| {
            let t = binomial(kappa, j) * binomial(d - kappa, k - j);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// All `lambda_{d,kappa,n}` for `n <= n_max`, normalized by `C_n(1)`.
pub fn lambda_direct_sequence(d: usize, kappa: usize, n_max: usize) -> Result<Vec<BigRational>> {
    check_params(d, kappa)?;
    let lambda = gegenbauer_index(d);
    let at_one = gegenbauer_values(&int(1), &lambda, n_max);
    let mut acc = vec![BigRational::zero(); n_max + 1];
    for k in 0..=d {
        let w = sign_class_weight(d, kappa, k);
        if w.is_zero() {
            continue;
        }
        let w = BigRational::from_integer(w);
        let point = rat(d as i64 - 2 * k as i64, d as i64);
        for (slot, v) in acc.iter_mut().zip(gegenbauer_values(&point, &lambda, n_max)) {
            *slot += &w * v;
        }
    }
    let scale = BigRational::from_integer(BigInt::one() << d).recip();
    Ok(acc
        .into_iter()
        .zip(at_one)
        .map(|(v, c1)| v * &scale / c1)
        .collect())
}

/// `2^-d sum_eps eps_1..eps_kappa C_n((eps_1+..+eps_d)/d) / C_n(1)`.
pub fn lambda_direct(d: usize, kappa: usize, n: usize) -> Result<BigRational> {
    Ok(lambda_direct_sequence(d, kappa, n)?.pop().expect("nonempty"))
}

/// `2^kappa kappa! (d/2-1)_kappa / (d^kappa (d-2)_kappa)`.
pub fn lambda_closed_diag(d: usize, kappa: usize) -> Result<BigRational> {
    check_params(d, kappa)?;
    let num = BigRational::from_integer((BigInt::one() << kappa) * factorial(kappa))
        * pochhammer(&gegenbauer_index(d), kappa);
    let den = BigRational::from_integer(BigInt::from(d).pow(kappa as u32))
        * pochhammer(&int(d as i64 - 2), kappa);
    Ok(num / den)
}

/// The order-`n_max` expansion of `G_kappa(w)`, assembled from
/// `1/(4(1-w^2))` and `(1 -+ 2w/3 + w^2)^(-1/2) / 8`.
pub fn g_series(kappa: usize, n_max: usize) -> Result<TruncatedSeries> {
    check_kappa3(kappa)?;
    let uni = |c: &[BigRational]| TruncatedSeries::from_univariate(n_max, c);
    let geometric = uni(&[int(4), int(0), int(-4)]).inv()?;
    let minus = uni(&[int(1), rat(-2, 3), int(1)]).inv_sqrt()?.scale(&rat(1, 8));
    let plus = uni(&[int(1), rat(2, 3), int(1)]).inv_sqrt()?.scale(&rat(1, 8));
    let w = TruncatedSeries::variable(1, n_max, 0);
    let one = TruncatedSeries::one(1, n_max);
    let (lead, a, b) = match kappa {
        0 => (one, 3, 3),
        1 => (w, 1, -1),
        2 => (one, -1, -1),
        _ => (w, -3, 3),
    };
    lead.mul(&geometric)?
        .add(&minus.scale(&int(a)))?
        .add(&plus.scale(&int(b)))
}

/// `c_kappa` with `lambda_{3,kappa,n} = 1/4 + c_kappa P_n(1/3)` for
/// `n = kappa (mod 2)`.
pub fn legendre_weight(kappa: usize) -> BigRational {
    match kappa {
        0 => rat(3, 4),
        1 => rat(1, 4),
        2 => rat(-1, 4),
        _ => rat(-3, 4),
    }
}

fn fast_value(kappa: usize, n: usize, q: &BigInt) -> BigRational {
    if n % 2 != kappa % 2 {
        return BigRational::zero();
    }
    rat(1, 4) + legendre_weight(kappa) * ScaledLegendreThird::to_rational(n, q)
}

/// `lambda_{3,kappa,n}` for all `n <= n_max` in `O(n_max)` big-integer steps.
pub fn lambda_fast_sequence(kappa: usize, n_max: usize) -> Result<Vec<SpectrumEntry>> {
    check_kappa3(kappa)?;
    Ok(ScaledLegendreThird::new()
        .take(n_max + 1)
        .map(|(n, q)| SpectrumEntry::new(3, kappa, n, fast_value(kappa, n, &q)))
        .collect())
}

/// A harmonic eigenvector `P_{d,kappa,n}` up to a positive scalar.
///
/// On the unit sphere `P_{d,kappa,n}(x) = d^(-n/2) * scale * poly(x)`, where
/// `poly` has coprime integer coefficients and a positive lexicographically
/// leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorPoly {
    pub d: usize,
    pub kappa: usize,
    pub n: usize,
    pub poly: MultiPoly,
    pub scale: BigRational,
}

impl EigenvectorPoly {
    /// `P_{d,kappa,n}(1/sqrt(d), .., 1/sqrt(d)) = d^-n scale poly(1, .., 1)`,
    /// which equals the unnormalized eigenvalue `lambda * C_n(1)`.
    pub fn value_at_diagonal(&self) -> BigRational {
        let ones = vec![int(1); self.d];
        self.poly.eval(&ones) * &self.scale / BigRational::from_integer(BigInt::from(self.d).pow(self.n as u32))
    }
}

/// Homogeneous extension of `sum_eps eps_1..eps_kappa C_n(x.eps / (sqrt(d)|x|)) |x|^n`
/// with the factor `2^-d d^(-n/2)` removed; may be zero.
pub fn eigenvector_raw(d: usize, kappa: usize, n: usize) -> Result<MultiPoly> {
    check_params(d, kappa)?;
    let c = gegenbauer_dense(n, &gegenbauer_index(d));
    let linear = (0..d).fold(MultiPoly::zero(d), |acc, i| acc.add(&MultiPoly::var(d, i)));
    let norm2 = (0..d).fold(MultiPoly::zero(d), |acc, i| acc.add(&MultiPoly::var(d, i).pow(2)));
    let linear2 = linear.mul(&linear);
    let half = n / 2;
    let parity = n % 2;
    let mut norm_powers = vec![MultiPoly::one(d)];
    for j in 1..=half {
        norm_powers.push(norm_powers[j - 1].mul(&norm2));
    }
    let dd = BigRational::from_integer(BigInt::from(d));
    // Z = L^parity * sum_i c_{parity+2i} d^(half-i) (L^2)^i |x|^(2(half-i))
    let coeff = |i: usize| &c[parity + 2 * i] * crate::rational::pow(&dd, half - i);
    let mut acc = MultiPoly::constant(d, coeff(half));
    for i in (0..half).rev() {
        acc = acc.mul(&linear2).add(&norm_powers[half - i].scale(&coeff(i)));
    }
    if parity == 1 {
        acc = acc.mul(&linear);
    }
    // Averaging over sign flips weighted by eps_1..eps_kappa keeps exactly
    // the monomials odd in x_1..x_kappa and even in the rest.
    Ok(acc.parity_part(kappa))
}

pub fn eigenvector_poly(d: usize, kappa: usize, n: usize) -> Result<EigenvectorPoly> {
    let raw = eigenvector_raw(d, kappa, n)?;
    let (scale, poly) = raw
        .primitive()
        .ok_or(Error::DegenerateEigenvector { d, kappa, n })?;
    Ok(EigenvectorPoly { d, kappa, n, poly, scale })
}

/// True iff the eigenvector polynomial is annihilated by the Laplacian.
pub fn solid_harmonic_check(d: usize, kappa: usize, n: usize) -> Result<bool> {
    Ok(eigenvector_raw(d, kappa, n)?.laplacian().is_zero())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultinomialCheck {
    #[serde(with = "serde_exact")]
    pub sign_sum: BigRational,
    #[serde(with = "serde_exact")]
    pub multinomial_sum: BigRational,
}

impl MultinomialCheck {
    pub fn holds(&self) -> bool {
        self.sign_sum == self.multinomial_sum
    }
}

/// Compares `2^-d sum_eps eps_1..eps_kappa (eps_1+..+eps_d)^m` with the sum
/// of `m!/(m_1!..m_d!)` over compositions odd in the first `kappa` parts and
/// even in the rest (no `2^-d` on this side).
pub fn epsilon_multinomial_identity(d: usize, kappa: usize, m: usize) -> Result<MultinomialCheck> {
    if kappa > d || d == 0 || d > 16 {
        return Err(Error::InvalidParameter(format!("need 0 <= kappa <= d <= 16, got d={d}, kappa={kappa}")));
    }
    let mut sign_sum = BigInt::zero();
    for mask in 0u32..(1 << d) {
        let mut s: i64 = 0;
        let mut sign = 1i64;
        for i in 0..d {
            let e = if mask >> i & 1 == 1 { -1 } else { 1 };
            s += e;
            if i < kappa {
                sign *= e;
            }
        }
        sign_sum += BigInt::from(sign) * BigInt::from(s).pow(m as u32);
    }
    let sign_sum = BigRational::new(sign_sum, BigInt::one() << d);

    let fact: Vec<BigInt> = (0..=m).map(factorial).collect();
    let mut total = BigInt::zero();
    let mut parts = vec![0usize; d];
    compositions(&mut parts, 0, m, kappa, &fact, &mut total);
    Ok(MultinomialCheck {
        sign_sum,
        multinomial_sum: BigRational::from_integer(total),
    })
}

fn compositions(parts: &mut [usize], i: usize, left: usize, kappa: usize, fact: &[BigInt], total: &mut BigInt) {
    let d = parts.len();
    if i == d {
        if left == 0 {
            let m: usize = parts.iter().sum();
            let denom: BigInt = parts.iter().map(|&p| fact[p].clone()).product();
            *total += &fact[m] / denom;
        }
        return;
    }
    let want_odd = i < kappa;
    for p in 0..=left {
        if (p % 2 == 1) == want_odd {
            parts[i] = p;
            compositions(parts, i + 1, left - p, kappa, fact, total);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCertificate {
    /// Human-readable statement of the bound applied past the cutoff.
    pub statement: String,
    /// Rational upper bound `U >= 27 / (16 pi sqrt(2) (cutoff+1))` on
    /// `(lambda - 1/4)^2` for every `n > cutoff`.
    #[serde(with = "serde_exact")]
    pub squared_deviation_bound: BigRational,
    /// `(beta - 1/4)^2 - U`, positive when the certificate holds.
    #[serde(with = "serde_exact")]
    pub margin: BigRational,
    /// `1/4 + sqrt(U)`, display only.
    pub tail_sup_float: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedTop2 {
    pub kappa: usize,
    #[serde(with = "serde_exact")]
    pub alpha: BigRational,
    pub alpha_indices: Vec<usize>,
    #[serde(with = "serde_exact")]
    pub beta: BigRational,
    pub beta_indices: Vec<usize>,
    pub cutoff: usize,
    pub certificate: TailCertificate,
}

pub const DEFAULT_CUTOFF: usize = 2000;
pub const MIN_CUTOFF: usize = 1000;

// Lower bounds, since pi sqrt(2) sits in the denominator of the tail bound.
const PI_LOWER: (i64, i64) = (333, 106);
const SQRT2_LOWER: (i64, i64) = (14_142, 10_000);

/// Largest and second-largest eigenvalue of the quadratic form on the
/// parity class `kappa` in dimension three, with every attaining index.
///
/// Indices up to `cutoff` are scanned exactly. Beyond it,
/// `|lambda_{3,kappa,n} - 1/4| <= (3/4)|P_n(1/3)|` together with Bernstein's
/// inequality `|P_n(1/3)| <= (3 / (pi n sqrt 2))^(1/2)` must place every
/// eigenvalue strictly below `beta`.
pub fn certify_top2(kappa: usize, cutoff: usize) -> Result<CertifiedTop2> {
    check_kappa3(kappa)?;
    if cutoff < MIN_CUTOFF {
        return Err(Error::InvalidParameter(format!("cutoff {cutoff} below minimum {MIN_CUTOFF}")));
    }
    let mut top: Option<(BigRational, Vec<usize>)> = None;
    let mut second: Option<(BigRational, Vec<usize>)> = None;
    for (n, q) in ScaledLegendreThird::new().take(cutoff + 1) {
        let v = fast_value(kappa, n, &q);
        match &mut top {
            None => top = Some((v, vec![n])),
            Some((a, idx)) if v == *a => idx.push(n),
            Some((a, _)) if v > *a => {
                second = top.take();
                top = Some((v, vec![n]));
            }
            Some(_) => match &mut second {
                None => second = Some((v, vec![n])),
                Some((b, idx)) if v == *b => idx.push(n),
                Some((b, _)) if v > *b => second = Some((v, vec![n])),
                Some(_) => {}
            },
        }
    }
    let (alpha, alpha_indices) = top.expect("cutoff >= 1000");
    let (beta, beta_indices) = second.expect("cutoff >= 1000");

    let quarter = rat(1, 4);
    let bound = rat(27, 16)
        / (rat(PI_LOWER.0, PI_LOWER.1) * rat(SQRT2_LOWER.0, SQRT2_LOWER.1) * int(cutoff as i64 + 1));
    let gap = &beta - &quarter;
    let margin = &gap * &gap - &bound;
    if !gap.is_positive() || !margin.is_positive() {
        return Err(Error::CertificationFailed {
            kappa,
            cutoff,
            margin: format_exact(&margin),
        });
    }
    let tail_sup_float = 0.25 + to_f64(&bound).sqrt();
    Ok(CertifiedTop2 {
        kappa,
        alpha,
        alpha_indices,
        beta,
        beta_indices,
        cutoff,
        certificate: TailCertificate {
            statement: format!(
                "for n > {cutoff}: |lambda - 1/4| <= (3/4)|P_n(1/3)| <= (3/4)(3/(pi n sqrt2))^(1/2), \
                 with pi >= {}/{} and sqrt2 >= {}/{}",
                PI_LOWER.0, PI_LOWER.1, SQRT2_LOWER.0, SQRT2_LOWER.1
            ),
            squared_deviation_bound: bound,
            margin,
            tail_sup_float,
        },
    })
}

/// Indices `n <= n_max` with `lambda_{3,kappa,n} = 1/4` exactly.
pub fn quarter_search(kappa: usize, n_max: usize) -> Result<Vec<usize>> {
    check_kappa3(kappa)?;
    Ok(quarter_search_all(n_max)[kappa].clone())
}

/// One sweep serving every parity class: `lambda = 1/4` exactly iff
/// `n = kappa (mod 2)` and `P_n(1/3) = 0`.
pub fn quarter_search_all(n_max: usize) -> [Vec<usize>; 4] {
    let mut hits: [Vec<usize>; 4] = Default::default();
    for (n, q) in ScaledLegendreThird::new().take(n_max + 1) {
        if q.is_zero() {
            for (kappa, h) in hits.iter_mut().enumerate() {
                if n % 2 == kappa % 2 {
                    h.push(n);
                }
            }
        }
    }
    hits
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureRow {
    pub n: usize,
    #[serde(with = "serde_exact")]
    pub value: BigRational,
    pub float: f64,
}

/// The first `count` coefficients of `G_kappa` on its live parity class
/// `n = kappa (mod 2)`.
pub fn figure_data(kappa: usize, count: usize) -> Result<Vec<FigureRow>> {
    check_kappa3(kappa)?;
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let n_max = kappa % 2 + 2 * (count - 1);
    Ok(ScaledLegendreThird::new()
        .take(n_max + 1)
        .filter(|(n, _)| n % 2 == kappa % 2)
        .map(|(n, q)| {
            let value = fast_value(kappa, n, &q);
            let float = to_f64(&value);
            FigureRow { n, value, float }
        })
        .collect())
}

/// Exploratory: whether `lambda_{d,kappa,kappa}` dominates every
/// `lambda_{d,kappa,n}` with `n <= n_max`. Not a certificate.
pub fn diagonal_dominates(d: usize, kappa: usize, n_max: usize) -> Result<bool> {
    let diag = lambda_closed_diag(d, kappa)?;
    Ok(lambda_direct_sequence(d, kappa, n_max)?.iter().all(|v| v <= &diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn prop_parity_vanishing(d in 3usize..8, kappa in 0usize..8, n in 0usize..24) {
            prop_assume!(kappa <= d);
            let v = lambda_direct(d, kappa, n).unwrap();
            if n < kappa || (n + kappa) % 2 == 1 {
                prop_assert!(v.is_zero());
            }
        }

        #[test]
        fn prop_diagonal_closed_form(d in 3usize..10, kappa in 0usize..10) {
            prop_assume!(kappa <= d);
            prop_assert_eq!(lambda_direct(d, kappa, kappa).unwrap(), lambda_closed_diag(d, kappa).unwrap());
        }

        #[test]
        fn prop_fast_matches_series(kappa in 0usize..4, n in 0usize..120) {
            let g = g_series(kappa, n).unwrap();
            prop_assert_eq!(g.coeff(&[n]), &lambda_fast_sequence(kappa, n).unwrap()[n].lambda);
        }

        #[test]
        fn prop_eigenvalues_in_unit_interval(d in 3usize..7, kappa in 0usize..7, n in 0usize..30) {
            prop_assume!(kappa <= d);
            let v = lambda_direct(d, kappa, n).unwrap();
            prop_assert!(!v.is_negative() && v <= int(1));
        }
    }

    #[test]
    fn direct_examples() {
        assert_eq!(lambda_direct(3, 0, 0).unwrap(), int(1));
        assert_eq!(lambda_direct(3, 3, 3).unwrap(), rat(5, 9));
        assert_eq!(lambda_direct(3, 0, 2).unwrap(), int(0));
        assert_eq!(lambda_direct(4, 2, 2).unwrap(), rat(1, 6));
        assert!(lambda_direct(2, 0, 0).is_err());
        assert!(lambda_direct(3, 4, 0).is_err());
    }

    #[test]
    fn closed_diagonal_examples() {
        assert_eq!(lambda_closed_diag(3, 1).unwrap(), rat(1, 3));
        assert_eq!(lambda_closed_diag(3, 3).unwrap(), rat(5, 9));
        assert_eq!(lambda_closed_diag(4, 2).unwrap(), rat(1, 6));
    }

    #[test]
    fn generating_series_displays() {
        let g0 = g_series(0, 10).unwrap();
        let g1 = g_series(1, 10).unwrap();
        let g2 = g_series(2, 10).unwrap();
        let g3 = g_series(3, 10).unwrap();
        let c = |g: &TruncatedSeries, n: usize| g.coeff(&[n]).clone();
        assert_eq!((c(&g0, 0), c(&g0, 2), c(&g0, 4), c(&g0, 6)), (int(1), int(0), rat(7, 27), rat(32, 81)));
        assert_eq!((c(&g1, 1), c(&g1, 3), c(&g1, 5)), (rat(1, 3), rat(4, 27), rat(1, 3)));
        assert_eq!((c(&g2, 2), c(&g2, 4), c(&g2, 6)), (rat(1, 3), rat(20, 81), rat(49, 243)));
        assert_eq!(
            (c(&g3, 3), c(&g3, 5), c(&g3, 7), c(&g3, 9)),
            (rat(5, 9), int(0), rat(91, 243), rat(1760, 6561))
        );
        assert!(g_series(4, 3).is_err());
    }

    #[test]
    fn fast_sequence_examples() {
        assert_eq!(lambda_fast_sequence(3, 3).unwrap()[3].lambda, rat(5, 9));
        assert_eq!(lambda_fast_sequence(1, 5).unwrap()[5].lambda, rat(1, 3));
        assert_eq!(lambda_fast_sequence(2, 8).unwrap()[8].lambda, rat(232, 729));
    }

    #[test]
    fn three_routes_agree_small() {
        for kappa in 0..=3 {
            let direct = lambda_direct_sequence(3, kappa, 60).unwrap();
            let series = g_series(kappa, 60).unwrap();
            let fast = lambda_fast_sequence(kappa, 60).unwrap();
            for n in 0..=60 {
                assert_eq!(direct[n], *series.coeff(&[n]), "kappa={kappa} n={n}");
                assert_eq!(direct[n], fast[n].lambda, "kappa={kappa} n={n}");
            }
        }
    }

    #[test]
    fn vanishing_and_diagonal() {
        for d in 3..=6 {
            for kappa in 0..=d {
                let seq = lambda_direct_sequence(d, kappa, 30).unwrap();
                for (n, v) in seq.iter().enumerate() {
                    if n < kappa || (n + kappa) % 2 == 1 {
                        assert!(v.is_zero(), "d={d} kappa={kappa} n={n}");
                    }
                }
                if kappa <= 30 {
                    assert_eq!(seq[kappa], lambda_closed_diag(d, kappa).unwrap());
                }
            }
        }
    }

    #[test]
    fn eigenvector_examples() {
        let x1x2 = MultiPoly::from_terms(3, [(vec![1, 1, 0], int(1))]);
        assert_eq!(eigenvector_poly(3, 2, 2).unwrap().poly, x1x2);
        let x1x2x3 = MultiPoly::from_terms(3, [(vec![1, 1, 1], int(1))]);
        let e = eigenvector_poly(3, 3, 3).unwrap();
        assert_eq!(e.poly, x1x2x3);
        assert_eq!(e.value_at_diagonal(), rat(5, 9));

        let quintic = MultiPoly::from_terms(
            3,
            [
                (vec![5, 0, 0], int(1)),
                (vec![3, 2, 0], int(-5)),
                (vec![3, 0, 2], int(-5)),
                (vec![1, 4, 0], int(15)),
                (vec![1, 2, 2], int(-75)),
                (vec![1, 0, 4], int(15)),
            ],
        );
        assert_eq!(eigenvector_poly(3, 1, 5).unwrap().poly, quintic);

        assert!(matches!(eigenvector_poly(3, 3, 1), Err(Error::DegenerateEigenvector { .. })));
    }

    #[test]
    fn harmonic_examples() {
        assert!(solid_harmonic_check(3, 3, 3).unwrap());
        assert!(solid_harmonic_check(3, 1, 5).unwrap());
        assert!(solid_harmonic_check(4, 2, 4).unwrap());
    }

    #[test]
    fn multinomial_examples() {
        let a = epsilon_multinomial_identity(3, 1, 1).unwrap();
        assert!(a.holds());
        assert_eq!(a.sign_sum, int(1));
        let b = epsilon_multinomial_identity(3, 3, 3).unwrap();
        assert!(b.holds());
        assert_eq!(b.multinomial_sum, int(6));
        let c = epsilon_multinomial_identity(3, 2, 1).unwrap();
        assert!(c.holds());
        assert!(c.sign_sum.is_zero());
    }

    #[test]
    fn multinomial_identity_sweep() {
        for d in 1..=6 {
            for kappa in 0..=d {
                for m in 0..=8 {
                    assert!(epsilon_multinomial_identity(d, kappa, m).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn certify_rejects_small_cutoff() {
        assert!(matches!(certify_top2(0, 999), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn figure_rows() {
        let g0 = figure_data(0, 3).unwrap();
        assert_eq!(g0.iter().map(|r| r.n).collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(g0[0].value, int(1));
        assert_eq!(g0[1].value, int(0));
        assert_eq!(g0[2].value, rat(7, 27));
        let g1 = figure_data(1, 2).unwrap();
        assert_eq!((g1[1].n, g1[1].value.clone()), (3, rat(4, 27)));
        assert!(figure_data(0, 0).is_err());
    }

    #[test]
    fn certified_top_two() {
        let expect = [
            (0, int(1), vec![0], rat(8320, 19683), vec![10]),
            (1, rat(1, 3), vec![1, 5], rat(469136, 1594323), vec![15]),
            (2, rat(1, 3), vec![2], rat(232, 729), vec![8]),
            (3, rat(5, 9), vec![3], rat(221312, 531441), vec![13]),
        ];
        for (kappa, alpha, ai, beta, bi) in expect {
            let c = certify_top2(kappa, DEFAULT_CUTOFF).unwrap();
            assert_eq!((c.alpha, c.alpha_indices, c.beta, c.beta_indices), (alpha, ai, beta, bi));
            assert!(c.certificate.margin.is_positive());
            assert!(c.certificate.tail_sup_float < to_f64(&rat(232, 729)));
        }
    }

    // Literal sign-vector sum, independent of the zonal Horner form.
    fn eigenvector_by_signs(d: usize, kappa: usize, n: usize) -> MultiPoly {
        let c = gegenbauer_dense(n, &gegenbauer_index(d));
        let norm2 = (0..d).fold(MultiPoly::zero(d), |acc, i| acc.add(&MultiPoly::var(d, i).pow(2)));
        let dd = int(d as i64);
        let mut total = MultiPoly::zero(d);
        for mask in 0u32..(1 << d) {
            let mut sign = int(1);
            let mut dot = MultiPoly::zero(d);
            for i in 0..d {
                let e = if mask >> i & 1 == 1 { int(-1) } else { int(1) };
                if i < kappa {
                    sign *= &e;
                }
                dot = dot.add(&MultiPoly::var(d, i).scale(&e));
            }
            for k in (n % 2..=n).step_by(2) {
                let term = dot
                    .pow(k)
                    .mul(&norm2.pow((n - k) / 2))
                    .scale(&(&c[k] * crate::rational::pow(&dd, (n - k) / 2) * &sign));
                total = total.add(&term);
            }
        }
        total.scale(&BigRational::new(BigInt::one(), BigInt::one() << d))
    }

    #[test]
    fn eigenvector_matches_sign_sum() {
        for (d, n_max) in [(3, 8), (4, 6), (5, 5)] {
            for kappa in 0..=d {
                for n in 0..=n_max {
                    let raw = eigenvector_raw(d, kappa, n).unwrap();
                    assert_eq!(raw, eigenvector_by_signs(d, kappa, n), "d={d} kappa={kappa} n={n}");
                    assert!(raw.laplacian().is_zero());
                    if let Ok(e) = eigenvector_poly(d, kappa, n) {
                        let lambda = lambda_direct(d, kappa, n).unwrap();
                        let c1 = gegenbauer_values(&int(1), &gegenbauer_index(d), n).pop().unwrap();
                        assert_eq!(e.value_at_diagonal(), lambda * c1);
                    }
                }
            }
        }
    }

    #[test]
    fn quarter_search_small() {
        assert!(quarter_search(2, 100).unwrap().is_empty());
    }
}
