//! Subcommand implementations. Each returns a [`RunReport`]; errors are
//! split into usage problems (exit 2) and runtime failures (exit 1).

use anyhow::Context;
use num_complex::Complex64;
use strichartz_core::acceptance;
use strichartz_core::bridge::{e_closed_sequence, gram_matrix_exact, kernel_reproduce_check, ApplicationParams};
use strichartz_core::format::{parse_sparse_series, print_sparse_series};
use strichartz_core::oracle::{foschi_constant_check, q_form_numeric, strichartz_l6, GaussianWaveSpec, QuadratureConfig};
use strichartz_core::rational::{format_exact, to_f64};
use strichartz_core::special::{eigen_from_h, identity_f, SpecialSeriesPair};
use strichartz_core::spectrum::{
    certify_top2, eigenvector_poly, figure_data, lambda_direct_sequence, lambda_fast_sequence, quarter_search_all,
    solid_harmonic_check,
};
use strichartz_core::{BigRational, Error, TruncatedSeries};

use crate::report::{RunReport, Verdict};
use crate::{Command, KSel, OracleCheck};

pub enum CommandError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::Parse { .. } | Error::InsufficientOrder { .. } => {
                CommandError::Usage(e.to_string())
            }
            _ => CommandError::Failed(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for CommandError {
    fn from(e: anyhow::Error) -> Self {
        CommandError::Usage(format!("{e:#}"))
    }
}

type Outcome = Result<RunReport, CommandError>;

/// `(x, w, t)` for the kernel check.
type Sample = (f64, f64, f64);

fn exact(x: &BigRational) -> String {
    format_exact(x)
}

fn float(x: f64) -> String {
    format!("{x:?}")
}

fn indices(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}

fn ksel_label(k: KSel) -> String {
    match k {
        KSel::All => "all".into(),
        KSel::One(k) => k.to_string(),
    }
}

fn kappa3(k: KSel) -> Result<Vec<usize>, CommandError> {
    let ks = k.classes(3);
    if ks.iter().any(|&k| k > 3) {
        return Err(CommandError::Usage("--k must be 0, 1, 2, 3 or all".into()));
    }
    Ok(ks)
}

pub fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Spectra { d, k, max_n } => spectra(*d, *k, *max_n),
        Command::Certify { k, cutoff } => certify(*k, *cutoff),
        Command::QuarterSearch { k, max_n } => quarter(*k, *max_n),
        Command::Figure1 { count } => figure1(*count),
        Command::Eigenvector { d, k, n } => eigenvector(*d, *k, *n),
        Command::SpecialCheck { file, builtin, order, emit_h } => {
            let (label, f) = match (file, builtin) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    (path.display().to_string(), parse_sparse_series(&text)?)
                }
                (None, Some(name)) => (name.clone(), builtin_series(name, *order)?),
                _ => return Err(CommandError::Usage("give a series file or --builtin".into())),
            };
            special_check(&label, &f, *emit_h)
        }
        Command::BridgeVerify { k, s_max } => bridge(*k, *s_max),
        Command::Oracle { check, tol } => oracle(*check, *tol),
        Command::Selftest { only } => selftest(only),
    }
}

fn spectra(d: usize, k: KSel, max_n: usize) -> Outcome {
    let mut r = RunReport::new("spectra");
    r.param("d", d).param("k", ksel_label(k)).param("max_n", max_n);
    r.columns(&["kappa", "n", "exact", "float"]);
    let mut agree = true;
    for kappa in k.classes(d) {
        let values = lambda_direct_sequence(d, kappa, max_n)?;
        if d == 3 {
            // Independent evaluation through P_n(1/3).
            let fast = lambda_fast_sequence(kappa, max_n)?;
            agree &= fast.iter().zip(&values).all(|(f, v)| f.lambda == *v);
        }
        for (n, v) in values.iter().enumerate() {
            r.row(vec![kappa.to_string(), n.to_string(), exact(v), float(to_f64(v))]);
        }
    }
    if d == 3 {
        r.note("direct sum and Legendre evaluation agree", agree);
    }
    r.fold_verdict(Verdict::from_bool(agree));
    Ok(r)
}

fn certify(k: KSel, cutoff: usize) -> Outcome {
    let mut r = RunReport::new("certify");
    r.param("k", ksel_label(k)).param("cutoff", cutoff);
    r.columns(&[
        "kappa",
        "alpha",
        "alpha_float",
        "alpha_indices",
        "beta",
        "beta_float",
        "beta_indices",
        "tail_bound",
        "margin",
    ]);
    for kappa in kappa3(k)? {
        match certify_top2(kappa, cutoff) {
            Ok(c) => {
                r.row(vec![
                    kappa.to_string(),
                    exact(&c.alpha),
                    float(to_f64(&c.alpha)),
                    indices(&c.alpha_indices),
                    exact(&c.beta),
                    float(to_f64(&c.beta)),
                    indices(&c.beta_indices),
                    exact(&c.certificate.squared_deviation_bound),
                    exact(&c.certificate.margin),
                ]);
                if kappa == kappa3(k)?[0] {
                    r.note("tail", &c.certificate.statement);
                }
            }
            Err(e @ Error::CertificationFailed { .. }) => {
                r.note(&format!("kappa {kappa}"), e);
                r.fold_verdict(Verdict::Fail);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(r)
}

fn quarter(k: KSel, max_n: usize) -> Outcome {
    let ks = kappa3(k)?;
    let mut r = RunReport::new("quarter-search");
    r.param("k", ksel_label(k)).param("max_n", max_n);
    r.columns(&["kappa", "n"]);
    let hits = quarter_search_all(max_n);
    let mut total = 0;
    for kappa in ks {
        for &n in &hits[kappa] {
            r.row(vec![kappa.to_string(), n.to_string()]);
            total += 1;
        }
    }
    r.note("hits", total);
    r.fold_verdict(Verdict::from_bool(total == 0));
    Ok(r)
}

fn figure1(count: usize) -> Outcome {
    let mut r = RunReport::new("figure1");
    r.param("count", count);
    r.columns(&["series", "n", "exact", "float"]);
    let mut in_range = true;
    for kappa in 0..=1 {
        for row in figure_data(kappa, count)? {
            in_range &= (0.0..=1.0).contains(&row.float);
            r.row(vec![format!("G{kappa}"), row.n.to_string(), exact(&row.value), float(row.float)]);
        }
    }
    r.fold_verdict(Verdict::from_bool(in_range));
    Ok(r)
}

fn eigenvector(d: usize, k: usize, n: usize) -> Outcome {
    let mut r = RunReport::new("eigenvector");
    r.param("d", d).param("k", k).param("n", n);
    let e = eigenvector_poly(d, k, n)?;
    let harmonic = solid_harmonic_check(d, k, n)?;
    let lambda = lambda_direct_sequence(d, k, n)?.pop().expect("nonempty");
    r.columns(&["exponents", "coefficient"]);
    for (exps, c) in e.poly.terms() {
        let exps: Vec<String> = exps.iter().map(u32::to_string).collect();
        r.row(vec![exps.join(" "), exact(c)]);
    }
    r.note("polynomial", &e.poly);
    r.note("scale", exact(&e.scale));
    r.note("eigenvalue", exact(&lambda));
    r.note("harmonic", harmonic);
    r.fold_verdict(Verdict::from_bool(harmonic));
    Ok(r)
}

fn builtin_series(name: &str, order: usize) -> Result<TruncatedSeries, CommandError> {
    Ok(match name {
        "identity" => identity_f(order),
        "f0" | "f1" | "f2" | "f3" => {
            let kappa = usize::from(name.as_bytes()[1] - b'0');
            strichartz_core::bridge::f_app_series(kappa, order)?
        }
        other => return Err(CommandError::Usage(format!("unknown builtin `{other}`; use identity, f0..f3"))),
    })
}

fn special_check(label: &str, f: &TruncatedSeries, emit_h: bool) -> Outcome {
    let order = f.order();
    let mut r = RunReport::new("special-check");
    r.param("series", label).param("order", order);
    let pair = SpecialSeriesPair::analyze(f, order)?;
    let w = pair.witness;
    r.columns(&["criterion", "holds"]);
    r.row(vec!["commutation".into(), w.commutes.to_string()]);
    r.row(vec!["lde_residual_zero".into(), w.lde_zero.to_string()]);
    r.row(vec!["recursion".into(), w.recursion.to_string()]);
    r.row(vec!["z_independent".into(), w.z_independent.to_string()]);
    r.note("special", pair.is_special());
    r.note("criteria consistent", w.consistent());
    r.note("z clean through", pair.z_clean_through);
    if pair.is_special() {
        let es: Vec<String> = (0..=pair.order / 2)
            .map(|n| eigen_from_h(&pair.h, n).map(|e| exact(&e)))
            .collect::<Result<_, _>>()?;
        r.note("e_n", es.join(" "));
        if emit_h {
            r.note("H", print_sparse_series(&pair.h).trim_end().replace('\n', " | "));
        }
    }
    r.fold_verdict(Verdict::from_bool(w.consistent()));
    Ok(r)
}

fn bridge(k: KSel, s_max: usize) -> Outcome {
    let ks = kappa3(k)?;
    let mut r = RunReport::new("bridge-verify");
    r.param("k", ksel_label(k)).param("s_max", s_max);
    r.columns(&["kappa", "S", "size", "rank", "nonzero_spectrum", "expected", "passed"]);
    for kappa in ks {
        let p = ApplicationParams::new(kappa)?.p;
        for s in 0..=s_max {
            let g = gram_matrix_exact(kappa, s)?;
            let spectrum = g
                .nonzero_spectrum
                .as_ref()
                .map(|v| v.iter().map(exact).collect::<Vec<_>>().join(" "))
                .unwrap_or_else(|| "unidentified".into());
            let expected = g.expected.iter().map(exact).collect::<Vec<_>>().join(" ");
            let ok = g.passed && g.rank <= s + p + 1;
            r.row(vec![
                kappa.to_string(),
                s.to_string(),
                g.basis.len().to_string(),
                g.rank.to_string(),
                spectrum,
                expected,
                ok.to_string(),
            ]);
            if let Some(c) = &g.global_scalar {
                r.note(&format!("kappa {kappa} S {s} global scalar"), exact(c));
            }
            r.fold_verdict(Verdict::from_bool(ok));
        }
        let e: Vec<String> = e_closed_sequence(kappa, s_max + p)?.iter().map(exact).collect();
        r.note(&format!("e_n kappa {kappa}"), e.join(" "));
    }
    Ok(r)
}

fn numeric<T>(r: &mut RunReport, what: &str, res: strichartz_core::Result<T>) -> Result<Option<T>, CommandError> {
    match res {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::NotConverged { .. }) => {
            r.note(what, e);
            r.fold_verdict(Verdict::NonConverged);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn oracle(check: OracleCheck, tol: Option<f64>) -> Outcome {
    let cfg = QuadratureConfig::default();
    let pi = std::f64::consts::PI;
    let mut r = RunReport::new("oracle");
    match check {
        OracleCheck::Strichartz => {
            let tol = tol.unwrap_or(acceptance::ANALYTIC_REL_TOL);
            r.param("check", "strichartz").param("tol", float(tol));
            r.columns(&["case", "value", "target", "deviation"]);
            for (r_idx, factor, name) in [(0u32, 1.0, "even"), (1, 5.0 / 9.0, "odd")] {
                let spec = GaussianWaveSpec::real(r_idx, pi)?;
                if let Some(l6) = numeric(&mut r, name, strichartz_l6(&spec, &cfg))? {
                    let lhs = 12f64.sqrt() * l6.value;
                    let target = factor * spec.norm_sq().powi(3);
                    let dev = (lhs - target).abs() / target;
                    r.row(vec![format!("sqrt12*L6^6/|g|^6 {name}"), float(lhs / spec.norm_sq().powi(3)), float(factor), float(dev)]);
                    r.fold_verdict(Verdict::from_bool(dev <= tol));
                }
            }
            if let Some(f) = numeric(&mut r, "ratios", foschi_constant_check(&cfg))? {
                for (name, v, t) in [
                    ("even ratio", f.even_ratio, f.even_target),
                    ("odd ratio", f.odd_ratio, f.odd_target),
                    ("odd/even", f.quotient, f.quotient_target),
                ] {
                    let dev = (v - t).abs();
                    r.row(vec![name.into(), float(v), float(t), float(dev)]);
                    r.fold_verdict(Verdict::from_bool(dev <= acceptance::CONSTANT_TOL.max(tol)));
                }
            }
        }
        OracleCheck::Qform => {
            let tol = tol.unwrap_or(acceptance::ANALYTIC_REL_TOL);
            r.param("check", "qform").param("tol", float(tol));
            r.columns(&["kappa", "ratio", "target", "deviation"]);
            for (kappa, target) in [1.0, 1.0 / 3.0, 1.0 / 3.0, 5.0 / 9.0].into_iter().enumerate() {
                if let Some(q) = numeric(&mut r, &format!("kappa {kappa}"), q_form_numeric(kappa, Complex64::new(pi, 0.0), &cfg))? {
                    let dev = (q.ratio - target).abs() / target;
                    r.row(vec![kappa.to_string(), float(q.ratio), float(target), float(dev)]);
                    r.fold_verdict(Verdict::from_bool(dev <= tol));
                }
            }
        }
        OracleCheck::Kernel => {
            let tol = tol.unwrap_or(1e-10);
            r.param("check", "kernel").param("tol", float(tol));
            r.columns(&["eps", "x", "w", "t", "integral", "closed", "deviation"]);
            let samples: [(i32, &[Sample]); 2] = [
                (1, &[(0.7, 0.3, 0.2), (0.4, 0.0, 0.5), (1.2, -0.5, 0.3)]),
                (-1, &[(1.1, 0.25, 0.4), (0.5, 0.0, -0.3), (0.8, -0.6, 0.6)]),
            ];
            for (eps, pts) in samples {
                if let Some(rows) = numeric(&mut r, &format!("eps {eps}"), kernel_reproduce_check(eps, pts))? {
                    for s in rows {
                        r.row(vec![
                            eps.to_string(),
                            float(s.x),
                            float(s.w),
                            float(s.t),
                            float(s.integral),
                            float(s.closed),
                            float(s.deviation),
                        ]);
                        r.fold_verdict(Verdict::from_bool(s.deviation <= tol));
                    }
                }
            }
        }
    }
    Ok(r)
}

fn selftest(only: &[u8]) -> Outcome {
    let ids: Vec<u8> = if only.is_empty() { (1..=11).collect() } else { only.to_vec() };
    let mut r = RunReport::new("selftest");
    r.param("criteria", ids.iter().map(u8::to_string).collect::<Vec<_>>().join(","));
    r.columns(&["id", "title", "result", "detail"]);
    for id in ids {
        let o = acceptance::criterion(id).ok_or_else(|| CommandError::Usage(format!("no criterion {id}")))?;
        eprintln!("{}", o.line());
        r.row(vec![
            o.id.to_string(),
            o.title.clone(),
            if o.passed { "pass" } else { "fail" }.into(),
            o.detail.clone(),
        ]);
        r.fold_verdict(Verdict::from_bool(o.passed));
    }
    Ok(r)
}
