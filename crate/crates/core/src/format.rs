//! Text formats: the sparse series file and small CSV helpers.
//!
//! A sparse series file has a header `order: N`, an optional `arity: k`
//! (default 3), then one line per nonzero coefficient with `k` exponents
//! and a rational `p/q` (or integer). `#` starts a comment. Coefficients
//! not listed are zero.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_exact, parse_exact, BigRational};
use crate::series::TruncatedSeries;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_sparse_series(text: &str) -> Result<TruncatedSeries> {
    let mut order: Option<usize> = None;
    let mut arity = 3usize;
    let mut terms: Vec<(usize, Vec<usize>, BigRational)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad value for `{}`", key.trim())))?;
            match key.trim() {
                "order" => order = Some(value),
                "arity" if (1..=3).contains(&value) => arity = value,
                "arity" => return Err(parse_err(line_no, "arity must be 1, 2 or 3")),
                other => return Err(parse_err(line_no, format!("unknown header `{other}`"))),
            }
            continue;
        }
        if order.is_none() {
            return Err(parse_err(line_no, "coefficient before `order:` header"));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (exps, coeff) = fields.split_at(fields.len().saturating_sub(1));
        let exps: Vec<usize> = exps
            .iter()
            .map(|f| f.parse().map_err(|_| parse_err(line_no, format!("bad exponent `{f}`"))))
            .collect::<Result<_>>()?;
        let coeff = coeff
            .first()
            .ok_or_else(|| parse_err(line_no, "empty term"))
            .and_then(|c| parse_exact(c).map_err(|m| parse_err(line_no, m)))?;
        terms.push((line_no, exps, coeff));
    }
    let order = order.ok_or_else(|| parse_err(0, "missing `order:` header"))?;
    let mut out = TruncatedSeries::zero(arity, order);
    let mut seen = BTreeSet::new();
    for (line_no, exps, coeff) in terms {
        if exps.len() != arity {
            return Err(parse_err(line_no, format!("expected {arity} exponents, found {}", exps.len())));
        }
        if exps.iter().any(|&e| e > order) {
            return Err(parse_err(line_no, format!("exponents {exps:?} exceed order {order}")));
        }
        if !seen.insert(exps.clone()) {
            return Err(parse_err(line_no, format!("duplicate exponents {exps:?}")));
        }
        out.set(&exps, coeff);
    }
    Ok(out)
}

/// Canonical text: header, then nonzero terms in lexicographic exponent
/// order. `parse_sparse_series` inverts it exactly.
pub fn print_sparse_series(series: &TruncatedSeries) -> String {
    let mut out = format!("order: {}\n", series.order());
    if series.arity() != 3 {
        out.push_str(&format!("arity: {}\n", series.arity()));
    }
    for (e, c) in series.terms() {
        if c.is_zero() {
            continue;
        }
        let exps: Vec<String> = e[..series.arity()].iter().map(|k| k.to_string()).collect();
        out.push_str(&format!("{} {}\n", exps.join(" "), format_exact(c)));
    }
    out
}

/// Quotes a CSV field when it contains a comma, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row<S: AsRef<str>>(fields: &[S]) -> String {
    fields.iter().map(|f| csv_field(f.as_ref())).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn parse_example() {
        let text = "# identity, truncated\norder: 2\n0 0 0 1\n1 0 1 1\n2 0 2 1/1\n0 1 0 1  # w2\n";
        let s = parse_sparse_series(text).unwrap();
        assert_eq!(*s.coeff(&[1, 0, 1]), int(1));
        assert_eq!(*s.coeff(&[0, 1, 0]), int(1));
        assert_eq!(*s.coeff(&[2, 2, 2]), int(0));
        assert_eq!(
            print_sparse_series(&s),
            "order: 2\n0 0 0 1/1\n0 1 0 1/1\n1 0 1 1/1\n2 0 2 1/1\n"
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_sparse_series("0 0 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_sparse_series("order: 1\n2 0 0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_sparse_series("order: 1\n0 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sparse_series("order: 1\n0 0 0 1/0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sparse_series("order: 1\n0 0 0 1\n0 0 0 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_sparse_series("size: 1\n"), Err(Error::Parse { .. })));
        assert!(parse_sparse_series("").is_err());
    }

    #[test]
    fn two_variable_file() {
        let s = parse_sparse_series("order: 3\narity: 2\n1 2 -3/4\n").unwrap();
        assert_eq!(s.arity(), 2);
        assert_eq!(*s.coeff(&[1, 2]), rat(-3, 4));
        assert_eq!(parse_sparse_series(&print_sparse_series(&s)).unwrap(), s);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_row(&["a", "b,c", "d\"e"]), "a,\"b,c\",\"d\"\"e\"");
    }

    proptest! {
        #[test]
        fn prop_round_trip(order in 0usize..4, vals in proptest::collection::vec((-50i64..50, 1i64..30), 64)) {
            let mut k = 0;
            let s = TruncatedSeries::from_fn(3, order, |_| {
                k += 1;
                let (n, d) = vals[k % vals.len()];
                if k % 3 == 0 { int(0) } else { rat(n, d) }
            });
            let text = print_sparse_series(&s);
            let back = parse_sparse_series(&text).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(print_sparse_series(&back), text);
        }
    }
}
