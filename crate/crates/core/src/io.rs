//! Band text format and value formatting.
//!
//! ```text
//! # comment
//! 4                 <- order n
//! 25 13 5 1         <- n diagonal entries
//! -9 -4 -1          <- n-1 superdiagonal entries
//! -9 -4 -1          <- n-1 subdiagonal entries
//! ```
//!
//! Values are whitespace separated; `p/q` is accepted in every mode. For
//! `n = 1` the two band lines are blank or absent. `#` starts a comment.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::matrix::TridiagonalMatrix;
use crate::scalar::{Scalar, ScalarMode};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {band} needs {expected} values, found {found}")]
    Dimension {
        line: usize,
        band: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("line {line}, column {column}: cannot parse `{token}` as a {mode} scalar")]
    Value {
        line: usize,
        column: usize,
        token: String,
        mode: ScalarMode,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagFile<T> {
    pub matrix: TridiagonalMatrix<T>,
    pub path: Option<PathBuf>,
    pub mode: ScalarMode,
}

impl<T: Scalar> TridiagFile<T> {
    pub fn read(path: impl AsRef<Path>) -> Result<Self, ParseError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| ParseError::Io {
            path: path.to_owned(),
            source,
        })?;
        Ok(Self {
            matrix: parse_tridiag(&text)?,
            path: Some(path.to_owned()),
            mode: T::MODE,
        })
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        Ok(Self {
            matrix: parse_tridiag(text)?,
            path: None,
            mode: T::MODE,
        })
    }
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(idx),
            (true, Some(s)) => {
                out.push(Token {
                    column: s + 1,
                    text: &line[s..idx],
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(body, _)| body)
}

/// Parses the band format in the scalar type `T`.
pub fn parse_tridiag<T: Scalar>(text: &str) -> Result<TridiagonalMatrix<T>, ParseError> {
    // comment-only lines vanish; blank lines are kept since they can stand
    // for empty bands
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .skip_while(|(_, l)| l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| ParseError::Syntax {
        line: 1,
        column: 1,
        message: "missing order".into(),
    })?;
    let header_tokens = tokens(header);
    let n = match header_tokens.as_slice() {
        [tok] => tok
            .text
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| ParseError::Syntax {
                line: header_line,
                column: tok.column,
                message: format!("order must be a positive integer, found `{}`", tok.text),
            })?,
        [_, extra, ..] => {
            return Err(ParseError::Syntax {
                line: header_line,
                column: extra.column,
                message: "order line must hold a single integer".into(),
            })
        }
        [] => unreachable!("leading blank lines are skipped"),
    };

    let mut band = |name: &'static str, expected: usize| -> Result<Vec<T>, ParseError> {
        let (line_no, line) = match lines.next() {
            Some(l) => l,
            None if expected == 0 => return Ok(Vec::new()),
            None => {
                return Err(ParseError::Dimension {
                    line: header_line,
                    band: name,
                    expected,
                    found: 0,
                })
            }
        };
        let toks = tokens(line);
        if toks.len() != expected {
            return Err(ParseError::Dimension {
                line: line_no,
                band: name,
                expected,
                found: toks.len(),
            });
        }
        toks.iter()
            .map(|t| {
                T::parse_text(t.text).ok_or_else(|| ParseError::Value {
                    line: line_no,
                    column: t.column,
                    token: t.text.to_owned(),
                    mode: T::MODE,
                })
            })
            .collect()
    };

    let d = band("diagonal", n)?;
    let a = band("superdiagonal", n - 1)?;
    let b = band("subdiagonal", n - 1)?;

    if let Some((line, rest)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError::Syntax {
            line,
            column: tokens(rest)[0].column,
            message: "unexpected content after the subdiagonal".into(),
        });
    }
    Ok(TridiagonalMatrix::new(d, a, b).expect("band lengths checked above"))
}

/// Writes the band format. `parse_tridiag(&format_tridiag(a)) == a` exactly.
pub fn format_tridiag<T: Scalar>(a: &TridiagonalMatrix<T>) -> String {
    let join = |v: &[T]| v.iter().map(Scalar::to_text).collect::<Vec<_>>().join(" ");
    format!(
        "{}\n{}\n{}\n{}\n",
        a.order(),
        join(a.diagonal()),
        join(a.upper()),
        join(a.lower())
    )
}

/// `%.17g`: 17 significant digits, trailing zeros dropped.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    trim_fraction(&format!("{v:.decimals$}")).to_owned()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Result formatting: exact `p/q` in rational mode, `%.17g` otherwise.
/// Scaled values beyond the double range keep their `sig p exp` form.
pub fn format_value<T: Scalar>(x: &T) -> String {
    match T::MODE {
        ScalarMode::Rational => x.to_text(),
        ScalarMode::Double => format_g17(x.to_f64()),
        ScalarMode::Scaled => {
            let v = x.to_f64();
            if v.is_finite() && (v != 0.0 || x.is_zero()) {
                format_g17(v)
            } else {
                x.to_text()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Scaled};

    #[test]
    fn parses_graded4_bands() {
        let m: TridiagonalMatrix<Rational> =
            parse_tridiag("4\n25 13 5 1\n-9 -4 -1\n-9 -4 -1\n").unwrap();
        assert_eq!(
            m,
            TridiagonalMatrix::from_i64(&[25, 13, 5, 1], &[-9, -4, -1], &[-9, -4, -1]).unwrap()
        );
    }

    #[test]
    fn parses_order_one() {
        let m: TridiagonalMatrix<f64> = parse_tridiag("1\n5\n\n\n").unwrap();
        assert_eq!(m.diagonal(), &[5.0]);
        let m: TridiagonalMatrix<f64> = parse_tridiag("1\n5").unwrap();
        assert_eq!(m.order(), 1);
    }

    #[test]
    fn parses_with_comments() {
        let text = "# the 3x3 matrix A\n3   # order\n1 1 3\n\t1 2\n1 2 # sub\n\n";
        let m: TridiagonalMatrix<Rational> = parse_tridiag(text).unwrap();
        assert_eq!(
            m,
            TridiagonalMatrix::from_i64(&[1, 1, 3], &[1, 2], &[1, 2]).unwrap()
        );
    }

    #[test]
    fn fractions_in_every_mode() {
        let text = "2\n1/2 -3/4\n1\n2\n";
        let r: TridiagonalMatrix<Rational> = parse_tridiag(text).unwrap();
        assert_eq!(r.diagonal()[1], Rational::new((-3).into(), 4.into()));
        let f: TridiagonalMatrix<f64> = parse_tridiag(text).unwrap();
        assert_eq!(f.diagonal(), &[0.5, -0.75]);
        let s: TridiagonalMatrix<Scaled> = parse_tridiag(text).unwrap();
        assert_eq!(s.diagonal()[0], Scaled::from_f64(0.5));
    }

    #[test]
    fn reports_error_locations() {
        match parse_tridiag::<f64>("3\n1 2 3\n1 2\n1\n") {
            Err(ParseError::Dimension {
                line: 4,
                band: "subdiagonal",
                expected: 2,
                found: 1,
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_tridiag::<f64>("2\n1 x\n0\n0\n") {
            Err(ParseError::Value {
                line: 2,
                column: 3,
                token,
                ..
            }) => assert_eq!(token, "x"),
            other => panic!("{other:?}"),
        }
        match parse_tridiag::<f64>("two\n") {
            Err(ParseError::Syntax {
                line: 1, column: 1, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse_tridiag::<f64>("0\n") {
            Err(ParseError::Syntax { .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_tridiag::<f64>("2\n1 1\n0\n0\n7\n") {
            Err(ParseError::Syntax { line: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_tridiag::<f64>("3\n1 1 1\n") {
            Err(ParseError::Dimension {
                band: "superdiagonal",
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_tridiag::<f64>("").is_err());
    }

    #[test]
    fn formats_order_one_with_blank_bands() {
        let m: TridiagonalMatrix<Rational> = TridiagonalMatrix::from_i64(&[5], &[], &[]).unwrap();
        assert_eq!(format_tridiag(&m), "1\n5\n\n\n");
    }

    #[test]
    fn g17_formatting() {
        assert_eq!(format_g17(0.0), "0");
        assert_eq!(format_g17(576.0), "576");
        assert_eq!(format_g17(-0.25), "-0.25");
        assert_eq!(format_g17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(format_g17(1e-20), "9.9999999999999995e-21");
        assert_eq!(format_g17(0.5e-5), "5.0000000000000004e-06");
        assert_eq!(format_g17(6.02214076e23), "6.0221407599999999e+23");
        for v in [
            0.1,
            1.0 / 3.0,
            123456.789,
            2.5e-7,
            -9.87654321e200,
            f64::MIN_POSITIVE,
        ] {
            assert_eq!(format_g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn value_formatting_per_mode() {
        assert_eq!(format_value(&Rational::new(9.into(), 144.into())), "1/16");
        assert_eq!(format_value(&0.0625f64), "0.0625");
        assert_eq!(format_value(&Scaled::from_f64(-2.0)), "-2");
        assert_eq!(format_value(&Scaled::new(1.5, 4000)), "1.5p4000");
    }
}
