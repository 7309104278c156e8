//! Plain-text documents for configurations and cylinder inputs.
//!
//! ```text
//! configuration
//! rank 3
//! n 4
//! 1 0 0
//! 0 1 0
//! 0 0 1
//! 1 1 1/2
//! ```
//!
//! One row per vector. Blank lines and lines starting with `#` are ignored.
//! A cylinder document has the header `cylinder`, the lines `n <n>` and
//! `axis <a>`, then one row `s z` per point.

use std::fmt::Write as _;

use crate::config::VectorConfiguration;
use crate::error::{Error, Result};
use crate::karcs::CylinderInput;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Configuration(VectorConfiguration<Rational>),
    Cylinder(CylinderInput<Rational>),
}

pub fn write_configuration(v: &VectorConfiguration<Rational>) -> String {
    let mut out = format!("configuration\nrank {}\nn {}\n", v.rank(), v.n());
    for c in v.columns() {
        let row: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_cylinder(input: &CylinderInput<Rational>) -> String {
    let mut out = format!("cylinder\nn {}\naxis {}\n", input.n(), input.axis_point);
    for (s, z) in input.circle_params.iter().zip(&input.heights) {
        let _ = writeln!(out, "{s} {z}");
    }
    out
}

pub fn write_document(doc: &Document) -> String {
    match doc {
        Document::Configuration(v) => write_configuration(v),
        Document::Cylinder(c) => write_cylinder(c),
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_content(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Some((i + 1, line.split_whitespace().collect()));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        self.next_content().ok_or_else(|| Error::Parse {
            line: self.last + 1,
            message: format!("expected {what}"),
        })
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (line, words) = self.expect(key)?;
        match words.as_slice() {
            [k, value] if *k == key => Ok((line, value)),
            _ => Err(Error::Parse {
                line,
                message: format!("expected `{key} <value>`"),
            }),
        }
    }
}

fn parse_count(line: usize, word: &str) -> Result<usize> {
    word.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{word}` is not a count"),
    })
}

fn parse_rational(line: usize, word: &str) -> Result<Rational> {
    if word.ends_with("/0") || word.contains("/-") {
        return Err(Error::Parse {
            line,
            message: format!("`{word}` is not a rational"),
        });
    }
    word.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{word}` is not a rational"),
    })
}

fn parse_rows(lines: &mut Lines, count: usize, width: usize) -> Result<Vec<Vec<Rational>>> {
    let mut rows = Vec::with_capacity(count);
    for index in 0..count {
        let (line, words) = lines.expect(&format!("row {}", index + 1))?;
        if words.len() != width {
            return Err(Error::Parse {
                line,
                message: format!("expected {width} entries, found {}", words.len()),
            });
        }
        rows.push(
            words
                .iter()
                .map(|w| parse_rational(line, w))
                .collect::<Result<_>>()?,
        );
    }
    if let Some((line, _)) = lines.next_content() {
        return Err(Error::Parse {
            line,
            message: "unexpected extra row".into(),
        });
    }
    Ok(rows)
}

/// Parses either kind of document. A configuration that is not in general
/// position is still returned, uncertified.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    let (line, header) = lines.expect("a header")?;
    match header.as_slice() {
        ["configuration"] => {
            let (l, rank) = lines.keyword("rank")?;
            let rank = parse_count(l, rank)?;
            let (l, n) = lines.keyword("n")?;
            let n = parse_count(l, n)?;
            if rank == 0 {
                return Err(Error::Parse {
                    line: l,
                    message: "rank must be positive".into(),
                });
            }
            let rows = parse_rows(&mut lines, n, rank)?;
            let v = match VectorConfiguration::new(rank, rows.clone()) {
                Err(Error::NotGeneralPosition { .. }) => {
                    VectorConfiguration::new_unchecked(rank, rows)?
                }
                other => other?,
            };
            Ok(Document::Configuration(v))
        }
        ["cylinder"] => {
            let (l, n) = lines.keyword("n")?;
            let n = parse_count(l, n)?;
            let (l, axis) = lines.keyword("axis")?;
            let axis = parse_rational(l, axis)?;
            let rows = parse_rows(&mut lines, n, 2)?;
            let (s, z) = rows
                .into_iter()
                .map(|r| (r[0].clone(), r[1].clone()))
                .unzip();
            Ok(Document::Cylinder(CylinderInput::new(s, z, axis)?))
        }
        _ => Err(Error::Parse {
            line,
            message: "expected `configuration` or `cylinder`".into(),
        }),
    }
}

pub fn parse_configuration(text: &str) -> Result<VectorConfiguration<Rational>> {
    match parse_document(text)? {
        Document::Configuration(v) => Ok(v),
        Document::Cylinder(_) => Err(Error::Parse {
            line: 1,
            message: "expected a configuration document".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{cocyclic, make_random};
    use crate::karcs::random_cylinder;

    #[test]
    fn round_trip() {
        for v in [
            cocyclic::<Rational>(6).unwrap(),
            make_random(7, 4, 5, 3).unwrap(),
        ] {
            let text = write_configuration(&v);
            assert_eq!(parse_configuration(&text).unwrap(), v);
        }
        let c = random_cylinder(5, 2).unwrap();
        assert_eq!(
            parse_document(&write_cylinder(&c)).unwrap(),
            Document::Cylinder(c)
        );
    }

    #[test]
    fn fractions_and_comments() {
        let text =
            "# four vectors\nconfiguration\nrank 3\n\nn 4\n1 0 0\n0 1 0\n0 0 1\n-1/3 2 7/2\n";
        let v = parse_configuration(text).unwrap();
        assert_eq!(v.column(3)[0], Rational::new((-1).into(), 3.into()));
        assert!(write_configuration(&v).contains("-1/3 2 7/2"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = |t: &str| match parse_document(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(err("configuration\nrank 3\nn 2\n1 0 0\n1 x 0\n"), 5);
        assert_eq!(err("configuration\nrank 3\nn 2\n1 0 0\n1 0\n"), 5);
        assert_eq!(err("configuration\nrank 3\nn 1\n1 0 0\n1 0 0\n"), 5);
        assert_eq!(err("configuration\nrank 3\nn 1\n1/0 0 0\n"), 4);
        assert_eq!(err("matrix\n"), 1);
        assert_eq!(err("configuration\nrank 3\nn 2\n1 0 0\n"), 5);
    }
}
