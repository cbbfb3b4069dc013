//! The `.mq` text format.
//!
//! ```text
//! # comment
//! vars 3
//! deg 2
//! x1*x2 + x3 + 1
//! ```
//!
//! One polynomial per line after the `vars`/`deg` header. A monomial is `1`
//! or a `*`-joined product of `x<i>` tokens (1-based). Whitespace is
//! insignificant and repeated monomials cancel. The zero polynomial is
//! written `0`.

use std::fmt::Write as _;

use super::PolySystem;
use crate::algebra::AnfPoly;
use crate::error::{Error, Result};

fn syntax<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        line,
        column,
        message: message.into(),
    })
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn new(line: usize, src: &str) -> Self {
        Lexer {
            chars: src.chars().enumerate().map(|(i, c)| (i + 1, c)).collect(),
            pos: 0,
            line,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.chars.len() + 1, |c| c.0)
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return syntax(self.line, self.column(), "expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        s.parse()
            .or_else(|_| syntax(self.line, self.chars[start].0, "number too large"))
    }
}

/// Parses a polynomial line over `n` variables with degree bound `d`.
fn parse_poly(line: usize, text: &str, n: usize, d: usize) -> Result<AnfPoly> {
    let mut lex = Lexer::new(line, text);
    let mut monos = Vec::new();
    loop {
        // one monomial
        let mut mask = 0u64;
        let mut constant = None;
        loop {
            match lex.peek() {
                Some((_, 'x')) => {
                    lex.pos += 1;
                    let idx = lex.number()?;
                    if idx == 0 || idx > n {
                        return Err(Error::VariableOutOfRange {
                            line,
                            index: idx,
                            vars: n,
                        });
                    }
                    mask |= 1 << (idx - 1);
                }
                Some((col, c @ ('0' | '1'))) if constant.is_none() && mask == 0 => {
                    lex.pos += 1;
                    // a bare constant cannot be multiplied
                    if matches!(lex.peek(), Some((_, '*'))) {
                        return syntax(line, col, "constant cannot be part of a product");
                    }
                    constant = Some(c == '1');
                    break;
                }
                Some((col, c)) => return syntax(line, col, format!("unexpected {c:?}")),
                None => return syntax(line, lex.column(), "expected a monomial"),
            }
            match lex.peek() {
                Some((_, '*')) => lex.pos += 1,
                _ => break,
            }
        }
        match constant {
            Some(true) => monos.push(0),
            Some(false) => {}
            None => {
                let degree = mask.count_ones() as usize;
                if degree > d {
                    return Err(Error::DegreeViolation {
                        line,
                        degree,
                        bound: d,
                    });
                }
                monos.push(mask);
            }
        }
        match lex.peek() {
            Some((_, '+')) => lex.pos += 1,
            None => break,
            Some((col, c)) => return syntax(line, col, format!("expected '+', found {c:?}")),
        }
    }
    AnfPoly::from_monomials(n, d, monos)
}

pub fn parse_system(text: &str) -> Result<PolySystem> {
    let mut vars: Option<usize> = None;
    let mut deg: Option<usize> = None;
    let mut polys = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let header = |kw: &str| -> Option<&str> {
            trimmed
                .strip_prefix(kw)
                .filter(|rest| rest.starts_with(char::is_whitespace))
        };
        if let Some(rest) = header("vars") {
            if vars.is_some() || !polys.is_empty() {
                return syntax(line, 1, "unexpected 'vars' header");
            }
            let mut lex = Lexer::new(line, rest);
            vars = Some(lex.number()?);
            if lex.peek().is_some() {
                return syntax(line, 1, "trailing input after 'vars'");
            }
            continue;
        }
        if let Some(rest) = header("deg") {
            if deg.is_some() || !polys.is_empty() {
                return syntax(line, 1, "unexpected 'deg' header");
            }
            let mut lex = Lexer::new(line, rest);
            deg = Some(lex.number()?);
            if lex.peek().is_some() {
                return syntax(line, 1, "trailing input after 'deg'");
            }
            continue;
        }
        let (Some(n), Some(d)) = (vars, deg) else {
            return syntax(line, 1, "polynomial before the 'vars' and 'deg' header");
        };
        if n > crate::algebra::wset::MAX_VARS {
            return syntax(
                line,
                1,
                format!(
                    "at most {} variables are supported",
                    crate::algebra::wset::MAX_VARS
                ),
            );
        }
        polys.push(parse_poly(line, raw, n, d.min(n))?);
    }
    let n = vars.ok_or_else(|| Error::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing 'vars' header".into(),
    })?;
    let d = deg.ok_or_else(|| Error::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing 'deg' header".into(),
    })?;
    PolySystem::new(n, d, polys)
}

/// Canonical form: header, then one polynomial per line in W-order.
pub fn serialize_system(sys: &PolySystem) -> String {
    let mut out = String::new();
    writeln!(out, "vars {}", sys.n()).unwrap();
    writeln!(out, "deg {}", sys.d()).unwrap();
    for p in sys.polys() {
        writeln!(out, "{p}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example() {
        let s = parse_system("vars 3\ndeg 2\nx1*x2 + x3 + 1\n").unwrap();
        assert_eq!((s.n(), s.d(), s.m()), (3, 2, 1));
        let mut monos = s.polys()[0].monomials();
        monos.sort_unstable();
        assert_eq!(monos, vec![0, 0b011, 0b100]);
    }

    #[test]
    fn empty_list_is_m_zero() {
        let s = parse_system("# nothing\nvars 4\ndeg 2\n").unwrap();
        assert_eq!(s.m(), 0);
    }

    #[test]
    fn duplicates_cancel() {
        let s = parse_system("vars 2\ndeg 1\nx1 + x1\n").unwrap();
        assert!(s.polys()[0].is_zero());
        assert_eq!(serialize_system(&s), "vars 2\ndeg 1\n0\n");
    }

    #[test]
    fn whitespace_insignificant() {
        let a = parse_system("vars 3\ndeg 2\n  x1 *x2+x3 +1 ").unwrap();
        let b = parse_system("vars 3\ndeg 2\nx1*x2 + x3 + 1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn error_locations() {
        match parse_system("vars 3\ndeg 2\nx1 + y2\n") {
            Err(Error::Syntax {
                line: 3, column: 6, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_system("vars 3\ndeg 1\nx1*x2\n"),
            Err(Error::DegreeViolation {
                line: 3,
                degree: 2,
                bound: 1
            })
        ));
        assert!(matches!(
            parse_system("vars 3\ndeg 2\nx4\n"),
            Err(Error::VariableOutOfRange {
                line: 3,
                index: 4,
                vars: 3
            })
        ));
        assert!(parse_system("vars 3\nx1\n").is_err());
        assert!(parse_system("vars 3\ndeg 2\nx1 +\n").is_err());
        assert!(parse_system("vars 3\ndeg 2\n1*x1\n").is_err());
    }

    #[test]
    fn serializes_in_canonical_order() {
        let s = parse_system("vars 3\ndeg 2\nx1*x2 + x3 + 1\n").unwrap();
        assert_eq!(serialize_system(&s), "vars 3\ndeg 2\n1 + x3 + x1*x2\n");
    }
}
