//! Text and JSON forms of bundles and polygons.
//!
//! Text grammar (whitespace-insensitive):
//!
//! ```text
//! bundle := "0" | term (("+" | "⊕") term)*
//! term   := "O" ["(" int ["/" int] ")"] ["^" uint]
//! int    := ["-" | "−" | "+"] digits
//! ```
//!
//! `O` alone is `O(0)`. Fractions may be unreduced or improper; the result is
//! always canonical. JSON forms are `[[d,h,m],...]` for bundles and
//! `[[x,y],...]` for polygons, with integers of any size.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::{Number, Value};

use crate::bundle::{Bundle, StableSummand};
use crate::error::{Error, ParseError, Result};
use crate::polygon::{LatticePoint, Polygon};
use crate::slope::Slope;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::new(self.pos, format!("expected {wanted}, found '{c}'")),
            None => ParseError::new(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        if len == 0 {
            return Err(self.unexpected("a digit"));
        }
        let n = BigInt::from_str(&rest[..len]).expect("ascii digits");
        self.pos += len;
        Ok(n)
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        let negative = if self.eat('-') || self.eat('−') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = self.digits()?;
        Ok(if negative { -n } else { n })
    }

    fn term(&mut self) -> Result<StableSummand, ParseError> {
        if !self.eat('O') {
            return Err(self.unexpected("'O'"));
        }
        let slope = if self.eat('(') {
            let num = self.int()?;
            let den = if self.eat('/') {
                let at = self.pos;
                let den = self.int()?;
                if den.is_positive() {
                    den
                } else {
                    return Err(ParseError::new(at, "denominator must be positive"));
                }
            } else {
                BigInt::one()
            };
            self.expect(')')?;
            Slope::new(num, den).expect("positive denominator")
        } else {
            Slope::zero()
        };
        let multiplicity = if self.eat('^') {
            let at = self.pos;
            let m = self.digits()?;
            if !m.is_positive() {
                return Err(ParseError::new(at, "multiplicity must be positive"));
            }
            m
        } else {
            BigInt::one()
        };
        Ok(StableSummand::new(slope, multiplicity).expect("positive multiplicity"))
    }
}

/// Parses the text grammar.
pub fn parse_bundle(input: &str) -> Result<Bundle> {
    let mut cur = Cursor { src: input, pos: 0 };
    if cur.eat('0') {
        return if cur.peek().is_none() {
            Ok(Bundle::zero())
        } else {
            Err(cur.unexpected("end of input").into())
        };
    }
    let mut blocks = vec![cur.term()?];
    loop {
        match cur.peek() {
            None => break,
            Some('+' | '⊕') => {
                cur.pos += cur.peek().map_or(0, char::len_utf8);
                blocks.push(cur.term()?);
            }
            Some(_) => return Err(cur.unexpected("'+' or end of input").into()),
        }
    }
    Ok(Bundle::from_summands(blocks))
}

/// Parses either form: input starting with `[` is JSON, anything else text.
pub fn parse_bundle_any(input: &str) -> Result<Bundle> {
    if input.trim_start().starts_with('[') {
        bundle_from_json(input)
    } else {
        parse_bundle(input)
    }
}

/// Canonical text form; inverse of [`parse_bundle`].
pub fn bundle_to_text(b: &Bundle) -> String {
    b.to_string()
}

pub fn int_to_json(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn json_int(v: &Value, what: &str) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| ParseError::new(0, format!("{what}: {n} is not an integer"))),
        other => Err(ParseError::new(0, format!("{what}: expected an integer, found {other}"))),
    }
}

fn json_rows(input: &str, width: usize, shape: &str) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let value: Value = serde_json::from_str(input).map_err(|e| {
        ParseError::new(byte_offset(input, e.line(), e.column()), e.to_string())
    })?;
    let Value::Array(rows) = value else {
        return Err(ParseError::new(0, format!("expected an array of {shape}")));
    };
    rows.iter()
        .enumerate()
        .map(|(i, row)| match row {
            Value::Array(cells) if cells.len() == width => cells
                .iter()
                .map(|c| json_int(c, &format!("element {i}")))
                .collect(),
            _ => Err(ParseError::new(0, format!("element {i}: expected {shape}"))),
        })
        .collect()
}

/// serde_json reports 1-based line and column; map that back to a byte offset.
fn byte_offset(input: &str, line: usize, column: usize) -> usize {
    let start: usize = input
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(input.len())
}

/// Parses `[[d,h,m],...]`.
pub fn bundle_from_json(input: &str) -> Result<Bundle> {
    let rows = json_rows(input, 3, "[d,h,m]")?;
    let mut blocks = Vec::with_capacity(rows.len());
    for row in rows {
        let [d, h, m]: [BigInt; 3] = row.try_into().expect("width checked");
        if !h.is_positive() {
            return Err(if h.sign() == num_bigint::Sign::NoSign {
                Error::ZeroDenominator
            } else {
                Error::Precondition(format!("denominator {h} must be positive"))
            });
        }
        blocks.push(StableSummand::new(Slope::new(d, h)?, m)?);
    }
    Ok(Bundle::from_summands(blocks))
}

pub fn bundle_to_json(b: &Bundle) -> Value {
    Value::Array(
        b.summands()
            .iter()
            .map(|s| {
                Value::Array(vec![
                    int_to_json(s.slope().num()),
                    int_to_json(s.slope().den()),
                    int_to_json(s.multiplicity()),
                ])
            })
            .collect(),
    )
}

/// Parses `[[x,y],...]` and validates it as an HN polygon.
pub fn polygon_from_json(input: &str) -> Result<Polygon> {
    let rows = json_rows(input, 2, "[x,y]")?;
    Polygon::new(
        rows.into_iter()
            .map(|r| {
                let [x, y]: [BigInt; 2] = r.try_into().expect("width checked");
                LatticePoint::new(x, y)
            })
            .collect(),
    )
}

pub fn polygon_to_json(p: &Polygon) -> Value {
    Value::Array(
        p.vertices()
            .iter()
            .map(|v| Value::Array(vec![int_to_json(&v.x), int_to_json(&v.y)]))
            .collect(),
    )
}
