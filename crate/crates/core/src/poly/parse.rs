//! Parsing of `x^3-2x+1` caret expressions and `[1,-2,0,1]` coefficient lists.

use super::IntPoly;
use crate::error::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::InvalidInput(e.to_string())
    }
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

impl FromStr for IntPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim_start();
        let offset = s.len() - trimmed.len();
        if trimmed.starts_with('[') {
            parse_list(trimmed, offset)
        } else {
            parse_caret(s)
        }
    }
}

fn parse_list(s: &str, offset: usize) -> Result<IntPoly, ParseError> {
    let body = s.trim_end();
    if !body.ends_with(']') {
        return err(offset + body.len(), "expected ']'");
    }
    let inner = &body[1..body.len() - 1];
    if inner.trim().is_empty() {
        return err(offset + 1, "empty coefficient list");
    }
    let mut coeffs = Vec::new();
    let mut pos = offset + 1;
    for item in inner.split(',') {
        let t = item.trim();
        let lead = item.len() - item.trim_start().len();
        match BigInt::from_str(t) {
            Ok(c) => coeffs.push(c),
            Err(_) => return err(pos + lead, format!("invalid coefficient '{}'", t)),
        }
        pos += item.len() + 1;
    }
    Ok(IntPoly::new(coeffs))
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }
}

fn parse_caret(s: &str) -> Result<IntPoly, ParseError> {
    let mut cur = Cursor {
        bytes: s.as_bytes(),
        pos: 0,
    };
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return err(cur.pos, "empty polynomial");
            }
            break;
        }
        let term_start = cur.pos;
        let mut negative = false;
        match cur.peek() {
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1
            }
            _ if !first => return err(cur.pos, "expected '+' or '-'"),
            _ => {}
        }
        cur.skip_ws();
        let coef = cur.digits().map(|d| BigInt::from_str(d).unwrap());
        cur.skip_ws();
        if coef.is_some() && cur.peek() == Some(b'*') {
            cur.pos += 1;
            cur.skip_ws();
            if cur.peek() != Some(b'x') {
                return err(cur.pos, "expected 'x' after '*'");
            }
        }
        let mut exponent = 0usize;
        if cur.peek() == Some(b'x') {
            cur.pos += 1;
            exponent = 1;
            cur.skip_ws();
            if cur.peek() == Some(b'^') {
                cur.pos += 1;
                cur.skip_ws();
                let at = cur.pos;
                match cur.digits() {
                    Some(d) => match d.parse::<usize>() {
                        Ok(e) if e <= 1 << 20 => exponent = e,
                        _ => return err(at, "exponent too large"),
                    },
                    None => return err(at, "expected exponent digits"),
                }
            }
        } else if coef.is_none() {
            return err(cur.pos, "expected a coefficient or 'x'");
        }
        let mut c = coef.unwrap_or_else(|| BigInt::from(1));
        if negative {
            c = -c;
        }
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, BigInt::zero());
        }
        coeffs[exponent] += c;
        first = false;
        debug_assert!(cur.pos > term_start);
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn caret_forms() {
        assert_eq!(parse("x^3-2x+1"), IntPoly::from_i64s(&[1, -2, 0, 1]));
        assert_eq!(parse(" - x^2 + 3*x - 7 "), IntPoly::from_i64s(&[-7, 3, -1]));
        assert_eq!(parse("x"), IntPoly::from_i64s(&[0, 1]));
        assert_eq!(parse("x^2+x^2"), IntPoly::from_i64s(&[0, 0, 2]));
        assert!(parse("0").is_zero());
        let big = parse("123456789012345678901234567890x+1");
        assert_eq!(big.leading().to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn list_forms() {
        assert_eq!(parse("[1,-2,0,1]"), IntPoly::from_i64s(&[1, -2, 0, 1]));
        assert_eq!(parse("[ 1 , 2 ]"), IntPoly::from_i64s(&[1, 2]));
    }

    #[test]
    fn errors_carry_positions() {
        let e = "x^2 +* 3".parse::<IntPoly>().unwrap_err();
        assert_eq!(e.position, 5);
        let e = "x^2 3".parse::<IntPoly>().unwrap_err();
        assert_eq!(e.position, 4);
        let e = "[1,a]".parse::<IntPoly>().unwrap_err();
        assert_eq!(e.position, 3);
        assert!("".parse::<IntPoly>().is_err());
        assert!("x^".parse::<IntPoly>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "-3x^2-1", "5"] {
            assert_eq!(parse(s).to_string(), s);
        }
    }
}
