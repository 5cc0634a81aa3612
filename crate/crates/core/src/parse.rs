//! Text grammar for scalars and polynomials.
//!
//! Polynomial expressions are built from `+ - * ^`, parentheses, rational
//! literals like `3` or `3/2`, declared variable names, and the imaginary
//! unit `i`. Precedence is `^` > unary `-` > `*` > binary `+ -`, and
//! implicit multiplication is not allowed. Scalar literals follow
//! `rational (('+'|'-') rational '*'? 'i')?`, plus the pure-imaginary
//! forms (`2i`, `-i`, `3/4*i`) so that every canonical rendering parses
//! back.
//!
//! Error positions are 1-based byte offsets into the input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{GaussianRational, Monomial, MonomialOrder, MultiPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    BadNumeral,
    ZeroDenominator,
    UnknownIdentifier,
    NegativeExponent,
    InvalidVariable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based byte offset of the offending input.
    pub position: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self {
            position,
            kind,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A declared, ordered list of variable names.
///
/// Names must be ordinary identifiers; `i` is reserved for the imaginary
/// unit and cannot be declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variables {
    names: Vec<String>,
}

impl Variables {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, ParseError> {
        let mut seen = std::collections::BTreeSet::new();
        for (idx, name) in names.iter().enumerate() {
            let name = name.as_ref();
            let position = idx + 1; // index into the declaration list
            if !is_identifier(name) {
                return Err(ParseError::new(
                    position,
                    ParseErrorKind::InvalidVariable,
                    format!("invalid variable name `{name}`"),
                ));
            }
            if name == "i" {
                return Err(ParseError::new(
                    position,
                    ParseErrorKind::InvalidVariable,
                    "`i` is reserved for the imaginary unit",
                ));
            }
            if !seen.insert(name.to_string()) {
                return Err(ParseError::new(
                    position,
                    ParseErrorKind::InvalidVariable,
                    format!("duplicate variable name `{name}`"),
                ));
            }
        }
        Ok(Self {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    /// The conventional names `s1, ..., sn`.
    pub fn standard(n: usize) -> Self {
        Self {
            names: (1..=n).map(|k| format!("s{k}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize, // 1-based byte offset
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut idx = 0usize;
    while idx < bytes.len() {
        let b = bytes[idx];
        let pos = idx + 1;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                idx += 1;
            }
            b'+' => {
                toks.push(Token { tok: Tok::Plus, pos });
                idx += 1;
            }
            b'-' => {
                toks.push(Token { tok: Tok::Minus, pos });
                idx += 1;
            }
            b'*' => {
                toks.push(Token { tok: Tok::Star, pos });
                idx += 1;
            }
            b'^' => {
                toks.push(Token { tok: Tok::Caret, pos });
                idx += 1;
            }
            b'(' => {
                toks.push(Token { tok: Tok::LParen, pos });
                idx += 1;
            }
            b')' => {
                toks.push(Token { tok: Tok::RParen, pos });
                idx += 1;
            }
            b'0'..=b'9' => {
                let start = idx;
                while idx < bytes.len() && bytes[idx].is_ascii_digit() {
                    idx += 1;
                }
                let numer: BigInt = text[start..idx]
                    .parse()
                    .map_err(|_| ParseError::new(pos, ParseErrorKind::BadNumeral, "malformed numeral"))?;
                // a fraction slash must follow the digits immediately
                let value = if idx < bytes.len() && bytes[idx] == b'/' {
                    idx += 1;
                    let den_pos = idx + 1;
                    let den_start = idx;
                    while idx < bytes.len() && bytes[idx].is_ascii_digit() {
                        idx += 1;
                    }
                    if den_start == idx {
                        return Err(ParseError::new(
                            den_pos,
                            ParseErrorKind::BadNumeral,
                            "expected denominator digits after `/`",
                        ));
                    }
                    let denom: BigInt = text[den_start..idx].parse().map_err(|_| {
                        ParseError::new(den_pos, ParseErrorKind::BadNumeral, "malformed numeral")
                    })?;
                    if denom.is_zero() {
                        return Err(ParseError::new(
                            den_pos,
                            ParseErrorKind::ZeroDenominator,
                            "zero denominator",
                        ));
                    }
                    BigRational::new(numer, denom)
                } else {
                    BigRational::from_integer(numer)
                };
                toks.push(Token { tok: Tok::Num(value), pos });
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = idx;
                while idx < bytes.len()
                    && (bytes[idx].is_ascii_alphanumeric() || bytes[idx] == b'_')
                {
                    idx += 1;
                }
                toks.push(Token {
                    tok: Tok::Ident(text[start..idx].to_string()),
                    pos,
                });
            }
            _ => {
                return Err(ParseError::new(
                    pos,
                    ParseErrorKind::Syntax,
                    format!("unexpected character `{}`", text[idx..].chars().next().unwrap()),
                ));
            }
        }
    }
    toks.push(Token {
        tok: Tok::Eof,
        pos: bytes.len() + 1,
    });
    Ok(toks)
}

/// Parse a scalar literal such as `3/2`, `-1+2i`, `2*i`, or `1/2-3/4*i`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational, ParseError> {
    let toks = lex(text)?;
    let mut p = ScalarParser { toks: &toks, at: 0 };
    let value = p.scalar()?;
    p.expect_eof()?;
    Ok(value)
}

struct ScalarParser<'a> {
    toks: &'a [Token],
    at: usize,
}

impl ScalarParser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) {
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Eof => Ok(()),
            _ => Err(ParseError::new(
                self.peek().pos,
                ParseErrorKind::Syntax,
                "unexpected trailing input in scalar",
            )),
        }
    }

    fn scalar(&mut self) -> Result<GaussianRational, ParseError> {
        let first = self.signed_part()?;
        match self.peek().tok {
            Tok::Plus | Tok::Minus => {
                if !first.is_real() {
                    return Err(ParseError::new(
                        self.peek().pos,
                        ParseErrorKind::Syntax,
                        "imaginary part must come last in a scalar",
                    ));
                }
                let negate = matches!(self.peek().tok, Tok::Minus);
                self.bump();
                let imag = self.unsigned_imaginary()?;
                Ok(if negate { &first - &imag } else { &first + &imag })
            }
            _ => Ok(first),
        }
    }

    /// `-`? (rational | rational `*`? `i` | `i`)
    fn signed_part(&mut self) -> Result<GaussianRational, ParseError> {
        let negate = if matches!(self.peek().tok, Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let part = self.unsigned_part()?;
        Ok(if negate { -part } else { part })
    }

    fn unsigned_part(&mut self) -> Result<GaussianRational, ParseError> {
        let pos = self.peek().pos;
        match self.peek().tok.clone() {
            Tok::Ident(name) if name == "i" => {
                self.bump();
                Ok(GaussianRational::i())
            }
            Tok::Num(r) => {
                self.bump();
                if self.consume_imaginary_marker()? {
                    Ok(GaussianRational::new(BigRational::zero(), r))
                } else {
                    Ok(GaussianRational::from_rational(r))
                }
            }
            _ => Err(ParseError::new(
                pos,
                ParseErrorKind::BadNumeral,
                "expected a rational literal or `i`",
            )),
        }
    }

    /// rational `*`? `i` | `i`, without a leading sign (the sign was the
    /// joining operator).
    fn unsigned_imaginary(&mut self) -> Result<GaussianRational, ParseError> {
        let pos = self.peek().pos;
        match self.peek().tok.clone() {
            Tok::Ident(name) if name == "i" => {
                self.bump();
                Ok(GaussianRational::i())
            }
            Tok::Num(r) => {
                self.bump();
                if self.consume_imaginary_marker()? {
                    Ok(GaussianRational::new(BigRational::zero(), r))
                } else {
                    Err(ParseError::new(
                        self.peek().pos,
                        ParseErrorKind::Syntax,
                        "expected `i` to close the imaginary part",
                    ))
                }
            }
            _ => Err(ParseError::new(
                pos,
                ParseErrorKind::BadNumeral,
                "expected a rational literal or `i`",
            )),
        }
    }

    /// Consumes `i` or `*i` directly after a numeral, if present.
    fn consume_imaginary_marker(&mut self) -> Result<bool, ParseError> {
        match &self.peek().tok {
            Tok::Ident(name) if name == "i" => {
                self.bump();
                Ok(true)
            }
            Tok::Star => {
                if let Tok::Ident(name) = &self.toks[self.at + 1].tok {
                    if name == "i" {
                        self.bump();
                        self.bump();
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Tok::Ident(_) => Err(ParseError::new(
                self.peek().pos,
                ParseErrorKind::Syntax,
                "unexpected identifier in scalar",
            )),
            _ => Ok(false),
        }
    }
}

/// Parse a polynomial expression over the declared variables.
pub fn parse_poly(text: &str, vars: &Variables) -> Result<MultiPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = PolyParser {
        toks: &toks,
        at: 0,
        vars,
    };
    let poly = p.expr()?;
    match p.peek().tok {
        Tok::Eof => Ok(poly),
        _ => Err(ParseError::new(
            p.peek().pos,
            ParseErrorKind::Syntax,
            "unexpected trailing input",
        )),
    }
}

struct PolyParser<'a> {
    toks: &'a [Token],
    at: usize,
    vars: &'a Variables,
}

impl PolyParser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) {
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.unary()?;
        while matches!(self.peek().tok, Tok::Star) {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly, ParseError> {
        if matches!(self.peek().tok, Tok::Minus) {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if !matches!(self.peek().tok, Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let tok = self.peek().clone();
        match tok.tok {
            Tok::Minus => Err(ParseError::new(
                tok.pos,
                ParseErrorKind::NegativeExponent,
                "negative exponent",
            )),
            Tok::Num(r) if r.is_integer() => {
                let exp: u32 = r.to_integer().try_into().map_err(|_| {
                    ParseError::new(tok.pos, ParseErrorKind::BadNumeral, "exponent too large")
                })?;
                self.bump();
                Ok(base.pow(exp))
            }
            Tok::Num(_) => Err(ParseError::new(
                tok.pos,
                ParseErrorKind::BadNumeral,
                "exponent must be a non-negative integer",
            )),
            _ => Err(ParseError::new(
                tok.pos,
                ParseErrorKind::Syntax,
                "expected an integer exponent after `^`",
            )),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let tok = self.peek().clone();
        match tok.tok {
            Tok::Num(r) => {
                self.bump();
                Ok(MultiPoly::constant(
                    self.nvars(),
                    GaussianRational::from_rational(r),
                ))
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "i" {
                    return Ok(MultiPoly::constant(self.nvars(), GaussianRational::i()));
                }
                match self.vars.index_of(&name) {
                    Some(idx) => Ok(MultiPoly::variable(self.nvars(), idx)),
                    None => Err(ParseError::new(
                        tok.pos,
                        ParseErrorKind::UnknownIdentifier,
                        format!("unknown identifier `{name}`"),
                    )),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if matches!(self.peek().tok, Tok::RParen) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(ParseError::new(
                        self.peek().pos,
                        ParseErrorKind::Syntax,
                        "expected `)`",
                    ))
                }
            }
            _ => Err(ParseError::new(
                tok.pos,
                ParseErrorKind::Syntax,
                "expected a number, variable, or `(`",
            )),
        }
    }
}

/// Canonical scalar rendering; inverse of [`parse_scalar`].
pub fn format_scalar(c: &GaussianRational) -> String {
    c.to_string()
}

/// Deterministic polynomial rendering with terms in descending `order`;
/// inverse of [`parse_poly`].
pub fn format_poly(p: &MultiPoly, order: MonomialOrder, vars: &Variables) -> String {
    assert_eq!(p.nvars(), vars.len(), "arity mismatch");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &GaussianRational)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    let mut out = String::new();
    for (idx, (m, c)) in terms.iter().enumerate() {
        let rendered = render_term(m, c, vars);
        if idx == 0 {
            out.push_str(&rendered);
        } else if let Some(rest) = rendered.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&rendered);
        }
    }
    out
}

fn render_monomial(m: &Monomial, vars: &Variables) -> Option<String> {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|&(_, &e)| e > 0)
        .map(|(j, &e)| {
            if e == 1 {
                vars.names()[j].clone()
            } else {
                format!("{}^{}", vars.names()[j], e)
            }
        })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

fn render_term(m: &Monomial, c: &GaussianRational, vars: &Variables) -> String {
    match render_monomial(m, vars) {
        None => format_scalar(c),
        Some(mono) => {
            if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else if c.re().is_zero() || c.im().is_zero() {
                format!("{}*{}", format_scalar(c), mono)
            } else {
                // mixed real/imaginary coefficients need grouping to
                // survive the round trip
                format!("({})*{}", format_scalar(c), mono)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars2() -> Variables {
        Variables::new(&["s1", "s2"]).unwrap()
    }

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    #[test]
    fn test_parse_scalar_literals() {
        assert_eq!(parse_scalar("3/2").unwrap(), GaussianRational::ratio(3, 2));
        assert_eq!(
            parse_scalar("-1+2i").unwrap(),
            &q(-1) + &(&q(2) * &GaussianRational::i())
        );
        assert_eq!(parse_scalar("0").unwrap(), GaussianRational::zero());
        assert_eq!(parse_scalar("i").unwrap(), GaussianRational::i());
        assert_eq!(parse_scalar("-i").unwrap(), -GaussianRational::i());
        assert_eq!(
            parse_scalar("2*i").unwrap(),
            &q(2) * &GaussianRational::i()
        );
        assert_eq!(
            parse_scalar("1/2-3/4*i").unwrap(),
            &GaussianRational::ratio(1, 2) - &(&GaussianRational::ratio(3, 4) * &GaussianRational::i())
        );
    }

    #[test]
    fn test_parse_scalar_rejections() {
        assert_eq!(parse_scalar("1/0").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
        assert_eq!(parse_scalar("1/0").unwrap_err().position, 3);
        assert_eq!(parse_scalar("1+2").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_scalar("i+1").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_scalar("").unwrap_err().kind, ParseErrorKind::BadNumeral);
        assert_eq!(parse_scalar("2x").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_scalar("1+2i+3i").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(parse_scalar("1/ 2").unwrap_err().kind, ParseErrorKind::BadNumeral);
    }

    #[test]
    fn test_parse_scalar_round_trip_canonical() {
        for text in ["0", "3/2", "-2", "i", "-i", "2/3*i", "1/2-3/4*i", "-1+2*i", "1-i"] {
            let v = parse_scalar(text).unwrap();
            assert_eq!(format_scalar(&v), text, "canonical form of {text}");
            assert_eq!(parse_scalar(&format_scalar(&v)).unwrap(), v);
        }
    }

    #[test]
    fn test_parse_poly_grammar() {
        let vars = vars2();
        let p = parse_poly("s1^2 - s2", &vars).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0])), q(1));
        assert_eq!(p.coefficient(&Monomial::new(vec![0, 1])), q(-1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn test_parse_poly_expansion() {
        let vars = vars2();
        let p = parse_poly("(s1+s2)^2", &vars).unwrap();
        let expect = parse_poly("s1^2 + 2*s1*s2 + s2^2", &vars).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn test_parse_poly_unknown_identifier() {
        let err = parse_poly("s3", &vars2()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier);
        assert_eq!(err.position, 1);
    }

    #[test]
    fn test_parse_poly_negative_exponent() {
        let err = parse_poly("s1^-2", &vars2()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NegativeExponent);
        assert_eq!(err.position, 4);
    }

    #[test]
    fn test_parse_poly_rejects_implicit_multiplication() {
        assert_eq!(
            parse_poly("2 s1", &vars2()).unwrap_err().kind,
            ParseErrorKind::Syntax
        );
        // `2i` stays legal only inside scalar literals, not poly text
        assert_eq!(
            parse_poly("2i", &vars2()).unwrap_err().kind,
            ParseErrorKind::Syntax
        );
    }

    #[test]
    fn test_parse_poly_error_positions_are_byte_offsets() {
        let err = parse_poly("s1 + (s2 * )", &vars2()).unwrap_err();
        assert_eq!(err.position, 12);
        let err = parse_poly("s1 ^ 1/2", &vars2()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadNumeral);
    }

    #[test]
    fn test_format_poly_canonical_print() {
        let vars = vars2();
        let p = parse_poly("s1^2 - s2", &vars).unwrap();
        assert_eq!(format_poly(&p, MonomialOrder::GrevLex, &vars), "s1^2 - s2");
        assert_eq!(
            format_poly(&MultiPoly::zero(2), MonomialOrder::GrevLex, &vars),
            "0"
        );
        let half_i_s1 = MultiPoly::term(
            Monomial::new(vec![1, 0]),
            &GaussianRational::ratio(1, 2) * &GaussianRational::i(),
        );
        assert_eq!(
            format_poly(&half_i_s1, MonomialOrder::GrevLex, &vars),
            "1/2*i*s1"
        );
    }

    #[test]
    fn test_format_poly_mixed_coefficients_round_trip() {
        let vars = vars2();
        let c = &q(-1) + &(&q(2) * &GaussianRational::i());
        let p = &MultiPoly::term(Monomial::new(vec![1, 0]), c) + &MultiPoly::constant(2, q(5));
        let text = format_poly(&p, MonomialOrder::GrevLex, &vars);
        assert_eq!(text, "(-1+2*i)*s1 + 5");
        assert_eq!(parse_poly(&text, &vars).unwrap(), p);
    }

    #[test]
    fn test_unary_minus_precedence() {
        let vars = vars2();
        // unary minus binds tighter than `*`
        let p = parse_poly("-s1*s2", &vars).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![1, 1])), q(-1));
        // and looser than `^`
        let p = parse_poly("-s1^2", &vars).unwrap();
        assert_eq!(p.coefficient(&Monomial::new(vec![2, 0])), q(-1));
    }

    #[test]
    fn test_variables_validation() {
        assert!(Variables::new(&["s1", "s2"]).is_ok());
        assert_eq!(
            Variables::new(&["i"]).unwrap_err().kind,
            ParseErrorKind::InvalidVariable
        );
        assert_eq!(
            Variables::new(&["x", "x"]).unwrap_err().kind,
            ParseErrorKind::InvalidVariable
        );
        assert_eq!(
            Variables::new(&["3x"]).unwrap_err().kind,
            ParseErrorKind::InvalidVariable
        );
        assert_eq!(Variables::standard(3).names(), &["s1", "s2", "s3"]);
    }
}
