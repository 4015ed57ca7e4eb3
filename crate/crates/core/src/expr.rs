//! A small parser for parameter values: rational expressions in named symbols
//! (optionally subscripted, as in `t[0,1;1,0]`) built from integers, `+ - * / ^` and parentheses.

use std::collections::BTreeSet;

use klr_exact::{Field, Poly, Rat, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unexpected character `{0}` in `{1}`")]
    BadChar(char, String),
    #[error("unexpected end of expression `{0}`")]
    Eof(String),
    #[error("unexpected token in `{0}` at offset {1}")]
    Unexpected(String, usize),
    #[error("division by zero in `{0}`")]
    DivByZero(String),
    #[error("exponent must be a nonnegative integer in `{0}`")]
    BadExponent(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            // subscripted names such as `t[0,1;1,0]`
            if chars.get(k) == Some(&'[') {
                let close = chars[k..].iter().position(|&c| c == ']').ok_or_else(|| ExprError::Eof(src.to_string()))?;
                k += close + 1;
            }
            out.push((start, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((k, Tok::Op(c)));
            k += 1;
        } else {
            return Err(ExprError::BadChar(c, src.to_string()));
        }
    }
    Ok(out)
}

/// Identifiers occurring in `src`.
pub fn symbols_in(src: &str) -> Result<BTreeSet<String>, ExprError> {
    Ok(lex(src)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect())
}

/// Parses `src`; the symbol `symbols[k]` becomes variable `k`.
pub fn parse(src: &str, symbols: &[String]) -> Result<RatFunc, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0, symbols };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(ExprError::Unexpected(src.to_string(), p.toks[p.pos].0));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    symbols: &'a [String],
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn unexpected(&self) -> ExprError {
        match self.toks.get(self.pos) {
            Some((at, _)) => ExprError::Unexpected(self.src.to_string(), *at),
            None => ExprError::Eof(self.src.to_string()),
        }
    }

    fn sum(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<RatFunc, ExprError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs);
            } else if rhs.is_zero() {
                return Err(ExprError::DivByZero(self.src.to_string()));
            } else {
                acc = acc.div(&rhs);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ExprError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, ExprError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) => n.to_i64().filter(|e| *e >= 0),
                _ => None,
            }
            .ok_or_else(|| ExprError::BadExponent(self.src.to_string()))?;
            self.pos += 1;
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, ExprError> {
        let tok = self.toks.get(self.pos).cloned().ok_or_else(|| self.unexpected())?;
        match tok.1 {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(RatFunc::constant(n))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                let v = self.symbols.iter().position(|s| *s == name).expect("symbol table covers input");
                Ok(RatFunc::from_poly(Poly::var(v)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek_op() != Some(')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(_) => Err(self.unexpected()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_polynomials_and_quotients() {
        let syms = names(&["a", "b"]);
        let a = RatFunc::var(0);
        let b = RatFunc::var(1);
        assert_eq!(parse("a^2 - 2*a*b + b^2", &syms).unwrap(), a.sub(&b).mul(&a.sub(&b)));
        assert_eq!(parse("-(a+1)/3", &syms).unwrap(), a.add(&RatFunc::one()).neg().div(&RatFunc::from_int(3)));
        assert_eq!(parse("7", &syms).unwrap(), RatFunc::from_int(7));
        assert_eq!(parse("1/2", &syms).unwrap(), RatFunc::constant(Rat::new(1, 2)));
        assert_eq!(parse("(a^2-b^2)/(a-b)", &syms).unwrap(), a.add(&b));
    }

    #[test]
    fn rejects_malformed_input() {
        let syms = names(&["a"]);
        assert!(matches!(parse("a +", &syms), Err(ExprError::Eof(_))));
        assert!(matches!(parse("a $ 1", &syms), Err(ExprError::BadChar('$', _))));
        assert!(matches!(parse("a / 0", &syms), Err(ExprError::DivByZero(_))));
        assert!(matches!(parse("a ^ a", &syms), Err(ExprError::BadExponent(_))));
        assert!(parse("(a", &syms).is_err());
        assert!(parse("a a", &syms).is_err());
    }

    #[test]
    fn collects_symbols() {
        let s = symbols_in("a0*a1 + b2 - 3").unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), names(&["a0", "a1", "b2"]));
    }

    #[test]
    fn subscripted_names_are_single_symbols() {
        let syms = names(&["t[0,1;1,0]", "t[0,1;0,1]"]);
        let s = symbols_in("-t[0,1;1,0] + 2*t[0,1;0,1]").unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), names(&["t[0,1;0,1]", "t[0,1;1,0]"]));
        let v = parse("-t[0,1;1,0] + 2*t[0,1;0,1]", &syms).unwrap();
        assert_eq!(v, RatFunc::var(0).neg().add(&RatFunc::var(1).mul(&RatFunc::from_int(2))));
        assert!(parse("t[0,1", &syms).is_err());
    }
}
