//! Text forms of polynomials, e.g. `2[[{a,c,d},b],e]-[{a,e,d},[b,c]]`.
//!
//! Variables are letters (`a` is the first) or `x1`, `x2`, ...; brackets
//! are those of the operation signatures. As a convenience `(` and `{` both
//! denote the ternary operation when there is only one.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::RawTree;
use super::opset::OpSet;
use super::poly::IntPoly;
use super::FreeError;
use crate::exactfield::Integers;

struct Parser<'a> {
    ops: &'a OpSet,
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FreeError> {
        Err(FreeError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn op_for(&self, open: char) -> Option<(usize, char)> {
        if let Some(k) = self.ops.ops().iter().position(|o| o.open() == open) {
            return Some((k, self.ops.op(k).close()));
        }
        let arity = match open {
            '[' => 2,
            '(' | '{' => 3,
            _ => return None,
        };
        let k = self.ops.unique_of_arity(arity)?;
        let close = match open {
            '[' => ']',
            '(' => ')',
            _ => '}',
        };
        Some((k, close))
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn tree(&mut self) -> Result<RawTree, FreeError> {
        self.skip_ws();
        let Some(c) = self.peek() else { return self.err("unexpected end of input") };
        if c == b'x' && self.s.get(self.pos + 1).is_some_and(|d| d.is_ascii_digit()) {
            self.pos += 1;
            let n = self.integer().expect("digit follows");
            let i: usize = n.try_into().unwrap_or(0);
            if i == 0 || i > 255 {
                return self.err("variable index out of range");
            }
            return Ok(RawTree::Leaf((i - 1) as u8));
        }
        if c.is_ascii_lowercase() {
            self.pos += 1;
            return Ok(RawTree::Leaf(c - b'a'));
        }
        let Some((k, close)) = self.op_for(c as char) else {
            return self.err(format!("unexpected character {:?}", c as char));
        };
        self.pos += 1;
        let mut args = vec![self.tree()?];
        while self.eat(b',') {
            args.push(self.tree()?);
        }
        if !self.eat(close as u8) {
            return self.err(format!("expected {close:?}"));
        }
        let arity = self.ops.op(k).arity;
        if args.len() != arity {
            return self.err(format!("{} takes {arity} arguments, got {}", self.ops.op(k).name, args.len()));
        }
        Ok(RawTree::Node(k, args))
    }
}

/// Parses a single tree such as `[(a,b,c),d]`.
pub fn parse_tree(ops: &OpSet, s: &str) -> Result<RawTree, FreeError> {
    let mut p = Parser { ops, s: s.as_bytes(), pos: 0 };
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != s.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Parses an integer combination of trees that share one variable set `0..d`.
pub fn parse_poly(ops: &Arc<OpSet>, s: &str) -> Result<IntPoly, FreeError> {
    let mut p = Parser { ops, s: s.as_bytes(), pos: 0 };
    let mut terms: Vec<(BigInt, RawTree)> = Vec::new();
    p.skip_ws();
    if p.eat(b'0') {
        p.skip_ws();
        if p.pos == s.len() {
            return p.err("the zero polynomial has no degree; build it with MultilinearPoly::zero");
        }
        return p.err("unexpected leading 0");
    }
    loop {
        p.skip_ws();
        if p.pos == s.len() {
            if terms.is_empty() {
                return p.err("empty polynomial");
            }
            break;
        }
        let neg = if p.eat(b'-') {
            true
        } else {
            let plus = p.eat(b'+');
            if !plus && !terms.is_empty() {
                return p.err("expected + or -");
            }
            false
        };
        let mut c = p.integer().unwrap_or_else(BigInt::one);
        p.eat(b'*');
        if neg {
            c = -c;
        }
        terms.push((c, p.tree()?));
    }
    let d = terms[0].1.leaves().len();
    let mut out = IntPoly::zero(Integers, ops.clone(), d);
    for (c, t) in &terms {
        let mut leaves = t.leaves();
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(i, &x)| x as usize != i) {
            let names: Vec<String> = t.leaves().iter().map(|&x| super::var_name(x)).collect();
            return Err(FreeError::NotMultilinear(format!(
                "term uses variables {names:?}; every term must use the first {d} variables once each"
            )));
        }
        out.add_raw(t, c)?;
    }
    Ok(out)
}

/// Builds a tree from a preorder shape (`[` binary, `(` ternary, `-` leaf)
/// and the variables at its leaves.
pub fn parse_shape(ops: &OpSet, shape: &str, leaves: &[u8]) -> Result<RawTree, FreeError> {
    fn rec(p: &mut Parser, leaves: &[u8], next: &mut usize) -> Result<RawTree, FreeError> {
        p.skip_ws();
        let Some(c) = p.peek() else { return p.err("shape ended early") };
        if c == b'-' {
            p.pos += 1;
            let x = *leaves.get(*next).ok_or_else(|| FreeError::Parse { pos: p.pos, msg: "too few leaves".into() })?;
            *next += 1;
            return Ok(RawTree::Leaf(x));
        }
        let Some((k, close)) = p.op_for(c as char) else { return p.err(format!("bad shape character {:?}", c as char)) };
        p.pos += 1;
        let mut args = Vec::new();
        while !p.eat(close as u8) {
            if p.peek().is_none() {
                return p.err("unterminated shape");
            }
            args.push(rec(p, leaves, next)?);
        }
        if args.len() != p.ops.op(k).arity {
            return p.err("wrong number of arguments in shape");
        }
        Ok(RawTree::Node(k, args))
    }
    let mut p = Parser { ops, s: shape.as_bytes(), pos: 0 };
    let mut next = 0;
    let t = rec(&mut p, leaves, &mut next)?;
    if p.pos != shape.len() || next != leaves.len() {
        return p.err("shape and leaf list disagree");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalises() {
        let ly = OpSet::ly();
        let f = parse_poly(&ly, "(a,b,[c,d]) - [(a,b,c),d] - [c,(a,b,d)]").unwrap();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.to_string(), "-[(a,b,c),d]+[(a,b,d),c]+(a,b,[c,d])");
        let g = parse_poly(&ly, "x1*[x2,x3]").err();
        assert!(g.is_some());
        let h = parse_poly(&ly, "[[x2,x1],x3]").unwrap();
        assert_eq!(h.to_string(), "-[[a,b],c]");
    }

    #[test]
    fn braces_and_errors() {
        let ljy = OpSet::ljy();
        let f = parse_poly(&ljy, "{a,b,c}-{c,b,a}").unwrap();
        assert!(f.is_zero());
        assert!(parse_poly(&ljy, "[a,b,c]").is_err());
        assert!(parse_poly(&ljy, "[a,b]+[a,c]").is_err());
        assert!(parse_poly(&ljy, "[a,a]").is_err());
        assert!(parse_poly(&ljy, "[a,b]]").is_err());
    }

    #[test]
    fn shapes() {
        let ly = OpSet::ly();
        let t = parse_shape(&ly, "([--]--)", &[2, 3, 0, 1]).unwrap();
        assert_eq!(t, parse_tree(&ly, "([c,d],a,b)").unwrap());
        assert!(parse_shape(&ly, "[--]", &[0]).is_err());
    }
}
