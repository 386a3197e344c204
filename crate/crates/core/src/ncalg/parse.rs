//! Text grammar for expressions.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power ('*' power)*
//! power   := primary ['^' int]
//! primary := number ['/' number] ['i'] | 'i' | 'q' | 'J' | var | '(' expr ')'
//! var     := ident "'"* ['[' uint ']']
//! ```
//!
//! `i`, `q` and `J` are reserved and cannot name a family. Negative
//! exponents are accepted on `q` only.

use num::{BigRational, Zero};

use super::expr::{Tree, Var};
use super::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{Gaussian, Scalar};
use crate::text::Cursor;

pub(crate) fn parse_tree(src: &str) -> Result<Tree> {
    let mut cur = Cursor::new(src);
    let t = expr(&mut cur)?;
    if !cur.at_end() {
        return cur.error("unexpected trailing input");
    }
    Ok(t)
}

/// Parses a pure scalar such as `1+q+2*q^2` or `3/2-1/2i`.
pub(crate) fn parse_scalar(src: &str) -> Result<Scalar> {
    let e = Algebra::default().parse(src)?;
    e.as_scalar()
        .ok_or_else(|| Error::domain(format!("'{src}' is not a scalar")))
}

fn expr(cur: &mut Cursor) -> Result<Tree> {
    let mut terms = Vec::new();
    let mut negate = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let t = term(cur)?;
        terms.push(if negate {
            Tree::Product(vec![Tree::int(-1), t])
        } else {
            t
        });
        if cur.eat(b'+') {
            negate = false;
        } else if cur.eat(b'-') {
            negate = true;
        } else {
            break;
        }
    }
    Ok(if terms.len() == 1 {
        terms.pop().unwrap()
    } else {
        Tree::Sum(terms)
    })
}

fn term(cur: &mut Cursor) -> Result<Tree> {
    let mut factors = vec![power(cur)?];
    while cur.eat(b'*') {
        factors.push(power(cur)?);
    }
    Ok(if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        Tree::Product(factors)
    })
}

enum Primary {
    Q,
    Other(Tree),
}

fn power(cur: &mut Cursor) -> Result<Tree> {
    let base = primary(cur)?;
    let exp = if cur.eat(b'^') { Some(cur.int()?) } else { None };
    match (base, exp) {
        (Primary::Q, e) => {
            let e = e.unwrap_or(1);
            let e = i32::try_from(e).or_else(|_| cur.error("exponent out of range"))?;
            Ok(Tree::Scalar(Scalar::q_pow(e)))
        }
        (Primary::Other(t), None) => Ok(t),
        (Primary::Other(t), Some(e)) => {
            if e < 0 {
                return cur.error("negative exponents are only allowed on q");
            }
            if e > 4096 {
                return cur.error("exponent too large");
            }
            Ok(Tree::Product(vec![t; e as usize]))
        }
    }
}

fn primary(cur: &mut Cursor) -> Result<Primary> {
    cur.skip_ws();
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let r = cur.unsigned_rational()?;
            // `2i`, `1/2i`: an imaginary literal, but not `2ix`.
            let imag = cur.peek() == Some(b'i')
                && !cur
                    .peek_at(1)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_');
            let g = if imag {
                cur.bump();
                Gaussian::new(BigRational::zero(), r)
            } else {
                Gaussian::real(r)
            };
            Ok(Primary::Other(Tree::Scalar(Scalar::constant(g))))
        }
        Some(b'(') => {
            cur.bump();
            let inner = expr(cur)?;
            cur.expect(b')')?;
            Ok(Primary::Other(inner))
        }
        Some(_) => {
            let Some(name) = cur.ident() else {
                return cur.error("expected a factor");
            };
            match name {
                "i" => Ok(Primary::Other(Tree::Scalar(Scalar::i()))),
                "q" => Ok(Primary::Q),
                "J" => Ok(Primary::Other(Tree::j())),
                _ => {
                    let mut v = Var::new(name);
                    while cur.peek() == Some(b'\'') {
                        cur.bump();
                        v.shift += 1;
                    }
                    if cur.peek() == Some(b'[') {
                        cur.bump();
                        let idx = cur.uint()?;
                        let idx = u16::try_from(idx).or_else(|_| cur.error("index out of range"))?;
                        cur.expect(b']')?;
                        v.index = Some(idx);
                    }
                    Ok(Primary::Other(Tree::var(v)))
                }
            }
        }
        None => cur.error("unexpected end of input"),
    }
}
