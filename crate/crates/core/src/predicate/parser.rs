//! Recursive-descent parser for the single-variable predicate language.
//!
//! ```text
//! pred   := or ; or := and { "or" and } ; and := not { "and" not } ;
//! not    := "not" not | cmp ;
//! cmp    := sum [ ( "=" | "!=" | "<" | "<=" | ">" | ">=" ) sum ] ;
//! sum    := prod { ("+"|"-") prod } ; prod := unary { "*" unary } ;
//! unary  := "-" unary | pow ; pow := atom [ "^" integer ] ;
//! atom   := integer | "x" | "(" pred ")" .
//! ```
//!
//! Types are checked while the tree is built, so a boolean never reaches an
//! arithmetic operator and the root is always boolean. Positions are
//! zero-based character offsets into the source text.

use num_bigint::BigUint;

use super::{CmpOp, Expr};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigUint),
    X,
    And,
    Or,
    Not,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Cmp(CmpOp),
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ty {
    Int,
    Bool,
}

impl Ty {
    fn name(self) -> &'static str {
        match self {
            Ty::Int => "integer",
            Ty::Bool => "boolean",
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "x" => Tok::X,
                "and" => Tok::And,
                "or" => Tok::Or,
                "not" => Tok::Not,
                _ => return Err(syntax(start, format!("unknown identifier `{word}`"))),
            }
        } else {
            i += 1;
            let next = chars.get(i).copied();
            match (c, next) {
                ('!', Some('=')) => {
                    i += 1;
                    Tok::Cmp(CmpOp::Ne)
                }
                ('<', Some('=')) => {
                    i += 1;
                    Tok::Cmp(CmpOp::Le)
                }
                ('>', Some('=')) => {
                    i += 1;
                    Tok::Cmp(CmpOp::Ge)
                }
                ('=', _) => Tok::Cmp(CmpOp::Eq),
                ('<', _) => Tok::Cmp(CmpOp::Lt),
                ('>', _) => Tok::Cmp(CmpOp::Gt),
                ('+', _) => Tok::Plus,
                ('-', _) => Tok::Minus,
                ('*', _) => Tok::Star,
                ('^', _) => Tok::Caret,
                ('(', _) => Tok::LParen,
                (')', _) => Tok::RParen,
                _ => return Err(syntax(start, format!("unexpected character `{c}`"))),
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect_ty(&self, got: Ty, want: Ty, at: usize, what: &str) -> Result<()> {
        if got == want {
            Ok(())
        } else {
            Err(Error::Type {
                position: at,
                message: format!("{what} expects {} operands, found {}", want.name(), got.name()),
            })
        }
    }

    fn or(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, ty) = self.and()?;
        while *self.peek() == Tok::Or {
            let (_, at) = self.bump();
            self.expect_ty(ty, Ty::Bool, at, "`or`")?;
            let (rhs, rty) = self.and()?;
            self.expect_ty(rty, Ty::Bool, at, "`or`")?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok((lhs, ty))
    }

    fn and(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, ty) = self.not()?;
        while *self.peek() == Tok::And {
            let (_, at) = self.bump();
            self.expect_ty(ty, Ty::Bool, at, "`and`")?;
            let (rhs, rty) = self.not()?;
            self.expect_ty(rty, Ty::Bool, at, "`and`")?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok((lhs, ty))
    }

    fn not(&mut self) -> Result<(Expr, Ty)> {
        if *self.peek() == Tok::Not {
            let (_, at) = self.bump();
            let (inner, ty) = self.not()?;
            self.expect_ty(ty, Ty::Bool, at, "`not`")?;
            return Ok((Expr::Not(Box::new(inner)), Ty::Bool));
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<(Expr, Ty)> {
        let (lhs, ty) = self.sum()?;
        if let Tok::Cmp(op) = *self.peek() {
            let (_, at) = self.bump();
            self.expect_ty(ty, Ty::Int, at, "comparison")?;
            let (rhs, rty) = self.sum()?;
            self.expect_ty(rty, Ty::Int, at, "comparison")?;
            return Ok((Expr::Cmp(op, Box::new(lhs), Box::new(rhs)), Ty::Bool));
        }
        Ok((lhs, ty))
    }

    fn sum(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, ty) = self.prod()?;
        loop {
            let ctor: fn(Box<Expr>, Box<Expr>) -> Expr = match self.peek() {
                Tok::Plus => Expr::Add,
                Tok::Minus => Expr::Sub,
                _ => break,
            };
            let (_, at) = self.bump();
            self.expect_ty(ty, Ty::Int, at, "`+`/`-`")?;
            let (rhs, rty) = self.prod()?;
            self.expect_ty(rty, Ty::Int, at, "`+`/`-`")?;
            lhs = ctor(Box::new(lhs), Box::new(rhs));
        }
        Ok((lhs, ty))
    }

    fn prod(&mut self) -> Result<(Expr, Ty)> {
        let (mut lhs, ty) = self.unary()?;
        while *self.peek() == Tok::Star {
            let (_, at) = self.bump();
            self.expect_ty(ty, Ty::Int, at, "`*`")?;
            let (rhs, rty) = self.unary()?;
            self.expect_ty(rty, Ty::Int, at, "`*`")?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok((lhs, ty))
    }

    fn unary(&mut self) -> Result<(Expr, Ty)> {
        if *self.peek() == Tok::Minus {
            let (_, at) = self.bump();
            let (inner, ty) = self.unary()?;
            self.expect_ty(ty, Ty::Int, at, "unary `-`")?;
            return Ok((Expr::Neg(Box::new(inner)), Ty::Int));
        }
        self.pow()
    }

    fn pow(&mut self) -> Result<(Expr, Ty)> {
        let (base, ty) = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok((base, ty));
        }
        let (_, at) = self.bump();
        self.expect_ty(ty, Ty::Int, at, "`^`")?;
        let (tok, epos) = self.bump();
        let Tok::Int(exp) = tok else {
            return Err(syntax(epos, "exponent must be a non-negative integer literal"));
        };
        let exp = u32::try_from(&exp).map_err(|_| syntax(epos, "exponent too large"))?;
        Ok((Expr::Pow(Box::new(base), exp), Ty::Int))
    }

    fn atom(&mut self) -> Result<(Expr, Ty)> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Int(v) => Ok((Expr::Lit(v), Ty::Int)),
            Tok::X => Ok((Expr::Var, Ty::Int)),
            Tok::LParen => {
                let inner = self.or()?;
                match self.bump() {
                    (Tok::RParen, _) => Ok(inner),
                    (_, p) => Err(syntax(p, "expected `)`")),
                }
            }
            Tok::Eof => Err(syntax(at, "unexpected end of input")),
            other => Err(syntax(at, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses predicate text into a boolean expression tree.
pub(super) fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let (expr, ty) = p.or()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    if ty != Ty::Bool {
        return Err(Error::Type {
            position: 0,
            message: "predicate must be a comparison or boolean combination, not an integer expression".into(),
        });
    }
    Ok(expr)
}

/// Checks that a hand-built tree is well typed with a boolean root.
pub(super) fn check_root(expr: &Expr) -> Result<()> {
    fn ty(e: &Expr) -> Result<Ty> {
        let need = |e: &Expr, want: Ty| -> Result<()> {
            let got = ty(e)?;
            if got == want {
                Ok(())
            } else {
                Err(Error::Type {
                    position: 0,
                    message: format!("expected {} subexpression, found {}", want.name(), got.name()),
                })
            }
        };
        Ok(match e {
            Expr::Lit(_) | Expr::Var => Ty::Int,
            Expr::Neg(a) | Expr::Pow(a, _) => {
                need(a, Ty::Int)?;
                Ty::Int
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                need(a, Ty::Int)?;
                need(b, Ty::Int)?;
                Ty::Int
            }
            Expr::Cmp(_, a, b) => {
                need(a, Ty::Int)?;
                need(b, Ty::Int)?;
                Ty::Bool
            }
            Expr::Not(a) => {
                need(a, Ty::Bool)?;
                Ty::Bool
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                need(a, Ty::Bool)?;
                need(b, Ty::Bool)?;
                Ty::Bool
            }
        })
    }
    match ty(expr)? {
        Ty::Bool => Ok(()),
        Ty::Int => Err(Error::Type { position: 0, message: "root must be boolean".into() }),
    }
}
