//! The condition that defines a solution: parsing, evaluation and
//! brute-force enumeration over `[0, 2^k)`.
//!
//! Arithmetic is over unbounded signed integers. Nothing wraps modulo `2^k`,
//! so `x*x - 4 = 0` has exactly the solutions an algebra student would expect
//! in every register width.

mod parser;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::Result;
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }

    fn holds(self, a: &BigInt, b: &BigInt) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }
}

/// Expression tree. Literals are non-negative; negative constants are
/// spelled with [`Expr::Neg`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Lit(BigUint),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn lit(v: u64) -> Self {
        Expr::Lit(BigUint::from(v))
    }

    fn int(&self, x: &BigInt) -> BigInt {
        match self {
            Expr::Lit(v) => BigInt::from(v.clone()),
            Expr::Var => x.clone(),
            Expr::Neg(a) => -a.int(x),
            Expr::Add(a, b) => a.int(x) + b.int(x),
            Expr::Sub(a, b) => a.int(x) - b.int(x),
            Expr::Mul(a, b) => a.int(x) * b.int(x),
            Expr::Pow(a, e) => a.int(x).pow(*e),
            _ => unreachable!("type-checked tree: boolean node in integer position"),
        }
    }

    fn truth(&self, x: &BigInt) -> bool {
        match self {
            Expr::Cmp(op, a, b) => op.holds(&a.int(x), &b.int(x)),
            Expr::Not(a) => !a.truth(x),
            Expr::And(a, b) => a.truth(x) && b.truth(x),
            Expr::Or(a, b) => a.truth(x) || b.truth(x),
            _ => unreachable!("type-checked tree: integer node in boolean position"),
        }
    }
}

/// Canonical, fully parenthesized rendering. Parsing it yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(v) => write!(f, "{v}"),
            Expr::Var => f.write_str("x"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Pow(a, e) => write!(f, "({a} ^ {e})"),
            Expr::Cmp(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Not(a) => write!(f, "(not {a})"),
            Expr::And(a, b) => write!(f, "({a} and {b})"),
            Expr::Or(a, b) => write!(f, "({a} or {b})"),
        }
    }
}

/// A well-typed predicate `Cn(x)`; `x` is a solution when the root is true.
#[derive(Debug, Clone)]
pub struct PredicateAst {
    root: Expr,
    source: Option<String>,
}

/// Structural equality; the original source text is ignored.
impl PartialEq for PredicateAst {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl Eq for PredicateAst {}

impl PredicateAst {
    /// Wraps a hand-built tree after type checking it.
    pub fn new(root: Expr) -> Result<Self> {
        parser::check_root(&root)?;
        Ok(Self { root, source: None })
    }

    pub fn root(&self) -> &Expr {
        &self.root
    }

    /// The text this predicate was parsed from, or its canonical rendering.
    pub fn source(&self) -> String {
        self.source.clone().unwrap_or_else(|| self.root.to_string())
    }
}

impl fmt::Display for PredicateAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl std::str::FromStr for PredicateAst {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<PredicateAst> {
    let root = parser::parse_expr(text)?;
    Ok(PredicateAst { root, source: Some(text.to_owned()) })
}

pub fn evaluate(ast: &PredicateAst, x: u64) -> bool {
    ast.root.truth(&BigInt::from(x))
}

/// Values of `x` in `[0, 2^k)` satisfying a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    k: u32,
    members: Vec<u64>,
}

impl SolutionSet {
    /// Builds a set from explicit members; duplicates collapse and order is normalized.
    pub fn from_members(k: u32, limits: &Limits, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        limits.check(k)?;
        let range = 1u64 << k;
        let mut members: Vec<u64> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= range) {
            return Err(crate::error::Error::DegenerateSet(format!("{bad} lies outside [0, {range})")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { k, members })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Sorted solutions `x_s`.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn range_size(&self) -> u64 {
        1u64 << self.k
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Sorted non-solutions `x_ns` in range.
    pub fn complement(&self) -> Vec<u64> {
        (0..self.range_size()).filter(|&x| !self.contains(x)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() as u64 == self.range_size()
    }

    /// Fraction of the register that solves the predicate, `n / 2^k`.
    pub fn density(&self) -> f64 {
        self.n() as f64 / self.range_size() as f64
    }
}

/// Exhaustive scan of `[0, 2^k)`.
pub fn enumerate_solutions(ast: &PredicateAst, k: u32, limits: &Limits) -> Result<SolutionSet> {
    if k == 0 {
        return Err(crate::error::Error::InvalidLayout("register width must be at least 1".into()));
    }
    limits.check(k)?;
    let mut x = BigInt::zero();
    let mut members = Vec::new();
    for v in 0..(1u64 << k) {
        if ast.root.truth(&x) {
            members.push(v);
        }
        x += 1;
    }
    Ok(SolutionSet { k, members })
}
