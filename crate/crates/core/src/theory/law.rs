//! Scaling-law labels for traffic-load orders and the table of parameter
//! regions known to produce each law.

// Conditions are kept as the inequalities they transcribe.
#![allow(clippy::manual_range_contains)]

use std::fmt;

use super::order::AsymptoticOrder;
use super::tables::{ln_order, Q};
use crate::error::Result;
use crate::random::{ExponentParams, LambdaClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LawKind {
    /// `n`
    Sarnoff,
    /// `n log n`
    Odlyzko,
    /// `n^2`
    Metcalfe,
    /// `n^3`
    Cube,
    Other(AsymptoticOrder),
}

impl LawKind {
    /// Label for a load order; exponents must match exactly.
    pub fn from_order(o: &AsymptoticOrder) -> Self {
        let n = o.n_exp;
        let l = o.log_exp;
        let int = |v: i64| num_rational::Ratio::from_integer(v);
        if l == int(0) && n == int(1) {
            LawKind::Sarnoff
        } else if l == int(1) && n == int(1) {
            LawKind::Odlyzko
        } else if l == int(0) && n == int(2) {
            LawKind::Metcalfe
        } else if l == int(0) && n == int(3) {
            LawKind::Cube
        } else {
            LawKind::Other(*o)
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LawKind::Sarnoff => "Sarnoff",
            LawKind::Odlyzko => "Odlyzko",
            LawKind::Metcalfe => "Metcalfe",
            LawKind::Cube => "Cube",
            LawKind::Other(_) => "Other",
        }
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Law of the traffic-load lower bound in the given regime.
pub fn classify_law(lambda: LambdaClass, params: &ExponentParams) -> Result<LawKind> {
    Ok(LawKind::from_order(&ln_order(lambda, params)?))
}

/// One documented parameter region for a law.
#[derive(Clone, Copy)]
pub struct LawCondition {
    pub law: LawKind,
    pub lambda: LambdaClass,
    pub description: &'static str,
    when: fn(Q, Q, Q) -> bool,
}

impl LawCondition {
    pub fn holds(&self, lambda: LambdaClass, params: &ExponentParams) -> bool {
        lambda == self.lambda && (self.when)(Q::of(params.i), Q::of(params.s), Q::of(params.d))
    }
}

impl fmt::Debug for LawCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [lambda={}] {}", self.law, self.lambda, self.description)
    }
}

macro_rules! cond {
    ($law:ident, $lambda:ident, $desc:literal, |$i:ident, $s:ident, $d:ident| $e:expr) => {
        #[allow(unused_variables)]
        LawCondition {
            law: LawKind::$law,
            lambda: LambdaClass::$lambda,
            description: $desc,
            when: |$i, $s, $d| $e,
        }
    };
}

static LAW_CONDITIONS: &[LawCondition] = &[
    cond!(Metcalfe, Const, "s>=0, 0<=d<1, 0<=i<1", |i, s, d| s >= 0.0 && d >= 0.0 && d < 1.0 && i >= 0.0 && i < 1.0),
    cond!(Metcalfe, SqrtN, "0<=s<1, d>3/2, i>=0", |i, s, d| s >= 0.0 && s < 1.0 && d > 1.5 && i >= 0.0),
    cond!(Metcalfe, SqrtN, "0<=s<1, d=3/2, i>1", |i, s, d| s >= 0.0 && s < 1.0 && d == 1.5 && i > 1.0),
    cond!(Metcalfe, SqrtN, "0<=s<1, 1<d<3/2, i>5/2-d", |i, s, d| s >= 0.0 && s < 1.0 && d > 1.0 && d < 1.5 && i > 2.5 - d),
    cond!(Metcalfe, SqrtN, "0<=s<1, d=1, i>=2", |i, s, d| s >= 0.0 && s < 1.0 && d == 1.0 && i >= 2.0),
    cond!(Metcalfe, SqrtN, "0<=s<1, 0<=d<1, i>3/2", |i, s, d| s >= 0.0 && s < 1.0 && d >= 0.0 && d < 1.0 && i > 1.5),
    cond!(Sarnoff, Const, "s>2, d>2, i>=0", |i, s, d| s > 2.0 && d > 2.0 && i >= 0.0),
    cond!(Sarnoff, Const, "s>2, d=2, i>1", |i, s, d| s > 2.0 && d == 2.0 && i > 1.0),
    cond!(Sarnoff, Const, "s>2, 1<d<2, i>3-d", |i, s, d| s > 2.0 && d > 1.0 && d < 2.0 && i > 3.0 - d),
    cond!(Sarnoff, Const, "s>2, d=1, i>=2", |i, s, d| s > 2.0 && d == 1.0 && i >= 2.0),
    cond!(Sarnoff, Const, "s>2, 0<=d<1, i>2", |i, s, d| s > 2.0 && d >= 0.0 && d < 1.0 && i > 2.0),
    cond!(Odlyzko, Const, "s=2, d>=2, i>=0", |i, s, d| s == 2.0 && d >= 2.0 && i >= 0.0),
    cond!(Odlyzko, Const, "s>2, d=2, 0<=i<1", |i, s, d| s > 2.0 && d == 2.0 && i >= 0.0 && i < 1.0),
    cond!(Odlyzko, Const, "s=2, 1<=d<2, i>=3-d", |i, s, d| s == 2.0 && d >= 1.0 && d < 2.0 && i >= 3.0 - d),
    cond!(Odlyzko, Const, "s>2, 0<=d<1, i=2", |i, s, d| s > 2.0 && d >= 0.0 && d < 1.0 && i == 2.0),
    cond!(Odlyzko, Const, "s=2, 0<=d<1, i>=2", |i, s, d| s == 2.0 && d >= 0.0 && d < 1.0 && i >= 2.0),
    cond!(Cube, LinearN, "s>=0, 0<=d<1, 0<=i<1", |i, s, d| s >= 0.0 && d >= 0.0 && d < 1.0 && i >= 0.0 && i < 1.0),
];

/// The documented law regions, one entry per region.
pub fn law_condition_rows() -> &'static [LawCondition] {
    LAW_CONDITIONS
}
