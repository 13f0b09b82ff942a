//! Closed-form order tables.
//!
//! Each table is a literal list of `(condition on (i, s, d), order)` rows
//! evaluated first-match. Conditions compare exact rationals, so a row
//! such as `i == 5/2 - d` fires exactly on its boundary line. Rows are
//! grouped by d band, then s column.

// Conditions are kept as the inequalities they transcribe.
#![allow(clippy::manual_range_contains)]

use std::cmp::Ordering;
use std::ops::{Div, Sub};

use num_rational::Ratio;

use super::order::{exact_ratio, AsymptoticOrder, Bound, Exponent};
use crate::error::{Error, Result};
use crate::random::{ExponentParams, LambdaClass};

/// Exact rational parameter value, comparable against `f64` literals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Q(pub Exponent);

impl Q {
    pub(super) fn of(x: f64) -> Self {
        Q(exact_ratio(x))
    }
}

impl PartialEq<f64> for Q {
    fn eq(&self, other: &f64) -> bool {
        self.0 == exact_ratio(*other)
    }
}

impl PartialOrd<f64> for Q {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        Some(self.0.cmp(&exact_ratio(*other)))
    }
}

impl Sub<Q> for f64 {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(exact_ratio(self) - rhs.0)
    }
}

impl Sub<Q> for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(self.0 - rhs.0)
    }
}

impl Div<f64> for Q {
    type Output = Q;
    fn div(self, rhs: f64) -> Q {
        Q(self.0 / exact_ratio(rhs))
    }
}

pub(crate) trait IntoExp {
    fn exp(self) -> Exponent;
}

impl IntoExp for f64 {
    fn exp(self) -> Exponent {
        exact_ratio(self)
    }
}

impl IntoExp for Q {
    fn exp(self) -> Exponent {
        self.0
    }
}

fn th(n_exp: impl IntoExp, log_exp: impl IntoExp) -> AsymptoticOrder {
    AsymptoticOrder::theta(n_exp.exp(), log_exp.exp())
}

fn om(n_exp: impl IntoExp, log_exp: impl IntoExp) -> AsymptoticOrder {
    AsymptoticOrder::omega(n_exp.exp(), log_exp.exp())
}

type Cond = fn(Q, Q, Q) -> bool;
type Cell = fn(Q, Q, Q) -> AsymptoticOrder;

/// One table row; arguments are `(i, s, d)`.
struct Row {
    when: Cond,
    order: Cell,
}

fn first_match(table: &[Row], i: Q, s: Q, d: Q, name: &str) -> AsymptoticOrder {
    table
        .iter()
        .find(|row| (row.when)(i, s, d))
        .map(|row| (row.order)(i, s, d))
        .unwrap_or_else(|| panic!("{name} table has no row for i={i:?} s={s:?} d={d:?}"))
}

/// Which argument of [`lp_order`] to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpMode {
    /// Dependence on the number of anchors `r` (always `r^{1/2}`).
    InR,
    /// Dependence on the network size `n`.
    InN,
}

/// Order of the EMST length over `r` anchors at separation exponent `s`.
pub fn lp_order(s: f64, mode: LpMode) -> AsymptoticOrder {
    match mode {
        LpMode::InR => th(0.5, 0.0),
        LpMode::InN => {
            let s = Q::of(s);
            if s > 2.0 {
                th(0.0, 0.0)
            } else if s == 2.0 {
                th(0.0, 1.0)
            } else if s > 1.0 {
                th(1.0 - s / 2.0, 0.0)
            } else if s == 1.0 {
                th(0.5, -0.5)
            } else {
                th(0.5, 0.0)
            }
        }
    }
}

#[allow(unused_variables)]
static G_TABLE: &[Row] = &[
    // d > 3/2
    Row { when: |i, s, d| d > 1.5 && i >= 0.0, order: |i, s, d| th(0.0, 0.0) },
    // d = 3/2
    Row { when: |i, s, d| d == 1.5 && i > 1.0, order: |i, s, d| th(0.0, 0.0) },
    Row { when: |i, s, d| d == 1.5 && i >= 0.0 && i <= 1.0, order: |i, s, d| th(0.0, 1.0) },
    // 1 < d < 3/2
    Row { when: |i, s, d| d > 1.0 && d < 1.5 && i > 2.5 - d, order: |i, s, d| th(0.0, 0.0) },
    Row { when: |i, s, d| d > 1.0 && d < 1.5 && i == 2.5 - d, order: |i, s, d| th(0.0, 1.0) },
    Row { when: |i, s, d| d > 1.0 && d < 1.5 && i > 1.0 && i < 2.5 - d, order: |i, s, d| th(2.5 - i - d, 0.0) },
    Row { when: |i, s, d| d > 1.0 && d < 1.5 && i == 1.0, order: |i, s, d| th(1.5 - d, -1.0) },
    Row { when: |i, s, d| d > 1.0 && d < 1.5 && i >= 0.0 && i < 1.0, order: |i, s, d| th(1.5 - d, 0.0) },
    // d = 1
    Row { when: |i, s, d| d == 1.0 && i >= 1.5, order: |i, s, d| th(0.0, 0.0) },
    Row { when: |i, s, d| d == 1.0 && i > 1.0 && i < 1.5, order: |i, s, d| th(1.5 - i, -1.0) },
    Row { when: |i, s, d| d == 1.0 && i == 1.0, order: |i, s, d| th(0.5, -2.0) },
    Row { when: |i, s, d| d == 1.0 && i >= 0.0 && i < 1.0, order: |i, s, d| th(0.5, -1.0) },
    // 0 <= d < 1
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i > 1.5, order: |i, s, d| th(0.0, 0.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i == 1.5, order: |i, s, d| th(0.0, 1.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i > 1.0 && i < 1.5, order: |i, s, d| th(1.5 - i, 0.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i == 1.0, order: |i, s, d| th(0.5, -1.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i >= 0.0 && i < 1.0, order: |i, s, d| th(0.5, 0.0) },
];

#[allow(unused_variables)]
static W_TABLE: &[Row] = &[
    // d > 2
    Row { when: |i, s, d| d > 2.0 && i >= 0.0, order: |i, s, d| th(1.0, 0.0) },
    // d = 2
    Row { when: |i, s, d| d == 2.0 && i > 1.0, order: |i, s, d| th(1.0, 0.0) },
    Row { when: |i, s, d| d == 2.0 && i >= 0.0 && i <= 1.0, order: |i, s, d| th(1.0, 1.0) },
    // 1 < d < 2
    Row { when: |i, s, d| d > 1.0 && d < 2.0 && i > 3.0 - d, order: |i, s, d| th(1.0, 0.0) },
    Row { when: |i, s, d| d > 1.0 && d < 2.0 && i == 3.0 - d, order: |i, s, d| th(1.0, 1.0) },
    Row { when: |i, s, d| d > 1.0 && d < 2.0 && i > 1.0 && i < 3.0 - d, order: |i, s, d| th(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d > 1.0 && d < 2.0 && i == 1.0, order: |i, s, d| th(3.0 - d, -1.0) },
    Row { when: |i, s, d| d > 1.0 && d < 2.0 && i >= 0.0 && i < 1.0, order: |i, s, d| th(3.0 - d, 0.0) },
    // d = 1
    Row { when: |i, s, d| d == 1.0 && i >= 2.0, order: |i, s, d| th(1.0, 0.0) },
    Row { when: |i, s, d| d == 1.0 && i > 1.0 && i < 2.0, order: |i, s, d| th(3.0 - i, -1.0) },
    Row { when: |i, s, d| d == 1.0 && i == 1.0, order: |i, s, d| th(2.0, -2.0) },
    Row { when: |i, s, d| d == 1.0 && i >= 0.0 && i < 1.0, order: |i, s, d| th(2.0, -1.0) },
    // 0 <= d < 1
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i > 2.0, order: |i, s, d| th(1.0, 0.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i == 2.0, order: |i, s, d| th(1.0, 1.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i > 1.0 && i < 2.0, order: |i, s, d| th(3.0 - i, 0.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i == 1.0, order: |i, s, d| th(2.0, -1.0) },
    Row { when: |i, s, d| d >= 0.0 && d < 1.0 && i >= 0.0 && i < 1.0, order: |i, s, d| th(2.0, 0.0) },
];

// Band predicates for the traffic-load table.
fn s_gt2(s: Q) -> bool {
    s > 2.0
}
fn s_eq2(s: Q) -> bool {
    s == 2.0
}
fn s_1to2(s: Q) -> bool {
    s > 1.0 && s < 2.0
}
fn s_eq1(s: Q) -> bool {
    s == 1.0
}
fn s_lt1(s: Q) -> bool {
    s >= 0.0 && s < 1.0
}
fn d_gt2(d: Q) -> bool {
    d > 2.0
}
fn d_eq2(d: Q) -> bool {
    d == 2.0
}
fn d_32to2(d: Q) -> bool {
    d > 1.5 && d < 2.0
}
fn d_eq32(d: Q) -> bool {
    d == 1.5
}
fn d_1to32(d: Q) -> bool {
    d > 1.0 && d < 1.5
}
fn d_eq1(d: Q) -> bool {
    d == 1.0
}
fn d_lt1(d: Q) -> bool {
    d >= 0.0 && d < 1.0
}

/// Traffic load under `lambda = Theta(1)`; rows run over the `d` bands
/// top to bottom and, within each, the `s` columns left to right.
#[allow(unused_variables)]
static LOAD_TABLE: &[Row] = &[
    // ---- d > 2
    Row { when: |i, s, d| d_gt2(d) && s_gt2(s) && i >= 0.0, order: |i, s, d| om(1.0, 0.0) },
    Row { when: |i, s, d| d_gt2(d) && s_eq2(s) && i >= 0.0, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_gt2(d) && s_1to2(s) && i >= 0.0, order: |i, s, d| om(2.0 - s / 2.0, 0.0) },
    Row { when: |i, s, d| d_gt2(d) && s_eq1(s) && i >= 0.0, order: |i, s, d| om(1.5, -0.5) },
    Row { when: |i, s, d| d_gt2(d) && s_lt1(s) && i >= 0.0, order: |i, s, d| om(1.5, 0.0) },
    // ---- d = 2
    Row { when: |i, s, d| d_eq2(d) && s_gt2(s) && i > 1.0, order: |i, s, d| om(1.0, 0.0) },
    Row { when: |i, s, d| d_eq2(d) && s_gt2(s) && i >= 0.0 && i <= 1.0, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_eq2(d) && s_eq2(s) && i >= 0.0, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_eq2(d) && s_1to2(s) && i >= 0.0, order: |i, s, d| om(2.0 - s / 2.0, 0.0) },
    Row { when: |i, s, d| d_eq2(d) && s_eq1(s) && i >= 0.0, order: |i, s, d| om(1.5, -0.5) },
    Row { when: |i, s, d| d_eq2(d) && s_lt1(s) && i >= 0.0, order: |i, s, d| om(1.5, 0.0) },
    // ---- 3/2 < d < 2
    Row { when: |i, s, d| d_32to2(d) && s_gt2(s) && i > 3.0 - d, order: |i, s, d| om(1.0, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_gt2(s) && i == 3.0 - d, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_32to2(d) && s_gt2(s) && i > 1.0 && i < 3.0 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_gt2(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_32to2(d) && s_gt2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_eq2(s) && i >= 3.0 - d, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_32to2(d) && s_eq2(s) && i > 1.0 && i < 3.0 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_eq2(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_32to2(d) && s_eq2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_1to2(s) && i >= 3.0 - d, order: |i, s, d| om(2.0 - s / 2.0, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_1to2(s) && i > 1.0 && i < 3.0 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_1to2(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_32to2(d) && s_1to2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    Row { when: |i, s, d| d_32to2(d) && s_eq1(s) && i >= 0.0, order: |i, s, d| om(1.5, -0.5) },
    Row { when: |i, s, d| d_32to2(d) && s_lt1(s) && i >= 0.0, order: |i, s, d| om(1.5, 0.0) },
    // ---- d = 3/2
    Row { when: |i, s, d| d_eq32(d) && s_gt2(s) && i > 1.5, order: |i, s, d| om(1.0, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_gt2(s) && i == 1.5, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_eq32(d) && s_gt2(s) && i > 1.0 && i < 1.5, order: |i, s, d| om(2.5 - i, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_gt2(s) && i == 1.0, order: |i, s, d| om(1.5, -1.0) },
    Row { when: |i, s, d| d_eq32(d) && s_gt2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(1.5, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_eq2(s) && i >= 1.5, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_eq32(d) && s_eq2(s) && i > 1.0 && i < 1.5, order: |i, s, d| om(2.5 - i, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_eq2(s) && i == 1.0, order: |i, s, d| om(1.5, -1.0) },
    Row { when: |i, s, d| d_eq32(d) && s_eq2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(1.5, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_1to2(s) && i >= 1.5, order: |i, s, d| om(2.0 - s / 2.0, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_1to2(s) && i > 1.0 && i < 1.5, order: |i, s, d| om(2.5 - i, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_1to2(s) && i == 1.0, order: |i, s, d| om(1.5, -1.0) },
    Row { when: |i, s, d| d_eq32(d) && s_1to2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(1.5, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_eq1(s) && i > 1.0, order: |i, s, d| om(1.5, -0.5) },
    Row { when: |i, s, d| d_eq32(d) && s_eq1(s) && i >= 0.0 && i <= 1.0, order: |i, s, d| om(1.5, 0.5) },
    Row { when: |i, s, d| d_eq32(d) && s_lt1(s) && i > 1.0, order: |i, s, d| om(1.5, 0.0) },
    Row { when: |i, s, d| d_eq32(d) && s_lt1(s) && i >= 0.0 && i <= 1.0, order: |i, s, d| om(1.5, 1.0) },
    // ---- 1 < d < 3/2
    Row { when: |i, s, d| d_1to32(d) && s_gt2(s) && i > 3.0 - d, order: |i, s, d| om(1.0, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_gt2(s) && i == 3.0 - d, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_gt2(s) && i > 1.0 && i < 3.0 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_gt2(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_gt2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_eq2(s) && i >= 3.0 - d, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_eq2(s) && i > 1.0 && i < 3.0 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_eq2(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_eq2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_1to2(s) && i >= 3.0 - d, order: |i, s, d| om(2.0 - s / 2.0, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_1to2(s) && i > 1.0 && i < 3.0 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_1to2(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_1to2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_eq1(s) && i > 2.5 - d, order: |i, s, d| om(1.5, -0.5) },
    Row { when: |i, s, d| d_1to32(d) && s_eq1(s) && i == 2.5 - d, order: |i, s, d| om(1.5, 0.5) },
    Row { when: |i, s, d| d_1to32(d) && s_eq1(s) && i > 1.0 && i < 2.5 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_eq1(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_eq1(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_lt1(s) && i > 2.5 - d, order: |i, s, d| om(1.5, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_lt1(s) && i == 2.5 - d, order: |i, s, d| om(1.5, 1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_lt1(s) && i > 1.0 && i < 2.5 - d, order: |i, s, d| om(4.0 - i - d, 0.0) },
    Row { when: |i, s, d| d_1to32(d) && s_lt1(s) && i == 1.0, order: |i, s, d| om(3.0 - d, -1.0) },
    Row { when: |i, s, d| d_1to32(d) && s_lt1(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(3.0 - d, 0.0) },
    // ---- d = 1
    Row { when: |i, s, d| d_eq1(d) && s_gt2(s) && i >= 2.0, order: |i, s, d| om(1.0, 0.0) },
    Row { when: |i, s, d| d_eq1(d) && s_gt2(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_gt2(s) && i == 1.0, order: |i, s, d| om(2.0, -2.0) },
    Row { when: |i, s, d| d_eq1(d) && s_gt2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_eq2(s) && i >= 2.0, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_eq2(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_eq2(s) && i == 1.0, order: |i, s, d| om(2.0, -2.0) },
    Row { when: |i, s, d| d_eq1(d) && s_eq2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_1to2(s) && i >= 2.0, order: |i, s, d| om(2.0 - s / 2.0, 0.0) },
    Row { when: |i, s, d| d_eq1(d) && s_1to2(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_1to2(s) && i == 1.0, order: |i, s, d| om(2.0, -2.0) },
    Row { when: |i, s, d| d_eq1(d) && s_1to2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_eq1(s) && i >= 2.0, order: |i, s, d| om(1.5, -0.5) },
    Row { when: |i, s, d| d_eq1(d) && s_eq1(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_eq1(s) && i == 1.0, order: |i, s, d| om(2.0, -2.0) },
    Row { when: |i, s, d| d_eq1(d) && s_eq1(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_lt1(s) && i >= 2.0, order: |i, s, d| om(1.5, 0.0) },
    Row { when: |i, s, d| d_eq1(d) && s_lt1(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, -1.0) },
    Row { when: |i, s, d| d_eq1(d) && s_lt1(s) && i == 1.0, order: |i, s, d| om(2.0, -2.0) },
    Row { when: |i, s, d| d_eq1(d) && s_lt1(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, -1.0) },
    // ---- 0 <= d < 1
    Row { when: |i, s, d| d_lt1(d) && s_gt2(s) && i > 2.0, order: |i, s, d| om(1.0, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_gt2(s) && i == 2.0, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_gt2(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_gt2(s) && i == 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_gt2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_eq2(s) && i >= 2.0, order: |i, s, d| om(1.0, 1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_eq2(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_eq2(s) && i == 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_eq2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_1to2(s) && i >= 2.0, order: |i, s, d| om(2.0 - s / 2.0, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_1to2(s) && i > 1.0 && i < 2.0, order: |i, s, d| om(3.0 - i, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_1to2(s) && i == 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_1to2(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_eq1(s) && i > 1.5, order: |i, s, d| om(1.5, -0.5) },
    Row { when: |i, s, d| d_lt1(d) && s_eq1(s) && i == 1.5, order: |i, s, d| om(1.5, 0.5) },
    Row { when: |i, s, d| d_lt1(d) && s_eq1(s) && i > 1.0 && i < 1.5, order: |i, s, d| om(3.0 - i, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_eq1(s) && i == 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_eq1(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_lt1(s) && i > 1.5, order: |i, s, d| om(1.5, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_lt1(s) && i == 1.5, order: |i, s, d| om(1.5, 1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_lt1(s) && i > 1.0 && i < 1.5, order: |i, s, d| om(3.0 - i, 0.0) },
    Row { when: |i, s, d| d_lt1(d) && s_lt1(s) && i == 1.0, order: |i, s, d| om(2.0, -1.0) },
    Row { when: |i, s, d| d_lt1(d) && s_lt1(s) && i >= 0.0 && i < 1.0, order: |i, s, d| om(2.0, 0.0) },
];

fn check_exponents(i: f64, d: f64) -> Result<()> {
    for (name, v) in [("i", i), ("d", d)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::param(format!("exponent {name} must be finite and >= 0, got {v}")));
        }
    }
    Ok(())
}

/// Order of the destination-count normalization sum `G(i, d)`.
pub fn g_order(i: f64, d: f64) -> Result<AsymptoticOrder> {
    check_exponents(i, d)?;
    Ok(first_match(G_TABLE, Q::of(i), Q::of(0.0), Q::of(d), "G"))
}

/// Order of the total destination count `W(i, d) = sum_k r_k`.
pub fn w_order(i: f64, d: f64) -> Result<AsymptoticOrder> {
    check_exponents(i, d)?;
    Ok(first_match(W_TABLE, Q::of(i), Q::of(0.0), Q::of(d), "W"))
}

/// Order contributed by the arrival rate class.
pub fn lambda_order(lambda: LambdaClass) -> AsymptoticOrder {
    let e = match lambda {
        LambdaClass::Const => Ratio::from_integer(0),
        LambdaClass::SqrtN => Ratio::new(1, 2),
        LambdaClass::LinearN => Ratio::from_integer(1),
    };
    AsymptoticOrder::theta(e, Ratio::from_integer(0))
}

/// Lower bound on the aggregate traffic load for the given regime.
pub fn ln_order(lambda: LambdaClass, params: &ExponentParams) -> Result<AsymptoticOrder> {
    params.require_uniform()?;
    let base = first_match(LOAD_TABLE, Q::of(params.i), Q::of(params.s), Q::of(params.d), "load");
    Ok((base * lambda_order(lambda)).with_bound(Bound::Omega))
}
