//! Negators, conjunctors, disjunctors and implicators over the interval
//! truth states, defined against the midpoint truth preorder.
//!
//! The min-style pair selects one of its arguments outright (midpoint
//! first, knowledge as tie-break); the product pair multiplies
//! endpoints. Residual implicators maximise the midpoint of the
//! residuum and may return a whole midpoint class instead of a single
//! interval.

use crate::interval::{feq, fle, Interval, MSet, OrderingVerdict, EPSILON};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("endpoint {0} is not on the four-point lattice {{0, 1/3, 2/3, 1}}")]
    OutsideLattice(f64),
}

/// Endpoint reflection `[1-hi, 1-lo]`: reverses truth, preserves width.
pub fn negate_standard(x: &Interval) -> Interval {
    Interval::raw(1.0 - x.hi(), 1.0 - x.lo())
}

/// Lifts a decreasing unit negator `n` with `n(0)=1`, `n(1)=0` to
/// intervals as `[n(hi), n(lo)]`. Involutive whenever `n` is.
pub fn negate_lifted(n: impl Fn(f64) -> f64, x: &Interval) -> Interval {
    Interval::new(n(x.hi()), n(x.lo()))
        .expect("unit negator must map [0,1] into [0,1] and be decreasing")
}

/// An involutive negator on the four-point lattice {0, 1/3, 2/3, 1}
/// that is not an endpoint lifting: it swaps [0,1] with [1/3,2/3] and
/// reflects endpoints everywhere else.
pub fn negate_l4(x: &Interval) -> Result<Interval, OperatorError> {
    const L4: [f64; 4] = [0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
    let on_lattice = |v: f64| L4.iter().any(|p| feq(v, *p));
    for v in [x.lo(), x.hi()] {
        if !on_lattice(v) {
            return Err(OperatorError::OutsideLattice(v));
        }
    }
    if x.approx_eq(&Interval::UNKNOWN) {
        Ok(Interval::raw(1.0 / 3.0, 2.0 / 3.0))
    } else if x.approx_eq(&Interval::raw(1.0 / 3.0, 2.0 / 3.0)) {
        Ok(Interval::UNKNOWN)
    } else {
        Ok(negate_standard(x))
    }
}

/// Pointwise-min conjunctor of the bilattice triangle.
pub fn t_min(x: &Interval, y: &Interval) -> Interval {
    Interval::raw(x.lo().min(y.lo()), x.hi().min(y.hi()))
}

/// Pointwise-max disjunctor of the bilattice triangle.
pub fn s_max(x: &Interval, y: &Interval) -> Interval {
    Interval::raw(x.lo().max(y.lo()), x.hi().max(y.hi()))
}

/// Min conjunctor of the preorder triangle: returns the argument with
/// the lower midpoint; on midpoint ties the narrower (better known)
/// argument. Always argument-identical to `x` or `y`.
pub fn t_min_p(x: &Interval, y: &Interval) -> Interval {
    if !feq(x.midpoint(), y.midpoint()) {
        if x.midpoint() < y.midpoint() {
            *x
        } else {
            *y
        }
    } else {
        max_k(x, y)
    }
}

/// Max disjunctor of the preorder triangle, dual to [`t_min_p`].
pub fn s_min_p(x: &Interval, y: &Interval) -> Interval {
    if !feq(x.midpoint(), y.midpoint()) {
        if x.midpoint() > y.midpoint() {
            *x
        } else {
            *y
        }
    } else {
        max_k(x, y)
    }
}

fn max_k(x: &Interval, y: &Interval) -> Interval {
    if feq(x.width(), y.width()) {
        // Equal midpoint and equal width force the same interval.
        debug_assert!(
            x.approx_eq(y),
            "distinct intervals with equal midpoint and width"
        );
        *x
    } else if x.width() < y.width() {
        *x
    } else {
        *y
    }
}

/// Representable product conjunctor: `[x1*y1, x2*y2]`.
pub fn t_pr(x: &Interval, y: &Interval) -> Interval {
    Interval::raw(x.lo() * y.lo(), x.hi() * y.hi())
}

/// Pseudo-representable product conjunctor:
/// `[x1*y1, max(x1*y2, x2*y1)]`.
pub fn t_ppr(x: &Interval, y: &Interval) -> Interval {
    Interval::raw(x.lo() * y.lo(), (x.lo() * y.hi()).max(x.hi() * y.lo()))
}

/// Representable product disjunctor:
/// `[1-(1-x1)(1-y1), 1-(1-x2)(1-y2)]`.
pub fn s_pr(x: &Interval, y: &Interval) -> Interval {
    Interval::raw(
        1.0 - (1.0 - x.lo()) * (1.0 - y.lo()),
        1.0 - (1.0 - x.hi()) * (1.0 - y.hi()),
    )
}

/// Conjunctors selectable by identifier in rule programs and on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjunctorId {
    TMin,
    TMinP,
    TPr,
    TPpr,
}

impl ConjunctorId {
    pub fn apply(&self, x: &Interval, y: &Interval) -> Interval {
        match self {
            ConjunctorId::TMin => t_min(x, y),
            ConjunctorId::TMinP => t_min_p(x, y),
            ConjunctorId::TPr => t_pr(x, y),
            ConjunctorId::TPpr => t_ppr(x, y),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            ConjunctorId::TMin => "tmin",
            ConjunctorId::TMinP => "tminp",
            ConjunctorId::TPr => "tpr",
            ConjunctorId::TPpr => "tppr",
        }
    }
}

impl FromStr for ConjunctorId {
    type Err = String;

    fn from_str(s: &str) -> Result<ConjunctorId, String> {
        match s {
            "tmin" => Ok(ConjunctorId::TMin),
            "tminp" => Ok(ConjunctorId::TMinP),
            "tpr" => Ok(ConjunctorId::TPr),
            "tppr" => Ok(ConjunctorId::TPpr),
            other => Err(format!(
                "unknown conjunctor `{other}` (expected tmin, tminp, tpr or tppr)"
            )),
        }
    }
}

/// Disjunctors selectable by identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisjunctorId {
    SMax,
    SMinP,
    SPr,
}

impl DisjunctorId {
    pub fn apply(&self, x: &Interval, y: &Interval) -> Interval {
        match self {
            DisjunctorId::SMax => s_max(x, y),
            DisjunctorId::SMinP => s_min_p(x, y),
            DisjunctorId::SPr => s_pr(x, y),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            DisjunctorId::SMax => "smax",
            DisjunctorId::SMinP => "sminp",
            DisjunctorId::SPr => "spr",
        }
    }
}

impl FromStr for DisjunctorId {
    type Err = String;

    fn from_str(s: &str) -> Result<DisjunctorId, String> {
        match s {
            "smax" => Ok(DisjunctorId::SMax),
            "sminp" => Ok(DisjunctorId::SMinP),
            "spr" => Ok(DisjunctorId::SPr),
            other => Err(format!(
                "unknown disjunctor `{other}` (expected smax, sminp or spr)"
            )),
        }
    }
}

/// Implication as `S(N(x), y)` for a disjunctor `S` and interval negator `N`.
pub fn s_implicator(
    s: DisjunctorId,
    n: impl Fn(&Interval) -> Interval,
    x: &Interval,
    y: &Interval,
) -> Interval {
    s.apply(&n(x), y)
}

/// Result of a residual implicator: either a single interval or a whole
/// midpoint class, whose canonical representative is its degenerate
/// member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImplicationResult {
    Unique(Interval),
    MSet(MSet),
}

impl ImplicationResult {
    pub fn canonical(&self) -> Interval {
        match self {
            ImplicationResult::Unique(x) => *x,
            ImplicationResult::MSet(m) => m.canonical(),
        }
    }
}

impl fmt::Display for ImplicationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImplicationResult::Unique(x) => write!(f, "{x}"),
            ImplicationResult::MSet(m) => write!(f, "{m}"),
        }
    }
}

/// Residuum of [`t_min_p`]: `[1,1]` when the antecedent's midpoint does
/// not exceed the consequent's; otherwise the whole midpoint class of
/// the consequent.
pub fn r_implicator_min(x: &Interval, y: &Interval) -> ImplicationResult {
    match x.cmp_tp(y) {
        OrderingVerdict::StrictlyGreater => {
            ImplicationResult::MSet(MSet::new(y.midpoint()).expect("midpoint stays in [0,1]"))
        }
        _ => ImplicationResult::Unique(Interval::TRUE),
    }
}

/// Endpoint lattice resolution of the residual product implicator's
/// supremum search.
pub const R_IMPLICATOR_GRID: u32 = 1000;

/// Residuum of [`t_pr`], computed as the midpoint-maximal `gamma` with
/// `midpoint(t_pr(x, gamma)) <= midpoint(y)`, searched over endpoints on
/// a 1/1000 lattice. Returns the midpoint class when the maximum is
/// attained by more than one interval.
pub fn r_implicator_pr(x: &Interval, y: &Interval) -> ImplicationResult {
    if fle(x.midpoint(), y.midpoint()) {
        return ImplicationResult::Unique(Interval::TRUE);
    }
    let n = R_IMPLICATOR_GRID;
    let step = 1.0 / n as f64;
    let budget = y.lo() + y.hi();
    let mut best_sum: i64 = -1;
    let mut first: (u32, u32) = (0, 0);
    let mut unique = true;
    for i in 0..=n {
        let g1 = i as f64 * step;
        if x.lo() * g1 > budget + EPSILON {
            break;
        }
        for j in i..=n {
            let g2 = j as f64 * step;
            if x.lo() * g1 + x.hi() * g2 > budget + EPSILON {
                break;
            }
            let sum = (i + j) as i64;
            if sum > best_sum {
                best_sum = sum;
                first = (i, j);
                unique = true;
            } else if sum == best_sum {
                unique = false;
            }
        }
    }
    debug_assert!(
        best_sum >= 0,
        "gamma = [0,0] always satisfies the residuation bound"
    );
    if unique {
        let (i, j) = first;
        ImplicationResult::Unique(Interval::raw(i as f64 * step, j as f64 * step))
    } else {
        let center = best_sum as f64 * step / 2.0;
        ImplicationResult::MSet(MSet::new(center).expect("grid midpoint stays in [0,1]"))
    }
}
