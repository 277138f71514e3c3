//! Closed sub-intervals of `[0,1]` used as epistemic states.
//!
//! An interval bounds the unknown truth degree of a proposition. Two
//! ordering families are provided: the classical bilattice orderings
//! (endpoint-wise truth, set-inclusion knowledge) which are partial
//! orders, and the total preorders that compare midpoints (truth) and
//! widths (knowledge, narrower = more informed).

use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Tolerance used by every ordering decision and equality check.
pub const EPSILON: f64 = 1e-9;

pub(crate) fn feq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPSILON
}

pub(crate) fn fle(a: f64, b: f64) -> bool {
    a <= b + EPSILON
}

/// Renders a float rounded at the comparison tolerance, so derived
/// values like `0.4 * 0.8` print as `0.32` rather than an ulp away.
pub(crate) fn fmt_f64(v: f64) -> String {
    let rounded = (v * 1e9).round() / 1e9;
    format!("{}", rounded)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntervalError {
    #[error("endpoint {0} is outside [0,1]")]
    OutOfRange(f64),
    #[error("inverted interval: lo {lo} > hi {hi}")]
    Inverted { lo: f64, hi: f64 },
    #[error("malformed interval literal `{0}`")]
    Malformed(String),
}

/// Errors raised by joins and selections over sets of intervals.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    /// Knowledge join of disjoint intervals: the evidence cannot be reconciled.
    #[error("inconsistent evidence: {x} and {y} are disjoint")]
    Inconsistent { x: Interval, y: Interval },
    /// Two distinct intervals carry the same amount of information; the
    /// algebra cannot pick one and a human (or another criterion) must.
    #[error("indecision: {a} and {b} carry the same amount of information")]
    Indecision { a: Interval, b: Interval },
}

/// A closed sub-interval of `[0,1]`. Construction enforces
/// `0 <= lo <= hi <= 1`; values are never clamped silently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Definitely false, `[0,0]`.
    pub const FALSE: Interval = Interval { lo: 0.0, hi: 0.0 };
    /// Definitely true, `[1,1]`.
    pub const TRUE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// Complete ignorance, `[0,1]`.
    pub const UNKNOWN: Interval = Interval { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Interval, IntervalError> {
        if !(0.0..=1.0).contains(&lo) {
            return Err(IntervalError::OutOfRange(lo));
        }
        if !(0.0..=1.0).contains(&hi) {
            return Err(IntervalError::OutOfRange(hi));
        }
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[v,v]`.
    pub fn exact(v: f64) -> Result<Interval, IntervalError> {
        Interval::new(v, v)
    }

    /// Internal constructor for values already known to be valid.
    pub(crate) fn raw(lo: f64, hi: f64) -> Interval {
        debug_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi) && lo <= hi);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.width() <= EPSILON
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo - EPSILON <= v && v <= self.hi + EPSILON
    }

    /// Equality at the comparison tolerance.
    pub fn approx_eq(&self, other: &Interval) -> bool {
        feq(self.lo, other.lo) && feq(self.hi, other.hi)
    }

    /// Truth ordering of the bilattice triangle: endpoint-wise `<=`.
    /// A partial order; proper sub-intervals are incomparable.
    pub fn cmp_t(&self, other: &Interval) -> OrderingVerdict {
        if self.approx_eq(other) {
            return OrderingVerdict::Equal;
        }
        let le = fle(self.lo, other.lo) && fle(self.hi, other.hi);
        let ge = fle(other.lo, self.lo) && fle(other.hi, self.hi);
        match (le, ge) {
            (true, false) => OrderingVerdict::StrictlyLess,
            (false, true) => OrderingVerdict::StrictlyGreater,
            _ => OrderingVerdict::Incomparable,
        }
    }

    /// Knowledge ordering of the bilattice triangle: set inclusion,
    /// reversed (the contained interval knows more). A partial order.
    pub fn cmp_k(&self, other: &Interval) -> OrderingVerdict {
        if self.approx_eq(other) {
            return OrderingVerdict::Equal;
        }
        let le = fle(self.lo, other.lo) && fle(other.hi, self.hi);
        let ge = fle(other.lo, self.lo) && fle(self.hi, other.hi);
        match (le, ge) {
            (true, false) => OrderingVerdict::StrictlyLess,
            (false, true) => OrderingVerdict::StrictlyGreater,
            _ => OrderingVerdict::Incomparable,
        }
    }

    /// Truth preorder: compare midpoints. Total; distinct intervals with
    /// the same midpoint are mutually below each other (`Equivalent`).
    pub fn cmp_tp(&self, other: &Interval) -> OrderingVerdict {
        if self.approx_eq(other) {
            OrderingVerdict::Equal
        } else if feq(self.midpoint(), other.midpoint()) {
            OrderingVerdict::Equivalent
        } else if self.midpoint() < other.midpoint() {
            OrderingVerdict::StrictlyLess
        } else {
            OrderingVerdict::StrictlyGreater
        }
    }

    /// Knowledge preorder: compare widths, wider is lower. Total;
    /// distinct intervals of equal width are `Equivalent`.
    pub fn cmp_kp(&self, other: &Interval) -> OrderingVerdict {
        if self.approx_eq(other) {
            OrderingVerdict::Equal
        } else if feq(self.width(), other.width()) {
            OrderingVerdict::Equivalent
        } else if self.width() > other.width() {
            OrderingVerdict::StrictlyLess
        } else {
            OrderingVerdict::StrictlyGreater
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", fmt_f64(self.lo), fmt_f64(self.hi))
    }
}

impl FromStr for Interval {
    type Err = IntervalError;

    /// Parses `[lo,hi]` or the single-point shorthand `0.4`.
    fn from_str(s: &str) -> Result<Interval, IntervalError> {
        let s = s.trim();
        let malformed = || IntervalError::Malformed(s.to_string());
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (a, b) = inner.split_once(',').ok_or_else(malformed)?;
            let lo: f64 = a.trim().parse().map_err(|_| malformed())?;
            let hi: f64 = b.trim().parse().map_err(|_| malformed())?;
            Interval::new(lo, hi)
        } else {
            let v: f64 = s.parse().map_err(|_| malformed())?;
            Interval::exact(v)
        }
    }
}

/// Outcome of comparing two intervals under one of the orderings.
///
/// The preorders are total: they never yield `Incomparable`, and report
/// `Equivalent` for distinct intervals with equal measure. The bilattice
/// partial orders never yield `Equivalent` but may be `Incomparable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingVerdict {
    StrictlyLess,
    StrictlyGreater,
    /// Mutually below each other but not the same interval.
    Equivalent,
    Equal,
    Incomparable,
}

impl OrderingVerdict {
    /// True when the verdict certifies `left <= right`.
    pub fn holds_leq(&self) -> bool {
        matches!(
            self,
            OrderingVerdict::StrictlyLess | OrderingVerdict::Equivalent | OrderingVerdict::Equal
        )
    }

    /// True when the verdict certifies `left >= right`.
    pub fn holds_geq(&self) -> bool {
        matches!(
            self,
            OrderingVerdict::StrictlyGreater | OrderingVerdict::Equivalent | OrderingVerdict::Equal
        )
    }
}

/// The four orderings, as selectable by name (`tp`, `kp`, `t`, `k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingKind {
    TruthPre,
    KnowledgePre,
    TruthBilattice,
    KnowledgeBilattice,
}

impl OrderingKind {
    pub fn compare(&self, x: &Interval, y: &Interval) -> OrderingVerdict {
        match self {
            OrderingKind::TruthPre => x.cmp_tp(y),
            OrderingKind::KnowledgePre => x.cmp_kp(y),
            OrderingKind::TruthBilattice => x.cmp_t(y),
            OrderingKind::KnowledgeBilattice => x.cmp_k(y),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            OrderingKind::TruthPre => "tp",
            OrderingKind::KnowledgePre => "kp",
            OrderingKind::TruthBilattice => "t",
            OrderingKind::KnowledgeBilattice => "k",
        }
    }
}

impl FromStr for OrderingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<OrderingKind, String> {
        match s {
            "tp" => Ok(OrderingKind::TruthPre),
            "kp" => Ok(OrderingKind::KnowledgePre),
            "t" => Ok(OrderingKind::TruthBilattice),
            "k" => Ok(OrderingKind::KnowledgeBilattice),
            other => Err(format!(
                "unknown ordering `{other}` (expected tp, kp, t or k)"
            )),
        }
    }
}

/// Least upper bound under the truth preorder: the member with maximal
/// midpoint; midpoint ties go to the narrowest member. Two distinct
/// members tying on both midpoint and width cannot be ranked.
pub fn lub_tp(xs: &[Interval]) -> Result<Interval, AlgebraError> {
    assert!(!xs.is_empty(), "lub_tp of an empty set");
    let top = xs
        .iter()
        .map(Interval::midpoint)
        .fold(f64::NEG_INFINITY, f64::max);
    let candidates: Vec<Interval> = xs
        .iter()
        .copied()
        .filter(|x| feq(x.midpoint(), top))
        .collect();
    narrowest(&candidates)
}

/// Least upper bound under the knowledge preorder: the unique narrowest
/// member. Fails with `Indecision` when two distinct members share the
/// minimal width.
pub fn lub_kp(xs: &[Interval]) -> Result<Interval, AlgebraError> {
    assert!(!xs.is_empty(), "lub_kp of an empty set");
    narrowest(xs)
}

fn narrowest(xs: &[Interval]) -> Result<Interval, AlgebraError> {
    let min_w = xs.iter().map(Interval::width).fold(f64::INFINITY, f64::min);
    let mut winner: Option<Interval> = None;
    for x in xs.iter().filter(|x| feq(x.width(), min_w)) {
        match winner {
            None => winner = Some(*x),
            Some(w) if w.approx_eq(x) => {}
            Some(w) => return Err(AlgebraError::Indecision { a: w, b: *x }),
        }
    }
    Ok(winner.expect("nonempty candidate set"))
}

/// Knowledge join of the bilattice triangle: interval intersection.
/// Accumulating evidence can only narrow the state; disjoint evidence is
/// inconsistent.
pub fn k_join(x: &Interval, y: &Interval) -> Result<Interval, AlgebraError> {
    let lo = x.lo().max(y.lo());
    let hi = x.hi().min(y.hi());
    if lo <= hi {
        Ok(Interval::raw(lo, hi))
    } else if lo - hi <= EPSILON {
        let mid = (lo + hi) / 2.0;
        Ok(Interval::raw(mid, mid))
    } else {
        Err(AlgebraError::Inconsistent { x: *x, y: *y })
    }
}

/// All intervals sharing a given midpoint. Its members are mutually
/// equivalent under the truth preorder; the degenerate member is the
/// canonical representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MSet {
    center: f64,
}

impl MSet {
    pub fn new(center: f64) -> Result<MSet, IntervalError> {
        if !(0.0..=1.0).contains(&center) {
            return Err(IntervalError::OutOfRange(center));
        }
        Ok(MSet { center })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn contains(&self, x: &Interval) -> bool {
        feq(x.midpoint(), self.center)
    }

    /// The degenerate member `[c,c]`, always present.
    pub fn canonical(&self) -> Interval {
        Interval::raw(self.center, self.center)
    }

    /// The widest member, `[max(0, 2c-1), min(1, 2c)]`.
    pub fn widest(&self) -> Interval {
        let lo = (2.0 * self.center - 1.0).max(0.0);
        let hi = (2.0 * self.center).min(1.0);
        Interval::raw(lo, hi)
    }
}

impl fmt::Display for MSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m-set(center={})", fmt_f64(self.center))
    }
}

/// Minimal upper bounds of `targets` among `candidates` under the truth
/// preorder. An upper bound must be strictly above or equal to every
/// target (equivalent-but-distinct intervals do not bound each other);
/// a bound is minimal when no other bound lies strictly below it.
/// Multiple minimal bounds witness that the preorder is not a lattice.
pub fn minimal_upper_bounds_tp(candidates: &[Interval], targets: &[Interval]) -> Vec<Interval> {
    let is_bound = |u: &Interval| {
        targets.iter().all(|t| {
            matches!(
                t.cmp_tp(u),
                OrderingVerdict::StrictlyLess | OrderingVerdict::Equal
            )
        })
    };
    let bounds: Vec<Interval> = candidates.iter().copied().filter(|u| is_bound(u)).collect();
    let mut minimal: Vec<Interval> = bounds
        .iter()
        .copied()
        .filter(|u| {
            !bounds
                .iter()
                .any(|v| v.cmp_tp(u) == OrderingVerdict::StrictlyLess)
        })
        .collect();
    minimal.sort_by(|a, b| {
        a.lo()
            .partial_cmp(&b.lo())
            .unwrap()
            .then(a.hi().partial_cmp(&b.hi()).unwrap())
    });
    minimal
}
