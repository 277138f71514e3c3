//! Exhaustive checks of the algebraic laws over a discretised grid of
//! intervals: De Morgan triplets, the product/pseudo-product midpoint
//! dominance, the bilattice-to-preorder ordering implication, negator
//! laws, operator boundary laws and the selection property of the
//! min-style operators.

use crate::interval::{feq, Interval, OrderingVerdict, EPSILON};
use crate::ops::{
    negate_lifted, negate_standard, r_implicator_min, r_implicator_pr, s_implicator, s_min_p, s_pr,
    t_min_p, t_ppr, t_pr, ConjunctorId, DisjunctorId,
};

/// Outcome of checking one law over the grid.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LawReport {
    fn new(law: &'static str) -> LawReport {
        LawReport {
            law,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl Fn() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Lattice points `0, step, 2*step, ..., 1` (the top is always included).
pub fn grid_points(step: f64) -> Vec<f64> {
    assert!(step > 0.0 && step <= 0.5, "grid step must be in (0, 0.5]");
    let n = (1.0 / step).ceil() as usize;
    let mut points: Vec<f64> = (0..=n).map(|i| (i as f64 * step).min(1.0)).collect();
    points.dedup_by(|a, b| feq(*a, *b));
    points
}

/// All intervals with endpoints on the lattice.
pub fn grid_intervals(step: f64) -> Vec<Interval> {
    let points = grid_points(step);
    let mut intervals = Vec::new();
    for (i, &lo) in points.iter().enumerate() {
        for &hi in &points[i..] {
            intervals.push(Interval::raw(lo, hi));
        }
    }
    intervals
}

/// Runs every law at the given grid step, in a stable order.
pub fn run_all(step: f64) -> Vec<LawReport> {
    let grid = grid_intervals(step);
    vec![
        de_morgan_min(&grid),
        de_morgan_product(&grid),
        product_midpoint_dominates_pseudo(&grid),
        truth_order_implies_midpoint_order(&grid),
        standard_negator_laws(&grid),
        lifted_negator_laws(&grid),
        conjunctor_laws(&grid),
        disjunctor_laws(&grid),
        implicator_boundary_laws(),
        min_p_selection(&grid),
        preorder_totality(&grid),
    ]
}

fn de_morgan_min(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("de_morgan_min_family");
    for x in grid {
        for y in grid {
            let t = t_min_p(x, y);
            let t_via_s = negate_standard(&s_min_p(&negate_standard(x), &negate_standard(y)));
            report.check(t.approx_eq(&t_via_s), || {
                format!("x={x} y={y}: conjunction {t} vs dual route {t_via_s}")
            });
            let s = s_min_p(x, y);
            let s_via_t = negate_standard(&t_min_p(&negate_standard(x), &negate_standard(y)));
            report.check(s.approx_eq(&s_via_t), || {
                format!("x={x} y={y}: disjunction {s} vs dual route {s_via_t}")
            });
        }
    }
    report
}

fn de_morgan_product(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("de_morgan_product_family");
    for x in grid {
        for y in grid {
            let t = t_pr(x, y);
            let t_via_s = negate_standard(&s_pr(&negate_standard(x), &negate_standard(y)));
            report.check(t.approx_eq(&t_via_s), || {
                format!("x={x} y={y}: conjunction {t} vs dual route {t_via_s}")
            });
            let s = s_pr(x, y);
            let s_via_t = negate_standard(&t_pr(&negate_standard(x), &negate_standard(y)));
            report.check(s.approx_eq(&s_via_t), || {
                format!("x={x} y={y}: disjunction {s} vs dual route {s_via_t}")
            });
        }
    }
    report
}

fn product_midpoint_dominates_pseudo(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("product_midpoint_dominates_pseudo");
    for x in grid {
        for y in grid {
            let full = t_pr(x, y).midpoint();
            let pseudo = t_ppr(x, y).midpoint();
            report.check(full >= pseudo - EPSILON, || {
                format!("x={x} y={y}: product midpoint {full} below pseudo {pseudo}")
            });
        }
    }
    report
}

fn truth_order_implies_midpoint_order(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("truth_order_implies_midpoint_order");
    for x in grid {
        for y in grid {
            if x.cmp_t(y) == OrderingVerdict::StrictlyLess {
                report.check(x.cmp_tp(y).holds_leq(), || {
                    format!("x={x} y={y}: below in the bilattice but not by midpoint")
                });
            }
        }
    }
    report
}

fn standard_negator_laws(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("standard_negator_laws");
    report.check(negate_standard(&Interval::FALSE) == Interval::TRUE, || {
        "negation of [0,0] is not [1,1]".into()
    });
    report.check(negate_standard(&Interval::TRUE) == Interval::FALSE, || {
        "negation of [1,1] is not [0,0]".into()
    });
    for x in grid {
        let n = negate_standard(x);
        report.check(negate_standard(&n).approx_eq(x), || {
            format!("x={x}: double negation gives {}", negate_standard(&n))
        });
        report.check(feq(n.width(), x.width()), || {
            format!("x={x}: width changed to {}", n.width())
        });
        for y in grid {
            if x.midpoint() >= y.midpoint() {
                let ny = negate_standard(y);
                report.check(n.midpoint() <= ny.midpoint() + EPSILON, || {
                    format!("x={x} y={y}: negation is not decreasing")
                });
            }
        }
    }
    report
}

fn lifted_negator_laws(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("lifted_negator_laws");
    let complement = |a: f64| 1.0 - a;
    let sugeno = |a: f64| ((1.0 - a) / (1.0 + a)).clamp(0.0, 1.0);
    let negators: [(&str, &dyn Fn(f64) -> f64); 2] = [("1-a", &complement), ("sugeno", &sugeno)];
    for (name, n) in negators {
        report.check(
            negate_lifted(n, &Interval::FALSE) == Interval::TRUE
                && negate_lifted(n, &Interval::TRUE) == Interval::FALSE,
            || format!("{name}: boundary conditions fail"),
        );
        for x in grid {
            let nx = negate_lifted(n, x);
            report.check(negate_lifted(n, &nx).approx_eq(x), || {
                format!("{name}, x={x}: not involutive")
            });
        }
    }
    // Midpoint monotonicity only survives the lifting for the affine
    // complement: a non-affine unit negator moves equally-centred
    // intervals of different widths to different midpoints.
    for x in grid {
        let nx = negate_lifted(complement, x);
        report.check(nx.approx_eq(&negate_standard(x)), || {
            format!("x={x}: complement lifting differs from the standard negator")
        });
        for y in grid {
            if x.midpoint() >= y.midpoint() {
                let ny = negate_lifted(complement, y);
                report.check(nx.midpoint() <= ny.midpoint() + EPSILON, || {
                    format!("x={x} y={y}: complement lifting is not decreasing")
                });
            }
        }
    }
    report
}

fn conjunctor_laws(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("conjunctor_laws");
    let zero = Interval::FALSE;
    let one = Interval::TRUE;
    for id in [
        ConjunctorId::TMin,
        ConjunctorId::TMinP,
        ConjunctorId::TPr,
        ConjunctorId::TPpr,
    ] {
        for (x, y) in [(zero, zero), (zero, one), (one, zero)] {
            report.check(id.apply(&x, &y).approx_eq(&zero), || {
                format!("{}: T({x},{y}) is not [0,0]", id.token())
            });
        }
        report.check(id.apply(&one, &one).approx_eq(&one), || {
            format!("{}: T([1,1],[1,1]) is not [1,1]", id.token())
        });
        for x in grid {
            report.check(
                id.apply(&one, x).approx_eq(x) && id.apply(x, &one).approx_eq(x),
                || format!("{}: [1,1] is not neutral on {x}", id.token()),
            );
        }
    }
    report
}

fn disjunctor_laws(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("disjunctor_laws");
    let zero = Interval::FALSE;
    let one = Interval::TRUE;
    for id in [DisjunctorId::SMax, DisjunctorId::SMinP, DisjunctorId::SPr] {
        for (x, y) in [(one, zero), (zero, one), (one, one)] {
            report.check(id.apply(&x, &y).approx_eq(&one), || {
                format!("{}: S({x},{y}) is not [1,1]", id.token())
            });
        }
        report.check(id.apply(&zero, &zero).approx_eq(&zero), || {
            format!("{}: S([0,0],[0,0]) is not [0,0]", id.token())
        });
        for x in grid {
            report.check(
                id.apply(&zero, x).approx_eq(x) && id.apply(x, &zero).approx_eq(x),
                || format!("{}: [0,0] is not neutral on {x}", id.token()),
            );
        }
    }
    report
}

fn implicator_boundary_laws() -> LawReport {
    let mut report = LawReport::new("implicator_boundary_laws");
    let zero = Interval::FALSE;
    let one = Interval::TRUE;
    type Implicator<'a> = (&'a str, Box<dyn Fn(&Interval, &Interval) -> Interval>);
    let implicators: Vec<Implicator> = vec![
        (
            "s_implicator(spr)",
            Box::new(|x, y| s_implicator(DisjunctorId::SPr, negate_standard, x, y)),
        ),
        (
            "s_implicator(smax)",
            Box::new(|x, y| s_implicator(DisjunctorId::SMax, negate_standard, x, y)),
        ),
        (
            "r_implicator_min",
            Box::new(|x, y| r_implicator_min(x, y).canonical()),
        ),
        (
            "r_implicator_pr",
            Box::new(|x, y| r_implicator_pr(x, y).canonical()),
        ),
    ];
    for (name, imp) in &implicators {
        for (x, y) in [(zero, zero), (zero, one), (one, one)] {
            report.check(imp(&x, &y).approx_eq(&one), || {
                format!("{name}: I({x},{y}) is not [1,1]")
            });
        }
        report.check(imp(&one, &zero).approx_eq(&zero), || {
            format!("{name}: I([1,1],[0,0]) is not [0,0]")
        });
    }
    report
}

fn min_p_selection(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("min_p_selection");
    for x in grid {
        for y in grid {
            let t = t_min_p(x, y);
            report.check(t == *x || t == *y, || {
                format!("x={x} y={y}: conjunction {t} is neither argument")
            });
            let s = s_min_p(x, y);
            report.check(s == *x || s == *y, || {
                format!("x={x} y={y}: disjunction {s} is neither argument")
            });
        }
    }
    report
}

fn preorder_totality(grid: &[Interval]) -> LawReport {
    let mut report = LawReport::new("preorder_totality");
    for x in grid {
        for y in grid {
            report.check(x.cmp_tp(y) != OrderingVerdict::Incomparable, || {
                format!("x={x} y={y}: midpoint preorder reported incomparable")
            });
            report.check(x.cmp_kp(y) != OrderingVerdict::Incomparable, || {
                format!("x={x} y={y}: width preorder reported incomparable")
            });
            report.check(x.cmp_t(y) != OrderingVerdict::Equivalent, || {
                format!("x={x} y={y}: bilattice truth order reported equivalence")
            });
            report.check(x.cmp_k(y) != OrderingVerdict::Equivalent, || {
                format!("x={x} y={y}: bilattice knowledge order reported equivalence")
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes_match_expectations() {
        assert_eq!(grid_points(0.5), vec![0.0, 0.5, 1.0]);
        assert_eq!(grid_points(0.05).len(), 21);
        assert_eq!(grid_intervals(0.05).len(), 231);
        // Steps that do not divide 1 still reach the top.
        let pts = grid_points(0.3);
        assert_eq!(*pts.last().unwrap(), 1.0);
    }

    #[test]
    #[should_panic(expected = "grid step")]
    fn oversized_step_is_rejected() {
        grid_points(0.6);
    }

    #[test]
    fn all_laws_pass_on_a_coarse_grid() {
        for report in run_all(0.25) {
            assert!(
                report.passed(),
                "{} failed {}/{}: {}",
                report.law,
                report.failures,
                report.checks,
                report.first_failure.as_deref().unwrap_or("")
            );
            assert!(report.checks > 0);
        }
    }
}
