//! Probabilistic reading of the truth preorder: each interval is taken
//! as a uniform distribution over its possible truth values, and two
//! states are compared through `P(X <= Y)`.
//!
//! The closed form clips the half-plane `u <= v` against the rectangle
//! of the two intervals and measures the area, so it shares no code
//! path with the midpoint comparison it validates. A seeded Monte Carlo
//! estimator gives a second, independent route.

use crate::interval::{feq, Interval, OrderingVerdict, EPSILON};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator behind [`prob_leq_mc`], recorded in reports so estimates
/// can be reproduced bit-for-bit.
pub const MC_RNG_ID: &str = "ChaCha8";

/// Ordering read off the two probabilities `P(X <= Y)` and `P(X >= Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StochasticOrder {
    Less,
    Greater,
    Tie,
}

/// The two stochastic-order probabilities for a pair of states.
///
/// For non-degenerate intervals `p_leq + p_geq = 1`; when both states
/// are the same point mass, both probabilities are 1 and the order is a
/// tie.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StochasticVerdict {
    pub p_leq: f64,
    pub p_geq: f64,
    pub order: StochasticOrder,
}

/// `P(X <= Y)` for `X ~ U(x)`, `Y ~ U(y)`. Degenerate intervals are
/// point masses.
pub fn prob_leq(x: &Interval, y: &Interval) -> f64 {
    // Saturation is exact when the intervals are ordered apart (the
    // shared boundary point has measure zero).
    if x.hi() <= y.lo() {
        return 1.0;
    }
    if y.hi() <= x.lo() {
        return 0.0;
    }
    let x_deg = x.is_degenerate();
    let y_deg = y.is_degenerate();
    if x_deg && y_deg {
        return if x.midpoint() <= y.midpoint() + EPSILON {
            1.0
        } else {
            0.0
        };
    }
    if x_deg {
        // P(a <= Y) is the fraction of y at or above the point a.
        return ((y.hi() - x.midpoint()) / y.width()).clamp(0.0, 1.0);
    }
    if y_deg {
        return ((y.midpoint() - x.lo()) / x.width()).clamp(0.0, 1.0);
    }
    // Scale the rectangle to the unit square; the area of the clipped
    // region then is the probability itself. `u <= v` becomes
    // c + wy*t - wx*s >= 0 for (s, t) in the square.
    let c = y.lo() - x.lo();
    let (wx, wy) = (x.width(), y.width());
    let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let clipped = clip_halfplane(&square, |(s, t)| c + wy * t - wx * s);
    polygon_area(&clipped).clamp(0.0, 1.0)
}

/// Sutherland-Hodgman clip of a convex polygon against `f >= 0`.
fn clip_halfplane(poly: &[(f64, f64)], f: impl Fn((f64, f64)) -> f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (idx, a) in poly.iter().enumerate() {
        let b = &poly[(idx + 1) % poly.len()];
        let fa = f(*a);
        let fb = f(*b);
        if fa >= 0.0 {
            out.push(*a);
        }
        if (fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0) {
            let t = fa / (fa - fb);
            out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
        }
    }
    out
}

fn polygon_area(poly: &[(f64, f64)]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for (idx, a) in poly.iter().enumerate() {
        let b = &poly[(idx + 1) % poly.len()];
        twice += a.0 * b.1 - b.0 * a.1;
    }
    twice.abs() / 2.0
}

/// Monte Carlo estimate of `P(X <= Y)`, deterministic per `(seed, n)`.
pub fn prob_leq_mc(x: &Interval, y: &Interval, n: u64, seed: u64) -> f64 {
    assert!(n >= 1, "sample count must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..n {
        let u = x.lo() + x.width() * rng.gen::<f64>();
        let v = y.lo() + y.width() * rng.gen::<f64>();
        if u <= v {
            hits += 1;
        }
    }
    hits as f64 / n as f64
}

/// Both stochastic-order probabilities and the resulting order.
pub fn stochastic_verdict(x: &Interval, y: &Interval) -> StochasticVerdict {
    let p_leq = prob_leq(x, y);
    let p_geq = prob_leq(y, x);
    let order = if feq(p_leq, p_geq) {
        StochasticOrder::Tie
    } else if p_geq < p_leq {
        StochasticOrder::Less
    } else {
        StochasticOrder::Greater
    };
    StochasticVerdict {
        p_leq,
        p_geq,
        order,
    }
}

/// Checks that the stochastic order agrees with the midpoint comparison:
/// `P(X >= Y) <= P(X <= Y)` exactly when `midpoint(x) <= midpoint(y)`,
/// with probability ties matching midpoint ties.
pub fn matches_midpoint_order(x: &Interval, y: &Interval) -> bool {
    let stochastic = stochastic_verdict(x, y).order;
    match x.cmp_tp(y) {
        OrderingVerdict::StrictlyLess => stochastic == StochasticOrder::Less,
        OrderingVerdict::StrictlyGreater => stochastic == StochasticOrder::Greater,
        OrderingVerdict::Equivalent | OrderingVerdict::Equal => stochastic == StochasticOrder::Tie,
        OrderingVerdict::Incomparable => unreachable!("the truth preorder is total"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    /// Independent slow oracle: Riemann sum over the rectangle. Kept
    /// deliberately naive so it cannot share a bug with the clipping
    /// route.
    fn riemann_prob_leq(x: &Interval, y: &Interval, cells: u32) -> f64 {
        let mut hits = 0u64;
        for i in 0..cells {
            let u = x.lo() + x.width() * ((i as f64 + 0.5) / cells as f64);
            for j in 0..cells {
                let v = y.lo() + y.width() * ((j as f64 + 0.5) / cells as f64);
                if u <= v {
                    hits += 1;
                }
            }
        }
        hits as f64 / (cells as f64 * cells as f64)
    }

    #[test]
    fn closed_form_matches_frozen_values() {
        // Sub-interval pair: 0.5 from the region below the overlap plus
        // half the overlap mass; worked out to exactly 0.625.
        assert!((prob_leq(&iv(0.4, 0.8), &iv(0.6, 0.7)) - 0.625).abs() < 1e-12);
        // Overlapping pair: 2/3 plus half the overlap mass = 5/6.
        assert!((prob_leq(&iv(0.4, 0.8), &iv(0.6, 0.9)) - 5.0 / 6.0).abs() < 1e-12);
        // Disjoint pair.
        assert_eq!(prob_leq(&iv(0.0, 0.3), &iv(0.7, 1.0)), 1.0);
    }

    #[test]
    fn closed_form_matches_riemann_oracle() {
        let pairs = [
            (iv(0.4, 0.8), iv(0.6, 0.7)),
            (iv(0.4, 0.8), iv(0.6, 0.9)),
            (iv(0.4, 0.9), iv(0.5, 0.6)),
            (iv(0.0, 1.0), iv(0.0, 1.0)),
            (iv(0.1, 0.9), iv(0.2, 0.3)),
        ];
        for (x, y) in pairs {
            let exact = prob_leq(&x, &y);
            let approx = riemann_prob_leq(&x, &y, 2000);
            assert!(
                (exact - approx).abs() < 2e-3,
                "{x} vs {y}: closed {exact}, riemann {approx}"
            );
        }
    }

    #[test]
    fn degenerate_intervals_are_point_masses() {
        assert_eq!(prob_leq(&iv(0.2, 0.2), &iv(0.5, 0.5)), 1.0);
        assert_eq!(prob_leq(&iv(0.5, 0.5), &iv(0.2, 0.2)), 0.0);
        let v = stochastic_verdict(&iv(0.3, 0.3), &iv(0.3, 0.3));
        assert_eq!((v.p_leq, v.p_geq), (1.0, 1.0));
        assert_eq!(v.order, StochasticOrder::Tie);
        // Point against a box containing it.
        assert!(feq(prob_leq(&iv(0.5, 0.5), &iv(0.2, 0.8)), 0.5));
        assert!(feq(prob_leq(&iv(0.2, 0.8), &iv(0.5, 0.5)), 0.5));
    }

    #[test]
    fn saturates_exactly_when_ordered_apart() {
        assert_eq!(prob_leq(&iv(0.1, 0.4), &iv(0.4, 0.9)), 1.0);
        assert!(prob_leq(&iv(0.1, 0.41), &iv(0.4, 0.9)) < 1.0);
    }

    #[test]
    fn monte_carlo_is_deterministic_per_seed() {
        let x = iv(0.4, 0.8);
        let y = iv(0.6, 0.7);
        let a = prob_leq_mc(&x, &y, 10_000, 7);
        let b = prob_leq_mc(&x, &y, 10_000, 7);
        assert_eq!(a, b);
        let c = prob_leq_mc(&x, &y, 10_000, 8);
        assert_ne!(a, c);
    }

    #[test]
    fn monte_carlo_tracks_closed_form() {
        let x = iv(0.4, 0.8);
        let y = iv(0.6, 0.7);
        assert!((prob_leq_mc(&x, &y, 200_000, 42) - 0.625).abs() < 0.01);
        assert_eq!(prob_leq_mc(&iv(0.2, 0.2), &iv(0.5, 0.5), 1000, 1), 1.0);
        assert!(
            (prob_leq_mc(&Interval::UNKNOWN, &Interval::UNKNOWN, 200_000, 42) - 0.5).abs() < 0.01
        );
    }

    #[test]
    fn stochastic_order_agrees_with_midpoints_on_named_pairs() {
        assert!(matches_midpoint_order(&iv(0.4, 0.8), &iv(0.6, 0.7)));
        assert!(matches_midpoint_order(&iv(0.5, 0.5), &iv(0.0, 1.0)));
        assert!(matches_midpoint_order(&iv(0.4, 0.9), &iv(0.5, 0.6)));
        // The triage pair: the wider interval is the more probably severe.
        let v = stochastic_verdict(&iv(0.4, 0.9), &iv(0.5, 0.6));
        assert_eq!(v.order, StochasticOrder::Greater);
    }
}
