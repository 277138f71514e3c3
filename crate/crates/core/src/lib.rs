//! Interval-valued truth states for reasoning under vagueness and
//! uncertainty.
//!
//! A proposition's epistemic state is a closed sub-interval of `[0,1]`
//! bounding its unknown truth degree. Intervals carry two total
//! preorders — truth by midpoint, knowledge by width (narrower is
//! better known) — alongside the classical bilattice partial orders.
//! On top of the orderings sit the usual connective families
//! (negators, t-norms/conorms, S- and R-implicators), a probabilistic
//! oracle that justifies the midpoint ordering through `P(X <= Y)`,
//! and a weighted-rule engine with stratified negation-as-failure that
//! revises wide default beliefs when narrower evidence arrives.

pub mod engine;
pub mod interval;
pub mod laws;
pub mod ops;
pub mod parse;
pub mod prob;

pub use engine::{
    cl_minus, cl_plus, combine_evidence, consequence_step, evaluate_body, fire_rule, solve,
    stratify, Atom, BodyExpr, EngineConfig, EngineError, Guard, GuardRelation, GuardRhs,
    HeadCombiner, Program, Rule, Valuation,
};
pub use interval::{
    k_join, lub_kp, lub_tp, minimal_upper_bounds_tp, AlgebraError, Interval, IntervalError, MSet,
    OrderingKind, OrderingVerdict, EPSILON,
};
pub use ops::{
    negate_l4, negate_lifted, negate_standard, r_implicator_min, r_implicator_pr, s_implicator,
    s_max, s_min_p, s_pr, t_min, t_min_p, t_ppr, t_pr, ConjunctorId, DisjunctorId,
    ImplicationResult, OperatorError,
};
pub use parse::{parse_program, Diagnostic};
pub use prob::{
    matches_midpoint_order, prob_leq, prob_leq_mc, stochastic_verdict, StochasticOrder,
    StochasticVerdict, MC_RNG_ID,
};
