//! Weighted-rule inference over interval epistemic states.
//!
//! A program is a set of ground rules `head <- [w] body`; firing a rule
//! combines the body's state with the rule weight, evidence for one
//! head is aggregated per sign, and positive and negative evidence are
//! reconciled by the knowledge preorder (the narrower side wins — the
//! belief-revision step). Negation-as-failure is stratified: `not a`
//! may only consult strata that are already settled.

use crate::interval::{k_join, lub_kp, lub_tp, AlgebraError, Interval, OrderingKind, EPSILON};
use crate::ops::{negate_standard, ConjunctorId};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// A ground atom: a predicate name with constant arguments.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub name: String,
    pub args: Vec<String>,
}

impl Atom {
    pub fn named(name: &str) -> Atom {
        Atom {
            name: name.to_string(),
            args: Vec::new(),
        }
    }

    pub fn with_args(name: &str, args: &[&str]) -> Atom {
        Atom {
            name: name.to_string(),
            args: args.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.args.is_empty() {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}({})", self.name, self.args.join(","))
        }
    }
}

/// Direction of a guard comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardRelation {
    Leq,
    Geq,
}

impl GuardRelation {
    pub fn token(&self) -> &'static str {
        match self {
            GuardRelation::Leq => "<=",
            GuardRelation::Geq => ">=",
        }
    }
}

/// Right operand of a guard: another atom's state or a constant interval.
#[derive(Debug, Clone, PartialEq)]
pub enum GuardRhs {
    Atom(Atom),
    Value(Interval),
}

/// An ordering test between current epistemic states. Guards evaluate
/// crisply: `[1,1]` when the comparison holds, `[0,0]` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Guard {
    pub ordering: OrderingKind,
    pub relation: GuardRelation,
    pub left: Atom,
    pub right: GuardRhs,
}

/// Body of a rule.
#[derive(Debug, Clone, PartialEq)]
pub enum BodyExpr {
    Atom(Atom),
    Conj(Vec<BodyExpr>),
    Neg(Box<BodyExpr>),
    Guard(Guard),
    Naf(Atom),
}

impl BodyExpr {
    pub fn atom(name: &str) -> BodyExpr {
        BodyExpr::Atom(Atom::named(name))
    }
}

/// A weighted ground rule. Facts are rules with an empty conjunction as
/// body; the weight is the head's state when the body is fully true.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub head: Atom,
    pub head_negated: bool,
    pub body: BodyExpr,
    pub weight: Interval,
}

impl Rule {
    pub fn fact(head: Atom, weight: Interval) -> Rule {
        Rule {
            head,
            head_negated: false,
            body: BodyExpr::Conj(Vec::new()),
            weight,
        }
    }

    pub fn new(head: Atom, body: BodyExpr, weight: Interval) -> Rule {
        Rule {
            head,
            head_negated: false,
            body,
            weight,
        }
    }

    pub fn negated(head: Atom, body: BodyExpr, weight: Interval) -> Rule {
        Rule {
            head,
            head_negated: true,
            body,
            weight,
        }
    }
}

/// A ground program: an ordered list of rules.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Program {
        Program { rules }
    }

    /// Every atom mentioned anywhere in the program, sorted.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut set = BTreeSet::new();
        for rule in &self.rules {
            set.insert(rule.head.clone());
            collect_deps(&rule.body, &mut |atom, _| {
                set.insert(atom.clone());
            });
        }
        set.into_iter().collect()
    }
}

/// Mapping from atoms to epistemic states; absent atoms are implicitly
/// `[0,1]` (unknown).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Valuation {
    states: BTreeMap<Atom, Interval>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn state(&self, atom: &Atom) -> Interval {
        self.states.get(atom).copied().unwrap_or(Interval::UNKNOWN)
    }

    pub fn get(&self, atom: &Atom) -> Option<Interval> {
        self.states.get(atom).copied()
    }

    pub fn set(&mut self, atom: Atom, state: Interval) {
        self.states.insert(atom, state);
    }

    pub fn remove(&mut self, atom: &Atom) {
        self.states.remove(atom);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &Interval)> {
        self.states.iter()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Largest endpoint movement between two valuations over the given
    /// atoms, treating absence as `[0,1]`.
    fn residual_against<'a>(&self, other: &Valuation, atoms: &'a [Atom]) -> (f64, Option<&'a Atom>) {
        let mut worst = 0.0f64;
        let mut offender = None;
        for atom in atoms {
            let a = self.state(atom);
            let b = other.state(atom);
            let delta = (a.lo() - b.lo()).abs().max((a.hi() - b.hi()).abs());
            if delta > worst {
                worst = delta;
                offender = Some(atom);
            }
        }
        (worst, offender)
    }
}

/// How several firing rules for one head are merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadCombiner {
    LubTp,
    LubKp,
}

impl HeadCombiner {
    fn apply(&self, xs: &[Interval]) -> Result<Interval, AlgebraError> {
        match self {
            HeadCombiner::LubTp => lub_tp(xs),
            HeadCombiner::LubKp => lub_kp(xs),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            HeadCombiner::LubTp => "lub_tp",
            HeadCombiner::LubKp => "lub_kp",
        }
    }
}

impl FromStr for HeadCombiner {
    type Err = String;

    fn from_str(s: &str) -> Result<HeadCombiner, String> {
        match s {
            "lub_tp" => Ok(HeadCombiner::LubTp),
            "lub_kp" => Ok(HeadCombiner::LubKp),
            other => Err(format!(
                "unknown head combiner `{other}` (expected lub_tp or lub_kp)"
            )),
        }
    }
}

/// Operator choices and iteration limits for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    /// Conjunctor folded over body conjunctions.
    pub conjunctor: ConjunctorId,
    /// Conjunctor combining a body value with the rule weight.
    pub rule_application: ConjunctorId,
    /// Merge for several firing rules of one head (per sign).
    pub head_combiner: HeadCombiner,
    pub max_iterations: usize,
    pub epsilon: f64,
}

impl Default for EngineConfig {
    fn default() -> EngineConfig {
        EngineConfig {
            conjunctor: ConjunctorId::TPr,
            rule_application: ConjunctorId::TPr,
            head_combiner: HeadCombiner::LubTp,
            max_iterations: 100,
            epsilon: EPSILON,
        }
    }
}

impl EngineConfig {
    /// The min/max operator family of the bilattice triangle.
    pub fn bilattice_min() -> EngineConfig {
        EngineConfig {
            conjunctor: ConjunctorId::TMin,
            rule_application: ConjunctorId::TMin,
            ..EngineConfig::default()
        }
    }

    /// Applies a `key=value` override as accepted on the command line.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "conjunctor" => self.conjunctor = value.parse()?,
            "rule_application" => self.rule_application = value.parse()?,
            "head_combiner" => self.head_combiner = value.parse()?,
            "max_iterations" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| format!("invalid max_iterations `{value}`"))?;
                if n == 0 {
                    return Err("max_iterations must be at least 1".into());
                }
                self.max_iterations = n;
            }
            "epsilon" => {
                let eps: f64 = value
                    .parse()
                    .map_err(|_| format!("invalid epsilon `{value}`"))?;
                if eps.is_nan() || eps <= 0.0 {
                    return Err(format!("epsilon must be positive, got `{value}`"));
                }
                self.epsilon = eps;
            }
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("negation-as-failure cycle involving {{{atoms}}}")]
    Stratification { atoms: String },
    #[error("no fixpoint for {atom} after {iterations} iterations (residual {residual})")]
    NonConvergence {
        atom: Atom,
        iterations: usize,
        residual: f64,
    },
    #[error("indecision for {atom}: {a} and {b} carry the same amount of information")]
    Indecision {
        atom: Atom,
        a: Interval,
        b: Interval,
    },
    #[error("inconsistent evidence for {atom}: {a} and {b} are disjoint")]
    Inconsistent {
        atom: Atom,
        a: Interval,
        b: Interval,
    },
}

fn with_atom(err: AlgebraError, atom: &Atom) -> EngineError {
    match err {
        AlgebraError::Indecision { a, b } => EngineError::Indecision {
            atom: atom.clone(),
            a,
            b,
        },
        AlgebraError::Inconsistent { x, y } => EngineError::Inconsistent {
            atom: atom.clone(),
            a: x,
            b: y,
        },
    }
}

/// Evaluates a body under a valuation. Conjunctions fold the configured
/// conjunctor (empty conjunction is `[1,1]`); `neg` is endpoint
/// reflection; guards and `not` are crisp.
pub fn evaluate_body(v: &Valuation, expr: &BodyExpr, cfg: &EngineConfig) -> Interval {
    match expr {
        BodyExpr::Atom(atom) => v.state(atom),
        BodyExpr::Conj(items) => {
            let mut acc = Interval::TRUE;
            for item in items {
                let value = evaluate_body(v, item, cfg);
                acc = cfg.conjunctor.apply(&acc, &value);
            }
            acc
        }
        BodyExpr::Neg(inner) => negate_standard(&evaluate_body(v, inner, cfg)),
        BodyExpr::Guard(guard) => {
            let left = v.state(&guard.left);
            let right = match &guard.right {
                GuardRhs::Atom(atom) => v.state(atom),
                GuardRhs::Value(value) => *value,
            };
            let verdict = guard.ordering.compare(&left, &right);
            let holds = match guard.relation {
                GuardRelation::Leq => verdict.holds_leq(),
                GuardRelation::Geq => verdict.holds_geq(),
            };
            if holds {
                Interval::TRUE
            } else {
                Interval::FALSE
            }
        }
        BodyExpr::Naf(atom) => {
            if v.state(atom).approx_eq(&Interval::UNKNOWN) {
                Interval::TRUE
            } else {
                Interval::FALSE
            }
        }
    }
}

/// Body value combined with the rule weight: the head state this rule
/// contributes when it fires.
pub fn fire_rule(v: &Valuation, rule: &Rule, cfg: &EngineConfig) -> Interval {
    let body = evaluate_body(v, &rule.body, cfg);
    cfg.rule_application.apply(&body, &rule.weight)
}

/// A rule is invoked unless its body is definitely false.
fn fires(body_value: &Interval) -> bool {
    !body_value.approx_eq(&Interval::FALSE)
}

/// Accumulated positive evidence for `atom`: starting from `[0,1]`,
/// every rule deriving the atom narrows the state through the knowledge
/// join.
pub fn cl_plus(
    program: &Program,
    v: &Valuation,
    atom: &Atom,
    cfg: &EngineConfig,
) -> Result<Interval, EngineError> {
    closure(program, v, atom, false, cfg)
}

/// Accumulated negative evidence for `atom`: the joined support for its
/// negation, reflected back.
pub fn cl_minus(
    program: &Program,
    v: &Valuation,
    atom: &Atom,
    cfg: &EngineConfig,
) -> Result<Interval, EngineError> {
    closure(program, v, atom, true, cfg).map(|acc| negate_standard(&acc))
}

fn closure(
    program: &Program,
    v: &Valuation,
    atom: &Atom,
    negated: bool,
    cfg: &EngineConfig,
) -> Result<Interval, EngineError> {
    let mut acc = Interval::UNKNOWN;
    for rule in &program.rules {
        if rule.head == *atom && rule.head_negated == negated {
            let fired = fire_rule(v, rule, cfg);
            acc = k_join(&acc, &fired).map_err(|e| with_atom(e, atom))?;
        }
    }
    Ok(acc)
}

/// Reconciles positive and negative evidence: the narrower side wins.
/// Equal widths with distinct intervals cannot be ranked.
pub fn combine_evidence(pos: &Interval, neg: &Interval) -> Result<Interval, AlgebraError> {
    lub_kp(&[*pos, *neg])
}

fn collect_deps(expr: &BodyExpr, out: &mut impl FnMut(&Atom, bool)) {
    match expr {
        BodyExpr::Atom(atom) => out(atom, false),
        BodyExpr::Conj(items) => {
            for item in items {
                collect_deps(item, out);
            }
        }
        BodyExpr::Neg(inner) => collect_deps(inner, out),
        BodyExpr::Guard(guard) => {
            out(&guard.left, false);
            if let GuardRhs::Atom(atom) = &guard.right {
                out(atom, false);
            }
        }
        BodyExpr::Naf(atom) => out(atom, true),
    }
}

/// Atom dependency graph plus the set of rules still in play after
/// cycle-breaking.
struct Layering {
    /// Strata of atoms, bottom-up; `not a` only ever looks downward.
    strata: Vec<Vec<Atom>>,
    /// Rules disabled by guard-informed cycle resolution.
    active: Vec<bool>,
}

struct DepGraph {
    atoms: Vec<Atom>,
    /// (dependency, head, increments_stratum)
    edges: Vec<(usize, usize, bool)>,
}

impl DepGraph {
    fn build(program: &Program, active: &[bool], support_edges: &[(Atom, Atom)]) -> DepGraph {
        let atoms = program.atoms();
        let index: HashMap<Atom, usize> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let mut edges = Vec::new();
        for (ridx, rule) in program.rules.iter().enumerate() {
            if !active[ridx] {
                continue;
            }
            let head = index[&rule.head];
            collect_deps(&rule.body, &mut |atom, via_naf| {
                edges.push((index[atom], head, via_naf));
            });
        }
        for (from, to) in support_edges {
            if let (Some(&f), Some(&t)) = (index.get(from), index.get(to)) {
                edges.push((f, t, true));
            }
        }
        DepGraph { atoms, edges }
    }

    /// Strongly connected components via pairwise reachability; the
    /// graphs here are a handful of atoms.
    fn sccs(&self) -> Vec<Vec<usize>> {
        let n = self.atoms.len();
        let mut reach = vec![vec![false; n]; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (from, to, _) in &self.edges {
            succ[*from].push(*to);
        }
        for (start, reachable) in reach.iter_mut().enumerate() {
            let mut stack = vec![start];
            while let Some(node) = stack.pop() {
                for &next in &succ[node] {
                    if !reachable[next] {
                        reachable[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        let mut assigned = vec![false; n];
        let mut sccs = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let mut comp = vec![i];
            assigned[i] = true;
            for j in (i + 1)..n {
                if !assigned[j] && reach[i][j] && reach[j][i] {
                    comp.push(j);
                    assigned[j] = true;
                }
            }
            sccs.push(comp);
        }
        sccs
    }

    /// The members of some component containing an internal
    /// negation-as-failure edge, if any.
    fn naf_cycle(&self) -> Option<Vec<usize>> {
        let sccs = self.sccs();
        let mut comp_of = vec![0usize; self.atoms.len()];
        for (cidx, comp) in sccs.iter().enumerate() {
            for &node in comp {
                comp_of[node] = cidx;
            }
        }
        for (from, to, via_naf) in &self.edges {
            if *via_naf && comp_of[*from] == comp_of[*to] {
                return Some(sccs[comp_of[*from]].clone());
            }
        }
        None
    }

    /// Stratum numbers by longest path over the component condensation;
    /// incrementing edges (negation-as-failure and cycle-break support)
    /// push the head strictly higher.
    fn stratum_numbers(&self) -> Vec<usize> {
        let sccs = self.sccs();
        let mut comp_of = vec![0usize; self.atoms.len()];
        for (cidx, comp) in sccs.iter().enumerate() {
            for &node in comp {
                comp_of[node] = cidx;
            }
        }
        let mut level = vec![0usize; sccs.len()];
        // Relax until stable; bounded because incrementing edges never
        // sit inside a component once cycles are resolved.
        for _ in 0..=sccs.len() {
            let mut changed = false;
            for (from, to, inc) in &self.edges {
                let (cf, ct) = (comp_of[*from], comp_of[*to]);
                if cf == ct {
                    continue;
                }
                let need = level[cf] + usize::from(*inc);
                if level[ct] < need {
                    level[ct] = need;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..self.atoms.len()).map(|i| level[comp_of[i]]).collect()
    }
}

/// Layers the program so that `not` only consults settled strata.
///
/// A component held together by negation-as-failure is an error unless
/// guard support breaks the tie: if exactly one atom of the cycle has a
/// rule outside the cycle whose body already holds from the strata
/// below, that atom is settled first (one stratum above its supports)
/// and its in-cycle negation rules are discarded as defeated.
pub fn stratify(program: &Program) -> Result<Vec<Vec<Atom>>, EngineError> {
    stratify_with(program, &EngineConfig::default()).map(|layering| layering.strata)
}

fn stratify_with(program: &Program, cfg: &EngineConfig) -> Result<Layering, EngineError> {
    let mut active = vec![true; program.rules.len()];
    let mut support_edges: Vec<(Atom, Atom)> = Vec::new();
    loop {
        let graph = DepGraph::build(program, &active, &support_edges);
        let Some(cycle) = graph.naf_cycle() else {
            let levels = graph.stratum_numbers();
            let max_level = levels.iter().copied().max().unwrap_or(0);
            let mut strata = vec![Vec::new(); max_level + 1];
            for (i, atom) in graph.atoms.iter().enumerate() {
                strata[levels[i]].push(atom.clone());
            }
            strata.retain(|s| !s.is_empty());
            return Ok(Layering { strata, active });
        };
        let cycle_atoms: BTreeSet<Atom> = cycle.iter().map(|&i| graph.atoms[i].clone()).collect();
        let supported = guard_supported(program, &active, &cycle_atoms, cfg)?;
        let mut defeated_any = false;
        if let [winner] = supported.as_slice() {
            // Defeat the winner's rules that assume failure of the
            // rest of the cycle, and pin the winner above the states
            // its support was judged from.
            for (ridx, rule) in program.rules.iter().enumerate() {
                if !active[ridx] || rule.head != *winner {
                    continue;
                }
                let mut into_cycle = false;
                collect_deps(&rule.body, &mut |atom, via_naf| {
                    if via_naf && cycle_atoms.contains(atom) {
                        into_cycle = true;
                    }
                });
                if into_cycle {
                    active[ridx] = false;
                    defeated_any = true;
                } else {
                    collect_deps(&rule.body, &mut |atom, _| {
                        support_edges.push((atom.clone(), winner.clone()));
                    });
                }
            }
        }
        if !defeated_any {
            let atoms = cycle_atoms
                .iter()
                .map(Atom::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            return Err(EngineError::Stratification { atoms });
        }
    }
}

/// Atoms of the cycle that some cycle-external rule already derives
/// from the program below the cycle.
fn guard_supported(
    program: &Program,
    active: &[bool],
    cycle_atoms: &BTreeSet<Atom>,
    cfg: &EngineConfig,
) -> Result<Vec<Atom>, EngineError> {
    // Evaluate the sub-program that does not touch the cycle at all.
    let mut below_rules = Vec::new();
    for (ridx, rule) in program.rules.iter().enumerate() {
        if !active[ridx] || cycle_atoms.contains(&rule.head) {
            continue;
        }
        let mut touches = false;
        collect_deps(&rule.body, &mut |atom, _| {
            if cycle_atoms.contains(atom) {
                touches = true;
            }
        });
        if !touches {
            below_rules.push(rule.clone());
        }
    }
    let below = solve(&Program::new(below_rules), cfg)?;

    let mut supported = Vec::new();
    for atom in cycle_atoms {
        let mut holds = false;
        for (ridx, rule) in program.rules.iter().enumerate() {
            if !active[ridx] || rule.head != *atom || rule.head_negated {
                continue;
            }
            let mut external = true;
            collect_deps(&rule.body, &mut |dep, _| {
                if cycle_atoms.contains(dep) {
                    external = false;
                }
            });
            if external && fires(&evaluate_body(&below, &rule.body, cfg)) {
                holds = true;
            }
        }
        if holds {
            supported.push(atom.clone());
        }
    }
    Ok(supported)
}

/// One consequence pass: recomputes every head state from `v` (all
/// strata at once, defeated rules excluded). The output of [`solve`] is
/// a fixpoint of this step.
pub fn consequence_step(
    program: &Program,
    v: &Valuation,
    cfg: &EngineConfig,
) -> Result<Valuation, EngineError> {
    let layering = stratify_with(program, cfg)?;
    let heads: BTreeSet<Atom> = program
        .rules
        .iter()
        .enumerate()
        .filter(|(ridx, _)| layering.active[*ridx])
        .map(|(_, r)| r.head.clone())
        .collect();
    let mut next = v.clone();
    for head in &heads {
        update_head(program, &layering.active, v, &mut next, head, cfg)?;
    }
    Ok(next)
}

fn update_head(
    program: &Program,
    active: &[bool],
    snapshot: &Valuation,
    out: &mut Valuation,
    head: &Atom,
    cfg: &EngineConfig,
) -> Result<(), EngineError> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (ridx, rule) in program.rules.iter().enumerate() {
        if !active[ridx] || rule.head != *head {
            continue;
        }
        let body = evaluate_body(snapshot, &rule.body, cfg);
        if !fires(&body) {
            continue;
        }
        let fired = cfg.rule_application.apply(&body, &rule.weight);
        if rule.head_negated {
            neg.push(fired);
        } else {
            pos.push(fired);
        }
    }
    let pos_state = if pos.is_empty() {
        None
    } else {
        Some(
            cfg.head_combiner
                .apply(&pos)
                .map_err(|e| with_atom(e, head))?,
        )
    };
    let neg_state = if neg.is_empty() {
        None
    } else {
        let support = cfg
            .head_combiner
            .apply(&neg)
            .map_err(|e| with_atom(e, head))?;
        Some(negate_standard(&support))
    };
    match (pos_state, neg_state) {
        (Some(p), Some(n)) => {
            let combined = combine_evidence(&p, &n).map_err(|e| with_atom(e, head))?;
            out.set(head.clone(), combined);
        }
        (Some(p), None) => out.set(head.clone(), p),
        (None, Some(n)) => out.set(head.clone(), n),
        (None, None) => out.remove(head),
    }
    Ok(())
}

/// Evaluates the program bottom-up by stratum, iterating the
/// consequence step inside each stratum until states stop moving.
/// Deterministic: a pure function of the program and configuration.
pub fn solve(program: &Program, cfg: &EngineConfig) -> Result<Valuation, EngineError> {
    let layering = stratify_with(program, cfg)?;
    let mut v = Valuation::new();
    for stratum in &layering.strata {
        let heads: Vec<Atom> = stratum
            .iter()
            .filter(|atom| {
                program
                    .rules
                    .iter()
                    .enumerate()
                    .any(|(ridx, r)| layering.active[ridx] && r.head == **atom)
            })
            .cloned()
            .collect();
        if heads.is_empty() {
            continue;
        }
        let mut stalled: Option<(f64, Atom)> = None;
        for _ in 0..cfg.max_iterations {
            let snapshot = v.clone();
            for head in &heads {
                update_head(program, &layering.active, &snapshot, &mut v, head, cfg)?;
            }
            let (residual, offender) = v.residual_against(&snapshot, &heads);
            if residual <= cfg.epsilon {
                stalled = None;
                break;
            }
            stalled = Some((residual, offender.expect("positive residual names an atom").clone()));
        }
        if let Some((residual, atom)) = stalled {
            return Err(EngineError::NonConvergence {
                atom,
                iterations: cfg.max_iterations,
                residual,
            });
        }
    }
    Ok(v)
}
