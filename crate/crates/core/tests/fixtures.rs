//! Fixture round-trips and golden checks on the shipped programs.

use ivlog::{parse_program, solve, Atom, EngineConfig, Interval};

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn every_fixture_round_trips_through_the_serialiser() {
    for name in ["tweety.pre", "identity.pre", "triage.pre", "roads.pre"] {
        let program = parse_program(&fixture(name)).unwrap_or_else(|d| panic!("{name}: {d:?}"));
        let printed = program.to_string();
        let reparsed = parse_program(&printed).unwrap_or_else(|d| panic!("{name} reprint: {d:?}"));
        assert_eq!(program, reparsed, "{name} did not round-trip");
    }
}

#[test]
fn tweety_fixture_revises_the_default() {
    let program = parse_program(&fixture("tweety.pre")).unwrap();
    let v = solve(&program, &EngineConfig::default()).unwrap();
    assert_eq!(v.state(&Atom::named("fly")), Interval::FALSE);

    // Dropping the penguin fact restores the default belief.
    let without = ivlog::Program::new(
        program
            .rules
            .iter()
            .filter(|r| r.head != Atom::named("penguin"))
            .cloned()
            .collect(),
    );
    let v = solve(&without, &EngineConfig::default()).unwrap();
    assert_eq!(
        v.state(&Atom::named("fly")),
        Interval::new(0.5, 1.0).unwrap()
    );
}

#[test]
fn solved_fixtures_are_fixpoints() {
    for name in ["tweety.pre", "identity.pre", "triage.pre", "roads.pre"] {
        let program = parse_program(&fixture(name)).unwrap();
        let cfg = EngineConfig::default();
        let v = solve(&program, &cfg).unwrap();
        let again = ivlog::consequence_step(&program, &v, &cfg).unwrap();
        assert_eq!(v.len(), again.len(), "{name} changed size");
        for (atom, state) in v.iter() {
            assert!(
                again.state(atom).approx_eq(state),
                "{name}: {atom} moved from {state} to {}",
                again.state(atom)
            );
        }
    }
}
