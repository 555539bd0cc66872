mod support;

#[test]
fn ring_axioms() {
    support::ring_axioms().unwrap();
}

#[test]
fn omega_recombination() {
    support::omega_recombination().unwrap();
}

#[test]
fn substitute_round_trip() {
    support::substitute_round_trip().unwrap();
}

#[test]
fn lambert_vs_enumeration() {
    support::lambert_vs_enumeration().unwrap();
}

#[test]
fn cayley_hamilton() {
    support::cayley_hamilton().unwrap();
}
