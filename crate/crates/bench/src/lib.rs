//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use qiso_core::{AffineDiagram, CocharLattice};

pub fn lattice(t: &str, spec: &str) -> CocharLattice {
    let d = Arc::new(AffineDiagram::new(&t.parse().expect("valid type")).expect("valid type"));
    CocharLattice::new(d, spec).expect("valid lattice")
}
