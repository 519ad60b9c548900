//! Quasi-isolated semisimple elements of reductive groups, classified on the
//! affine Dynkin diagram and checked against brute force over the Weyl group.

pub mod error;
pub mod rational;
pub mod rootsys;
pub mod affine;
pub mod lattice;
pub mod classify;
pub mod oracle;

pub use affine::{AffineCoordinates, AffineDiagram, AutomorphismGroup, DiagramAutomorphism, Node};
pub use classify::{classify, classify_with_cap, OmegaSet, QuasiIsolatedClass};
pub use error::{Error, Result};
pub use lattice::CocharLattice;
pub use oracle::{enumerate_weyl, verify, Oracle, VerifyOptions, VerifyReport, WeylEnumeration};
pub use rational::Rational;
pub use rootsys::{CartanType, Coweight, Family, Root, RootSystem, SimpleType, WeylElement};
