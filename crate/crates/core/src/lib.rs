//! Minimal CW complexes of real hyperplane arrangement complements.
//!
//! Given an arrangement in `R^l` with exact rational coefficients and a
//! generic oriented flag, this crate enumerates the intersection lattice and
//! chambers, partitions chambers by flag level, computes the attaching
//! degrees of the minimal cells (for `l <= 3`), assembles the twisted chain
//! complex of a rank-one local system over Laurent polynomials, and derives
//! local-system homology, resonance and (for `l = 2`) a presentation of the
//! fundamental group of the complexified complement.

pub mod cli;
pub mod complex;
pub mod degree;
pub mod faces;
pub mod flag;
pub mod fm;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod local_system;
pub mod pi1;
pub mod rational;
pub mod report;
pub mod salvetti;
pub mod snf;

pub use complex::{build_complex, TwistedComplex};
pub use flag::{build_flag, partition, OrientedFlag};
pub use geometry::{Arrangement, Hyperplane, Sign, SignVector};
pub use laurent::Laurent;
pub use rational::Rational;
