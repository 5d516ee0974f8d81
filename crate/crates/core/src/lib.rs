//! Exact computations for nilpotent orbits in type A: partitions and the
//! dominance order, pyramids and good gradings, sl2-triples and Slodowy
//! slices, reduction by stages, and Poisson brackets on slices.

pub mod error;
pub mod exact;
pub mod partitions;
pub mod poisson;
pub mod poly;
pub mod pyramid;
pub mod report;
pub mod stages;
pub mod triple;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Mat, Rational, Subspace};
pub use partitions::{CoverWitness, Partition};
