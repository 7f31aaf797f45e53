//! Digital images, their hyperspaces and function graphs: continuity,
//! homotopy, multivalued continuity and exact graph metrics.

pub mod error;
pub mod export;
pub mod functions;
pub mod graphmetrics;
pub mod harness;
pub mod homotopy;
pub mod hyperspace;
pub mod io;
pub mod lattice;
pub mod multivalued;

pub use error::{Error, Result};
pub use functions::{FamilyFunction, FiniteFunction, GraphMap};
pub use graphmetrics::{CycleWitness, FiniteGraph};
pub use homotopy::{Flavor, FunctionGraph, HomotopyMode, HomotopyTable};
pub use hyperspace::{FamilyKind, HypergraphView, Subset, SubsetFamily};
pub use lattice::{Adjacency, DigitalImage, LatticePath, Point};
pub use multivalued::{EgsWitness, MultiFunction, Subdivision};
