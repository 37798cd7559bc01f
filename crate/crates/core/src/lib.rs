//! Legal states and move systems on finite simplicial graphs.
//!
//! A *state* is a vertex subset; it is *legal* when it and its complement are
//! nonempty and induce connected subgraphs. A *move* at `v` contains `v` and
//! none of its neighbours, and the moves generate a subgroup `M` of `Z₂^V`
//! acting on states by symmetric difference. A system is legal when some
//! `M`-orbit consists of legal states only.
//!
//! ```
//! use legalsys::{families, legal::verify_legal_orbit};
//! let b = families::example_2_3();
//! let (system, start) = b.witness.clone().unwrap();
//! let report = verify_legal_orbit(&b.graph, &system, &start).unwrap();
//! assert!(report.is_legal());
//! assert_eq!(report.orbit_size, 8);
//! ```

pub mod bits;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod legal;
pub mod planar;
pub mod random;

pub use bits::{State, VertexSet};
pub use error::{Error, Result};
pub use graph::Graph;
