//! Finite simplicial complexes with exact f- and h-vector arithmetic, and
//! checks for Eulerian manifolds: the link condition, the Dehn–Sommerville
//! relations, and the identity `χ(K) = Σ (-1/2)^i f_i(K)` in even dimension.
//!
//! ```
//! use eulerian_kit::{checks, generators, invariants};
//!
//! let rp2 = generators::projective_plane6().unwrap();
//! assert_eq!(invariants::f_vector(&rp2).counts(), &[6, 15, 10]);
//! assert_eq!(invariants::euler_characteristic(&rp2), 1);
//! assert!(checks::check_main_formula(&rp2).unwrap().holds);
//! ```

pub mod checks;
pub mod cli;
pub mod complex;
pub mod error;
pub mod exact;
pub mod generators;
pub mod invariants;
pub mod io;
pub mod report;

pub use complex::{Face, SimplicialComplex, VertexId, VertexTable};
pub use error::{Error, Result};
pub use generators::GeneratorSpec;
