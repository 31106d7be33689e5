//! Exact Pareto fronts of linear multi-objective problems over partial
//! orders of box-bounded variables.
//!
//! Variables `x_1..x_n` live in `[0, 1]`, each is maximized or minimized,
//! and constraints are pairwise `x_i >= x_j`. The front is a finite union of
//! faces obtained by recursively contracting edges of a coloured Hasse
//! diagram of the order.

pub mod decomposition;
pub mod error;
pub mod hasse;
pub mod instance;
pub mod instances;
pub mod oracle;
pub mod solver;

pub use error::{Error, Result};
pub use hasse::{build_diagram, HasseDiagram, Signature, VertexColour, VertexId};
pub use instance::Instance;
pub use solver::{
    solve, solve_basic, solve_improved, Algorithm, FrontRepresentation, ParetoFace, SolveOptions,
};
