//! Combinatorial Heegaard diagrams: validation, moves, presentations and
//! homology, periodic domains and weak admissibility, winding, cyclic covers,
//! and closed-form entropy and tube bounds.

pub mod bounds;
pub mod build;
pub mod canon;
pub mod covers;
pub mod diagram;
pub mod domains;
pub mod error;
pub mod format;
pub mod generators;
pub mod matrix;
pub mod moves;
pub mod presentation;
pub mod reduce;
pub mod simplex;
pub mod winding;

pub use build::{random_diagram, standard, Handle};
pub use canon::renumber;
pub use diagram::*;
pub use error::{Error, MoveError, ParseError};
pub use format::{parse_diagram, parse_unchecked, serialize};
pub use moves::{apply_move, Move};
pub use domains::{boundary_decomposition, check_weak_admissibility, periodic_domain_lattice, Domain};
pub use matrix::IntegerMatrix;
pub use presentation::{first_homology, intersection_matrix, u_beta_presentation, Presentation};
pub use reduce::reduce_to_pointed;
pub use winding::{dual_curves, monotone_periodic_basis, wind, WindingReport};
pub use covers::{cohomology_basis, cyclic_cover, CocycleClass, Cover, CoverReport};
pub use generators::{enumerate_generators, permanent};
