//! Sphere-of-influence graph (SIG) dimension of trees under the L∞ metric.
//!
//! * [`tree`] and [`generate`]: tree ingestion, leaf-degree statistics, the
//!   special rooted tree and generators.
//! * [`geometry`]: exact L∞ geometry over [`Rational`]s.
//! * [`embedding`]: the constructive embedding in `ceil(log2(beta + 2))`
//!   dimensions and the star construction.
//! * [`sig`]: SIG computation from a point set, representation checking and
//!   dimension bounds.
//! * [`audit`]: exact checks of every geometric property the construction
//!   relies on.

pub mod audit;
pub mod embedding;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod lattice;
pub mod rational;
pub mod repr;
pub mod sig;
pub mod tree;

pub use audit::{audit, AuditReport, CheckId};
pub use embedding::{embed, embed_star, target_dimension};
pub use error::{Error, Result};
pub use geometry::{OpenBox, Point, SignVector};
pub use rational::Rational;
pub use repr::{Placement, Representation, RepresentationFile};
pub use sig::{dimension_bounds, is_sig_representation, sig_graph, DimensionReport, PointSet};
pub use tree::{build_special_rooted_tree, leaf_stats, parse_edge_list, LeafStats, RootedTree, Tree};
