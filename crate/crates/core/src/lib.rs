//! Homology of unordered configuration spaces of graphs.
//!
//! The total homology `⊕_n H_q(UF_n(G))` is computed from the (reduced)
//! Świątkowski complex, which also exhibits it as a graded module over the
//! polynomial ring with one variable per edge. On top of that the crate
//! computes graded Betti numbers, scans edge-linear FI-graph families for
//! stabilization, verifies the blow-up exact sequence, and cross-checks
//! everything against a brute-force cube-complex model.

pub mod blowup;
pub mod complex;
pub mod corpus;
pub mod family;
pub mod field;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod snf;

pub use complex::{Mode, PureTensor, SwComplex, VertexState};
pub use field::FieldKind;
pub use graph::{Graph, GraphError, GraphHom, HalfEdge};
pub use matrix::IntegerMatrix;
pub use snf::AbelianGroup;
