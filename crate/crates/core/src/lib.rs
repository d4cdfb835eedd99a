//! Orthogonality graphs `O(M_n(R))` of full matrix rings over finite
//! commutative rings: ring and matrix arithmetic, witness construction,
//! exhaustive graph analysis and ring-level diameter and radius predictions.

pub mod criteria;
pub mod graph;
pub mod ideal;
pub mod limits;
pub mod matrix;
pub mod par;
pub mod ring;
pub mod syntax;
pub mod verify;
pub mod witness;

pub use criteria::{predict, PredictionReport};
pub use graph::{Distance, ExportFormat, GraphHandle, GraphReport};
pub use ideal::Ideal;
pub use limits::Limits;
pub use matrix::{IndexTuple, Matrix};
pub use par::Execution;
pub use ring::{build_ring, Element, Ring, RingSpec};
pub use syntax::{parse_element, parse_matrix, parse_ring_spec};
