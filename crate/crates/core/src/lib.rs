//! Similarity classes of triangles and the equisection operators acting on
//! them.
//!
//! Triangles are mapped to the open unit disc, where the operator `T_q`
//! (joining the points dividing each edge in the ratio `1 - q : q`) acts as a
//! rotation. Two triangles are equisectionally equivalent exactly when their
//! classes lie on the same circle about the origin; [`equivalence::solve_q`]
//! recovers the ratios in closed form and [`construct::run_construction`]
//! derives one by a replayable compass-and-straightedge procedure.

pub mod construct;
pub mod equivalence;
pub mod error;
pub mod exact;
pub mod geom;
pub mod moduli;
pub mod operators;
pub mod pencil;
pub mod special;
pub mod svg;
pub mod tolerance;

pub use construct::{run_construction, ConstructionTrace, Verdict};
pub use error::{Error, Result};
pub use exact::Rational;
pub use geom::{Circle, Cline, Line, Orientation, OrientedCircle, Point, RHO, RHO_INV};
pub use moduli::{phi, ModuliPoint, Triangle};
pub use operators::RatioQ;
pub use pencil::{PencilKind, PencilSpec};
pub use special::{SideLengths, TriangleClass};
pub use tolerance::Tolerance;
