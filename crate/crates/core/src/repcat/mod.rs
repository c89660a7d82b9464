//! Finite-dimensional representations of an acyclic quiver over `F_q`.

pub mod category;
pub mod classes;
pub mod quiver;
pub mod rep;

pub use category::{dims_below, gl_order, Limits, RepCategory};
pub use classes::{HalfKClass, IndecId, IsoClass, KClass};
pub use quiver::Quiver;
pub use rep::Rep;
