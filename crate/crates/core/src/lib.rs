//! Triangle solitaire on the integer lattice.
//!
//! A pattern is a finite set of occupied cells of `Z^2`. A move picks a
//! translate of `T = {(0,1), (1,1), (1,0)}` holding two stones and slides one
//! of them onto the empty third cell. The crate computes fillings, orbit
//! normal forms, explicit move sequences between orbit elements, exhaustive
//! orbit statistics and the basis machinery of triangular TEP subshifts.

pub mod error;
pub mod explorer;
pub mod filling;
pub mod format;
pub mod lattice;
pub mod normalform;
pub mod pathfinder;
pub mod tep;

pub use error::{Error, Result};
pub use lattice::{Edge, Move, Pattern, Point, Triangle};
pub use normalform::{NormalForm, NormalPart};
pub use pathfinder::MoveSequence;
