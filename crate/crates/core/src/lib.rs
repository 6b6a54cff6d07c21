//! Polar-coordinate eigenstates of the 2D and 3D harmonic oscillator for the
//! groups O(2), O(3) and O(2,1), with their ladder and symmetry operators.

pub mod algebra;
pub mod error;
pub mod field;
pub mod matrix;
pub mod numerics;
pub mod operators;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
pub use states::{CoordPoint, GroupKind, OscillatorState, StateLabel};
