//! Exact numerics for tilt stability on Fano threefolds: slope functions,
//! walls, the modified Bogomolov–Gieseker expression, and certified checks of
//! the polynomial inequalities behind it.

pub mod bg;
pub mod chern;
pub mod error;
pub mod exactnum;
pub mod io;
pub mod plot;
pub mod report;
pub mod threefold;
pub mod tilt;
pub mod verify;

pub use error::{Error, Result};
