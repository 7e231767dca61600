//! Normalized ground states of a three-component Schrödinger system with
//! three-wave coupling `−β∫uvw` and trapping potentials.
//!
//! Fields live on a truncated box ([`grid`]), the energy and its
//! Euler–Lagrange system are in [`model`], [`solver`] runs a normalized
//! gradient flow on the mass constraint, [`analysis`] holds oracles and
//! randomized inequality sweeps, and [`cli`] drives it all from config files.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod grid;
pub mod model;
pub mod solver;

pub use error::{Error, Result};
