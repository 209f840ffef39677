//! Exact and numeric tools for sumsets of lattice point sets with quasicubes.
//!
//! * [`lattice`]: finite point sets in `Z^d`, sumsets, fibres, foliations.
//! * [`quasicube`]: recognition, containment witnesses and enumeration.
//! * [`maxconv`]: max-convolution on `Z`, the weighted discrete
//!   Prékopa–Leindler sum, and grid checks on piecewise-exponential lifts.
//! * [`verifier`]: exact checks of `|A + B + U| >= |A|^{1/2} |B|^{1/2} |U|`,
//!   proof replays, exhaustive scans and randomized searches.
//!
//! See the crate's `examples/` directory for one runnable program per area.

pub mod config;
pub mod error;
pub mod lattice;
pub mod maxconv;
pub mod quasicube;
pub mod verifier;

pub use config::Config;
pub use error::{Error, Result};
pub use lattice::{BoxBounds, Foliation, Point, PointSet};
pub use maxconv::{PlReport, WeightFn};
pub use quasicube::Witness;
