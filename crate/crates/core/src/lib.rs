//! Gromov hyperbolicity, traffic cores and Helly-type covering in graphs.

pub mod beamcore;
pub mod congestion;
pub mod error;
pub mod generate;
pub mod graph;
pub mod halfint;
pub mod hyperbolicity;
pub mod io;
pub mod kappa;
pub mod lp;
pub mod multicore;
pub mod quasiconvex;

pub use error::{Error, Result};
pub use graph::{Ball, DistanceMatrix, Graph, Vertex};
pub use halfint::HalfInt;
