//! Laplacian spectra of abstract simplicial complexes.
//!
//! The crate builds weighted up/down Laplacians on cochains, their signed
//! incidence graphs, and decides when the up Laplacian at dimension `i`
//! reaches its largest possible eigenvalue `i + 2`, both spectrally and
//! combinatorially (graph balance, circuit classification).

pub mod circuits;
pub mod complex;
pub mod constructions;
pub mod eigen;
pub mod error;
pub mod generate;
pub mod homology;
pub mod io;
pub mod laplacian;
pub mod matrix;
pub mod orientation;
pub mod signed_graph;
pub mod spectra;
pub mod verify;
pub mod weights;

pub use complex::{Complex, Face};
pub use error::{Error, Result};
pub use laplacian::{EmptyFace, LaplacianKind, LaplacianMatrix};
pub use matrix::Matrix;
pub use orientation::Orientation;
pub use signed_graph::SignedIncidenceGraph;
pub use weights::{normalized_weights, uniform_weights, Regime, WeightFunction};
