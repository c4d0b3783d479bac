//! Exact ambiguity and decoding-error probabilities of small linear codes on
//! the memoryless erasure channel, computed from generalized Hamming weights.

pub mod analysis;
pub mod catalog;
pub mod checks;
pub mod code;
pub mod combinat;
pub mod corpus;
pub mod curve;
pub mod erasure;
pub mod error;
pub mod gf;
pub mod ghw;
pub mod matrix;
pub mod rational;
pub mod simulate;

pub use code::{CodeProfile, LinearCode, Separability};
pub use erasure::{ErrorKind, ErrorPolynomial};
pub use error::{Error, Result};
pub use gf::{make_field, Field};
pub use ghw::{SpectraMatrix, SupportMatrix, WeightHierarchy};
pub use rational::Rational;
