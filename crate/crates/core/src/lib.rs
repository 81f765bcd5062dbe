//! Clifford algebra of hyperconic sections.
//!
//! Points of `R^m` are lifted into the vector space of symmetric
//! `(m+1)×(m+1)` matrices, where every hyperconic becomes a hyperplane.
//! That turns conic fitting into a wedge-and-dual computation and lets a
//! single linear neuron learn a hyperconic decision boundary.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod conformal;
pub mod conic_space;
pub mod dataset;
pub mod error;
pub mod fit;
pub mod ga;
pub mod io;
pub mod perceptron;

pub use conic_space::{ConicVector, EmbeddedPoint, IndexSet, SymmetricMatrix};
pub use error::{Error, Result};
pub use fit::{ConicFitResult, ConicKind, StandardForm};
pub use ga::{BasisBlade, Multivector, Signature};
pub use perceptron::{
    Flavor, Label, LabeledDataset, PerceptronModel, Sample, TrainConfig, TrainReport,
    TransferFunction, TransferKind,
};
