//! Tomographic probability densities of one-dimensional quantum states and
//! analytic signals, their Shannon entropies, and the entropic uncertainty
//! relations they satisfy.
//!
//! The pipeline is: a [`states::State`] is turned into a [`tomogram::Tomogram`]
//! by an [`tomogram::Engine`], whose entropy is taken by
//! [`entropy::shannon_entropy`]; [`uncertainty`] combines entropies at
//! conjugate angles into the entropic uncertainty function.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entropy;
pub mod error;
pub mod export;
pub mod figures;
pub mod frft;
pub mod grid;
pub mod states;
pub mod tomogram;
pub mod uncertainty;
pub mod verify;

pub use error::{Error, Result};
pub use grid::Grid;
pub use states::{GaussianCovarianceState, MixedState, ProductState, PureState, State};
pub use tomogram::{Engine, Tomogram, TomogramParams};

/// `ln(πe)`, the lower bound of `S_x + S_p`.
pub const LN_PI_E: f64 = 2.144_729_885_849_400_2;
