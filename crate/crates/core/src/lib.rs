//! Balakrishnan alpha-skew-normal (BASN2) distributions.

pub mod audit;
pub mod cli;
pub mod density;
pub mod error;
pub mod extensions;
pub mod inference;
pub mod lifetime;
pub mod moments;
pub mod quadrature;
pub mod sampling;
pub mod special;

pub use density::{AlphaParam, Basn2, LocScaleBasn2, LocScaleParams, Scbasn2};
pub use error::{BasnError, Result};
