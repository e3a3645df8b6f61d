//! Quantizers of the monoidal category of modules over a finite group.
//!
//! A quantizer is an element `q` of the group algebra `C[G x G]` acting on
//! tensor products of `G`-modules by `x (x) y -> q.(x (x) y)`. The crate
//! builds finite groups as explicit multiplication tables, realises their
//! unitary irreducible representations, moves quantizers between the group
//! algebra picture and the Fourier block picture, checks the coherence /
//! normalization / naturality conditions in both pictures, classifies the
//! quantizers of `S3` and `A4`, specialises to 2-cocycles for abelian
//! groups, and applies quantizers to deform algebras, modules and braidings.
//!
//! The crate is `no_std` compatible (`alloc` required); disable the default
//! `std` feature for embedded use. All heavy lifting is pure and
//! deterministic for a fixed seed.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod abelian;
pub mod actions;
pub mod error;
pub mod fourier;
pub mod group;
pub mod linalg;
pub mod quantizer;
pub mod repr;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupAlgebraElement, GroupKind};
pub use linalg::CMatrix;
pub use quantizer::{BlockQuantizer, GaugeElement, Quantizer, QuantizerSpace};
pub use repr::{CharacterTable, Dual, Irrep, TensorDecomposition};

/// Default residual tolerance used by the verification routines.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Cutoff below which a Fourier block is treated as structurally zero.
pub const ZERO_CUTOFF: f64 = 1e-8;
