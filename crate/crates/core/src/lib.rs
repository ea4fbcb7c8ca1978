//! Double covers of the proper indefinite orthogonal groups.
//!
//! This crate computes the covering maps Spin+(p,q) -> SO+(p,q) in concrete
//! matrix form for the signatures (2,1), (2,2), (3,2) and (4,1), and inverts
//! them by several independent routes: inspection plus polar decomposition,
//! tabulated Givens-factor preimages, inversion of the linearized map with
//! closed-form exponentials, a signature-agnostic method inside the full
//! Clifford algebra, and a minor-sum formula used as a cross-check oracle.
//!
//! Layout:
//! - [`mat`], [`quat`], [`matfun`]: dense matrices, quaternion matrices and
//!   their complex picture, special-purpose matrix functions
//! - [`group`]: SO+(p,q) membership, Givens factorization, polar
//!   decomposition for (n,1)
//! - [`blades`], [`bases`]: the abstract Clifford algebra and the catalog of
//!   one-vector bases with the iterative extension constructions
//! - [`covering`]: the covering maps and their linearizations
//! - [`inversion`]: the inversion strategies
//! - [`verify`]: cross-checks of the bundled reference tables and the
//!   catalog, including the documented discrepancy ledger

pub mod bases;
pub mod blades;
pub mod corpus;
pub mod covering;
pub mod error;
pub mod group;
pub mod inversion;
pub mod mat;
pub mod matfun;
pub mod quat;
pub mod scalar;
pub mod verify;

pub use error::Error;
pub use group::{GivensFactor, GivensKind, Signature};
pub use mat::{CMat, Mat, QMat};
pub use quat::Quaternion;
