//! # mumkit
//!
//! Mutually unbiased measurements (MUMs) in any finite dimension `d`,
//! generalized-entropy uncertainty bounds for them, and entanglement
//! criteria built from two local MUM sets.
//!
//! ```
//! use mumkit::mum::build_max_efficiency;
//! use mumkit::states::completely_mixed;
//! use mumkit::uncertainty::verify_coincidence;
//! use mumkit::tol::Tolerances;
//!
//! let set = build_max_efficiency(3, 4).unwrap();
//! let report = verify_coincidence(&set, &completely_mixed(3), &Tolerances::default()).unwrap();
//! assert!((report.total - 4.0 / 3.0).abs() < 1e-12);
//! ```
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`linalg`] | dense complex matrices, Jacobi eigensolver, Kronecker product, partial trace |
//! | [`fbasis`] | Gell-Mann generators and the `F_n^(b)` operator family |
//! | [`mum`] | MUM construction, admissible `t`, efficiency `κ`, axiom residuals |
//! | [`entropy`] | Rényi / Tsallis entropies, α-logarithm, distorted distributions |
//! | [`uncertainty`] | index-of-coincidence bound and entropic uncertainty bounds |
//! | [`entangle`] | correlation measure `J_M` and product / separability criteria |
//! | [`states`] | seeded state generation |
//! | [`verify`] | ensemble drivers and isotropic sweeps |
//! | [`cli`] | command-line front end |

// `!(x >= lo)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod entangle;
pub mod entropy;
pub mod error;
pub mod fbasis;
pub mod linalg;
pub mod mum;
pub mod par;
pub mod states;
pub mod tol;
pub mod uncertainty;
pub mod verify;

pub use error::{MumError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
