//! Effective admittance and impedance of RLC networks as functions of a
//! complex parameter `λ`.
//!
//! Every edge carries a resistance `R`, an inductance `L` and an inverse
//! capacitance `D = 1/C`. At a parameter `λ` the edge has impedance
//! `z = R + Lλ + D/λ` and admittance `ρ = 1/z`. A finite network fixes a
//! source vertex held at unit potential and a set of grounded vertices; its
//! effective admittance is the current drawn from the source by the
//! solution of the discrete Dirichlet problem.
//!
//! The crate is organised as:
//!
//! - [`network`]: validated networks and per-edge impedance/admittance.
//! - [`linalg`]: dense complex elimination with complete pivoting and rank
//!   classification.
//! - [`dirichlet`]: the Dirichlet system, effective admittance/impedance and
//!   the identities used as cross-checks.
//! - [`bounds`]: network constants, admittance upper bounds and domain tags.
//! - [`exhaustion`]: finite approximations of infinite networks, the chain
//!   and modified ladder families, and the convergence classifier.
//! - [`format`]: network file grammar, complex number text form and CSV rows.
//!
//! ```
//! use netadmit::{dirichlet, format, AdmittanceValue};
//! use num_complex::Complex64;
//!
//! let net = format::parse_network_file(
//!     "vertices a b\nedge a b R=2\nsource a\nground b\n",
//! )
//! .unwrap();
//! let p = dirichlet::effective_admittance(&net, Complex64::new(1.0, 0.0));
//! assert_eq!(p, AdmittanceValue::Finite(Complex64::new(0.5, 0.0)));
//! ```

pub mod bounds;
pub mod dirichlet;
pub mod error;
pub mod exhaustion;
pub mod format;
pub mod linalg;
pub mod network;

pub use dirichlet::{AdmittanceValue, SolveOutcome, UndefinedReason};
pub use error::{Error, Result};
pub use network::{EdgeParams, Network, NetworkBuilder, VertexId};

/// Complex scalar used throughout; both parts are always finite.
pub type Complex = num_complex::Complex64;
