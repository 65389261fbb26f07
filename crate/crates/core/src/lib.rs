//! Haar-averaged linear cross-entropy (LXEB) reference values for boson
//! sampling, computed exactly where possible.
//!
//! The modules build on each other bottom-up: [`numkit`] (exact combinatorics),
//! [`schur`] (two-copy projectors and swap operators), [`states`] (single-mode
//! density matrices), [`swapexp`] (swap expectations of product states),
//! [`refval`] (reference values and anticoncentration scores), [`sampler`]
//! (Monte Carlo harness), [`oracle`] (brute-force checks) and [`cli`].

pub mod cli;
pub mod error;
pub mod numkit;
pub mod oracle;
pub mod refval;
pub mod sampler;
pub mod schur;
pub mod states;
pub mod swapexp;

pub use error::{Error, ErrorKind, Result};
pub use numkit::BigRat;
pub use schur::OccPattern;
pub use states::{ModeState, ProductState};
pub use swapexp::SwapTable;
