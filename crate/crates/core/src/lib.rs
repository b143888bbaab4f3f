//! Numerical laboratory for the elementary Tauberian route to the prime
//! number theorem: arithmetic tables and identities, sublinear summatory
//! oracles, Möbius-type transforms, the elementary estimate ladder, and a
//! harness for the Landau–Ingham integral inequality.

// `!(x >= a)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod cli;
pub mod error;
pub mod estimates;
pub mod numeric;
pub mod report;
pub mod summatory;
pub mod tauberian;
pub mod transforms;

pub use arith::{dirichlet_convolve, ArithTable, DenseArithFn};
pub use error::{Error, Result};
pub use report::{OutputFormat, RemainderSeries, Status, VerificationReport};
pub use tauberian::{build_instance, InstanceLabel, TauberianInstance};
pub use transforms::{RealFn, StepFunction};
