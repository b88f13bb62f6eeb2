//! Decomposition and symbolic integration of hyperexponential functions and
//! closed hyperexponential 1-forms over Q.

pub mod ansatz;
pub mod cohomology;
pub mod config;
pub mod connection;
pub mod decompose;
pub mod error;
pub mod forms;
pub mod hermite;
pub mod liouville;
pub mod ode;
pub mod rational_integration;
pub mod sample;

pub use config::Caps;
pub use error::{HyperintError, Result};
pub use forms::OneForm;
pub use rational_integration::{rational_integrate, HyperexpRep};
