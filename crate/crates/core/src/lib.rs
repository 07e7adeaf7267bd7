//! Numerical spin^c geometry of hypersurfaces in products of surface space forms.

#![allow(clippy::needless_range_loop)]

pub mod autodiff;
pub mod clifford;
pub mod compat;
pub mod error;
pub mod hypersurface;
pub mod linalg;
pub mod registry;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod space_forms;
pub mod spinc;

pub use error::{Result, SpinlabError};
