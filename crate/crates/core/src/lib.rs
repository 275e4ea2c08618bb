//! Numerical geometry of rotational and translation-invariant minimal
//! hypersurfaces in `H^n × R`.

pub mod catenoid;
pub mod error;
pub mod hgeom;
pub mod jacobi;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod special;
pub mod transinv;

pub use catenoid::Catenoid;
pub use error::{Error, Result};
