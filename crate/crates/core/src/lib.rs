//! Hecke eigenvalues of concrete newforms, their Sato-Tate angles, and
//! empirical statistics of simultaneous sign changes of Fourier coefficients
//! (integral weight, and half-integral weight through the Shimura relations).

pub mod angles;
pub mod arith;
pub mod equidist;
pub mod error;
pub mod halfint;
pub mod measures;
pub mod newforms;
pub mod qseries;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
