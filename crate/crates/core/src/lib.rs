//! Exact construction of the contragredient local Lie superalgebra attached
//! to a finite Cartan matrix, a dominant integral weight and a normalisation
//! of the invariant form; the focally associative local algebra built over
//! its degree-zero enveloping algebra; the commutator local Lie superalgebra;
//! and the checks relating it to the tensor hierarchy algebra `W`.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod focal;
pub mod linalg;
pub mod rational;
pub mod rootsys;
pub mod superlocal;
pub mod tha;

pub use error::{AlgebraError, Result};
pub use rational::{Lin, Q};
