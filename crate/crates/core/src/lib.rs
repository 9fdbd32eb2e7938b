//! Exact combinatorics of the quaternionic real form E8(-24): root datum, W^1 cosets,
//! spin and lambda norms, u-small hull membership, Vogan pencils, HP-integrality and
//! validation of the scattered Dirac series tables.

pub mod audit;
pub mod cone;
pub mod data;
pub mod dirac;
pub mod error;
pub mod hjsearch;
pub mod lp;
pub mod pencil;
pub mod rational;
pub mod rootdata;
pub mod tables;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Q;
pub use rootdata::{Basis, Weight};
pub use dirac::{InfChar, KType};
