//! Comodules, contramodules and the correspondence between them, computed
//! exactly over prime fields and the rationals.

pub mod cli;
pub mod coalg;
pub mod comod;
pub mod contramod;
pub mod corr;
pub mod error;
pub mod exactlin;
pub mod gen;
pub mod group;
pub mod homcx;
pub mod protower;
pub mod smoothg;
pub mod witness;

pub use error::{Error, Result};
