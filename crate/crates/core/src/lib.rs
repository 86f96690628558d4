#![no_std]

extern crate alloc;

pub mod algebra;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod models;
pub mod om;
pub mod poset;
pub mod report;
pub mod signvec;
pub mod subsets;
pub mod topology;
pub mod verify;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use om::{Chirotope, OrientedMatroid, TopeGraph};
pub use poset::FinitePoset;
pub use report::{Check, Report, Status};
pub use signvec::{GroundSet, Sign, SignVector};
