//! Calculator, verification harness, and counterexample search engine for
//! finite topological spaces and their generalized open-set classes, plus a
//! symbolic model of the tail topology on the positive integers.

pub mod doc;
pub mod enumerate;
pub mod error;
pub mod maps;
pub mod pointset;
pub mod query;
pub mod report;
pub mod setclasses;
pub mod space;
pub mod spaceprops;
pub mod tailspace;
pub mod verify;

pub use error::{Error, Result};
pub use pointset::PointSet;
pub use space::{FiniteSpace, SpaceMap, ValidationMode};
