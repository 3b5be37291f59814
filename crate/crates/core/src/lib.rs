//! Stochastic independence-friendly logic: semantic games over finite
//! structures and their exact equilibrium values.

pub mod corpus;
pub mod error;
pub mod formula;
pub mod game;
pub mod parser;
pub mod rational;
pub mod report;
pub mod solver;
pub mod strategy;
pub mod structure;

pub use error::{Error, ParseError, Position, Result};
