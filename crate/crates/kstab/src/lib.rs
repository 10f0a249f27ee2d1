pub mod alcove;
pub mod cache;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod hecke;
pub mod kclass;
pub mod polytope;
pub mod ring;
pub mod rootdata;
pub mod stable;
pub mod text;
pub mod verify;

pub use error::{Error, Result};
