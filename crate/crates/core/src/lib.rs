pub mod catalog;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod generators;
pub mod numfield;
pub mod products;
pub mod weilpoly;

pub use error::{Error, Result};
