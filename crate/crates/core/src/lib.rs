pub mod error;
pub mod exactnum;
pub mod linalg;
pub mod perm;
pub mod rng;

pub use error::{Error, Result};
pub mod dynamics;
pub mod repstate;
pub mod spectrum;
