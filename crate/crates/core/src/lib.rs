pub mod algebra;
pub mod covers;
pub mod cyclo;
pub mod error;
pub mod galois;
pub mod group;
pub mod isogeny;
pub mod klein;
pub mod monodromy;
pub mod perm;
pub mod pipeline;
pub mod report;
pub mod reptheory;

pub use error::{Error, Result};
