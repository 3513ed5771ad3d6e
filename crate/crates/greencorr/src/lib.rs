pub mod error;
pub mod gfla;
pub mod grp;
pub mod rep;
pub mod dec;
pub mod cpx;
pub mod blk;
pub mod green;
pub mod bundled;
pub mod io;
pub mod cli;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
