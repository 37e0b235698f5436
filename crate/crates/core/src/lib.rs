//! Independence parameters, perfect clique covers and constructive
//! certificates for alpha-excellent k-trees.

pub mod error;
pub mod graph;
pub mod iso;
pub mod ktree;
pub mod oracle;
pub mod cover;
pub mod family;
pub mod construct;
pub mod io;

pub use error::{Error, Result};
pub use graph::{Graph, Triangle};
