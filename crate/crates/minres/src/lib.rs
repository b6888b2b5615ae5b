//! Minimal resultant loci of rational maps over `p`-adic fields.

pub mod cli;
pub mod descent_b;
pub mod dynrep;
pub mod error;
pub mod minres_a;
pub mod oracle;
pub mod padic;
pub mod polyroots;
pub mod pwl;

pub use error::{MinresError, Result};
