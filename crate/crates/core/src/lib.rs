//! Exact unitarity decisions, level arithmetic and truncated characters for
//! minimal W-algebras W_k^min(g) attached to basic Lie superalgebras.

pub mod catalog;
pub mod characters;
pub mod error;
pub mod gram_lab;
pub mod levels;
pub mod linalg;
pub mod weights;
pub mod rational;
pub mod unitarity;

pub use catalog::{lookup, AlgebraId, CatalogEntry, Family, Weight};
pub use error::{Error, Result};
pub use rational::{parse_rational, Gq, Q};
