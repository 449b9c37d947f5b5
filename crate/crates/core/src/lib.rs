//! Exact computations for multi-graded Proj: gradings by finitely generated
//! abelian groups, homogeneous submonoids, potions and their chart atlases.

pub mod abelian;
pub mod atlas;
pub mod catalog;
pub mod error;
pub mod graded;
pub mod magic;
pub mod module;
pub mod poly;
pub mod potion;
pub mod sample;
pub mod submonoid;
pub mod verdict;

pub use error::{Error, Result};
