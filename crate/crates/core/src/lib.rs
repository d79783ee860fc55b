//! Exact combinatorics of split simply-laced root systems and the term-tree
//! compiler for Fourier expansions of small automorphic functions.

pub mod chevalley;
pub mod error;
pub mod expansion;
pub mod grading;
pub mod linalg;
pub mod nilorbit;
pub mod root_system;
pub mod weyl;
pub mod whittaker;

pub use error::{Error, Result};
pub use linalg::Q;
pub use root_system::{CartanElement, Levi, Root, RootSystem, Series};
pub use weyl::WeylWord;
