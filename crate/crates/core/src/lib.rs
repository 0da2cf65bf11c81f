//! Linkage of finitely generated graded modules with respect to
//! semidualizing modules, over quotients of weighted polynomial rings.

pub mod error;
pub mod field;
pub mod functors;
pub mod groebner;
pub mod harness;
pub mod hilbert;
pub mod hominv;
pub mod iso;
pub mod linkage;
pub mod linalg;
pub mod module;
pub mod parse;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod semidual;
pub mod vector;

pub use error::{Error, Result};
