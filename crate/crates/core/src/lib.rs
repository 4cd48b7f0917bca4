//! Rings of transcendental extensions, Groebner bases, and Bertini-type
//! genericity and regularity checks over them.

pub mod arith;
pub mod bertini;
pub mod error;
pub mod groebner;
pub mod guard;
pub mod lang;
pub mod poly;
pub mod regularity;
pub mod ring;
pub mod transcend;

pub use error::{Error, Result};
