//! Alexander modules of free chain complexes over Laurent polynomial rings:
//! exact Laurent arithmetic, determinantal jumping ideals, character-level
//! jump loci, genericity of one-parameter specializations, and decision
//! procedures for finite generation of integral Alexander modules over `Z`.

pub mod commands;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod field;
pub mod fpoly;
pub mod fox;
pub mod genericity;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod jumping;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod pipeline;
pub mod poly_text;
pub mod random;
pub mod ring;
pub mod univariate;
pub mod zpoly;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, Monomial};
pub use ring::{CoeffRing, RingSpec};
