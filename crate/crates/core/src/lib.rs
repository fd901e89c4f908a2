//! Gorenstein duality data for finitely presented graded-commutative
//! algebras over prime fields.

pub mod cache;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod field;
pub mod graded;
pub mod hochschild;
pub mod koszul;
pub mod linalg;
pub mod report;
pub mod resolution;
pub mod shift;
pub mod sseq;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use graded::*;
pub use resolution::{
    gorenstein_certificate, minimal_resolution, socle, structural_shift, tor_dimensions,
    BigradedDimensions, FreeResolution, GorensteinCertificate, Verdict,
};
