//! Presented graded-commutative algebras and their Hilbert series.

pub mod algebra;
pub mod hilbert;
pub mod laurent;
pub mod presentation;
pub mod tensor;

pub use algebra::{enumerate_basis, Algebra, Element, GradedVectorSpace};
pub use hilbert::{closed_form, hilbert_series, reconstruct_from_dims, HilbertSeries};
pub use tensor::{classify, TensorForm};
pub use laurent::{Fraction, LaurentPoly, RationalFunction};
pub use presentation::{GeneratorKind, GeneratorSpec, Monomial, Orientation, Polynomial, Presentation};
