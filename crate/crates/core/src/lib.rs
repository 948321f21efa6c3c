//! Exact algebra for bounding exponents of equivariant cohomology theories.
//!
//! - [`repcoker`]: cokernels `Q_{p,n}` of the representation-ring edge map
//!   for `C_p^n`, via Smith normal form ([`exactlinalg`]).
//! - [`series`]: rational Poincare series and q-nomial coefficients.
//! - [`f2poly`] and [`cyccohom`]: graded `F_2` algebras with a cyclic
//!   2-group action and the rows of their E2-pages.
//! - [`isotropy`]: stabilizers of lines under finite orthogonal groups over
//!   `Q(sqrt 2)` ([`qsqrt2`]).
//! - [`fixture`]: the bundled JSON configurations and their checks.

pub mod cyccohom;
pub mod elemabelian;
pub mod error;
pub mod exactlinalg;
pub mod f2poly;
pub mod fixture;
pub mod isotropy;
pub mod qsqrt2;
pub mod repcoker;
pub mod series;

pub use cyccohom::{GradedAction, RowTable};
pub use elemabelian::{FpVector, GroupSpec, Normalization};
pub use error::{Error, Result};
pub use exactlinalg::{IntegerMatrix, SmithForm};
pub use f2poly::{F2Poly, Monomial, Presentation, RingMap};
pub use fixture::{Check, Fixture};
pub use isotropy::{FieldType, QMatrix, RepMatrixGroup, Subspace};
pub use qsqrt2::QSqrt2;
pub use repcoker::{AbelianGroupType, CokernelOptions};
pub use series::{IntPolynomial, RationalSeries};
