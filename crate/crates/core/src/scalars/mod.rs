//! Exact scalars: real number fields generated by `2cos(π/m)`, their real
//! embedding, and univariate polynomials over them.

mod field;
mod kpoly;
mod minpoly;
mod roots;

pub use field::{two_cos_in, FieldElement, FieldOp, FieldSpec, Interval, MAX_SIGN_BITS};
pub use kpoly::{integer_factored_lead, render_factored, KPoly};
pub use minpoly::{cyclotomic, minimal_poly_2cos, IntPoly};
pub use roots::{rational_roots, simplest_rational_between, squarefree_decomposition};

pub use num_rational::BigRational;
