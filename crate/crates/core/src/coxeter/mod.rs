//! Finite Coxeter groups: root systems, enumeration with reduced words,
//! degrees, and the identities relating them to reflections and rank-two
//! parabolic subgroups.

mod chevalley;
mod degrees;
mod diagram;
mod group;
mod matrix;
mod parabolic;
mod root_system;

pub use chevalley::{chevalley_q_identity, det_one_minus_q, ChevalleyWitness, RationalFunction};
pub use degrees::{compute_degrees, psi_invariant, DegreeData};
pub use diagram::CoxeterDiagram;
pub use group::{enumerate_group, poincare_polynomial, GroupElement, DEFAULT_GROUP_BUDGET};
pub use matrix::FieldMatrix;
pub use parabolic::{products_of_two_reflections, rank2_parabolics, verify_psi_identities, PsiReport, Rank2Parabolic};
pub use root_system::{RootSystem, DEFAULT_ROOT_BUDGET};
pub(crate) use root_system::row_dot;
