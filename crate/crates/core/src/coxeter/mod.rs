//! Root systems of types A-D, their Weyl groups, parabolic quotients and
//! the Bruhat order.

mod group;
mod quotient;
mod roots;

pub use group::{CoxeterGroup, ElemId, GroupElement, MAX_GROUP_ORDER};
pub use quotient::{Coset, CosetId, Quotient};
pub use roots::{RootSystem, RootType};
