//! Finitely generated abelian groups and their homomorphisms, computed
//! exactly through integer matrices and Smith normal form.

mod group;
mod hom;
mod matrix;
mod snf;

pub use group::{presentation, ElementOrder, FgAbGroup, GroupElement, Presentation};
pub use hom::{direct_sum, quotient, DirectSum, Homomorphism, Quotient, Subgroup};
pub use matrix::Matrix;
pub use snf::{smith_normal_form, SmithForm};
