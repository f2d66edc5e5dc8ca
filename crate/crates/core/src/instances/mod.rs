//! Value groups and residue fields with their endomorphisms.

pub mod group;
pub mod index;
pub mod linalg;
pub mod linsolve;
pub mod mpoly;
pub mod ratfunc;
pub mod residue;

pub use group::{Direction, ExtValue, GroupElement, GroupInstance, OrderedDifferenceGroup};
pub use index::{index_action, MultiIndex};
pub use linsolve::res_linsolve;
pub use mpoly::{MPoly, Monomial, Var};
pub use ratfunc::RatFunc;
pub use residue::{ResidueDifferenceField, ResidueInstance};
