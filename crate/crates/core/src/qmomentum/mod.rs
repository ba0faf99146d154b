//! Quantum actions on presented algebras, quantum momentum maps as noncommutative 1-forms,
//! and quantum reduction by invariant ideals.

mod action;
pub mod examples;
mod forms;
mod reduce;

pub use action::{
    check_action_lie_hom, check_action_relations, check_module_algebra, diagnose_relation, ActionExpr, LieRelation, QuantumAction,
};
pub use forms::{
    check_odd_nilpotent, check_sharp_homomorphism, multi_action, odd_coproduct, oneform_product, sharp_map, sharp_unscaled, NCOneForm,
};
pub use reduce::{check_ideal_invariance, check_semiclassical_action, invariant_subalgebra, IdealReducer, Invariants, Side};

#[cfg(test)]
mod tests;
