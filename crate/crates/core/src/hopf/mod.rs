//! Hopf algebras on anti-increasingly ordered binary trees: the Loday–Ronco
//! product and coproduct, and the Brouder–Frabetti charge coproduct.

pub mod bf;
pub mod lr;
pub mod tree;

pub use bf::{bf_coproduct, bf_over};
pub use lr::{
    antipode, antipode_check, associativity_check, closure_check, coassociativity_check, counit_check,
    label_independence_check, lr_coproduct, lr_product, multiplicativity_check, LawReport,
};
pub use tree::{
    enumerate_ordered, graft, hilbert_dimension, Combination, LabeledTree, OrderedTree, TensorCombination,
    TreeCombination,
};
