//! Homotopy types of independence complexes: wedge-of-spheres
//! expressions and the rule-based reduction engine.

mod engine;
mod expr;
mod permutation;

pub use engine::{
    classify, classify_with, cycle_closed_form, path_closed_form, replay, EngineOptions, ReductionStep,
    ReductionTrace, ReplayError, Rule,
};
pub use expr::{homology_of_expr, HomotopyExpr, Residual};
pub use permutation::classify_permutation;
