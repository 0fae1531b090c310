//! CMSO1 over labelled graphs: syntax, a naive evaluator, simple
//! interpretations and copying transductions.

mod ast;
mod eval;
mod interp;
mod parser;
mod structure;

pub use ast::{BinOp, Formula, Quantifier};
pub use eval::{evaluate, evaluate_with, Assignment, Compiled};
pub use interp::{
    apply_interpretation, apply_transduction, labelings, rewrite_formula, transduction_outputs,
    Interpretation, Labeling, Transduction,
};
pub use parser::{parse_formula, parse_sentence};
pub use structure::{k_copy, RelStructure};
