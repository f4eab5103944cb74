// SPDX-License-Identifier: Apache-2.0

//! Exact synthesis of minimal Leaf-DAG circuits over small gate libraries.
//!
//! Candidates are enumerated in increasing size and checked against a target
//! truth table with bit-parallel evaluation. The `<` ("A less than B", i.e.
//! `~A * B`) plus constant `1` library gets a dedicated rewriter that gives an
//! upper bound and a fallback circuit when exact search is too slow.

pub mod analysis;
pub mod enumerator;
mod error;
pub mod formula;
pub mod library;
pub mod pla;
pub mod rewrite;
pub mod synth;
pub mod truthtab;

pub use error::{Error, Result};
pub use formula::{formula_stats, parse_formula, print_formula, table_of_formula, Formula, FormulaStats};
pub use library::{builtin_library, CostModel, Gate, GateLibrary, BUILTIN_LIBRARIES};
pub use synth::{synthesize, synthesize_formula, synthesize_table, Bounds, Circuit, SynthRequest};
pub use truthtab::{all_ones_mask, apply_op, var_table, BinOp, TruthTable, MAX_VARS};
