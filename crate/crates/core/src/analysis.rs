// SPDX-License-Identifier: Apache-2.0

//! Library comparisons driven by exact synthesis: how many gates a library
//! needs for all sixteen 2-input functions, whether any member of a library
//! is expressible by the others, and transistor counts of small circuits
//! under `(<, 1)` versus NAND.
//!
//! Only operator nodes are counted. Constants available in the library and
//! bare inputs cost nothing.

use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::enumerator::enumerate_leaf_dags;
use crate::library::{builtin_library, CostModel, GateLibrary};
use crate::synth::{synthesize, Bounds, Circuit, SynthRequest};
use crate::truthtab::{var_table, BinOp, TruthTable};

/// Gate budget when searching for a 2-input function.
pub const EXPRESSIVENESS_MAX_GATES: usize = 7;

/// Reference totals and redundancy flags for the built-in libraries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub library: &'static str,
    pub total: usize,
    pub non_redundant: bool,
}

pub const REFERENCE_EXPRESSIVENESS: [ReferenceRow; 15] = [
    ReferenceRow { library: "nand", total: 46, non_redundant: true },
    ReferenceRow { library: "nor", total: 46, non_redundant: true },
    ReferenceRow { library: "nand,1", total: 33, non_redundant: false },
    ReferenceRow { library: "nor,0", total: 33, non_redundant: false },
    ReferenceRow { library: "and,nand", total: 32, non_redundant: false },
    ReferenceRow { library: "less,nor", total: 31, non_redundant: false },
    ReferenceRow { library: "impl,0", total: 28, non_redundant: true },
    ReferenceRow { library: "less,1", total: 28, non_redundant: true },
    ReferenceRow { library: "and,less,1", total: 26, non_redundant: false },
    ReferenceRow { library: "and,xor,1", total: 25, non_redundant: true },
    ReferenceRow { library: "less,nand,1", total: 25, non_redundant: false },
    ReferenceRow { library: "less,nor,1", total: 24, non_redundant: false },
    ReferenceRow { library: "and,eq,0", total: 23, non_redundant: true },
    ReferenceRow { library: "impl,eq,0", total: 21, non_redundant: false },
    ReferenceRow { library: "less,eq,1", total: 21, non_redundant: false },
];

pub fn reference_row(library: &str) -> Option<&'static ReferenceRow> {
    REFERENCE_EXPRESSIVENESS.iter().find(|r| r.library == library)
}

/// Conventional name of the 2-input function with table `code` (see [`BinOp`]).
pub fn two_input_function_name(code: u8) -> &'static str {
    const NAMES: [&str; 16] = [
        "0", "A*B", "A>B", "A", "A<B", "B", "A^B", "A+B", "nor(A,B)", "A=B", "~B", "A<=B", "~A", "A=>B", "nand(A,B)",
        "1",
    ];
    NAMES[code as usize & 0xF]
}

/// Two-input functions expressible by any tree over `constants` and `ops`,
/// as a 16-bit set indexed by function table.
pub fn reachable_two_input(ops: &[BinOp], constants: &[bool]) -> u16 {
    let mut set: u16 = 0;
    for &c in constants {
        set |= 1 << if c { 0b1111 } else { 0 };
    }
    set |= 1 << var_table(2, 0).expect("n=2").bits();
    set |= 1 << var_table(2, 1).expect("n=2").bits();
    loop {
        let mut next = set;
        for x in (0..16u64).filter(|x| set >> x & 1 == 1) {
            for y in (0..16u64).filter(|y| set >> y & 1 == 1) {
                for op in ops {
                    next |= 1 << op.eval_bits(x, y, 0xF);
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpressivenessReport {
    pub library: String,
    /// Minimal gate count per 2-input function, indexed by function table.
    pub counts: [Option<usize>; 16],
    pub circuits: Vec<Option<Circuit>>,
    /// Sum of `counts`, when every function is reachable.
    pub total: Option<usize>,
    pub unreachable: Vec<u8>,
    pub non_redundant: bool,
}

impl ExpressivenessReport {
    /// Reference total and redundancy flag, for built-in libraries.
    pub fn reference(&self) -> Option<&'static ReferenceRow> {
        reference_row(&self.library)
    }
}

fn exact(spec: TruthTable, lib: &GateLibrary, max_gates: usize) -> Result<Option<Circuit>> {
    let req = SynthRequest::new(spec, lib.clone()).with_bounds(Bounds { max_gates, ..Bounds::default() });
    match synthesize(&req) {
        Ok(c) => Ok(Some(c)),
        Err(Error::NotFound { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn expressiveness(lib: &GateLibrary) -> Result<ExpressivenessReport> {
    let ops: Vec<BinOp> = lib.gates().iter().map(|g| g.op).collect();
    let reachable = reachable_two_input(&ops, lib.constants());
    let mut counts = [None; 16];
    let mut circuits = Vec::with_capacity(16);
    let mut unreachable = Vec::new();
    for code in 0..16u8 {
        let circuit = if reachable >> code & 1 == 1 {
            exact(TruthTable::new(2, code as u64)?, lib, EXPRESSIVENESS_MAX_GATES)?
        } else {
            None
        };
        match &circuit {
            Some(c) => counts[code as usize] = Some(c.gate_count),
            None => unreachable.push(code),
        }
        circuits.push(circuit);
    }
    let total = unreachable.is_empty().then(|| counts.iter().flatten().sum());
    Ok(ExpressivenessReport {
        library: lib.name().to_owned(),
        counts,
        circuits,
        total,
        unreachable,
        non_redundant: non_redundant(lib)?,
    })
}

/// Whether no gate or constant of `lib` can be built from the other members.
pub fn non_redundant(lib: &GateLibrary) -> Result<bool> {
    for (i, gate) in lib.gates().iter().enumerate() {
        let target = TruthTable::new(2, gate.op.code() as u64)?;
        let expressible = match lib.without_gate(i) {
            Some(rest) => expressible_by(&rest, target)?,
            // no gates left: only a projection or an available constant
            None => leaf_matches(lib.constants(), target),
        };
        if expressible {
            return Ok(false);
        }
    }
    for &c in lib.constants() {
        let rest = lib.without_constant(c);
        if expressible_by(&rest, TruthTable::constant(2, c)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn leaf_matches(constants: &[bool], target: TruthTable) -> bool {
    let bits = target.bits();
    bits == 0b0011 || bits == 0b0101 || constants.iter().any(|&c| bits == if c { 0b1111 } else { 0 })
}

fn expressible_by(lib: &GateLibrary, target: TruthTable) -> Result<bool> {
    let ops: Vec<BinOp> = lib.gates().iter().map(|g| g.op).collect();
    if reachable_two_input(&ops, lib.constants()) >> target.bits() & 1 == 0 {
        return Ok(false);
    }
    Ok(exact(target, lib, EXPRESSIVENESS_MAX_GATES)?.is_some())
}

/// Checks by full re-enumeration that nothing smaller than `count` gates
/// computes `spec` under `lib`.
pub fn certify_minimal(lib: &GateLibrary, spec: TruthTable, count: usize) -> Result<bool> {
    if count == 0 {
        return Ok(true);
    }
    let n = spec.num_vars();
    let mut leaves: Vec<TruthTable> = lib.constants().iter().map(|&c| TruthTable::constant(n, c)).collect::<Result<_>>()?;
    for k in 0..n {
        leaves.push(var_table(n, k)?);
    }
    if leaves.contains(&spec) {
        return Ok(false);
    }
    for m in 1..count {
        let mut hits = 0usize;
        for cand in enumerate_leaf_dags(lib, n, m)? {
            hits += (cand.truth == spec) as usize;
        }
        if hits > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedFunction {
    pub name: String,
    /// One table per output; outputs are synthesized independently.
    pub outputs: Vec<TruthTable>,
    /// Remark shown with the NAND column.
    pub note: Option<String>,
}

impl NamedFunction {
    /// Function given by one formula per output, over the union of their inputs.
    pub fn from_formulas(name: &str, formulas: &[&str], note: Option<&str>) -> Result<NamedFunction> {
        let parsed = formulas.iter().map(|f| parse_formula(f)).collect::<Result<Vec<Formula>>>()?;
        let n = parsed.iter().map(Formula::num_inputs).max().unwrap_or(0);
        let outputs = parsed.iter().map(|f| f.truth_table(n)).collect::<Result<_>>()?;
        Ok(NamedFunction { name: name.to_owned(), outputs, note: note.map(str::to_owned) })
    }
}

/// The small circuits compared in the transistor-cost table.
pub fn standard_cost_functions() -> Vec<NamedFunction> {
    let rows: [(&str, &[&str], Option<&str>); 11] = [
        ("A=B", &["A=B"], None),
        ("A^B", &["A^B"], None),
        ("A*B", &["A*B"], Some("8 if sharing")),
        ("(A*B)=>C", &["(A*B)=>C"], None),
        ("A*B*C", &["A*B*C"], None),
        ("A+B+C", &["A+B+C"], None),
        ("if-then-else", &["ite(A,B,C)"], None),
        ("(A=>B)*(B=>C)", &["(A=>B)*(B=>C)"], None),
        ("nand(A,B)", &["nand(A,B)"], None),
        ("A<B", &["A<B"], Some("16 if sharing")),
        ("2x2 half-adder", &["A^B", "A*B"], None),
    ];
    rows.iter()
        .map(|(name, fs, note)| NamedFunction::from_formulas(name, fs, *note).expect("valid built-in formulas"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransistorRow {
    pub name: String,
    pub less_gates: Vec<usize>,
    pub nand_gates: Vec<usize>,
    pub less_cost: u64,
    pub nand_cost: u64,
    pub less_circuits: Vec<Formula>,
    pub nand_circuits: Vec<Formula>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransistorReport {
    pub rows: Vec<TransistorRow>,
}

fn cost_column(lib: &GateLibrary, outputs: &[TruthTable]) -> Result<(Vec<usize>, u64, Vec<Formula>)> {
    let mut gates = Vec::new();
    let mut cost = 0;
    let mut circuits = Vec::new();
    for &spec in outputs {
        let req = SynthRequest::new(spec, lib.clone()).with_cost_model(CostModel::TransistorCount);
        let c = synthesize(&req)?;
        gates.push(c.gate_count);
        cost += c.cost;
        circuits.push(c.formula);
    }
    Ok((gates, cost, circuits))
}

/// Transistor counts of minimal Leaf-DAGs under `(<, 1)` and NAND only.
pub fn transistor_table(functions: &[NamedFunction]) -> Result<TransistorReport> {
    let less = builtin_library("less,1")?;
    let nand = builtin_library("nand")?;
    let mut rows = Vec::with_capacity(functions.len());
    for f in functions {
        let (less_gates, less_cost, less_circuits) = cost_column(&less, &f.outputs)?;
        let (nand_gates, nand_cost, nand_circuits) = cost_column(&nand, &f.outputs)?;
        rows.push(TransistorRow {
            name: f.name.clone(),
            less_gates,
            nand_gates,
            less_cost,
            nand_cost,
            less_circuits,
            nand_circuits,
            note: f.note.clone(),
        });
    }
    Ok(TransistorReport { rows })
}
