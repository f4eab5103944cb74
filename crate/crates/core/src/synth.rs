// SPDX-License-Identifier: Apache-2.0

//! Exact synthesis driver.
//!
//! Sizes are tried in increasing order. Under a uniform per-gate cost the
//! first match is minimal; with mixed costs every size whose cheapest
//! labeling can still beat the best match so far is scanned, and the winner
//! is the least `(cost, size, shape, labeling, leaves)` in visit order.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::enumerator::{programs, Alphabet, Labelings, LeafCursor, Program};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::library::{CostModel, GateLibrary};
use crate::rewrite;
use crate::truthtab::{BinOp, TruthTable, MAX_VARS};

pub const DEFAULT_MAX_GATES: usize = 10;

/// Largest gate budget the enumerator supports.
pub const MAX_GATE_BUDGET: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    pub max_gates: usize,
    pub max_depth: Option<usize>,
    pub timeout: Option<Duration>,
    /// Worker threads for scanning tree shapes; 1 scans sequentially.
    pub threads: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_gates: DEFAULT_MAX_GATES, max_depth: None, timeout: None, threads: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct SynthRequest {
    pub spec: TruthTable,
    pub library: GateLibrary,
    pub cost_model: CostModel,
    pub bounds: Bounds,
    /// Heuristic circuit returned (flagged inexact) if the search times out.
    pub fallback: Option<Formula>,
}

impl SynthRequest {
    pub fn new(spec: TruthTable, library: GateLibrary) -> SynthRequest {
        SynthRequest { spec, library, cost_model: CostModel::GateCount, bounds: Bounds::default(), fallback: None }
    }

    pub fn with_cost_model(mut self, cost_model: CostModel) -> Self {
        self.cost_model = cost_model;
        self
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub formula: Formula,
    pub truth: TruthTable,
    pub gate_count: usize,
    pub cost: u64,
    pub depth: usize,
    /// False when the circuit is the rewriter fallback.
    pub exact: bool,
}

impl Circuit {
    /// Prices `formula` against `library`; every operator must be a library gate.
    pub fn from_formula(
        formula: Formula,
        num_vars: usize,
        library: &GateLibrary,
        cost_model: CostModel,
        exact: bool,
    ) -> Result<Circuit> {
        let cost = price(&formula, library, cost_model)?;
        let truth = formula.truth_table(num_vars)?;
        Ok(Circuit { gate_count: formula.gate_count(), depth: formula.depth(), truth, cost, formula, exact })
    }
}

fn price(f: &Formula, library: &GateLibrary, cost_model: CostModel) -> Result<u64> {
    match f {
        Formula::Input(_) => Ok(0),
        Formula::Const(c) if library.has_constant(*c) => Ok(0),
        Formula::Const(c) => Err(Error::usage(format!("constant {} is not in library {library}", *c as u8))),
        Formula::Op(op, l, r) => {
            let gate = library
                .gate_for(*op)
                .ok_or_else(|| Error::usage(format!("operator {:04b} is not in library {library}", op.code())))?;
            Ok(cost_model.gate_cost(gate) + price(l, library, cost_model)? + price(r, library, cost_model)?)
        }
        _ => Err(Error::usage("sugar nodes must be rewritten before costing")),
    }
}

#[derive(Debug, Clone)]
struct Hit {
    cost: u64,
    shape: usize,
    ops: Vec<BinOp>,
    assign: Vec<usize>,
}

struct Scan<'a> {
    alphabet: &'a Alphabet,
    ops: Vec<BinOp>,
    costs: Vec<u64>,
    target: u64,
    deadline: Option<Instant>,
}

const DEADLINE_CHECK_INTERVAL: u64 = 1 << 16;

impl Scan<'_> {
    /// First cheapest match within one shape whose cost is below `limit`.
    fn best_in_shape(&self, shape: usize, prog: &Program, m: usize, limit: Option<u64>) -> Result<Option<Hit>> {
        let mut best: Option<Hit> = None;
        let mut labelings = Labelings::new(m, self.ops.len());
        let mut ops = vec![BinOp::LESS; m];
        let mut visited = 0u64;
        while let Some(digits) = labelings.next_labeling() {
            let cost: u64 = digits.iter().map(|&d| self.costs[d]).sum();
            let cap = best.as_ref().map(|h| h.cost).or(limit);
            if cap.is_some_and(|c| cost >= c) {
                continue;
            }
            for (slot, &d) in ops.iter_mut().zip(digits) {
                *slot = self.ops[d];
            }
            let mut cursor = LeafCursor::new(prog, &ops, self.alphabet);
            loop {
                visited += 1;
                if visited.is_multiple_of(DEADLINE_CHECK_INTERVAL) {
                    self.check_deadline()?;
                }
                if cursor.value() == self.target {
                    best = Some(Hit { cost, shape, ops: ops.clone(), assign: cursor.assign.clone() });
                    break;
                }
                if !cursor.advance() {
                    break;
                }
            }
        }
        Ok(best)
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Timeout(Duration::ZERO)),
            _ => Ok(()),
        }
    }

    fn scan_size(&self, m: usize, limit: Option<u64>, max_depth: Option<usize>, threads: usize) -> Result<Option<Hit>> {
        let shapes: Vec<(usize, &Program)> = programs(m)
            .iter()
            .enumerate()
            .filter(|(_, p)| max_depth.is_none_or(|d| p.depth() <= d))
            .collect();
        let uniform = self.costs.windows(2).all(|w| w[0] == w[1]);
        if threads <= 1 || shapes.len() < 2 {
            let mut best: Option<Hit> = None;
            for &(idx, prog) in &shapes {
                let cap = best.as_ref().map(|h| h.cost).or(limit);
                if let Some(hit) = self.best_in_shape(idx, prog, m, cap)? {
                    best = Some(hit);
                    if uniform {
                        break;
                    }
                }
            }
            return Ok(best);
        }

        // Workers pull shapes in index order; with uniform costs, shapes after
        // the earliest known hit cannot win and are skipped.
        let next = AtomicUsize::new(0);
        let first_hit = AtomicUsize::new(usize::MAX);
        let results: Vec<Result<Vec<Hit>>> = std::thread::scope(|s| {
            let workers: Vec<_> = (0..threads.min(shapes.len()))
                .map(|_| {
                    s.spawn(|| {
                        let mut hits = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= shapes.len() || (uniform && i > first_hit.load(Ordering::Relaxed)) {
                                break;
                            }
                            let (idx, prog) = shapes[i];
                            if let Some(hit) = self.best_in_shape(idx, prog, m, limit)? {
                                first_hit.fetch_min(i, Ordering::Relaxed);
                                hits.push(hit);
                            }
                        }
                        Ok(hits)
                    })
                })
                .collect();
            workers.into_iter().map(|w| w.join().expect("search worker panicked")).collect()
        });
        let mut best: Option<Hit> = None;
        for hits in results {
            for hit in hits? {
                let better = match &best {
                    None => true,
                    Some(b) => (hit.cost, hit.shape) < (b.cost, b.shape),
                };
                if better {
                    best = Some(hit);
                }
            }
        }
        Ok(best)
    }
}

/// Smallest depth of any tree with `m` operator nodes.
fn min_depth(m: usize) -> usize {
    (usize::BITS - m.leading_zeros()) as usize
}

pub fn synthesize(req: &SynthRequest) -> Result<Circuit> {
    let bounds = &req.bounds;
    if bounds.max_gates == 0 {
        return Err(Error::usage("max_gates must be at least 1"));
    }
    if bounds.max_gates > MAX_GATE_BUDGET {
        return Err(Error::usage(format!("max_gates is limited to {MAX_GATE_BUDGET}")));
    }
    let lib = &req.library;
    let n = req.spec.num_vars();
    let alphabet = Alphabet::new(lib, n)?;
    let start = Instant::now();

    if let Some(pos) = alphabet.tables.iter().position(|&t| t == req.spec.bits()) {
        return Circuit::from_formula(alphabet.leaves[pos].clone(), n, lib, req.cost_model, true);
    }
    if alphabet.len() == 0 {
        return Err(Error::NotFound { max_gates: bounds.max_gates });
    }

    let scan = Scan {
        alphabet: &alphabet,
        ops: lib.gates().iter().map(|g| g.op).collect(),
        costs: lib.gates().iter().map(|g| req.cost_model.gate_cost(g)).collect(),
        target: req.spec.bits(),
        deadline: bounds.timeout.map(|t| start + t),
    };
    let min_cost = scan.costs.iter().copied().min().unwrap_or(0);
    let mut best: Option<(usize, Hit)> = None;
    for m in 1..=bounds.max_gates {
        if best.as_ref().is_some_and(|(_, h)| m as u64 * min_cost >= h.cost) {
            break;
        }
        if bounds.max_depth.is_some_and(|d| min_depth(m) > d) {
            break;
        }
        let limit = best.as_ref().map(|(_, h)| h.cost);
        match scan.scan_size(m, limit, bounds.max_depth, bounds.threads) {
            Ok(Some(hit)) => best = Some((m, hit)),
            Ok(None) => {}
            Err(Error::Timeout(_)) => return timeout_result(req, start.elapsed()),
            Err(e) => return Err(e),
        }
    }
    match best {
        Some((m, hit)) => {
            let formula = programs(m)[hit.shape].build(&hit.ops, &alphabet.leaves, &hit.assign);
            Circuit::from_formula(formula, n, lib, req.cost_model, true)
        }
        None => Err(Error::NotFound { max_gates: bounds.max_gates }),
    }
}

fn timeout_result(req: &SynthRequest, elapsed: Duration) -> Result<Circuit> {
    match &req.fallback {
        Some(f) if req.bounds.max_depth.is_none_or(|d| f.depth() <= d) => {
            Circuit::from_formula(f.clone(), req.spec.num_vars(), &req.library, req.cost_model, false)
        }
        _ => Err(Error::Timeout(elapsed)),
    }
}

/// Synthesizes the function of a formula given as text.
///
/// For libraries containing `<` and `1` the rewriter runs first: its circuit
/// is the timeout fallback and, when every gate costs the same and no depth
/// bound is set, its gate count caps the search.
pub fn synthesize_formula(text: &str, library: &GateLibrary, cost_model: CostModel, bounds: &Bounds) -> Result<Circuit> {
    let f = parse_formula(text)?;
    let n = f.num_inputs();
    if n > MAX_VARS {
        return Err(Error::Capacity(n));
    }
    let spec = f.truth_table(n)?;
    let req = SynthRequest::new(spec, library.clone()).with_cost_model(cost_model).with_bounds(bounds.clone());
    if library.supports_less_form() {
        let fallback = rewrite::as_circuit(rewrite::to_less_form(&f)?.output, library);
        return synthesize(&with_fallback(req, fallback));
    }
    synthesize(&req)
}

/// Synthesizes a truth table, with the rewritten sum of minterms as fallback
/// for libraries containing `<` and `1`.
pub fn synthesize_table(spec: TruthTable, library: &GateLibrary, cost_model: CostModel, bounds: &Bounds) -> Result<Circuit> {
    let req = SynthRequest::new(spec, library.clone()).with_cost_model(cost_model).with_bounds(bounds.clone());
    if library.supports_less_form() {
        let terms = crate::pla::minterms(spec);
        let sop = if terms.is_empty() { Formula::Const(false) } else { rewrite::encode_dnf(&terms)? };
        return synthesize(&with_fallback(req, rewrite::as_circuit(sop, library)));
    }
    synthesize(&req)
}

fn with_fallback(mut req: SynthRequest, fallback: Formula) -> SynthRequest {
    let costs: Vec<u64> = req.library.gates().iter().map(|g| req.cost_model.gate_cost(g)).collect();
    let uniform = costs.windows(2).all(|w| w[0] == w[1]);
    if uniform && req.bounds.max_depth.is_none() {
        req.bounds.max_gates = req.bounds.max_gates.min(fallback.gate_count()).max(1);
    }
    req.fallback = Some(fallback);
    req
}
