// SPDX-License-Identifier: Apache-2.0

//! Leaf-DAG candidate generation.
//!
//! A candidate of size `M` is a binary tree shape with `M` operator nodes,
//! a choice of library gate for each operator node, and a choice of leaf
//! (constant or input) for each of the `M + 1` leaves. Equal leaves are the
//! shared inputs of the Leaf-DAG.
//!
//! Visit order is shape (outermost), then gate labeling, then leaf
//! assignment. Within a labeling the leftmost leaf varies slowest; within a
//! shape the gate of the first operator node in post-order varies fastest.
//!
//! Node values are cached per post-order position, so stepping to the next
//! leaf assignment only re-evaluates the nodes at or after the first changed
//! leaf.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::library::GateLibrary;
use crate::truthtab::{mask_bits, var_table, BinOp, TruthTable, MAX_VARS};

pub fn catalan(m: usize) -> u64 {
    let mut c = 1u64;
    for i in 0..m as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeShape {
    Leaf,
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn internal_nodes(&self) -> usize {
        match self {
            TreeShape::Leaf => 0,
            TreeShape::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    pub fn leaves(&self) -> usize {
        self.internal_nodes() + 1
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeShape::Leaf => 0,
            TreeShape::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// All shapes with `m` operator nodes: the left subtree takes `i` nodes for
/// `i = 0..m`, left shapes outer, right shapes inner.
pub fn enumerate_trees(m: usize) -> Vec<TreeShape> {
    let mut memo: Vec<Vec<TreeShape>> = vec![vec![TreeShape::Leaf]];
    for size in 1..=m {
        let mut shapes = Vec::with_capacity(catalan(size) as usize);
        for i in 0..size {
            for l in &memo[i] {
                for r in &memo[size - 1 - i] {
                    shapes.push(TreeShape::Node(Box::new(l.clone()), Box::new(r.clone())));
                }
            }
        }
        memo.push(shapes);
    }
    memo.swap_remove(m)
}

/// Odometer over maps from `leaf_count` leaves to `candidates`, leftmost leaf
/// slowest.
#[derive(Debug, Clone)]
pub struct LeafAssignments<'a, T> {
    candidates: &'a [T],
    digits: Vec<usize>,
    done: bool,
}

pub fn enumerate_leaf_assignments<T: Clone>(leaf_count: usize, candidates: &[T]) -> Result<LeafAssignments<'_, T>> {
    if candidates.is_empty() && leaf_count > 0 {
        return Err(Error::usage("no leaf candidates to assign"));
    }
    Ok(LeafAssignments { candidates, digits: vec![0; leaf_count], done: false })
}

impl<T: Clone> Iterator for LeafAssignments<'_, T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.done {
            return None;
        }
        let item = self.digits.iter().map(|&d| self.candidates[d].clone()).collect();
        self.done = !odometer_step(&mut self.digits, self.candidates.len()).is_some();
        Some(item)
    }
}

/// Advances `digits` (last digit fastest) and returns the leftmost changed
/// position, or `None` after the final value.
#[inline]
fn odometer_step(digits: &mut [usize], base: usize) -> Option<usize> {
    for j in (0..digits.len()).rev() {
        digits[j] += 1;
        if digits[j] < base {
            return Some(j);
        }
        digits[j] = 0;
    }
    None
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Leaf(usize),
    Op { slot: usize, left: usize, right: usize },
}

/// A tree shape flattened to post-order.
#[derive(Debug, Clone)]
pub(crate) struct Program {
    nodes: Vec<Node>,
    leaf_pos: Vec<usize>,
    ops: usize,
    depth: usize,
}

impl Program {
    pub(crate) fn compile(shape: &TreeShape) -> Program {
        fn walk(shape: &TreeShape, p: &mut Program) -> usize {
            match shape {
                TreeShape::Leaf => {
                    p.leaf_pos.push(p.nodes.len());
                    p.nodes.push(Node::Leaf(p.leaf_pos.len() - 1));
                }
                TreeShape::Node(l, r) => {
                    let left = walk(l, p);
                    let right = walk(r, p);
                    p.nodes.push(Node::Op { slot: p.ops, left, right });
                    p.ops += 1;
                }
            }
            p.nodes.len() - 1
        }
        let mut p = Program { nodes: Vec::new(), leaf_pos: Vec::new(), ops: 0, depth: shape.depth() };
        walk(shape, &mut p);
        p
    }

    pub(crate) fn depth(&self) -> usize {
        self.depth
    }

    fn leaves(&self) -> usize {
        self.leaf_pos.len()
    }

    pub(crate) fn build(&self, ops: &[BinOp], leaves: &[Formula], assign: &[usize]) -> Formula {
        let mut stack: Vec<Formula> = Vec::with_capacity(self.leaves());
        for node in &self.nodes {
            match *node {
                Node::Leaf(t) => stack.push(leaves[assign[t]].clone()),
                Node::Op { slot, .. } => {
                    let r = stack.pop().expect("post-order");
                    let l = stack.pop().expect("post-order");
                    stack.push(Formula::op(ops[slot], l, r));
                }
            }
        }
        stack.pop().expect("non-empty program")
    }
}

/// Shapes of one size, compiled once per process.
pub(crate) fn programs(m: usize) -> &'static [Program] {
    const CACHED: usize = 12;
    static CACHE: [OnceLock<Vec<Program>>; CACHED] = [const { OnceLock::new() }; CACHED];
    assert!(m < CACHED, "at most {} gates per candidate", CACHED - 1);
    CACHE[m].get_or_init(|| enumerate_trees(m).iter().map(Program::compile).collect())
}

/// Leaves available to candidates: library constants, then inputs.
#[derive(Debug, Clone)]
pub(crate) struct Alphabet {
    pub(crate) leaves: Vec<Formula>,
    pub(crate) tables: Vec<u64>,
    pub(crate) mask: u64,
    pub(crate) num_vars: usize,
}

impl Alphabet {
    pub(crate) fn new(lib: &GateLibrary, num_vars: usize) -> Result<Alphabet> {
        if num_vars > MAX_VARS {
            return Err(Error::Capacity(num_vars));
        }
        let mask = mask_bits(num_vars);
        let mut leaves = Vec::new();
        let mut tables = Vec::new();
        for &c in lib.constants() {
            leaves.push(Formula::Const(c));
            tables.push(if c { mask } else { 0 });
        }
        for k in 0..num_vars {
            leaves.push(Formula::Input(k));
            tables.push(var_table(num_vars, k)?.bits());
        }
        Ok(Alphabet { leaves, tables, mask, num_vars })
    }

    pub(crate) fn len(&self) -> usize {
        self.leaves.len()
    }
}

/// Leaf odometer over one (shape, labeling) pair.
pub(crate) struct LeafCursor<'a> {
    prog: &'a Program,
    ops: &'a [BinOp],
    tables: &'a [u64],
    mask: u64,
    pub(crate) assign: Vec<usize>,
    vals: Vec<u64>,
}

impl<'a> LeafCursor<'a> {
    pub(crate) fn new(prog: &'a Program, ops: &'a [BinOp], alphabet: &'a Alphabet) -> LeafCursor<'a> {
        let mut c = LeafCursor {
            prog,
            ops,
            tables: &alphabet.tables,
            mask: alphabet.mask,
            assign: vec![0; prog.leaves()],
            vals: vec![0; prog.nodes.len()],
        };
        c.recompute_from(0);
        c
    }

    #[inline]
    fn recompute_from(&mut self, start: usize) {
        for p in start..self.prog.nodes.len() {
            self.vals[p] = match self.prog.nodes[p] {
                Node::Leaf(t) => self.tables[self.assign[t]],
                Node::Op { slot, left, right } => self.ops[slot].eval_bits(self.vals[left], self.vals[right], self.mask),
            };
        }
    }

    #[inline]
    pub(crate) fn value(&self) -> u64 {
        self.vals[self.vals.len() - 1]
    }

    #[inline]
    pub(crate) fn advance(&mut self) -> bool {
        match odometer_step(&mut self.assign, self.tables.len()) {
            Some(j) => {
                self.recompute_from(self.prog.leaf_pos[j]);
                true
            }
            None => false,
        }
    }
}

/// Gate labelings of a size-`m` shape, first slot fastest.
pub(crate) struct Labelings {
    digits: Vec<usize>,
    base: usize,
    started: bool,
}

impl Labelings {
    pub(crate) fn new(m: usize, gates: usize) -> Labelings {
        Labelings { digits: vec![0; m], base: gates, started: false }
    }

    pub(crate) fn next_labeling(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            return Some(&self.digits);
        }
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.base {
                return Some(&self.digits);
            }
            *d = 0;
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub formula: Formula,
    pub truth: TruthTable,
}

/// Every Leaf-DAG with a fixed number of gates, in visit order.
pub struct CandidateStream<'a> {
    lib: &'a GateLibrary,
    alphabet: Alphabet,
    programs: &'static [Program],
    shape: usize,
    labelings: Labelings,
    ops: Vec<BinOp>,
    assign: Vec<usize>,
    vals: Vec<u64>,
    fresh: bool,
    done: bool,
}

pub fn enumerate_leaf_dags(lib: &GateLibrary, num_vars: usize, gates: usize) -> Result<CandidateStream<'_>> {
    if gates == 0 {
        return Err(Error::usage("candidates need at least one gate"));
    }
    let alphabet = Alphabet::new(lib, num_vars)?;
    if alphabet.len() == 0 {
        return Err(Error::usage("no leaf candidates to assign"));
    }
    let mut stream = CandidateStream {
        lib,
        alphabet,
        programs: programs(gates),
        shape: 0,
        labelings: Labelings::new(gates, lib.gates().len()),
        ops: Vec::new(),
        assign: Vec::new(),
        vals: Vec::new(),
        fresh: true,
        done: false,
    };
    stream.load_labeling();
    Ok(stream)
}

impl CandidateStream<'_> {
    /// Moves to the next labeling (and shape, when labelings run out).
    fn load_labeling(&mut self) {
        loop {
            if let Some(digits) = self.labelings.next_labeling() {
                self.ops = digits.iter().map(|&d| self.lib.gates()[d].op).collect();
                let cursor = LeafCursor::new(&self.programs[self.shape], &self.ops, &self.alphabet);
                self.assign = cursor.assign;
                self.vals = cursor.vals;
                self.fresh = true;
                return;
            }
            self.shape += 1;
            if self.shape == self.programs.len() {
                self.done = true;
                return;
            }
            self.labelings = Labelings::new(self.ops.len(), self.lib.gates().len());
        }
    }
}

impl Iterator for CandidateStream<'_> {
    type Item = Candidate;

    fn next(&mut self) -> Option<Candidate> {
        if self.done {
            return None;
        }
        if !self.fresh {
            let prog = &self.programs[self.shape];
            let mut cursor = LeafCursor {
                prog,
                ops: &self.ops,
                tables: &self.alphabet.tables,
                mask: self.alphabet.mask,
                assign: std::mem::take(&mut self.assign),
                vals: std::mem::take(&mut self.vals),
            };
            let more = cursor.advance();
            self.assign = cursor.assign;
            self.vals = cursor.vals;
            if !more {
                self.load_labeling();
                if self.done {
                    return None;
                }
            }
        }
        self.fresh = false;
        let prog = &self.programs[self.shape];
        let formula = prog.build(&self.ops, &self.alphabet.leaves, &self.assign);
        let truth = TruthTable::from_raw(self.alphabet.num_vars, self.vals[self.vals.len() - 1]);
        Some(Candidate { formula, truth })
    }
}
