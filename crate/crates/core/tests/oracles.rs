// SPDX-License-Identifier: Apache-2.0

use leafsynth::{apply_op, parse_formula, print_formula, var_table, BinOp, Formula, TruthTable};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Row r of a table holds assignment 2^n-1-r; x0 is the most significant
// bit of the assignment number.
fn var_by_rows(n: usize, k: usize) -> u64 {
    let rows = 1u64 << n;
    (0..rows).filter(|r| (rows - 1 - r) >> (n - 1 - k) & 1 == 1).fold(0, |acc, r| acc | 1 << r)
}

fn scalar(op: BinOp, a: bool, b: bool) -> bool {
    match op {
        BinOp::AND => a && b,
        BinOp::GREATER => a && !b,
        BinOp::LESS => !a && b,
        BinOp::XOR => a != b,
        BinOp::OR => a || b,
        BinOp::NOR => !(a || b),
        BinOp::EQ => a == b,
        BinOp::CONV_IMPL => a || !b,
        BinOp::IMPL => !a || b,
        BinOp::NAND => !(a && b),
        _ => unreachable!(),
    }
}

fn ops_by_rows(op: BinOp, n: usize, a: u64, b: u64) -> u64 {
    (0..1u64 << n).filter(|r| scalar(op, a >> r & 1 == 1, b >> r & 1 == 1)).fold(0, |acc, r| acc | 1 << r)
}

#[test]
fn var_table_matches_rows() {
    let mut cases = 0;
    for n in 1..=6 {
        for k in 0..n {
            assert_eq!(var_table(n, k).unwrap().bits(), var_by_rows(n, k), "n={n} k={k}");
            cases += 1;
        }
    }
    assert_eq!(cases, 21);
}

#[test]
fn var_table_small_values() {
    assert_eq!(var_table(2, 0).unwrap().bits(), 3);
    assert_eq!(var_table(2, 1).unwrap().bits(), 5);
    assert_eq!(var_table(3, 0).unwrap().bits(), 15);
    assert_eq!(var_table(3, 1).unwrap().bits(), 51);
    assert_eq!(var_table(3, 2).unwrap().bits(), 85);
}

#[test]
fn var_table_out_of_range() {
    assert!(var_table(3, 3).is_err());
    assert!(var_table(7, 0).is_err());
}

#[test]
fn ops_exhaustive_small() {
    for n in 0..=3 {
        let rows = 1u64 << (1 << n);
        for a in 0..rows {
            for b in 0..rows {
                let ta = TruthTable::new(n, a).unwrap();
                let tb = TruthTable::new(n, b).unwrap();
                for op in BinOp::NAMED {
                    let got = apply_op(op, ta, tb).unwrap();
                    assert_eq!(got.bits(), ops_by_rows(op, n, a, b), "{op:?} n={n} a={a:#x} b={b:#x}");
                }
            }
        }
    }
}

#[test]
fn ops_random_large() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 4..=6 {
        let mask = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        for _ in 0..2000 {
            let a = rng.gen::<u64>() & mask;
            let b = rng.gen::<u64>() & mask;
            let ta = TruthTable::new(n, a).unwrap();
            let tb = TruthTable::new(n, b).unwrap();
            for op in BinOp::NAMED {
                assert_eq!(apply_op(op, ta, tb).unwrap().bits(), ops_by_rows(op, n, a, b));
            }
        }
    }
}

#[test]
fn mismatched_widths() {
    let a = TruthTable::new(2, 3).unwrap();
    let b = TruthTable::new(3, 15).unwrap();
    assert!(apply_op(BinOp::AND, a, b).is_err());
}

fn any_formula(inputs: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![(0..inputs).prop_map(Formula::input), any::<bool>().prop_map(Formula::constant)];
    leaf.prop_recursive(5, 32, 3, |inner| {
        prop_oneof![
            (0u8..16, inner.clone(), inner.clone()).prop_map(|(c, l, r)| Formula::op(BinOp::from_code(c).unwrap(), l, r)),
            inner.clone().prop_map(Formula::negate),
            (inner.clone(), inner.clone(), inner).prop_map(|(c, t, e)| Formula::ite(c, t, e)),
        ]
    })
}

fn any_table() -> impl Strategy<Value = TruthTable> {
    (1usize..=6).prop_flat_map(|n| {
        let mask = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        any::<u64>().prop_map(move |b| TruthTable::new(n, b & mask).unwrap())
    })
}

proptest! {
    #[test]
    fn less_is_swapped_greater(a in any_table(), b in any_table()) {
        let b = TruthTable::new(a.num_vars(), b.bits() & a.mask()).unwrap();
        prop_assert_eq!(apply_op(BinOp::LESS, a, b).unwrap(), apply_op(BinOp::GREATER, b, a).unwrap());
    }

    #[test]
    fn xor_is_not_eq(a in any_table(), b in any_table()) {
        let b = TruthTable::new(a.num_vars(), b.bits() & a.mask()).unwrap();
        prop_assert_eq!(apply_op(BinOp::XOR, a, b).unwrap(), apply_op(BinOp::EQ, a, b).unwrap().complement());
    }

    #[test]
    fn results_stay_masked(a in any_table(), code in 0u8..16) {
        let op = BinOp::from_code(code).unwrap();
        let r = apply_op(op, a, a.complement()).unwrap();
        prop_assert_eq!(r.bits() & !r.mask(), 0);
    }

    #[test]
    fn print_then_parse(f in any_formula(4)) {
        let text = print_formula(&f);
        let back = parse_formula(&text).unwrap();
        prop_assert_eq!(print_formula(&back), text);
        let n = f.num_inputs().max(1);
        prop_assert_eq!(back.truth_table(n).unwrap(), f.truth_table(n).unwrap());
    }

    #[test]
    fn table_text_round_trip(t in any_table()) {
        prop_assert_eq!(t.to_string().parse::<TruthTable>().unwrap(), t);
    }
}
