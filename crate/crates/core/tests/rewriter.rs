// SPDX-License-Identifier: Apache-2.0

use leafsynth::pla::{maxterms, minterms};
use leafsynth::rewrite::{and_chain, encode_cnf, encode_dnf, or_chain, simplify, to_less_form};
use leafsynth::{builtin_library, synthesize, BinOp, Formula, SynthRequest, TruthTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_formula(rng: &mut ChaCha8Rng, inputs: usize, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.15) { Formula::Const(rng.gen()) } else { Formula::Input(rng.gen_range(0..inputs)) };
    }
    match rng.gen_range(0..10) {
        0 => Formula::negate(random_formula(rng, inputs, depth - 1)),
        1 => Formula::ite(
            random_formula(rng, inputs, depth - 1),
            random_formula(rng, inputs, depth - 1),
            random_formula(rng, inputs, depth - 1),
        ),
        _ => Formula::op(
            BinOp::from_code(rng.gen_range(0..16)).unwrap(),
            random_formula(rng, inputs, depth - 1),
            random_formula(rng, inputs, depth - 1),
        ),
    }
}

#[test]
fn random_formulas_keep_their_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..10_000 {
        let inputs = rng.gen_range(1..=5);
        let depth = rng.gen_range(1..=6);
        let f = random_formula(&mut rng, inputs, depth);
        let out = to_less_form(&f).unwrap().output;
        assert!(out.is_less_form(), "#{i}: {out}");
        assert_eq!(out.truth_table(inputs).unwrap(), f.truth_table(inputs).unwrap(), "#{i}: {f}");
        assert_eq!(simplify(&out), out, "#{i}: {f}");
        assert!(out.stats().zeros == 0 || out == Formula::Const(false), "#{i}: {out}");
    }
}

#[test]
fn simplify_never_grows() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..2000 {
        let f = less_only(&mut rng, 4, 5);
        let s = simplify(&f);
        assert!(s.gate_count() <= f.gate_count());
        assert_eq!(s.truth_table(4).unwrap(), f.truth_table(4).unwrap());
        assert_eq!(simplify(&s), s);
    }
}

fn less_only(rng: &mut ChaCha8Rng, inputs: usize, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..6) {
            0 => Formula::Const(true),
            1 => Formula::Const(false),
            _ => Formula::Input(rng.gen_range(0..inputs)),
        };
    }
    Formula::less(less_only(rng, inputs, depth - 1), less_only(rng, inputs, depth - 1))
}

fn vars(n: usize) -> Vec<Formula> {
    (0..n).map(Formula::Input).collect()
}

#[test]
fn chain_shapes() {
    for n in 1..=6 {
        let or = or_chain(&vars(n)).unwrap();
        let and = and_chain(&vars(n)).unwrap();
        for (f, gates, ones) in [(&or, n + 1, 2), (&and, 2 * n - 2, n - 1)] {
            let st = f.stats();
            assert_eq!(st.gate_count, gates, "{f}");
            assert_eq!(st.ones, ones, "{f}");
            assert_eq!(st.zeros, 0);
            assert_eq!(st.input_occurrences, vec![1; n], "{f}");
        }
        assert_eq!(or.truth_table(n).unwrap(), TruthTable::from_fn(n, |a| a.iter().any(|&x| x)).unwrap());
        assert_eq!(and.truth_table(n).unwrap(), TruthTable::from_fn(n, |a| a.iter().all(|&x| x)).unwrap());
        if n >= 2 {
            assert_eq!(simplify(&or), or);
            assert_eq!(simplify(&and), and);
        }
    }
    assert_eq!(simplify(&or_chain(&vars(1)).unwrap()), Formula::Input(0));
    assert_eq!(and_chain(&vars(3)).unwrap().to_string(), "(A<1)<((B<1)<C)");
    assert_eq!(or_chain(&vars(2)).unwrap().to_string(), "(A<(B<1))<1");
}

#[test]
fn chains_are_minimal() {
    let lib = builtin_library("less,1").unwrap();
    for n in 1..=3 {
        for (f, gates) in [(or_chain(&vars(n)).unwrap(), n + 1), (and_chain(&vars(n)).unwrap(), 2 * n - 2)] {
            let spec = f.truth_table(n).unwrap();
            let c = synthesize(&SynthRequest::new(spec, lib.clone())).unwrap();
            // a single variable needs no gate at all once simplified
            let want = if n == 1 { 0 } else { gates };
            assert_eq!(c.gate_count, want, "{f}");
        }
    }
}

#[test]
fn normal_forms_of_every_three_input_function() {
    for bits in 0..256u64 {
        let t = TruthTable::new(3, bits).unwrap();
        let mins = minterms(t);
        if !mins.is_empty() {
            let f = encode_dnf(&mins).unwrap();
            assert!(f.is_less_form());
            assert_eq!(f.truth_table(3).unwrap(), t);
        }
        let maxs = maxterms(t);
        if !maxs.is_empty() {
            let f = encode_cnf(&maxs).unwrap();
            assert!(f.is_less_form());
            assert_eq!(f.truth_table(3).unwrap(), t);
        }
    }
    assert!(encode_dnf(&[]).is_err());
    assert!(encode_cnf(&[]).is_err());
}
