// SPDX-License-Identifier: Apache-2.0

//! Translation of arbitrary formulas into the `(<, 1)` library.
//!
//! Operands are rewritten first, then the operator is replaced by its `<`
//! form. Every `<` node is built through [`less`], which applies the local
//! simplification rules on the spot:
//!
//! ```text
//! X < X       -> 0        1 < X -> 0
//! X < 0       -> 0        0 < X -> X
//! (X < 1) < 1 -> X
//! ```
//!
//! Since operands are already simplified, the result is a fixpoint of the
//! rule set. A constant `0` survives only as the whole result.

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::library::GateLibrary;
use crate::truthtab::BinOp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub before: Formula,
    pub after: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    pub input: Formula,
    pub output: Formula,
    pub steps: Vec<RewriteStep>,
}

#[derive(Default)]
struct Tracer {
    steps: Vec<RewriteStep>,
}

impl Tracer {
    fn record(&mut self, rule: &'static str, before: Formula, after: &Formula) {
        self.steps.push(RewriteStep { rule, before, after: after.clone() });
    }

    /// `l < r` with local simplification.
    fn less(&mut self, l: Formula, r: Formula) -> Formula {
        use Formula::Const;
        let (rule, out) = match (&l, &r) {
            _ if l == r => ("x<x=0", Const(false)),
            (_, Const(false)) => ("x<0=0", Const(false)),
            (Const(true), _) => ("1<x=0", Const(false)),
            (Const(false), _) => ("0<x=x", r.clone()),
            (Formula::Op(BinOp::LESS, inner, one), Const(true)) if **one == Const(true) => {
                ("(x<1)<1=x", (**inner).clone())
            }
            _ => return Formula::less(l, r),
        };
        self.record(rule, Formula::less(l, r), &out);
        out
    }

    fn not(&mut self, a: Formula) -> Formula {
        self.less(a, Formula::Const(true))
    }

    fn and(&mut self, a: Formula, b: Formula) -> Formula {
        let na = self.not(a);
        self.less(na, b)
    }

    fn or(&mut self, a: Formula, b: Formula) -> Formula {
        let nb = self.not(b);
        let nor = self.less(a, nb);
        self.not(nor)
    }

    fn nor(&mut self, a: Formula, b: Formula) -> Formula {
        let nb = self.not(b);
        self.less(a, nb)
    }

    fn binary(&mut self, op: BinOp, a: Formula, b: Formula) -> Result<Formula> {
        Ok(match op {
            BinOp::LESS => self.less(a, b),
            BinOp::GREATER => self.less(b, a),
            BinOp::AND => self.and(a, b),
            BinOp::OR => self.or(a, b),
            BinOp::NOR => self.nor(a, b),
            BinOp::NAND => {
                let and = self.and(a, b);
                self.not(and)
            }
            BinOp::CONV_IMPL => {
                let lt = self.less(a, b);
                self.not(lt)
            }
            BinOp::IMPL => {
                let lt = self.less(b, a);
                self.not(lt)
            }
            BinOp::XOR => {
                let ab = self.less(a.clone(), b.clone());
                let ba = self.less(b, a);
                self.or(ab, ba)
            }
            BinOp::EQ => {
                let ab = self.less(a.clone(), b.clone());
                let ba = self.less(b, a);
                self.nor(ab, ba)
            }
            other => match other.code() {
                0b0000 => Formula::Const(false),
                0b1111 => Formula::Const(true),
                0b0011 => a,
                0b0101 => b,
                0b1100 => self.not(a),
                0b1010 => self.not(b),
                code => return Err(Error::usage(format!("no `<` rewriting for operator {code:04b}"))),
            },
        })
    }

    fn rewrite(&mut self, f: &Formula) -> Result<Formula> {
        let out = match f {
            Formula::Input(_) | Formula::Const(_) => return Ok(f.clone()),
            Formula::Not(a) => {
                let a = self.rewrite(a)?;
                self.not(a)
            }
            Formula::Op(op, l, r) => {
                let l = self.rewrite(l)?;
                let r = self.rewrite(r)?;
                self.binary(*op, l, r)?
            }
            Formula::Ite(c, t, e) => {
                // (c => t) * (~c => e)
                let c = self.rewrite(c)?;
                let t = self.rewrite(t)?;
                let e = self.rewrite(e)?;
                let then = self.binary(BinOp::IMPL, c.clone(), t)?;
                let nc = self.not(c);
                let otherwise = self.binary(BinOp::IMPL, nc, e)?;
                self.and(then, otherwise)
            }
        };
        self.steps.push(RewriteStep { rule: rule_name(f), before: f.clone(), after: out.clone() });
        Ok(out)
    }
}

fn rule_name(f: &Formula) -> &'static str {
    match f {
        Formula::Not(_) => "not",
        Formula::Ite(..) => "ite",
        Formula::Op(op, ..) => op.name().unwrap_or("op"),
        _ => "leaf",
    }
}

/// Rewrites `f` into `<` gates, inputs and constants.
pub fn to_less_form(f: &Formula) -> Result<RewriteTrace> {
    let mut tracer = Tracer::default();
    let output = tracer.rewrite(f)?;
    Ok(RewriteTrace { input: f.clone(), output, steps: tracer.steps })
}

/// Applies the simplification rules bottom-up to `<` nodes.
pub fn simplify(f: &Formula) -> Formula {
    simplify_with(f, &mut Tracer::default())
}

fn simplify_with(f: &Formula, tracer: &mut Tracer) -> Formula {
    match f {
        Formula::Input(_) | Formula::Const(_) => f.clone(),
        Formula::Op(op, l, r) => {
            let l = simplify_with(l, tracer);
            let r = simplify_with(r, tracer);
            if *op == BinOp::LESS {
                tracer.less(l, r)
            } else {
                Formula::op(*op, l, r)
            }
        }
        Formula::Not(a) => Formula::negate(simplify_with(a, tracer)),
        Formula::Ite(c, t, e) => {
            Formula::ite(simplify_with(c, tracer), simplify_with(t, tracer), simplify_with(e, tracer))
        }
    }
}

/// Gate count of the `<` form, counting a constant-false result as `1<1`.
pub fn gate_upper_bound(f: &Formula) -> Result<usize> {
    let out = to_less_form(f)?.output;
    Ok(if out == Formula::Const(false) { 1 } else { out.gate_count() })
}

/// Adapts a `<` form to `library`: constant 0 becomes `1<1` unless the
/// library provides it.
pub fn as_circuit(f: Formula, library: &GateLibrary) -> Formula {
    if f == Formula::Const(false) && !library.has_constant(false) {
        Formula::less(Formula::Const(true), Formula::Const(true))
    } else {
        f
    }
}

/// Input literal of a normal-form clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Literal {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Literal {
        Literal { var, negated: true }
    }

    fn formula(self) -> Formula {
        let v = Formula::Input(self.var);
        if self.negated {
            Formula::less(v, Formula::Const(true))
        } else {
            v
        }
    }
}

/// `(a1 < (a2 < ... (aN < 1) ...)) < 1`, the disjunction of `terms`, unsimplified.
pub fn or_chain(terms: &[Formula]) -> Result<Formula> {
    let (last, rest) = terms.split_last().ok_or_else(|| Error::usage("empty disjunction"))?;
    let mut acc = Formula::less(last.clone(), Formula::Const(true));
    for t in rest.iter().rev() {
        acc = Formula::less(t.clone(), acc);
    }
    Ok(Formula::less(acc, Formula::Const(true)))
}

/// `(a1 < 1) < ((a2 < 1) < ... ((aN-1 < 1) < aN) ...)`, the conjunction of
/// `terms`, unsimplified.
pub fn and_chain(terms: &[Formula]) -> Result<Formula> {
    let (last, rest) = terms.split_last().ok_or_else(|| Error::usage("empty conjunction"))?;
    let mut acc = last.clone();
    for t in rest.iter().rev() {
        acc = Formula::less(Formula::less(t.clone(), Formula::Const(true)), acc);
    }
    Ok(acc)
}

fn literals(clause: &[Literal]) -> Vec<Formula> {
    clause.iter().map(|l| l.formula()).collect()
}

/// Sum of products, each product a list of literals.
pub fn encode_dnf(clauses: &[Vec<Literal>]) -> Result<Formula> {
    if clauses.is_empty() {
        return Err(Error::usage("empty clause list"));
    }
    let products = clauses.iter().map(|c| and_chain(&literals(c))).collect::<Result<Vec<_>>>()?;
    Ok(simplify(&or_chain(&products)?))
}

/// Product of sums, each sum a list of literals.
pub fn encode_cnf(clauses: &[Vec<Literal>]) -> Result<Formula> {
    if clauses.is_empty() {
        return Err(Error::usage("empty clause list"));
    }
    let sums = clauses.iter().map(|c| or_chain(&literals(c))).collect::<Result<Vec<_>>>()?;
    Ok(simplify(&and_chain(&sums)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn less_form(s: &str) -> String {
        to_less_form(&parse_formula(s).unwrap()).unwrap().output.to_string()
    }

    #[test]
    fn translation_table() {
        assert_eq!(less_form("~A"), "A<1");
        assert_eq!(less_form("A*B"), "(A<1)<B");
        assert_eq!(less_form("A+B"), "(A<(B<1))<1");
        assert_eq!(less_form("A=>B"), "(B<A)<1");
        assert_eq!(less_form("A<=B"), "(A<B)<1");
        assert_eq!(less_form("A^B"), "((A<B)<((B<A)<1))<1");
        assert_eq!(less_form("A=B"), "(A<B)<((B<A)<1)");
        assert_eq!(less_form("nand(A,B)"), "((A<1)<B)<1");
        assert_eq!(less_form("~(A*B)"), "((A<1)<B)<1");
        assert_eq!(less_form("nor(A,B)"), "A<(B<1)");
        assert_eq!(less_form("A>B"), "B<A");
        assert_eq!(less_form("0"), "0");
        assert_eq!(less_form("1"), "1");
    }

    #[test]
    fn ite_is_equivalent() {
        let f = parse_formula("ite(A,B,C)").unwrap();
        let out = to_less_form(&f).unwrap().output;
        assert!(out.is_less_form());
        assert!(out.gate_count() <= 7);
        assert_eq!(out.truth_table(3).unwrap(), f.truth_table(3).unwrap());
    }

    #[test]
    fn simplification_rules() {
        let s = |t: &str| simplify(&parse_formula(t).unwrap()).to_string();
        assert_eq!(s("(A<1)<1"), "A");
        assert_eq!(s("A<A"), "0");
        assert_eq!(s("A<0"), "0");
        assert_eq!(s("1<A"), "0");
        assert_eq!(s("0<A"), "A");
        assert_eq!(s("1<1"), "0");
        assert_eq!(s("0<1"), "1");
        assert_eq!(s("((B<B)<A)<((1<C)<C)"), "A<C");
    }

    #[test]
    fn traces_record_rules() {
        let t = to_less_form(&parse_formula("~~A").unwrap()).unwrap();
        assert_eq!(t.output, Formula::Input(0));
        assert!(t.steps.iter().any(|s| s.rule == "(x<1)<1=x"));
        assert_eq!(t.steps.last().unwrap().rule, "not");
    }

    #[test]
    fn chains() {
        let a = Formula::Input(0);
        let b = Formula::Input(1);
        let c = Formula::Input(2);
        assert_eq!(or_chain(&[a.clone(), b.clone()]).unwrap().to_string(), "(A<(B<1))<1");
        assert_eq!(and_chain(&[a.clone(), b.clone(), c]).unwrap().to_string(), "(A<1)<((B<1)<C)");
        assert_eq!(simplify(&or_chain(std::slice::from_ref(&a)).unwrap()), a);
        assert!(or_chain(&[]).is_err());
        assert!(encode_dnf(&[]).is_err());
        assert!(encode_cnf(&[]).is_err());
    }

    #[test]
    fn normal_forms() {
        // xor as sum of products and product of sums
        let dnf = encode_dnf(&[vec![Literal::pos(0), Literal::neg(1)], vec![Literal::neg(0), Literal::pos(1)]]).unwrap();
        assert_eq!(dnf.truth_table(2).unwrap().bits(), 0b0110);
        let cnf = encode_cnf(&[vec![Literal::pos(0), Literal::pos(1)], vec![Literal::neg(0), Literal::neg(1)]]).unwrap();
        assert_eq!(cnf.truth_table(2).unwrap().bits(), 0b0110);
        assert!(dnf.is_less_form() && cnf.is_less_form());
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(gate_upper_bound(&parse_formula("A*B").unwrap()).unwrap(), 2);
        assert_eq!(gate_upper_bound(&parse_formula("A^B").unwrap()).unwrap(), 5);
        assert_eq!(gate_upper_bound(&parse_formula("A*~A").unwrap()).unwrap(), 1);
    }
}
