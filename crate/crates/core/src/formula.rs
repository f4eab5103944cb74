// SPDX-License-Identifier: Apache-2.0

//! Boolean formulas: AST, text grammar and evaluation.
//!
//! Grammar, loosest binding first:
//!
//! | level | operators        | associativity |
//! |-------|------------------|---------------|
//! | 1     | `=`              | left          |
//! | 2     | `=>` `<=`        | right         |
//! | 3     | `+`              | left          |
//! | 4     | `^`              | left          |
//! | 5     | `*`              | left          |
//! | 6     | `<` `>`          | none          |
//! | 7     | `~` (prefix)     |               |
//!
//! Atoms are `0`, `1`, variables `A`..`Z` or `x0`, `x1`, ..., parenthesized
//! formulas, and the calls `nand(a,b)`, `nor(a,b)`, `ite(c,t,e)` and
//! `opXXXX(a,b)` for an arbitrary operator given by its 4-bit table.
//!
//! Variables are indexed by name: `A` is input 0, `B` input 1, and so on;
//! `xK` is input `K`. The two naming styles cannot be mixed in one formula.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::truthtab::{mask_bits, var_table, BinOp, TruthTable, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Input(usize),
    Const(bool),
    Op(BinOp, Box<Formula>, Box<Formula>),
    /// Negation. Accepted on input; rewritten away before synthesis.
    Not(Box<Formula>),
    /// `ite(c, t, e)`. Accepted on input; rewritten away before synthesis.
    Ite(Box<Formula>, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn input(index: usize) -> Formula {
        Formula::Input(index)
    }

    pub fn constant(value: bool) -> Formula {
        Formula::Const(value)
    }

    pub fn op(op: BinOp, left: Formula, right: Formula) -> Formula {
        Formula::Op(op, Box::new(left), Box::new(right))
    }

    pub fn less(left: Formula, right: Formula) -> Formula {
        Formula::op(BinOp::LESS, left, right)
    }

    pub fn negate(inner: Formula) -> Formula {
        Formula::Not(Box::new(inner))
    }

    pub fn ite(cond: Formula, then: Formula, otherwise: Formula) -> Formula {
        Formula::Ite(Box::new(cond), Box::new(then), Box::new(otherwise))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Formula::Input(_) | Formula::Const(_))
    }

    /// One more than the largest input index, or 0 for a closed formula.
    pub fn num_inputs(&self) -> usize {
        match self {
            Formula::Input(i) => i + 1,
            Formula::Const(_) => 0,
            Formula::Op(_, l, r) => l.num_inputs().max(r.num_inputs()),
            Formula::Not(a) => a.num_inputs(),
            Formula::Ite(c, t, e) => c.num_inputs().max(t.num_inputs()).max(e.num_inputs()),
        }
    }

    /// Whether only `<` gates, inputs and constants occur.
    pub fn is_less_form(&self) -> bool {
        match self {
            Formula::Input(_) | Formula::Const(_) => true,
            Formula::Op(op, l, r) => *op == BinOp::LESS && l.is_less_form() && r.is_less_form(),
            _ => false,
        }
    }

    pub fn gate_count(&self) -> usize {
        match self {
            Formula::Input(_) | Formula::Const(_) => 0,
            Formula::Op(_, l, r) => 1 + l.gate_count() + r.gate_count(),
            Formula::Not(a) => 1 + a.gate_count(),
            Formula::Ite(c, t, e) => 1 + c.gate_count() + t.gate_count() + e.gate_count(),
        }
    }

    /// Longest root-to-leaf path counted in operator nodes.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Input(_) | Formula::Const(_) => 0,
            Formula::Op(_, l, r) => 1 + l.depth().max(r.depth()),
            Formula::Not(a) => 1 + a.depth(),
            Formula::Ite(c, t, e) => 1 + c.depth().max(t.depth()).max(e.depth()),
        }
    }

    pub fn stats(&self) -> FormulaStats {
        let mut stats = FormulaStats {
            gate_count: self.gate_count(),
            depth: self.depth(),
            zeros: 0,
            ones: 0,
            input_occurrences: vec![0; self.num_inputs()],
        };
        self.count_leaves(&mut stats);
        stats
    }

    fn count_leaves(&self, stats: &mut FormulaStats) {
        match self {
            Formula::Input(i) => stats.input_occurrences[*i] += 1,
            Formula::Const(false) => stats.zeros += 1,
            Formula::Const(true) => stats.ones += 1,
            Formula::Op(_, l, r) => {
                l.count_leaves(stats);
                r.count_leaves(stats);
            }
            Formula::Not(a) => a.count_leaves(stats),
            Formula::Ite(c, t, e) => {
                c.count_leaves(stats);
                t.count_leaves(stats);
                e.count_leaves(stats);
            }
        }
    }

    /// Truth table over `num_vars` variables, evaluated bottom-up.
    pub fn truth_table(&self, num_vars: usize) -> Result<TruthTable> {
        if num_vars > MAX_VARS {
            return Err(Error::Capacity(num_vars));
        }
        let needed = self.num_inputs();
        if needed > num_vars {
            return Err(Error::Index { index: needed - 1, num_vars });
        }
        let vars = (0..num_vars)
            .map(|k| var_table(num_vars, k).map(TruthTable::bits))
            .collect::<Result<Vec<_>>>()?;
        let bits = self.eval_bits(&vars, mask_bits(num_vars));
        Ok(TruthTable::from_raw(num_vars, bits))
    }

    fn eval_bits(&self, vars: &[u64], mask: u64) -> u64 {
        match self {
            Formula::Input(i) => vars[*i],
            Formula::Const(false) => 0,
            Formula::Const(true) => mask,
            Formula::Op(op, l, r) => op.eval_bits(l.eval_bits(vars, mask), r.eval_bits(vars, mask), mask),
            Formula::Not(a) => mask ^ a.eval_bits(vars, mask),
            Formula::Ite(c, t, e) => {
                let c = c.eval_bits(vars, mask);
                (c & t.eval_bits(vars, mask)) | ((mask ^ c) & e.eval_bits(vars, mask))
            }
        }
    }
}

/// Deterministic bottom-up evaluation of `f` over `num_vars` variables.
pub fn table_of_formula(f: &Formula, num_vars: usize) -> Result<TruthTable> {
    f.truth_table(num_vars)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaStats {
    pub gate_count: usize,
    pub depth: usize,
    pub zeros: usize,
    pub ones: usize,
    pub input_occurrences: Vec<usize>,
}

pub fn formula_stats(f: &Formula) -> FormulaStats {
    f.stats()
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    Parser::new(text)?.parse()
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(usize, VarStyle),
    Const(bool),
    Call(Call),
    LParen,
    RParen,
    Comma,
    Tilde,
    Infix(BinOp),
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarStyle {
    Letter,
    Indexed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Call {
    Nand,
    Nor,
    Ite,
    Generic(BinOp),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = bytes.get(i + 1).copied();
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'~' => Tok::Tilde,
            b'*' => Tok::Infix(BinOp::AND),
            b'+' => Tok::Infix(BinOp::OR),
            b'^' => Tok::Infix(BinOp::XOR),
            b'>' => Tok::Infix(BinOp::GREATER),
            b'<' if two == Some(b'=') => {
                i += 1;
                Tok::Infix(BinOp::CONV_IMPL)
            }
            b'<' => Tok::Infix(BinOp::LESS),
            b'=' if two == Some(b'>') => {
                i += 1;
                Tok::Infix(BinOp::IMPL)
            }
            b'=' => Tok::Infix(BinOp::EQ),
            b'0' | b'1' if !two.is_some_and(|d| d.is_ascii_alphanumeric()) => Tok::Const(c == b'1'),
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((word(&text[start..i], start)?, start));
                continue;
            }
            _ => return Err(Error::syntax(start, format!("unexpected character `{}`", c as char))),
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

fn word(w: &str, pos: usize) -> Result<Tok> {
    let b = w.as_bytes();
    if b.len() == 1 && b[0].is_ascii_uppercase() {
        return Ok(Tok::Var((b[0] - b'A') as usize, VarStyle::Letter));
    }
    if let Some(digits) = w.strip_prefix('x') {
        if !digits.is_empty() && digits.bytes().all(|d| d.is_ascii_digit()) {
            let k = digits
                .parse()
                .map_err(|_| Error::syntax(pos, format!("variable index too large in `{w}`")))?;
            return Ok(Tok::Var(k, VarStyle::Indexed));
        }
    }
    match w {
        "nand" => return Ok(Tok::Call(Call::Nand)),
        "nor" => return Ok(Tok::Call(Call::Nor)),
        "ite" => return Ok(Tok::Call(Call::Ite)),
        _ => {}
    }
    if let Some(code) = w.strip_prefix("op") {
        if code.len() == 4 && code.bytes().all(|d| d == b'0' || d == b'1') {
            let code = u8::from_str_radix(code, 2).expect("four binary digits");
            return Ok(Tok::Call(Call::Generic(BinOp::from_code(code)?)));
        }
    }
    Err(Error::syntax(pos, format!("unknown identifier `{w}`")))
}

// ---------------------------------------------------------------------------
// parser

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    style: Option<VarStyle>,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(text)?, at: 0, style: None })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn parse(mut self) -> Result<Formula> {
        if *self.peek() == Tok::End {
            return Err(Error::syntax(0, "empty formula"));
        }
        let f = self.expr(1)?;
        if *self.peek() != Tok::End {
            return Err(Error::syntax(self.pos(), "unexpected trailing input"));
        }
        Ok(f)
    }

    fn infix_at(&self, level: u8) -> Option<BinOp> {
        match self.peek() {
            Tok::Infix(op) if infix_level(*op) == Some(level) => Some(*op),
            _ => None,
        }
    }

    fn expr(&mut self, level: u8) -> Result<Formula> {
        match level {
            1 | 3 | 4 | 5 => {
                let mut lhs = self.expr(level + 1)?;
                while let Some(op) = self.infix_at(level) {
                    self.bump();
                    let rhs = self.expr(level + 1)?;
                    lhs = Formula::op(op, lhs, rhs);
                }
                Ok(lhs)
            }
            2 => {
                let lhs = self.expr(3)?;
                match self.infix_at(2) {
                    Some(op) => {
                        self.bump();
                        let rhs = self.expr(2)?;
                        Ok(Formula::op(op, lhs, rhs))
                    }
                    None => Ok(lhs),
                }
            }
            6 => {
                let lhs = self.unary()?;
                match self.infix_at(6) {
                    Some(op) => {
                        self.bump();
                        let rhs = self.unary()?;
                        if self.infix_at(6).is_some() {
                            return Err(Error::syntax(
                                self.pos(),
                                "`<` and `>` do not associate; add parentheses",
                            ));
                        }
                        Ok(Formula::op(op, lhs, rhs))
                    }
                    None => Ok(lhs),
                }
            }
            _ => unreachable!("no precedence level {level}"),
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(Formula::negate(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let pos = self.pos();
        match self.bump() {
            Tok::Var(k, style) => {
                if *self.style.get_or_insert(style) != style {
                    return Err(Error::syntax(pos, "cannot mix `A`-style and `xK`-style variables"));
                }
                Ok(Formula::Input(k))
            }
            Tok::Const(v) => Ok(Formula::Const(v)),
            Tok::LParen => {
                let f = self.expr(1)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Call(call) => {
                self.expect(Tok::LParen, "`(` after function name")?;
                let a = self.expr(1)?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr(1)?;
                let f = match call {
                    Call::Nand => Formula::op(BinOp::NAND, a, b),
                    Call::Nor => Formula::op(BinOp::NOR, a, b),
                    Call::Generic(op) => Formula::op(op, a, b),
                    Call::Ite => {
                        self.expect(Tok::Comma, "`,`")?;
                        let c = self.expr(1)?;
                        Formula::ite(a, b, c)
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::End => Err(Error::syntax(pos, "unexpected end of formula")),
            _ => Err(Error::syntax(pos, "expected a variable, constant or `(`")),
        }
    }
}

fn infix_level(op: BinOp) -> Option<u8> {
    Some(match op {
        BinOp::EQ => 1,
        BinOp::IMPL | BinOp::CONV_IMPL => 2,
        BinOp::OR => 3,
        BinOp::XOR => 4,
        BinOp::AND => 5,
        BinOp::LESS | BinOp::GREATER => 6,
        _ => return None,
    })
}

fn infix_symbol(op: BinOp) -> &'static str {
    match op {
        BinOp::EQ => "=",
        BinOp::IMPL => "=>",
        BinOp::CONV_IMPL => "<=",
        BinOp::OR => "+",
        BinOp::XOR => "^",
        BinOp::AND => "*",
        BinOp::LESS => "<",
        BinOp::GREATER => ">",
        _ => unreachable!("not an infix operator"),
    }
}

// ---------------------------------------------------------------------------
// printer

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

struct Printer {
    indexed: bool,
}

impl Printer {
    fn write(&self, f: &Formula, out: &mut String) {
        match f {
            Formula::Input(k) => {
                if self.indexed {
                    out.push_str(&format!("x{k}"));
                } else {
                    out.push((b'A' + *k as u8) as char);
                }
            }
            Formula::Const(v) => out.push(if *v { '1' } else { '0' }),
            Formula::Not(a) => {
                out.push('~');
                let wrap = matches!(**a, Formula::Op(op, ..) if infix_level(op).is_some());
                self.wrapped(a, wrap, out);
            }
            Formula::Ite(c, t, e) => {
                out.push_str("ite(");
                self.write(c, out);
                out.push(',');
                self.write(t, out);
                out.push(',');
                self.write(e, out);
                out.push(')');
            }
            Formula::Op(op, l, r) => match infix_level(*op) {
                Some(level) => {
                    self.operand(l, *op, level, Side::Left, out);
                    out.push_str(infix_symbol(*op));
                    self.operand(r, *op, level, Side::Right, out);
                }
                None => {
                    match *op {
                        BinOp::NAND => out.push_str("nand("),
                        BinOp::NOR => out.push_str("nor("),
                        other => out.push_str(&format!("op{:04b}(", other.code())),
                    }
                    self.write(l, out);
                    out.push(',');
                    self.write(r, out);
                    out.push(')');
                }
            },
        }
    }

    fn operand(&self, child: &Formula, parent: BinOp, level: u8, side: Side, out: &mut String) {
        let wrap = match child {
            Formula::Op(op, ..) => match infix_level(*op) {
                Some(child_level) => {
                    if level == 6 {
                        true
                    } else if child_level != level {
                        child_level < level
                    } else if level == 2 {
                        side == Side::Left
                    } else {
                        side == Side::Right || *op != parent
                    }
                }
                None => false,
            },
            _ => false,
        };
        self.wrapped(child, wrap, out);
    }

    fn wrapped(&self, f: &Formula, wrap: bool, out: &mut String) {
        if wrap {
            out.push('(');
            self.write(f, out);
            out.push(')');
        } else {
            self.write(f, out);
        }
    }
}

impl fmt::Display for Formula {
    /// Inputs print as letters while they fit in `A`..`Z`, otherwise every
    /// input prints as `xK`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let printer = Printer { indexed: self.num_inputs() > 26 };
        let mut out = String::new();
        printer.write(self, &mut out);
        f.write_str(&out)
    }
}
