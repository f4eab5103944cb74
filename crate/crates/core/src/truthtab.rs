// SPDX-License-Identifier: Apache-2.0

//! Bit-parallel truth tables for functions of up to six variables.
//!
//! A function of `n` variables is stored in the low `2^n` bits of a `u64`.
//! Variable `x_k` is encoded as
//!
//! ```text
//! x_k = (2^(2^n) - 1) / (2^(2^(n-k-1)) + 1)
//! ```
//!
//! which makes bit `r` of a table hold the function's value on the assignment
//! whose number (with `x_0` as the most significant bit) is `2^n - 1 - r`.
//! Bit 0 is therefore the all-true row and the top bit the all-false row.
//! Written most-significant bit first, a table lists its rows in the natural
//! order `00..0, 00..1, ..., 11..1`: at `n = 2`, `x_0 = 0b0011` and
//! `x_1 = 0b0101`.
//!
//! Gates combine tables with one machine operation, so a candidate circuit is
//! evaluated on all rows at once.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 6;

/// `2^(2^n) - 1` as a raw word.
#[inline]
pub(crate) const fn mask_bits(num_vars: usize) -> u64 {
    if num_vars >= MAX_VARS {
        u64::MAX
    } else {
        (1u64 << (1u32 << num_vars)) - 1
    }
}

fn check_vars(num_vars: usize) -> Result<()> {
    if num_vars > MAX_VARS {
        Err(Error::Capacity(num_vars))
    } else {
        Ok(())
    }
}

/// A binary boolean operator, identified by its own 4-bit truth table.
///
/// The code is the operator applied to `A = 0b0011` and `B = 0b0101`, so it
/// reads most-significant bit first as the rows `AB = 00, 01, 10, 11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinOp(u8);

impl BinOp {
    pub const AND: BinOp = BinOp(0b0001);
    pub const GREATER: BinOp = BinOp(0b0010);
    pub const LESS: BinOp = BinOp(0b0100);
    pub const XOR: BinOp = BinOp(0b0110);
    pub const OR: BinOp = BinOp(0b0111);
    pub const NOR: BinOp = BinOp(0b1000);
    pub const EQ: BinOp = BinOp(0b1001);
    /// `A <= B`, converse implication (`A + ~B`).
    pub const CONV_IMPL: BinOp = BinOp(0b1011);
    /// `A => B`.
    pub const IMPL: BinOp = BinOp(0b1101);
    pub const NAND: BinOp = BinOp(0b1110);

    /// The operators with a dedicated bitwise definition.
    pub const NAMED: [BinOp; 10] = [
        BinOp::AND,
        BinOp::OR,
        BinOp::XOR,
        BinOp::LESS,
        BinOp::GREATER,
        BinOp::EQ,
        BinOp::IMPL,
        BinOp::CONV_IMPL,
        BinOp::NAND,
        BinOp::NOR,
    ];

    pub fn from_code(code: u8) -> Result<BinOp> {
        if code > 0b1111 {
            return Err(Error::usage(format!(
                "operator table {code:#b} does not fit in 4 bits"
            )));
        }
        Ok(BinOp(code))
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    /// Short identifier used by library names and configs.
    pub fn name(self) -> Option<&'static str> {
        Some(match self {
            BinOp::AND => "and",
            BinOp::OR => "or",
            BinOp::XOR => "xor",
            BinOp::LESS => "less",
            BinOp::GREATER => "greater",
            BinOp::EQ => "eq",
            BinOp::IMPL => "impl",
            BinOp::CONV_IMPL => "conv_impl",
            BinOp::NAND => "nand",
            BinOp::NOR => "nor",
            _ => return None,
        })
    }

    pub fn from_name(name: &str) -> Option<BinOp> {
        Some(match name {
            "and" | "*" => BinOp::AND,
            "or" | "+" => BinOp::OR,
            "xor" | "^" => BinOp::XOR,
            "less" | "<" => BinOp::LESS,
            "greater" | ">" => BinOp::GREATER,
            "eq" | "=" => BinOp::EQ,
            "impl" | "=>" => BinOp::IMPL,
            "conv_impl" | "<=" => BinOp::CONV_IMPL,
            "nand" => BinOp::NAND,
            "nor" => BinOp::NOR,
            _ => return None,
        })
    }

    /// Operator with its arguments swapped.
    pub fn swapped(self) -> BinOp {
        let c = self.0;
        // rows (1,0) and (0,1) trade places
        BinOp((c & 0b1001) | ((c & 0b0010) << 1) | ((c & 0b0100) >> 1))
    }

    /// Value on a single row.
    #[inline]
    pub fn eval_bool(self, a: bool, b: bool) -> bool {
        let row = ((!a as u8) << 1) | (!b as u8);
        (self.0 >> row) & 1 == 1
    }

    /// Bitwise evaluation on raw words already masked to `mask`.
    #[inline]
    pub fn eval_bits(self, a: u64, b: u64, mask: u64) -> u64 {
        match self.0 {
            0b0000 => 0,
            0b0001 => a & b,
            0b0010 => a ^ (a & b),
            0b0011 => a,
            0b0100 => a ^ (a | b),
            0b0101 => b,
            0b0110 => a ^ b,
            0b0111 => a | b,
            0b1000 => mask ^ (a | b),
            0b1001 => mask ^ (a ^ b),
            0b1010 => mask ^ b,
            0b1011 => a | (mask ^ b),
            0b1100 => mask ^ a,
            0b1101 => (mask ^ a) | b,
            0b1110 => mask ^ (a & b),
            _ => mask,
        }
    }
}

/// Truth table of a function of `num_vars` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    num_vars: u8,
    bits: u64,
}

impl TruthTable {
    pub fn new(num_vars: usize, bits: u64) -> Result<TruthTable> {
        check_vars(num_vars)?;
        if bits & !mask_bits(num_vars) != 0 {
            return Err(Error::usage(format!(
                "bits {bits:#x} exceed the {} rows of a {num_vars}-variable table",
                1u32 << num_vars
            )));
        }
        Ok(TruthTable { num_vars: num_vars as u8, bits })
    }

    pub(crate) const fn from_raw(num_vars: usize, bits: u64) -> TruthTable {
        TruthTable { num_vars: num_vars as u8, bits }
    }

    pub fn constant(num_vars: usize, value: bool) -> Result<TruthTable> {
        check_vars(num_vars)?;
        Ok(TruthTable::from_raw(num_vars, if value { mask_bits(num_vars) } else { 0 }))
    }

    pub fn var(num_vars: usize, k: usize) -> Result<TruthTable> {
        var_table(num_vars, k)
    }

    /// Table of an `n`-variable function given by its value on each assignment.
    pub fn from_fn(num_vars: usize, f: impl Fn(&[bool]) -> bool) -> Result<TruthTable> {
        check_vars(num_vars)?;
        let mut bits = 0u64;
        let mut assignment = vec![false; num_vars];
        for r in 0..(1usize << num_vars) {
            assignment_of_row(num_vars, r, &mut assignment);
            if f(&assignment) {
                bits |= 1 << r;
            }
        }
        Ok(TruthTable::from_raw(num_vars, bits))
    }

    pub fn num_vars(self) -> usize {
        self.num_vars as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn mask(self) -> u64 {
        mask_bits(self.num_vars())
    }

    pub fn num_rows(self) -> usize {
        1 << self.num_vars
    }

    pub fn complement(self) -> TruthTable {
        TruthTable { num_vars: self.num_vars, bits: self.bits ^ self.mask() }
    }

    pub fn apply(self, op: BinOp, other: TruthTable) -> Result<TruthTable> {
        apply_op(op, self, other)
    }

    /// Value on an assignment given as `[x_0, x_1, ...]`.
    pub fn value_at(self, assignment: &[bool]) -> bool {
        let r = row_of_assignment(assignment);
        (self.bits >> r) & 1 == 1
    }

    /// Bit string of all rows, first row (all inputs false) leftmost.
    pub fn to_binary_string(self) -> String {
        format!("0b{:0width$b}", self.bits, width = self.num_rows())
    }

    pub fn to_hex_string(self) -> String {
        format!("{:#X}", self.bits).replacen("0X", "0x", 1)
    }
}

/// Bit index holding the value of `assignment` (`x_0` first).
pub fn row_of_assignment(assignment: &[bool]) -> usize {
    let n = assignment.len();
    let number = assignment.iter().fold(0usize, |acc, &v| (acc << 1) | v as usize);
    (1usize << n) - 1 - number
}

fn assignment_of_row(num_vars: usize, row: usize, out: &mut [bool]) {
    let number = (1usize << num_vars) - 1 - row;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = (number >> (num_vars - 1 - k)) & 1 == 1;
    }
}

pub fn all_ones_mask(num_vars: usize) -> Result<TruthTable> {
    TruthTable::constant(num_vars, true)
}

/// Table of variable `x_k` among `num_vars`.
pub fn var_table(num_vars: usize, k: usize) -> Result<TruthTable> {
    check_vars(num_vars)?;
    if k >= num_vars {
        return Err(Error::Index { index: k, num_vars });
    }
    let mask = mask_bits(num_vars);
    let shift = 1u32 << (num_vars - k - 1);
    // (2^(2^n)-1) / (2^shift + 1); the divisor overflows only for shift = 64,
    // which needs n - k - 1 = 6 and cannot happen with n <= 6.
    let divisor = (1u64 << shift) + 1;
    Ok(TruthTable::from_raw(num_vars, mask / divisor))
}

pub fn apply_op(op: BinOp, a: TruthTable, b: TruthTable) -> Result<TruthTable> {
    if a.num_vars != b.num_vars {
        return Err(Error::usage(format!(
            "cannot combine tables over {} and {} variables",
            a.num_vars, b.num_vars
        )));
    }
    Ok(TruthTable {
        num_vars: a.num_vars,
        bits: op.eval_bits(a.bits, b.bits, a.mask()),
    })
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:{}", self.num_vars, self.to_hex_string())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    /// Accepts `n=K:0xHEX`, `n=K:0bBITS` or a bare `0bBITS` whose length is a
    /// power of two.
    fn from_str(s: &str) -> Result<TruthTable> {
        let s = s.trim();
        let bad = |msg: &str| Error::usage(format!("invalid truth table `{s}`: {msg}"));
        let (num_vars, body) = match s.strip_prefix("n=") {
            Some(rest) => {
                let (n, body) = rest.split_once(':').ok_or_else(|| bad("missing `:`"))?;
                let n: usize = n.trim().parse().map_err(|_| bad("bad variable count"))?;
                check_vars(n)?;
                (Some(n), body.trim())
            }
            None => (None, s),
        };
        let (radix, digits) = if let Some(d) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
            (16, d)
        } else if let Some(d) = body.strip_prefix("0b").or_else(|| body.strip_prefix("0B")) {
            (2, d)
        } else {
            return Err(bad("expected a 0x or 0b prefix"));
        };
        let digits: String = digits.chars().filter(|&c| c != '_').collect();
        if digits.is_empty() {
            return Err(bad("no digits"));
        }
        let bits = u64::from_str_radix(&digits, radix).map_err(|_| bad("bad digits"))?;
        let num_vars = match num_vars {
            Some(n) => n,
            None => {
                let len = digits.len();
                if radix != 2 || !len.is_power_of_two() || len > 64 {
                    return Err(bad("variable count needs an `n=K:` prefix"));
                }
                len.trailing_zeros() as usize
            }
        };
        TruthTable::new(num_vars, bits).map_err(|e| match e {
            Error::Capacity(_) => e,
            _ => bad("bits exceed the table size"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks() {
        assert_eq!(all_ones_mask(0).unwrap().bits(), 1);
        assert_eq!(all_ones_mask(2).unwrap().bits(), 15);
        assert_eq!(all_ones_mask(3).unwrap().bits(), 255);
        assert_eq!(all_ones_mask(6).unwrap().bits(), u64::MAX);
        assert_eq!(all_ones_mask(7), Err(Error::Capacity(7)));
    }

    #[test]
    fn variables() {
        assert_eq!(var_table(2, 0).unwrap().bits(), 0b0011);
        assert_eq!(var_table(2, 1).unwrap().bits(), 0b0101);
        assert_eq!(var_table(3, 0).unwrap().bits(), 15);
        assert_eq!(var_table(3, 1).unwrap().bits(), 51);
        assert_eq!(var_table(3, 2).unwrap().bits(), 85);
        assert_eq!(var_table(2, 2), Err(Error::Index { index: 2, num_vars: 2 }));
        assert_eq!(var_table(7, 0), Err(Error::Capacity(7)));
    }

    #[test]
    fn ops() {
        let a = TruthTable::new(2, 0b0011).unwrap();
        let b = TruthTable::new(2, 0b0101).unwrap();
        assert_eq!(apply_op(BinOp::LESS, a, b).unwrap().bits(), 0b0100);
        assert_eq!(apply_op(BinOp::NAND, a, b).unwrap().bits(), 0b1110);
        assert_eq!(apply_op(BinOp::XOR, a, a).unwrap().bits(), 0);
        for code in 0..16u8 {
            let op = BinOp::from_code(code).unwrap();
            assert_eq!(apply_op(op, a, b).unwrap().bits(), code as u64);
        }
        let c = TruthTable::new(3, 1).unwrap();
        assert!(matches!(apply_op(BinOp::AND, a, c), Err(Error::Usage(_))));
    }

    #[test]
    fn swapped_ops() {
        assert_eq!(BinOp::LESS.swapped(), BinOp::GREATER);
        assert_eq!(BinOp::IMPL.swapped(), BinOp::CONV_IMPL);
        assert_eq!(BinOp::AND.swapped(), BinOp::AND);
    }

    #[test]
    fn rows() {
        let a = var_table(3, 0).unwrap();
        assert!(a.value_at(&[true, false, false]));
        assert!(!a.value_at(&[false, true, true]));
        assert_eq!(row_of_assignment(&[true, true]), 0);
        assert_eq!(row_of_assignment(&[false, false]), 3);
        let xor = TruthTable::from_fn(2, |v| v[0] ^ v[1]).unwrap();
        assert_eq!(xor.bits(), 0b0110);
    }

    #[test]
    fn text_forms() {
        let t: TruthTable = "n=3:0x1E".parse().unwrap();
        assert_eq!((t.num_vars(), t.bits()), (3, 0x1E));
        assert_eq!(t.to_string(), "n=3:0x1E");
        assert_eq!(t.to_binary_string(), "0b00011110");
        let u: TruthTable = "0b00011110".parse().unwrap();
        assert_eq!(t, u);
        let v: TruthTable = "n=2:0b0110".parse().unwrap();
        assert_eq!(v.bits(), 6);
        assert_eq!(TruthTable::new(1, 1).unwrap().to_binary_string(), "0b01");
        assert!("n=2:0x1F".parse::<TruthTable>().is_err());
        assert!("0x6".parse::<TruthTable>().is_err());
        assert_eq!("n=7:0x1".parse::<TruthTable>(), Err(Error::Capacity(7)));
    }
}
