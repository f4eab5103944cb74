// SPDX-License-Identifier: Apache-2.0

//! Fully specified single-output truth tables in PLA-like text form.
//!
//! One row per line, `<input bits> <output bit>`, with `x0` as the leftmost
//! input bit. Every one of the `2^n` rows must appear exactly once. Lines
//! starting with `#` and espresso-style `.` directives are ignored.

use std::path::Path;

use crate::error::{Error, Result};
use crate::rewrite::Literal;
use crate::truthtab::{row_of_assignment, TruthTable, MAX_VARS};

pub fn parse_pla(text: &str) -> Result<TruthTable> {
    let mut num_vars: Option<usize> = None;
    let mut seen = 0u64;
    let mut bits = 0u64;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('.') {
            continue;
        }
        let bad = |msg: String| Error::usage(format!("PLA line {}: {msg}", lineno + 1));
        let mut fields = line.split_whitespace();
        let (inputs, output) = match (fields.next(), fields.next(), fields.next()) {
            (Some(i), Some(o), None) => (i, o),
            _ => return Err(bad("expected `<input bits> <output bit>`".into())),
        };
        let n = *num_vars.get_or_insert(inputs.len());
        if n != inputs.len() {
            return Err(bad(format!("expected {n} input bits, found {}", inputs.len())));
        }
        if n > MAX_VARS {
            return Err(Error::Capacity(n));
        }
        let assignment = inputs
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad(format!("input bit `{c}` is not 0 or 1 (don't-cares are not supported)"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let value = match output {
            "0" => false,
            "1" => true,
            _ => return Err(bad(format!("output `{output}` is not 0 or 1"))),
        };
        let row = row_of_assignment(&assignment);
        if seen >> row & 1 == 1 {
            return Err(bad(format!("row {inputs} given twice")));
        }
        seen |= 1 << row;
        bits |= (value as u64) << row;
    }
    let n = num_vars.ok_or_else(|| Error::usage("PLA input has no rows"))?;
    let table = TruthTable::new(n, bits)?;
    if seen != table.mask() {
        let missing = (1usize << n) - seen.count_ones() as usize;
        return Err(Error::usage(format!("PLA input leaves {missing} of {} rows unspecified", 1usize << n)));
    }
    Ok(table)
}

pub fn load_pla(path: &Path) -> Result<TruthTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_pla(&text)
}

fn rows(table: TruthTable, value: bool) -> Vec<Vec<bool>> {
    let n = table.num_vars();
    (0..1usize << n)
        .map(|number| (0..n).map(|k| (number >> (n - 1 - k)) & 1 == 1).collect::<Vec<_>>())
        .filter(|a| table.value_at(a) == value)
        .collect()
}

/// One product term per true row, in ascending assignment order.
pub fn minterms(table: TruthTable) -> Vec<Vec<Literal>> {
    rows(table, true)
        .into_iter()
        .map(|a| a.iter().enumerate().map(|(k, &v)| Literal { var: k, negated: !v }).collect())
        .collect()
}

/// One sum term per false row, in ascending assignment order.
pub fn maxterms(table: TruthTable) -> Vec<Vec<Literal>> {
    rows(table, false)
        .into_iter()
        .map(|a| a.iter().enumerate().map(|(k, &v)| Literal { var: k, negated: v }).collect())
        .collect()
}
