// SPDX-License-Identifier: Apache-2.0

//! Gate libraries and cost models.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::truthtab::BinOp;

/// Transistor count of a `<` gate in pass-transistor logic.
pub const LESS_TRANSISTORS: u32 = 4;
pub const NAND_TRANSISTORS: u32 = 4;
pub const NOR_TRANSISTORS: u32 = 4;
/// Constants are wired to the supply rails.
pub const CONSTANT_TRANSISTORS: u32 = 0;

/// Default transistor weight for a built-in operator.
pub fn default_transistor_cost(op: BinOp) -> u32 {
    match op {
        BinOp::LESS | BinOp::GREATER => LESS_TRANSISTORS,
        BinOp::NAND => NAND_TRANSISTORS,
        BinOp::NOR => NOR_TRANSISTORS,
        BinOp::AND | BinOp::OR | BinOp::IMPL | BinOp::CONV_IMPL => 6,
        BinOp::XOR | BinOp::EQ => 12,
        _ => 8,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub name: String,
    pub op: BinOp,
    pub transistors: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CostModel {
    #[default]
    GateCount,
    TransistorCount,
}

impl CostModel {
    pub fn gate_cost(self, gate: &Gate) -> u64 {
        match self {
            CostModel::GateCount => 1,
            CostModel::TransistorCount => gate.transistors as u64,
        }
    }
}

impl std::str::FromStr for CostModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<CostModel> {
        match s {
            "gates" | "gate_count" => Ok(CostModel::GateCount),
            "transistors" | "transistor_count" => Ok(CostModel::TransistorCount),
            _ => Err(Error::usage(format!("unknown cost model `{s}` (use gates or transistors)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateLibrary {
    name: String,
    gates: Vec<Gate>,
    constants: Vec<bool>,
}

/// The fifteen built-in libraries, in the order of the expressiveness table.
pub const BUILTIN_LIBRARIES: [&str; 15] = [
    "nand",
    "nor",
    "nand,1",
    "nor,0",
    "and,nand",
    "less,nor",
    "impl,0",
    "less,1",
    "and,less,1",
    "and,xor,1",
    "less,nand,1",
    "less,nor,1",
    "and,eq,0",
    "impl,eq,0",
    "less,eq,1",
];

impl GateLibrary {
    pub fn new(name: impl Into<String>, gates: Vec<Gate>, constants: &[bool]) -> Result<GateLibrary> {
        let name = name.into();
        if gates.is_empty() {
            return Err(Error::usage(format!("library `{name}` has no gates")));
        }
        for (i, g) in gates.iter().enumerate() {
            if gates[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::usage(format!("gate `{}` defined twice", g.name)));
            }
            if gates[..i].iter().any(|h| h.op == g.op) {
                return Err(Error::usage(format!(
                    "gates `{}` and another gate share the table {:04b}",
                    g.name,
                    g.op.code()
                )));
            }
        }
        let mut consts = Vec::new();
        for v in [false, true] {
            if constants.contains(&v) {
                consts.push(v);
            }
        }
        Ok(GateLibrary { name, gates, constants: consts })
    }

    /// Library from built-in operators with their default transistor weights.
    pub fn from_ops(name: impl Into<String>, ops: &[BinOp], constants: &[bool]) -> Result<GateLibrary> {
        let gates = ops
            .iter()
            .map(|&op| Gate {
                name: op.name().map(str::to_owned).unwrap_or_else(|| format!("op{:04b}", op.code())),
                op,
                transistors: default_transistor_cost(op),
            })
            .collect();
        GateLibrary::new(name, gates, constants)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Available leaf constants, `false` before `true`.
    pub fn constants(&self) -> &[bool] {
        &self.constants
    }

    pub fn has_op(&self, op: BinOp) -> bool {
        self.gates.iter().any(|g| g.op == op)
    }

    pub fn has_constant(&self, value: bool) -> bool {
        self.constants.contains(&value)
    }

    /// Whether circuits produced by the `<` rewriter are expressible here.
    pub fn supports_less_form(&self) -> bool {
        self.has_op(BinOp::LESS) && self.has_constant(true)
    }

    pub fn gate_for(&self, op: BinOp) -> Option<&Gate> {
        self.gates.iter().find(|g| g.op == op)
    }

    /// Library without the gate at `index`.
    pub fn without_gate(&self, index: usize) -> Option<GateLibrary> {
        let mut gates = self.gates.clone();
        gates.remove(index);
        if gates.is_empty() {
            return None;
        }
        Some(GateLibrary { name: format!("{}-{}", self.name, self.gates[index].name), gates, constants: self.constants.clone() })
    }

    pub fn without_constant(&self, value: bool) -> GateLibrary {
        GateLibrary {
            name: format!("{}-{}", self.name, value as u8),
            gates: self.gates.clone(),
            constants: self.constants.iter().copied().filter(|&c| c != value).collect(),
        }
    }

    /// Loads a library description:
    ///
    /// ```text
    /// # comment
    /// less = 0b0100 cost 4
    /// constants = 1
    /// ```
    pub fn from_config(name: impl Into<String>, text: &str) -> Result<GateLibrary> {
        let mut gates = Vec::new();
        let mut constants = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::usage(format!("library config line {}: {msg}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected `name = ...`"))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "constants" {
                for c in value.split(',').map(str::trim).filter(|c| !c.is_empty()) {
                    match c {
                        "0" => constants.push(false),
                        "1" => constants.push(true),
                        _ => return Err(bad("constants must be 0 or 1")),
                    }
                }
                continue;
            }
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(bad("gate names are alphanumeric"));
            }
            let mut words = value.split_whitespace();
            let table = words
                .next()
                .and_then(|t| t.strip_prefix("0b"))
                .filter(|t| t.len() == 4)
                .and_then(|t| u8::from_str_radix(t, 2).ok())
                .ok_or_else(|| bad("expected a 4-bit table such as 0b0100"))?;
            let transistors = match (words.next(), words.next(), words.next()) {
                (Some("cost"), Some(c), None) => c.parse().map_err(|_| bad("cost must be a non-negative integer"))?,
                _ => return Err(bad("expected `cost <int>` after the table")),
            };
            gates.push(Gate { name: key.to_owned(), op: BinOp::from_code(table)?, transistors });
        }
        GateLibrary::new(name, gates, &constants)
    }

    pub fn load(path: &Path) -> Result<GateLibrary> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        GateLibrary::from_config(name, &text)
    }
}

impl fmt::Display for GateLibrary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn canonical_token(token: &str) -> Option<String> {
    match token {
        "0" | "1" => Some(token.to_owned()),
        _ => BinOp::from_name(token).and_then(BinOp::name).map(str::to_owned),
    }
}

/// Canonical name of a built-in library, accepting symbol aliases such as
/// `<,1` or `*,^,1`.
pub fn canonical_library_name(name: &str) -> Option<&'static str> {
    let tokens: Option<Vec<String>> = name.split(',').map(|t| canonical_token(t.trim())).collect();
    let joined = tokens?.join(",");
    BUILTIN_LIBRARIES.iter().copied().find(|b| *b == joined)
}

pub fn builtin_library(name: &str) -> Result<GateLibrary> {
    let canonical = canonical_library_name(name).ok_or_else(|| Error::UnknownLibrary {
        name: name.to_owned(),
        valid: BUILTIN_LIBRARIES.join(" | "),
    })?;
    let mut ops = Vec::new();
    let mut constants = Vec::new();
    for token in canonical.split(',') {
        match token {
            "0" => constants.push(false),
            "1" => constants.push(true),
            op => ops.push(BinOp::from_name(op).expect("built-in names are valid")),
        }
    }
    GateLibrary::from_ops(canonical, &ops, &constants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truthtab::{apply_op, var_table};

    #[test]
    fn builtins() {
        let lib = builtin_library("less,1").unwrap();
        assert_eq!(lib.gates().len(), 1);
        assert_eq!(lib.gates()[0].op, BinOp::LESS);
        assert_eq!(lib.gates()[0].transistors, 4);
        assert_eq!(lib.constants(), &[true]);
        let nand = builtin_library("nand").unwrap();
        assert_eq!(nand.gates()[0].transistors, 4);
        assert!(nand.constants().is_empty());
        let axo = builtin_library("*,^,1").unwrap();
        assert_eq!(axo.name(), "and,xor,1");
        assert_eq!(axo.gates().iter().map(|g| g.op).collect::<Vec<_>>(), vec![BinOp::AND, BinOp::XOR]);
        assert_eq!(builtin_library("<,1").unwrap(), lib);
        for name in BUILTIN_LIBRARIES {
            assert_eq!(builtin_library(name).unwrap().name(), name);
        }
    }

    #[test]
    fn unknown_library_lists_names() {
        match builtin_library("less,xor") {
            Err(Error::UnknownLibrary { valid, .. }) => assert!(valid.contains("less,1")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn builtin_gate_semantics_match_bitwise_ops() {
        let a = var_table(2, 0).unwrap();
        let b = var_table(2, 1).unwrap();
        for name in BUILTIN_LIBRARIES {
            for g in builtin_library(name).unwrap().gates() {
                let got = apply_op(g.op, a, b).unwrap();
                for (r, (x, y)) in [(true, true), (true, false), (false, true), (false, false)].into_iter().enumerate() {
                    let want = match g.op {
                        BinOp::AND => x && y,
                        BinOp::XOR => x != y,
                        BinOp::LESS => !x && y,
                        BinOp::EQ => x == y,
                        BinOp::IMPL => !x || y,
                        BinOp::NAND => !(x && y),
                        BinOp::NOR => !(x || y),
                        other => panic!("unexpected gate {other:?}"),
                    };
                    assert_eq!((got.bits() >> r) & 1 == 1, want, "{name} {} row {r}", g.name);
                }
            }
        }
    }

    #[test]
    fn config_files() {
        let lib = GateLibrary::from_config("mine", "# test\nlt = 0b0100 cost 4\nconstants = 1\n").unwrap();
        assert_eq!(lib.gates()[0].op, BinOp::LESS);
        assert!(lib.supports_less_form());
        assert!(GateLibrary::from_config("x", "lt = 0b01 cost 4").is_err());
        assert!(GateLibrary::from_config("x", "lt = 0b0100").is_err());
        assert!(GateLibrary::from_config("x", "constants = 1").is_err());
        assert!(GateLibrary::from_config("x", "a = 0b0100 cost 1\na = 0b0001 cost 1").is_err());
        assert!(GateLibrary::from_config("x", "constants = 2\na = 0b0001 cost 1").is_err());
    }

    #[test]
    fn cost_models() {
        let lib = builtin_library("less,1").unwrap();
        assert_eq!(CostModel::GateCount.gate_cost(&lib.gates()[0]), 1);
        assert_eq!(CostModel::TransistorCount.gate_cost(&lib.gates()[0]), 4);
        assert_eq!(CONSTANT_TRANSISTORS, 0);
        assert_eq!("transistors".parse::<CostModel>().unwrap(), CostModel::TransistorCount);
    }
}
