//! Plain-text and JSON code files.
//!
//! ```text
//! CODE n=2 k=1 name=dualrail
//! STABILIZER
//! -ZZ
//! LOGICAL_X
//! +XX
//! LOGICAL_Z
//! +ZI
//! ```
//!
//! Blank lines and `#` comments are skipped when parsing. Emission is
//! canonical, so parse followed by emit reproduces a canonical file exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

use super::StabilizerCode;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Stabilizer,
    LogicalX,
    LogicalZ,
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::CodeParse { line, reason: reason.into() }
}

fn header_field(line: usize, token: &str, key: &str) -> Result<usize> {
    token
        .strip_prefix(key)
        .and_then(|v| v.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=<value>, found {token:?}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("{key} is not a non-negative integer")))
}

/// Parses a code file. Only structure is checked here; call
/// [`StabilizerCode::validate`] for the algebraic invariants.
pub fn parse_code(text: &str) -> Result<StabilizerCode> {
    let mut header: Option<(usize, usize, String)> = None;
    let mut section: Option<Section> = None;
    let mut gens = Vec::new();
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((n, _, _)) = header.as_ref() else {
            let mut tokens = content.split_whitespace();
            if tokens.next() != Some("CODE") {
                return Err(parse_err(line, "expected header `CODE n=<n> k=<k> [name=<label>]`"));
            }
            let n = header_field(line, tokens.next().unwrap_or(""), "n")?;
            let k = header_field(line, tokens.next().unwrap_or(""), "k")?;
            let name = match tokens.next() {
                None => "code".to_string(),
                Some(t) => t
                    .strip_prefix("name=")
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| parse_err(line, format!("expected name=<label>, found {t:?}")))?
                    .to_string(),
            };
            if let Some(extra) = tokens.next() {
                return Err(parse_err(line, format!("unexpected token {extra:?} in header")));
            }
            header = Some((n, k, name));
            continue;
        };
        let n = *n;
        match content {
            "STABILIZER" => section = Some(Section::Stabilizer),
            "LOGICAL_X" => section = Some(Section::LogicalX),
            "LOGICAL_Z" => section = Some(Section::LogicalZ),
            _ => {
                let target = match section {
                    None => return Err(parse_err(line, "operator before any section header")),
                    Some(Section::Stabilizer) => &mut gens,
                    Some(Section::LogicalX) => &mut lx,
                    Some(Section::LogicalZ) => &mut lz,
                };
                let op: PauliOperator = content.parse().map_err(|e| parse_err(line, format!("{e}")))?;
                if op.num_qubits() != n {
                    return Err(parse_err(line, format!("operator has {} qubits, header says n={n}", op.num_qubits())));
                }
                target.push(op);
            }
        }
    }
    let last = text.lines().count().max(1);
    let (n, k, name) = header.ok_or_else(|| parse_err(last, "missing CODE header"))?;
    if lx.len() != k || lz.len() != k {
        return Err(parse_err(
            last,
            format!("header says k={k} but found {} logical X and {} logical Z", lx.len(), lz.len()),
        ));
    }
    StabilizerCode::new(name, n, gens, lx, lz)
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CODE n={} k={} name={}", self.n(), self.k(), self.name())?;
        let sections =
            [("STABILIZER", self.generators()), ("LOGICAL_X", self.logical_x()), ("LOGICAL_Z", self.logical_z())];
        for (title, ops) in sections {
            writeln!(f, "{title}")?;
            for op in ops {
                writeln!(f, "{op}")?;
            }
        }
        Ok(())
    }
}

/// JSON form of a code file with the same fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub stabilizer: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
}

impl From<&StabilizerCode> for CodeJson {
    fn from(code: &StabilizerCode) -> Self {
        let strings = |ops: &[PauliOperator]| ops.iter().map(|p| p.to_string()).collect();
        Self {
            name: code.name().to_string(),
            n: code.n(),
            k: code.k(),
            stabilizer: strings(code.generators()),
            logical_x: strings(code.logical_x()),
            logical_z: strings(code.logical_z()),
        }
    }
}

impl TryFrom<&CodeJson> for StabilizerCode {
    type Error = Error;

    fn try_from(json: &CodeJson) -> Result<Self> {
        let parse = |v: &[String]| v.iter().map(|s| s.parse()).collect::<Result<Vec<PauliOperator>>>();
        if json.logical_x.len() != json.k {
            return Err(Error::Precondition(format!("k={} but {} logical X operators", json.k, json.logical_x.len())));
        }
        StabilizerCode::new(
            json.name.clone(),
            json.n,
            parse(&json.stabilizer)?,
            parse(&json.logical_x)?,
            parse(&json.logical_z)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabcode::get_code;

    const DUALRAIL: &str = "CODE n=2 k=1 name=dualrail\nSTABILIZER\n-ZZ\nLOGICAL_X\n+XX\nLOGICAL_Z\n+ZI\n";

    #[test]
    fn canonical_roundtrip_is_byte_identical() {
        let code = parse_code(DUALRAIL).unwrap();
        assert_eq!(code.to_string(), DUALRAIL);
        assert_eq!(code, get_code("dualrail").unwrap());
    }

    #[test]
    fn comments_blank_lines_and_unsigned_strings() {
        let text = "# dual rail\n\nCODE n=2 k=1\nSTABILIZER\n  -ZZ  # block parity\nLOGICAL_X\nXX\n\nLOGICAL_Z\nZI\n";
        let code = parse_code(text).unwrap();
        assert_eq!(code.name(), "code");
        assert!(code.validate().is_pass());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "CODE n=2 k=1\nSTABILIZER\n-ZQ\n";
        assert!(matches!(parse_code(bad), Err(Error::CodeParse { line: 3, .. })));
        let wrong_len = "CODE n=2 k=0\nSTABILIZER\nZZZ\n";
        assert!(matches!(parse_code(wrong_len), Err(Error::CodeParse { line: 3, .. })));
        let no_section = "CODE n=1 k=0\nZ\n";
        assert!(matches!(parse_code(no_section), Err(Error::CodeParse { line: 2, .. })));
        assert!(matches!(parse_code("COD n=1"), Err(Error::CodeParse { line: 1, .. })));
        assert!(matches!(parse_code("CODE n=x k=0"), Err(Error::CodeParse { line: 1, .. })));
        assert!(matches!(parse_code(""), Err(Error::CodeParse { .. })));
        let k_mismatch = "CODE n=2 k=1\nSTABILIZER\n-ZZ\n";
        assert!(parse_code(k_mismatch).is_err());
    }

    #[test]
    fn json_mirrors_text() {
        let code = get_code("five_1_3").unwrap();
        let json = CodeJson::from(&code);
        assert_eq!(json.stabilizer[0], "+XZZXI");
        let back = StabilizerCode::try_from(&json).unwrap();
        assert_eq!(back, code);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.starts_with(r#"{"name":"five_1_3","n":5,"k":1,"stabilizer":["#));
    }
}
