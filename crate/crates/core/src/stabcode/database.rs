//! Built-in small codes. Every entry is validated and its distance is
//! brute-forced when it is loaded, so a typo in a generator cannot survive.

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

use super::build::{bacon_shor_ad, css_code, find_logicals, subcode_fix_logical, LogicalKind};
use super::distance::{distance, Distance};
use super::StabilizerCode;
use crate::bits::BitVec;

const NAMES: [&str; 8] = ["dualrail", "leung_4_1", "five_1_3", "shor_9_1", "h8_8_3_3", "c4_2_2", "c4_1_2", "c6_4_2"];

pub fn database_names() -> &'static [&'static str] {
    &NAMES
}

fn all_ones(n: usize) -> BitVec {
    BitVec::from_indices(n, &(0..n).collect::<Vec<_>>())
}

/// Looks up a named code, certifying it against its recorded distance.
pub fn get_code(name: &str) -> Result<StabilizerCode> {
    let (code, d) = match name {
        "dualrail" => (StabilizerCode::from_strings(name, &["-ZZ"], &["XX"], &["ZI"])?, 1),
        "leung_4_1" => (StabilizerCode::from_strings(name, &["XXXX", "ZZII", "IIZZ"], &["XXII"], &["ZIZI"])?, 2),
        "five_1_3" => {
            (StabilizerCode::from_strings(name, &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"], &["XXXXX"], &["ZZZZZ"])?, 3)
        }
        "shor_9_1" => (bacon_shor_ad(2)?, 3),
        "h8_8_3_3" => {
            let gens = ["XXXXXXXX", "ZZZZZZZZ", "IXIXYZYZ", "IXZYIXZY", "IYXZXZIY"]
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<PauliOperator>>>()?;
            let (lx, lz) = find_logicals(8, &gens)?;
            (StabilizerCode::new(name, 8, gens, lx, lz)?, 3)
        }
        "c4_2_2" => (css_code(4, &[all_ones(4)], &[all_ones(4)])?, 2),
        "c4_1_2" => (subcode_fix_logical(&get_code("c4_2_2")?, 1, LogicalKind::X)?, 2),
        "c6_4_2" => (css_code(6, &[all_ones(6)], &[all_ones(6)])?, 2),
        _ => return Err(Error::UnknownCode(name.to_string())),
    };
    let code = code.with_name(name).validated()?;
    let found = distance(&code, d)?;
    if found != Distance::Exact(d) {
        return Err(Error::Precondition(format!("built-in code {name} has distance {found}, expected {d}")));
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for name in database_names() {
            let code = get_code(name).unwrap();
            assert_eq!(code.name(), *name);
        }
    }

    #[test]
    fn parameters() {
        let nk = |s: &str| {
            let c = get_code(s).unwrap();
            (c.n(), c.k())
        };
        assert_eq!(nk("dualrail"), (2, 1));
        assert_eq!(nk("leung_4_1"), (4, 1));
        assert_eq!(nk("shor_9_1"), (9, 1));
        assert_eq!(nk("h8_8_3_3"), (8, 3));
        assert_eq!(nk("c4_1_2"), (4, 1));
        assert_eq!(nk("c6_4_2"), (6, 4));
    }

    #[test]
    fn five_qubit_generators_verbatim() {
        let code = get_code("five_1_3").unwrap();
        let g: Vec<String> = code.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(g, ["+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"]);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(get_code("steane").unwrap_err(), Error::UnknownCode("steane".into()));
    }
}
