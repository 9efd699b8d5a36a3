//! Published asymptotic coefficients, shipped as data for comparison.
//!
//! The table lives in `data/reference_tables.toml`; see the header of that
//! file for the meaning of each field.

use std::str::FromStr;

use serde::Deserialize;

use crate::asymptotics::{AsymptoticContribution, AsymptoticPrefactor, LinearFactor};
use crate::exact::{rat, ExactRat};
use crate::{Error, Result};

/// Raw text of the embedded reference table.
pub const REFERENCE_TOML: &str = include_str!("../data/reference_tables.toml");

#[derive(Debug, Deserialize)]
struct RawTable {
    cell: Vec<RawCell>,
}

#[derive(Debug, Deserialize)]
struct RawCell {
    legs: u32,
    family: u32,
    sign: i8,
    scalar: String,
    radicand: String,
    base: u32,
    factors: Vec<[i64; 2]>,
    printed: Vec<String>,
}

/// One published row: prefactor and the subtracted coefficients `c_1..c_6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceCell {
    pub legs: u32,
    pub family: u32,
    pub prefactor: AsymptoticPrefactor,
    pub printed: Vec<ExactRat>,
}

fn parse_rat(s: &str) -> Result<ExactRat> {
    ExactRat::from_str(s.trim()).map_err(|e| Error::Reference(format!("bad fraction {s:?}: {e}")))
}

/// All published rows, in file order.
pub fn reference_cells() -> Result<Vec<ReferenceCell>> {
    parse_reference(REFERENCE_TOML)
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceCell>> {
    let raw: RawTable = toml::from_str(text).map_err(|e| Error::Reference(e.to_string()))?;
    raw.cell
        .into_iter()
        .map(|c| {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Reference(format!("sign must be +-1, got {}", c.sign)));
            }
            let prefactor = AsymptoticPrefactor {
                sign: c.sign,
                scalar: parse_rat(&c.scalar)?,
                radicand: parse_rat(&c.radicand)?,
                base: rat(i64::from(c.base), 1),
                factorial: true,
                factors: c
                    .factors
                    .iter()
                    .map(|&[a, b]| LinearFactor::new(rat(a, 1), rat(b, 1)))
                    .collect(),
                m_power: 0,
            };
            let printed = c.printed.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?;
            Ok(ReferenceCell { legs: c.legs, family: c.family, prefactor, printed })
        })
        .collect()
}

/// The published row for `(N, n)`, if any.
pub fn reference_cell(legs: u32, family: u32) -> Result<Option<ReferenceCell>> {
    Ok(reference_cells()?.into_iter().find(|c| c.legs == legs && c.family == family))
}

/// Cell-by-cell comparison of a computed contribution with a published row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub prefactor_equal: bool,
    /// `(power, computed, published, equal)` for each published coefficient.
    pub coefficients: Vec<(usize, ExactRat, ExactRat, bool)>,
}

impl Comparison {
    pub fn all_equal(&self) -> bool {
        self.prefactor_equal && self.coefficients.iter().all(|c| c.3)
    }

    pub fn equal_cells(&self) -> usize {
        self.coefficients.iter().filter(|c| c.3).count()
    }
}

/// Compares the first `min(order, 6)` coefficients and the prefactor.
pub fn compare(computed: &AsymptoticContribution, cell: &ReferenceCell) -> Comparison {
    let ours = computed.subtracted_coefficients();
    let coefficients = cell
        .printed
        .iter()
        .zip(&ours)
        .enumerate()
        .map(|(i, (theirs, mine))| (i + 1, mine.clone(), theirs.clone(), mine == theirs))
        .collect();
    Comparison {
        prefactor_equal: computed.prefactor.equivalent(&cell.prefactor),
        coefficients,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_complete() {
        let cells = reference_cells().unwrap();
        assert_eq!(cells.len(), 24);
        for legs in 0..=5 {
            for family in 1..=4 {
                let c = reference_cell(legs, family).unwrap().expect("cell present");
                assert_eq!(c.printed.len(), 6);
                assert_eq!(c.prefactor.factors.len(), legs as usize);
            }
        }
    }

    #[test]
    fn spot_values() {
        let c = reference_cell(5, 4).unwrap().unwrap();
        assert_eq!(c.printed[0], rat(492189, 15752));
        assert_eq!(c.prefactor.sign, -1);
        let c = reference_cell(0, 1).unwrap().unwrap();
        assert_eq!(c.printed[5], rat(41935, 64));
    }

    #[test]
    fn malformed_data_is_reported() {
        assert!(matches!(parse_reference("cell = 3"), Err(Error::Reference(_))));
    }
}
