//! The signed multiplication table `e_i e_j = ±e_k`.
//!
//! [`StructureTable::derive`] builds the table by multiplying basis elements
//! with the Cayley–Dickson product. The published table is checked in as
//! `fixtures/multiplication_table.json`; when the two disagree the derived
//! table is authoritative and [`StructureTable::diff`] names the fixture
//! entries that are wrong.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::Octonion;
use crate::{Error, Result};

const PUBLISHED_TABLE: &str = include_str!("../../fixtures/multiplication_table.json");

/// `sign · e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisProduct {
    pub sign: i8,
    pub index: u8,
}

impl BasisProduct {
    pub fn to_octonion(self) -> Octonion {
        Octonion::basis(self.index as usize) * f64::from(self.sign)
    }

    /// `"1"`, `"-1"`, `"e3"`, `"-e5"`.
    pub fn label(self) -> String {
        let unit = if self.index == 0 { "1".to_string() } else { format!("e{}", self.index) };
        if self.sign < 0 {
            format!("-{unit}")
        } else {
            unit
        }
    }
}

/// One table cell in the serialized (fixture / CLI) layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub row: u8,
    pub col: u8,
    pub sign: i8,
    pub index: u8,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableFile {
    #[serde(default)]
    description: String,
    entries: Vec<TableEntry>,
}

/// A cell where two tables disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub row: u8,
    pub col: u8,
    pub expected: BasisProduct,
    pub found: BasisProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    cells: [[BasisProduct; 8]; 8],
}

impl StructureTable {
    /// Multiply every pair of basis elements and record the signed result.
    pub fn derive() -> Self {
        let mut cells = [[BasisProduct { sign: 1, index: 0 }; 8]; 8];
        for (i, row) in cells.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p = Octonion::basis(i) * Octonion::basis(j);
                let (k, v) = p.c.iter().enumerate().find(|(_, v)| **v != 0.0).expect("basis products are nonzero");
                debug_assert!(v.abs() == 1.0 && p.c.iter().filter(|v| **v != 0.0).count() == 1);
                *cell = BasisProduct { sign: v.signum() as i8, index: k as u8 };
            }
        }
        Self { cells }
    }

    /// The checked-in transcription of the published table.
    pub fn published() -> Result<Self> {
        Self::from_json(PUBLISHED_TABLE)
    }

    /// Parse the `{"entries": [{row, col, sign, index}, …]}` layout; all 64
    /// cells must be present exactly once.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        let mut seen = [[false; 8]; 8];
        let mut cells = [[BasisProduct { sign: 1, index: 0 }; 8]; 8];
        for e in &file.entries {
            let (r, c) = (e.row as usize, e.col as usize);
            if r >= 8 || c >= 8 || e.index >= 8 || e.sign.abs() != 1 {
                return Err(Error::Fixture(format!("invalid table entry {e:?}")));
            }
            if std::mem::replace(&mut seen[r][c], true) {
                return Err(Error::Fixture(format!("duplicate table entry ({r}, {c})")));
            }
            cells[r][c] = BasisProduct { sign: e.sign, index: e.index };
        }
        if file.entries.len() != 64 {
            return Err(Error::Fixture(format!("expected 64 table entries, found {}", file.entries.len())));
        }
        Ok(Self { cells })
    }

    pub fn to_json(&self, description: &str) -> String {
        let file = TableFile { description: description.to_string(), entries: self.entries() };
        serde_json::to_string_pretty(&file).expect("table serializes")
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> BasisProduct {
        self.cells[i][j]
    }

    pub fn rows(&self) -> &[[BasisProduct; 8]; 8] {
        &self.cells
    }

    /// Row-major cells in the serialized layout.
    pub fn entries(&self) -> Vec<TableEntry> {
        (0..8)
            .flat_map(|r| {
                (0..8).map(move |c| {
                    let p = self.cells[r][c];
                    TableEntry { row: r as u8, col: c as u8, sign: p.sign, index: p.index }
                })
            })
            .collect()
    }

    /// Cells of `other` that differ from `self` (`self` is the reference).
    pub fn diff(&self, other: &Self) -> Vec<TableMismatch> {
        let mut out = Vec::new();
        for r in 0..8 {
            for c in 0..8 {
                if self.cells[r][c] != other.cells[r][c] {
                    out.push(TableMismatch {
                        row: r as u8,
                        col: c as u8,
                        expected: self.cells[r][c],
                        found: other.cells[r][c],
                    });
                }
            }
        }
        out
    }
}

/// The derived table, computed once.
pub fn structure_table() -> &'static StructureTable {
    static TABLE: OnceLock<StructureTable> = OnceLock::new();
    TABLE.get_or_init(StructureTable::derive)
}
