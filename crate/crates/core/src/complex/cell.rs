use std::fmt;

use serde::Serialize;

/// Codes of every free strand at every slice `0..d`, stored row by row.
/// The derived order is lexicographic on the rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeCell {
    d: usize,
    codes: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    /// Every free anchor on a skeleton value crosses it transversally.
    Interior,
    /// Some anchor equality is not transverse, or two free strands meet.
    Tangent,
    /// Codes out of range for the model.
    Out,
}

impl CodeCell {
    pub fn from_flat(d: usize, codes: Vec<u16>) -> Self {
        debug_assert!(d > 0 && codes.len().is_multiple_of(d));
        Self { d, codes }
    }

    pub fn from_rows(rows: &[Vec<u16>]) -> Self {
        let d = rows.first().map_or(0, Vec::len);
        Self {
            d,
            codes: rows.concat(),
        }
    }

    pub fn n(&self) -> usize {
        self.codes.len().checked_div(self.d).unwrap_or(0)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, free: usize, slice: usize) -> u16 {
        self.codes[free * self.d + slice]
    }

    pub fn codes(&self) -> &[u16] {
        &self.codes
    }

    pub fn row(&self, free: usize) -> &[u16] {
        &self.codes[free * self.d..(free + 1) * self.d]
    }

    pub fn rows(&self) -> Vec<Vec<u16>> {
        self.codes.chunks(self.d).map(<[u16]>::to_vec).collect()
    }

    pub fn dim(&self) -> usize {
        self.codes.iter().filter(|&&c| c % 2 == 1).count()
    }

    pub fn is_top(&self) -> bool {
        self.codes.iter().all(|&c| c % 2 == 1)
    }

    /// The cell with entry `index` (flat) replaced by `code`.
    pub(crate) fn with(&self, index: usize, code: u16) -> CodeCell {
        let mut codes = self.codes.clone();
        codes[index] = code;
        CodeCell { d: self.d, codes }
    }

    /// Codimension-one faces: each odd entry moved to either adjacent even
    /// code, as `(flat index, direction, face)`.
    pub(crate) fn faces(&self) -> impl Iterator<Item = (usize, i32, CodeCell)> + '_ {
        self.codes
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % 2 == 1)
            .flat_map(move |(j, &c)| {
                [(-1, c - 1), (1, c + 1)]
                    .into_iter()
                    .map(move |(dir, v)| (j, dir, self.with(j, v)))
            })
    }
}

impl fmt::Debug for CodeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl fmt::Display for CodeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for CodeCell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}
