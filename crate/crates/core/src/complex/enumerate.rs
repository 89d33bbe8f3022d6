use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use super::{CellKind, CodeCell, ComplexError, CubeModel};

/// Largest code grid exhaustive enumeration will walk.
pub const GRID_LIMIT: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("malformed window {0:?}; expected rows like \"lo:hi,lo:hi;lo:hi,lo:hi\"")]
    Syntax(String),
    #[error("window has shape {rows}x{cols}, the model needs {n}x{d}")]
    Shape {
        rows: usize,
        cols: usize,
        n: usize,
        d: usize,
    },
    #[error("empty code range {lo}:{hi}")]
    EmptyRange { lo: u16, hi: u16 },
}

/// Inclusive code ranges per free strand and slice, restricting exhaustive
/// enumeration to part of the code grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    rows: Vec<Vec<(u16, u16)>>,
}

impl Window {
    pub fn new(rows: Vec<Vec<(u16, u16)>>) -> Result<Self, WindowError> {
        for &(lo, hi) in rows.iter().flatten() {
            if lo > hi {
                return Err(WindowError::EmptyRange { lo, hi });
            }
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) || cols == 0 {
            return Err(WindowError::Shape {
                rows: rows.len(),
                cols,
                n: 0,
                d: 0,
            });
        }
        Ok(Self { rows })
    }

    /// Parses `;`-separated rows (one per free strand) of `,`-separated
    /// entries `lo:hi` or `c` (one per slice).
    pub fn parse(text: &str) -> Result<Self, WindowError> {
        let syntax = || WindowError::Syntax(text.to_string());
        let code = |s: &str| s.trim().parse::<u16>().map_err(|_| syntax());
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|entry| match entry.split_once(':') {
                        Some((lo, hi)) => Ok((code(lo)?, code(hi)?)),
                        None => code(entry).map(|c| (c, c)),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Vec<(u16, u16)>] {
        &self.rows
    }

    fn check(&self, n: usize, d: usize) -> Result<(), WindowError> {
        if self.rows.len() != n || self.rows[0].len() != d {
            return Err(WindowError::Shape {
                rows: self.rows.len(),
                cols: self.rows[0].len(),
                n,
                d,
            });
        }
        Ok(())
    }

    fn flat(&self) -> Vec<(u16, u16)> {
        self.rows.concat()
    }

    pub fn contains(&self, cell: &CodeCell) -> bool {
        cell.codes()
            .iter()
            .zip(self.flat())
            .all(|(&c, (lo, hi))| lo <= c && c <= hi)
    }
}

/// The interior cells of one path component, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub cells: Vec<CodeCell>,
    pub crossing_number: usize,
}

impl Component {
    /// The smallest top-dimensional cell, used as the representative.
    pub fn representative(&self) -> &CodeCell {
        self.cells
            .iter()
            .find(|c| c.is_top())
            .unwrap_or(&self.cells[0])
    }
}

impl CubeModel {
    /// Interior neighbours of an interior cell: one entry moved by one code.
    fn neighbours<'a>(&'a self, cell: &'a CodeCell) -> impl Iterator<Item = CodeCell> + 'a {
        let top = self.skeleton().top_code();
        cell.codes().iter().enumerate().flat_map(move |(j, &c)| {
            [c.checked_sub(1), (c < top).then_some(c + 1)]
                .into_iter()
                .flatten()
                .map(move |v| cell.with(j, v))
        })
    }

    /// Path component of an interior cell.
    pub fn enumerate_component(&self, start: &CodeCell) -> Result<Component, ComplexError> {
        match self.classify(start) {
            CellKind::Interior => {}
            kind => {
                return Err(ComplexError::SingularStart(format!("{start} is {kind:?}")));
            }
        }
        self.explore(start, None)
    }

    fn explore(
        &self,
        start: &CodeCell,
        window: Option<&Window>,
    ) -> Result<Component, ComplexError> {
        let crossing_number = self.crossing_number(start);
        let mut seen: HashSet<CodeCell> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in self.neighbours(&x) {
                if seen.contains(&y) {
                    continue;
                }
                if let Some((slice, a, b)) = self.shares_gap(&y) {
                    return Err(ComplexError::GapSeparation { slice, a, b });
                }
                if self.classify(&y) != CellKind::Interior {
                    continue;
                }
                if window.is_some_and(|w| !w.contains(&y)) {
                    return Err(ComplexError::WindowNotSealed {
                        inside: x.to_string(),
                        outside: y.to_string(),
                    });
                }
                let c = self.crossing_number(&y);
                if c != crossing_number {
                    return Err(ComplexError::CrossingMismatch {
                        detail: format!("{start} has {crossing_number}, {y} has {c}"),
                    });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
        let mut cells: Vec<CodeCell> = seen.into_iter().collect();
        cells.sort();
        Ok(Component {
            cells,
            crossing_number,
        })
    }

    /// All path components of interior cells, in order of their smallest
    /// cell. With a window only cells inside it are visited, and every
    /// component found must be sealed: it may not continue outside.
    pub fn enumerate_all(&self, window: Option<&Window>) -> Result<Vec<Component>, ComplexError> {
        let (n, d) = (self.n(), self.d());
        let ranges = match window {
            Some(w) => {
                w.check(n, d)?;
                let top = self.skeleton().top_code();
                w.flat()
                    .into_iter()
                    .map(|(lo, hi)| (lo, hi.min(top)))
                    .collect()
            }
            None => vec![(0, self.skeleton().top_code()); n * d],
        };
        let cells: u128 = ranges
            .iter()
            .map(|&(lo, hi)| hi.saturating_sub(lo) as u128 + 1)
            .product();
        if cells > GRID_LIMIT {
            return Err(ComplexError::GridTooLarge {
                cells,
                limit: GRID_LIMIT,
            });
        }
        if ranges.iter().any(|&(lo, hi)| lo > hi) {
            return Ok(Vec::new());
        }

        let mut codes: Vec<u16> = ranges.iter().map(|r| r.0).collect();
        let mut visited: HashSet<CodeCell> = HashSet::new();
        let mut components = Vec::new();
        loop {
            let cell = CodeCell::from_flat(d, codes.clone());
            if !visited.contains(&cell) && self.classify(&cell) == CellKind::Interior {
                let component = self.explore(&cell, window)?;
                visited.extend(component.cells.iter().cloned());
                components.push(component);
            }
            // Odometer, last entry fastest, so cells come in sorted order.
            let mut j = codes.len();
            loop {
                if j == 0 {
                    return Ok(components);
                }
                j -= 1;
                if codes[j] < ranges[j].1 {
                    codes[j] += 1;
                    break;
                }
                codes[j] = ranges[j].0;
            }
        }
    }
}
