//! Cube-complex model of the fiber of a discrete relative braid class.
//!
//! Values only matter through their order, so each free anchor is coded by
//! its position relative to the skeleton at that slice: `2k` means it sits on
//! the rank-`k` skeleton value, `2k + 1` that it lies in the gap above it. A
//! code array is a cube cell whose dimension is the number of odd entries.

mod cell;
mod enumerate;
mod induced;
mod pair;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{scan_pairs, scan_pairs_where, DiagramError, DiscreteRelativeBraid};
use crate::word::Permutation;

pub use cell::{CellKind, CodeCell};
pub use enumerate::{Component, Window, WindowError};
pub use pair::{ComplexPair, Properness, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("the skeleton has no extremal constant strands; augment the diagram first")]
    NotAugmented,
    #[error("free strand {free} leaves the extremal constant strands at slice {slice}")]
    OutsideConstants { free: usize, slice: usize },
    #[error("free strands {a} and {b} share a gap at slice {slice}")]
    GapSeparation { slice: usize, a: usize, b: usize },
    #[error("{free} free strands do not fit into {gaps} skeleton gaps")]
    GapInfeasible { free: usize, gaps: usize },
    #[error("start cell is not interior: {0}")]
    SingularStart(String),
    #[error("face {face} is an exit face from one side and an entrance from the other")]
    ExitConflict { face: String },
    #[error("crossing number is not constant: {detail}")]
    CrossingMismatch { detail: String },
    #[error(
        "window is not sealed: interior cell {inside} has interior neighbour {outside} outside it"
    )]
    WindowNotSealed { inside: String, outside: String },
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error("code grid of {cells} cells is too large to enumerate (limit {limit})")]
    GridTooLarge { cells: u128, limit: u128 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Per-slice order of the skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankedSkeleton {
    d: usize,
    /// `order[i][k]`: skeleton strand of rank `k` at slice `i`.
    order: Vec<Vec<usize>>,
    /// `rank[i][t]`: rank of skeleton strand `t` at slice `i`.
    rank: Vec<Vec<usize>>,
    closure: Permutation,
}

impl RankedSkeleton {
    pub fn new(b: &DiscreteRelativeBraid) -> Self {
        let d = b.d();
        let sk = b.skeleton();
        let m = sk.len();
        let mut order = Vec::with_capacity(d);
        let mut rank = Vec::with_capacity(d);
        #[allow(clippy::needless_range_loop)]
        for i in 0..d {
            let mut o: Vec<usize> = (0..m).collect();
            o.sort_by(|&s, &t| sk[s][i].cmp(&sk[t][i]));
            let mut r = vec![0; m];
            for (k, &t) in o.iter().enumerate() {
                r[t] = k;
            }
            order.push(o);
            rank.push(r);
        }
        Self {
            d,
            order,
            rank,
            closure: b.skeleton_closure(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.closure.len()
    }

    pub fn strand_at(&self, slice: usize, rank: usize) -> usize {
        self.order[slice][rank]
    }

    pub fn rank_of(&self, slice: usize, strand: usize) -> usize {
        self.rank[slice][strand]
    }

    pub fn closure(&self) -> &Permutation {
        &self.closure
    }

    /// Largest code value, `2m - 2`.
    pub fn top_code(&self) -> u16 {
        (2 * self.m() - 2) as u16
    }
}

/// Everything needed to work with code cells of one diagram: the ranked
/// skeleton, the free closure and the position of the extremal constants.
#[derive(Clone, Debug)]
pub struct CubeModel {
    sk: RankedSkeleton,
    n: usize,
    free_closure: Permutation,
    free_before: Permutation,
    skeleton_before: Permutation,
    skeleton_crossings: usize,
}

impl CubeModel {
    /// Builds the model of an augmented diagram and codes its free strands.
    pub fn normalize(b: &DiscreteRelativeBraid) -> Result<(CubeModel, CodeCell), ComplexError> {
        let (bottom, top) = b.extremal_constants().ok_or(ComplexError::NotAugmented)?;
        let sk = RankedSkeleton::new(b);
        let m = sk.m();
        let n = b.free().len();
        let d = b.d();
        let gaps = m - 1;
        if n > gaps {
            return Err(ComplexError::GapInfeasible { free: n, gaps });
        }
        let (lo, hi) = (&b.skeleton()[bottom][0], &b.skeleton()[top][0]);
        let mut codes = Vec::with_capacity(n * d);
        for (a, strand) in b.free().iter().enumerate() {
            for (i, v) in strand[..d].iter().enumerate() {
                if v <= lo || v >= hi {
                    return Err(ComplexError::OutsideConstants { free: a, slice: i });
                }
                let below = sk.order[i]
                    .iter()
                    .take_while(|&&t| b.skeleton()[t][i] <= *v)
                    .count();
                let on = b.skeleton()[sk.order[i][below - 1]][i] == *v;
                codes.push(if on { 2 * (below - 1) } else { 2 * below - 1 } as u16);
            }
        }
        let cell = CodeCell::from_flat(d, codes);
        for i in 0..d {
            for a in 0..n {
                for c in a + 1..n {
                    let (x, y) = (cell.get(a, i), cell.get(c, i));
                    if x == y && x % 2 == 1 {
                        return Err(ComplexError::GapSeparation { slice: i, a, b: c });
                    }
                }
            }
        }
        let model = CubeModel::new(sk, b.free_closure());
        Ok((model, cell))
    }

    pub fn new(sk: RankedSkeleton, free_closure: Permutation) -> Self {
        let m = sk.m();
        let levels: Vec<Vec<usize>> = (0..m)
            .map(|t| {
                let mut row: Vec<usize> = (0..sk.d).map(|i| sk.rank[i][t]).collect();
                row.push(sk.rank[0][sk.closure.image(t)]);
                row
            })
            .collect();
        let refs: Vec<&[usize]> = levels.iter().map(Vec::as_slice).collect();
        let skeleton_crossings = scan_pairs(&refs, &sk.closure)
            .counts
            .iter()
            .map(|c| c.2)
            .sum();
        Self {
            n: free_closure.len(),
            free_before: free_closure.inverse(),
            skeleton_before: sk.closure.inverse(),
            free_closure,
            sk,
            skeleton_crossings,
        }
    }

    pub fn skeleton(&self) -> &RankedSkeleton {
        &self.sk
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.sk.d
    }

    pub fn free_closure(&self) -> &Permutation {
        &self.free_closure
    }

    /// Number of codes per free strand and slice, `2m - 1`.
    pub fn code_count(&self) -> u16 {
        self.sk.top_code() + 1
    }

    /// Sign of free strand `a` relative to skeleton strand `t` at slice `i`.
    fn sign(&self, cell: &CodeCell, a: usize, i: usize, t: usize) -> i32 {
        (cell.get(a, i) as i32 - 2 * self.sk.rank[i][t] as i32).signum()
    }

    /// The anchor before `(a, i, t)`, across the closure at `i = 0`.
    fn prev(&self, a: usize, i: usize, t: usize) -> (usize, usize, usize) {
        if i == 0 {
            (
                self.free_before.image(a),
                self.d() - 1,
                self.skeleton_before.image(t),
            )
        } else {
            (a, i - 1, t)
        }
    }

    /// The anchor after `(a, i, t)`, across the closure at `i = d - 1`.
    fn next(&self, a: usize, i: usize, t: usize) -> (usize, usize, usize) {
        if i + 1 == self.d() {
            (self.free_closure.image(a), 0, self.sk.closure.image(t))
        } else {
            (a, i + 1, t)
        }
    }

    /// Signs of free `a` against the skeleton strand under it at slice `i`
    /// (which must carry an even code), at the neighbouring anchors.
    fn flanks(&self, cell: &CodeCell, a: usize, i: usize) -> (i32, i32) {
        let t = self.sk.order[i][cell.get(a, i) as usize / 2];
        let (pa, pi, pt) = self.prev(a, i, t);
        let (na, ni, nt) = self.next(a, i, t);
        (self.sign(cell, pa, pi, pt), self.sign(cell, na, ni, nt))
    }

    pub fn classify(&self, cell: &CodeCell) -> CellKind {
        if cell.n() != self.n
            || cell.d() != self.d()
            || cell.codes().iter().any(|&c| c > self.sk.top_code())
        {
            return CellKind::Out;
        }
        for i in 0..self.d() {
            for a in 0..self.n {
                let c = cell.get(a, i);
                if (a + 1..self.n).any(|b| cell.get(b, i) == c) {
                    return CellKind::Tangent;
                }
                if c.is_multiple_of(2) {
                    let (p, q) = self.flanks(cell, a, i);
                    if p * q >= 0 {
                        return CellKind::Tangent;
                    }
                }
            }
        }
        CellKind::Interior
    }

    /// Two free strands in one gap at some slice.
    pub fn shares_gap(&self, cell: &CodeCell) -> Option<(usize, usize, usize)> {
        for i in 0..self.d() {
            for a in 0..self.n {
                let c = cell.get(a, i);
                if c % 2 == 1 {
                    if let Some(b) = (a + 1..self.n).find(|&b| cell.get(b, i) == c) {
                        return Some((i, a, b));
                    }
                }
            }
        }
        None
    }

    /// Levels of all strands (skeleton first, then free) at slices `0..=d`,
    /// with the closure of the combined strand set.
    fn levels(&self, cell: &CodeCell) -> (Vec<Vec<u32>>, Permutation) {
        let (m, n, d) = (self.sk.m(), self.n, self.d());
        let level = |x: usize, i: usize| -> u32 {
            if x < m {
                2 * self.sk.rank[i][x] as u32
            } else {
                cell.get(x - m, i) as u32
            }
        };
        let closure: Vec<usize> = (0..m)
            .map(|t| self.sk.closure.image(t))
            .chain((0..n).map(|a| m + self.free_closure.image(a)))
            .collect();
        let rows = (0..m + n)
            .map(|x| {
                let mut row: Vec<u32> = (0..d).map(|i| level(x, i)).collect();
                row.push(level(closure[x], 0));
                row
            })
            .collect();
        (rows, Permutation::from_images(closure).expect("closure"))
    }

    /// Total crossing number of the configuration a non-singular cell
    /// represents (skeleton crossings included).
    pub fn crossing_number(&self, cell: &CodeCell) -> usize {
        let m = self.sk.m();
        let (rows, closure) = self.levels(cell);
        let refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
        let free_part: usize = scan_pairs_where(&refs, &closure, |_, y| y >= m)
            .counts
            .iter()
            .map(|c| c.2)
            .sum();
        self.skeleton_crossings + free_part
    }
}
