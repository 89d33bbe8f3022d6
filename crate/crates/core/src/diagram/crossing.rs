use std::cmp::Ordering;

use serde::Serialize;

use super::StrandRef;
use crate::word::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub a: StrandRef,
    pub b: StrandRef,
    pub count: usize,
}

/// Crossing numbers of a non-singular diagram: sign changes of every pairwise
/// difference around the closed time circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingReport {
    pub total: usize,
    pub pairwise: Vec<PairCount>,
}

impl CrossingReport {
    pub(super) fn from_counts(pairwise: Vec<PairCount>) -> Self {
        Self {
            total: pairwise.iter().map(|p| p.count).sum(),
            pairwise,
        }
    }
}

pub(crate) struct PairScan {
    /// `(x, y, count)` for every strand pair `x < y`.
    pub counts: Vec<(usize, usize, usize)>,
    /// `(x, y, slice)` for anchor equalities that are not transverse.
    pub tangencies: Vec<(usize, usize, usize)>,
}

fn sign(o: Ordering) -> i8 {
    o as i8
}

/// Scans every pair of strands. `values[x]` holds the `d + 1` anchors of
/// strand `x` and `closure` maps each strand to the one that continues it
/// after index `d`. A segment whose end signs are strictly opposite is a
/// crossing; an anchor zero (at indices `0..d`) is a crossing when its
/// flanks are strictly opposite and a tangency otherwise.
pub(crate) fn scan_pairs<T: Ord>(values: &[&[T]], closure: &Permutation) -> PairScan {
    scan_pairs_where(values, closure, |_, _| true)
}

/// [`scan_pairs`] restricted to the pairs accepted by `include`.
pub(crate) fn scan_pairs_where<T: Ord>(
    values: &[&[T]],
    closure: &Permutation,
    include: impl Fn(usize, usize) -> bool,
) -> PairScan {
    let n = values.len();
    let d = values.first().map_or(0, |v| v.len() - 1);
    let before = closure.inverse();
    let mut counts = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut tangencies = Vec::new();
    for x in 0..n {
        for y in (x + 1..n).filter(|&y| include(x, y)) {
            let s: Vec<i8> = (0..=d)
                .map(|i| sign(values[x][i].cmp(&values[y][i])))
                .collect();
            let mut count = (0..d).filter(|&i| s[i] != 0 && s[i] == -s[i + 1]).count();
            for i in 0..d {
                if s[i] != 0 {
                    continue;
                }
                let prev = if i == 0 {
                    let (px, py) = (before.image(x), before.image(y));
                    sign(values[px][d - 1].cmp(&values[py][d - 1]))
                } else {
                    s[i - 1]
                };
                if prev * s[i + 1] < 0 {
                    count += 1;
                } else {
                    tangencies.push((x, y, i));
                }
            }
            counts.push((x, y, count));
        }
    }
    PairScan { counts, tangencies }
}
