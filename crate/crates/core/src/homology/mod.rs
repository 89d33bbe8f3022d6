//! Relative cellular homology over GF(2).

use serde::Serialize;
use thiserror::Error;

use crate::complex::ComplexPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary of boundary is nonzero in degree {degree} of component {component}")]
    BoundarySquare { component: usize, degree: usize },
    #[error("Euler characteristic {euler} disagrees with the cell count {cell_euler} in component {component}")]
    EulerMismatch {
        component: usize,
        euler: i64,
        cell_euler: i64,
    },
}

/// Relative chain complex of a pair `(N, N⁻)`: the cells of `N` not in
/// `N⁻`, graded by dimension, with sparse boundary columns.
#[derive(Clone, Debug)]
pub struct ChainComplexGf2 {
    /// `basis[k]`: sizes of the relative bases.
    basis: Vec<usize>,
    /// `boundary[k][j]`: sorted row indices (in degree `k - 1`) of column `j`
    /// of `∂_k`. `boundary[0]` is empty.
    boundary: Vec<Vec<Vec<usize>>>,
}

/// Sum of two sorted GF(2) vectors.
fn add(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl ChainComplexGf2 {
    pub fn from_pair(pair: &ComplexPair) -> Self {
        let top = pair.top_dimension();
        // Position of each relative cell within its degree.
        let mut slot = vec![usize::MAX; pair.cells.len()];
        let mut basis = vec![0; top + 1];
        for (j, c) in pair.cells.iter().enumerate() {
            if !pair.in_exit[j] {
                slot[j] = basis[c.dim()];
                basis[c.dim()] += 1;
            }
        }
        let mut boundary: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        for (j, c) in pair.cells.iter().enumerate() {
            if pair.in_exit[j] || c.dim() == 0 {
                continue;
            }
            let mut col: Vec<usize> = pair.faces[j]
                .iter()
                .filter(|&&f| !pair.in_exit[f])
                .map(|&f| slot[f])
                .collect();
            col.sort_unstable();
            boundary[c.dim()].push(col);
        }
        Self { basis, boundary }
    }

    /// From explicit boundary columns; `boundary[k]` has one column per basis
    /// element of degree `k` (and `boundary[0]` is ignored).
    pub fn from_columns(basis: Vec<usize>, mut boundary: Vec<Vec<Vec<usize>>>) -> Self {
        boundary.resize(basis.len(), Vec::new());
        for cols in &mut boundary {
            for col in cols {
                col.sort_unstable();
            }
        }
        Self { basis, boundary }
    }

    pub fn basis_sizes(&self) -> &[usize] {
        &self.basis
    }

    pub fn boundary(&self, k: usize) -> &[Vec<usize>] {
        &self.boundary[k]
    }

    /// Checks `∂_{k-1} ∘ ∂_k = 0`, returning the first failing `k`.
    pub fn boundary_square_failure(&self) -> Option<usize> {
        (2..self.basis.len()).find(|&k| {
            self.boundary[k].iter().any(|col| {
                !col.iter()
                    .fold(Vec::new(), |acc, &r| add(&acc, &self.boundary[k - 1][r]))
                    .is_empty()
            })
        })
    }

    /// Rank of `∂_k` by column reduction with pivots on the lowest row.
    pub fn rank(&self, k: usize) -> usize {
        if k == 0 || k >= self.boundary.len() {
            return 0;
        }
        let mut pivot_of_low: std::collections::HashMap<usize, Vec<usize>> = Default::default();
        let mut rank = 0;
        for col in &self.boundary[k] {
            let mut v = col.clone();
            while let Some(&low) = v.last() {
                match pivot_of_low.get(&low) {
                    Some(p) => v = add(&v, p),
                    None => {
                        pivot_of_low.insert(low, v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// GF(2) Betti numbers with trailing zeros removed.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.basis.len()).map(|k| self.rank(k)).collect();
        let mut b: Vec<usize> = (0..self.basis.len())
            .map(|k| self.basis[k] - ranks[k] - ranks[k + 1])
            .collect();
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    /// Alternating count of relative cells.
    pub fn cell_euler(&self) -> i64 {
        alternating(&self.basis)
    }
}

pub fn alternating(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentHomology {
    pub id: usize,
    pub betti_gf2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub betti_gf2: Vec<usize>,
    pub euler: i64,
    pub cell_euler: i64,
    pub per_component: Vec<ComponentHomology>,
}

/// Homology of one pair, with both consistency certificates checked.
pub fn pair_homology(pair: &ComplexPair) -> Result<(Vec<usize>, i64), HomologyError> {
    let cx = ChainComplexGf2::from_pair(pair);
    if let Some(degree) = cx.boundary_square_failure() {
        return Err(HomologyError::BoundarySquare {
            component: pair.id,
            degree,
        });
    }
    let betti = cx.betti();
    let euler = alternating(&betti);
    // Counted directly on N and N⁻ rather than on the relative basis.
    let count = |exit: bool| -> i64 {
        pair.cells
            .iter()
            .zip(&pair.in_exit)
            .filter(|(_, &e)| !exit || e)
            .map(|(c, _)| if c.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    };
    let cell_euler = count(false) - count(true);
    if euler != cell_euler || cell_euler != cx.cell_euler() {
        return Err(HomologyError::EulerMismatch {
            component: pair.id,
            euler,
            cell_euler,
        });
    }
    Ok((betti, cell_euler))
}

/// Homology of several components; Betti numbers and both Euler
/// characteristics add up over components.
pub fn homology<'a>(
    pairs: impl IntoIterator<Item = &'a ComplexPair>,
) -> Result<HomologyResult, HomologyError> {
    let mut total: Vec<usize> = Vec::new();
    let mut cell_euler = 0;
    let mut per_component = Vec::new();
    for pair in pairs {
        let (betti, e) = pair_homology(pair)?;
        if total.len() < betti.len() {
            total.resize(betti.len(), 0);
        }
        for (t, b) in total.iter_mut().zip(&betti) {
            *t += b;
        }
        cell_euler += e;
        per_component.push(ComponentHomology {
            id: pair.id,
            betti_gf2: betti,
        });
    }
    Ok(HomologyResult {
        euler: alternating(&total),
        betti_gf2: total,
        cell_euler,
        per_component,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rel_both_ends() {
        let cx = ChainComplexGf2::from_columns(vec![0, 1], vec![vec![], vec![vec![]]]);
        assert_eq!(cx.rank(1), 0);
        assert_eq!(cx.betti(), vec![0, 1]);
        assert_eq!(cx.cell_euler(), -1);
    }

    #[test]
    fn interval_rel_one_end() {
        let cx = ChainComplexGf2::from_columns(vec![1, 1], vec![vec![], vec![vec![0]]]);
        assert_eq!(cx.rank(1), 1);
        assert_eq!(cx.betti(), Vec::<usize>::new());
    }

    #[test]
    fn square_is_contractible() {
        // Vertices 0..4, edges (0,1) (1,2) (2,3) (3,0), one face.
        let cx = ChainComplexGf2::from_columns(
            vec![4, 4, 1],
            vec![
                vec![],
                vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
                vec![vec![0, 1, 2, 3]],
            ],
        );
        assert_eq!(cx.boundary_square_failure(), None);
        assert_eq!(cx.betti(), vec![1]);
    }

    #[test]
    fn circle() {
        let cx =
            ChainComplexGf2::from_columns(vec![2, 2], vec![vec![], vec![vec![0, 1], vec![0, 1]]]);
        assert_eq!(cx.betti(), vec![1, 1]);
    }

    #[test]
    fn detects_bad_boundary() {
        let cx = ChainComplexGf2::from_columns(
            vec![2, 1, 1],
            vec![vec![], vec![vec![0, 1]], vec![vec![0]]],
        );
        assert_eq!(cx.boundary_square_failure(), Some(2));
    }

    #[test]
    fn gf2_addition() {
        assert_eq!(add(&[0, 2, 5], &[2, 3]), vec![0, 3, 5]);
        assert!(add(&[1, 4], &[1, 4]).is_empty());
    }
}
