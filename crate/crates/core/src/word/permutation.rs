use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

/// A permutation of strand positions `0..k`.
///
/// `image(j)` is the position reached by the strand that starts at position
/// `j`. Composition reads left to right: `p.then(q)` applies `p` first.
/// Permutations double as Garside simple elements (positive permutation
/// braids), whose length is the inversion count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    img: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Self {
            img: (0..k).collect(),
        }
    }

    /// Returns `None` unless `img` is a bijection of `0..img.len()`.
    pub fn from_images(img: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; img.len()];
        for &v in &img {
            if v >= img.len() || std::mem::replace(&mut seen[v], true) {
                return None;
            }
        }
        Some(Self { img })
    }

    /// The transposition of positions `g - 1` and `g`, i.e. the permutation
    /// of the Artin generator with index `g` (1-based).
    pub fn generator(k: usize, g: usize) -> Self {
        debug_assert!(g >= 1 && g < k);
        let mut img: Vec<usize> = (0..k).collect();
        img.swap(g - 1, g);
        Self { img }
    }

    /// The half twist: every pair of strands crosses once.
    pub fn half_twist(k: usize) -> Self {
        Self {
            img: (0..k).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.img.len()
    }

    pub fn is_empty(&self) -> bool {
        self.img.is_empty()
    }

    pub fn image(&self, j: usize) -> usize {
        self.img[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(j, &v)| j == v)
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            img: self.img.iter().map(|&v| other.img[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.img.len()];
        for (j, &v) in self.img.iter().enumerate() {
            inv[v] = j;
        }
        Permutation { img: inv }
    }

    /// Number of strand pairs that cross (the braid length of the
    /// corresponding permutation braid).
    pub fn inversions(&self) -> usize {
        let k = self.img.len();
        let mut count = 0;
        for a in 0..k {
            for b in a + 1..k {
                if self.img[a] > self.img[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Sorted cycle lengths of the permutation.
    pub fn cycle_type(&self) -> Vec<usize> {
        self.cycle_type_on(&(0..self.len()).collect())
    }

    /// Sorted cycle lengths of the cycles through `labels`; `labels` must be
    /// a union of cycles.
    pub fn cycle_type_on(&self, labels: &BTreeSet<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut lengths = Vec::new();
        for &start in labels {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.img[j];
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    /// Whether `labels` is mapped onto itself.
    pub fn preserves(&self, labels: &BTreeSet<usize>) -> bool {
        labels.iter().all(|&j| labels.contains(&self.img[j]))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.img)
    }
}
