use super::{CodeCell, CubeModel};
use crate::word::{BraidWord, ConjugacyCertificate};

impl CubeModel {
    /// The positive braid word traced by a top cell: all strands (skeleton
    /// and free) are ordered by level at each slice, and the reordering
    /// between consecutive slices is written as adjacent transpositions.
    /// Free labels are the time-0 positions of the free strands.
    pub fn induced_word(&self, cell: &CodeCell) -> BraidWord {
        let sk = self.skeleton();
        let (m, n, d) = (sk.m(), self.n(), self.d());
        let level = |x: usize, i: usize| -> u32 {
            if x < m {
                2 * sk.rank_of(i, x) as u32
            } else {
                cell.get(x - m, i) as u32
            }
        };
        let mut orders: Vec<Vec<usize>> = (0..d)
            .map(|i| {
                let mut o: Vec<usize> = (0..m + n).collect();
                o.sort_by_key(|&x| level(x, i));
                o
            })
            .collect();
        // At index d each strand stands where its continuation starts.
        let before = |x: usize| -> usize {
            if x < m {
                sk.closure().inverse().image(x)
            } else {
                m + self.free_closure().inverse().image(x - m)
            }
        };
        orders.push(orders[0].iter().map(|&x| before(x)).collect());

        let mut letters = Vec::new();
        for i in 0..d {
            let mut target_pos = vec![0; m + n];
            for (p, &x) in orders[i + 1].iter().enumerate() {
                target_pos[x] = p;
            }
            let mut current = orders[i].clone();
            // Bubble sort towards the next order, one letter per swap.
            let mut swapped = true;
            while swapped {
                swapped = false;
                for p in 0..current.len().saturating_sub(1) {
                    if target_pos[current[p]] > target_pos[current[p + 1]] {
                        current.swap(p, p + 1);
                        letters.push(p as i32 + 1);
                        swapped = true;
                    }
                }
            }
        }
        let free_labels: Vec<usize> = orders[0]
            .iter()
            .enumerate()
            .filter(|(_, &x)| x >= m)
            .map(|(p, _)| p)
            .collect();
        BraidWord::new(m + n, letters)
            .and_then(|w| w.with_free_labels(free_labels))
            .expect("induced word is a valid labelled braid")
    }

    pub fn certificate(&self, cell: &CodeCell) -> ConjugacyCertificate {
        self.induced_word(cell).conjugacy_certificate()
    }
}
