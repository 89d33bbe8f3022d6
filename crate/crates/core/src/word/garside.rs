//! Left normal form in the Garside structure of `B_k`.
//!
//! Simple elements are positive permutation braids, stored as
//! [`Permutation`]s. A word is first rewritten as `Δ^{-r} · A_1 ⋯ A_L` with
//! simple `A_i` (each inverse letter `σ_g⁻¹` becomes `Δ⁻¹ · (Δ σ_g⁻¹)` and
//! the `Δ⁻¹` are pulled to the front through the flip automorphism), then the
//! positive part is made left-weighted factor by factor.

use serde::Serialize;

use super::{BraidWord, Permutation};

/// `Δ^inf · factors[0] ⋯ factors[r-1]` with left-weighted, nontrivial,
/// non-`Δ` simple factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalForm {
    strands: usize,
    inf: i64,
    factors: Vec<Permutation>,
}

impl NormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Largest `t` with `Δ^{-t} w` positive.
    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    /// Whether the element is positive (`inf ≥ 0`).
    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }

    /// Left-multiplies by `Δ^t`.
    pub(crate) fn shifted(&self, t: i64) -> NormalForm {
        NormalForm {
            strands: self.strands,
            inf: self.inf + t,
            factors: self.factors.clone(),
        }
    }

    /// Letters of `Δ^inf` followed by the positive expansion of each factor.
    /// For negative `inf` the `Δ` block is written with inverse letters.
    pub fn to_letters(&self) -> Vec<i32> {
        let delta = positive_letters(&Permutation::half_twist(self.strands));
        let mut out = Vec::new();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                out.extend_from_slice(&delta);
            }
        } else {
            let inverse: Vec<i32> = delta.iter().rev().map(|&g| -g).collect();
            for _ in 0..-self.inf {
                out.extend_from_slice(&inverse);
            }
        }
        for f in &self.factors {
            out.extend(positive_letters(f));
        }
        out
    }

    /// Checks the structural invariants: every factor is a proper nontrivial
    /// simple element and consecutive factors are left-weighted.
    pub fn is_valid(&self) -> bool {
        let delta = Permutation::half_twist(self.strands);
        self.factors
            .iter()
            .all(|f| f.len() == self.strands && !f.is_identity() && *f != delta)
            && self
                .factors
                .windows(2)
                .all(|pair| is_left_weighted(&pair[0], &pair[1]))
    }
}

/// `g ∈ S(p)`: the positive braid `p` can start with `σ_g`.
fn starts_with(p: &Permutation, g: usize) -> bool {
    p.image(g - 1) > p.image(g)
}

/// `g ∈ F(p)`: the positive braid `p` can end with `σ_g`.
fn ends_with(p: &Permutation, g: usize) -> bool {
    let inv = p.inverse();
    inv.image(g - 1) > inv.image(g)
}

fn is_left_weighted(a: &Permutation, b: &Permutation) -> bool {
    (1..a.len()).all(|g| !starts_with(b, g) || ends_with(a, g))
}

/// Moves generators from the front of `b` to the back of `a` until the pair
/// is left-weighted. Returns whether anything moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let k = a.len();
    let mut moved = false;
    loop {
        let Some(g) = (1..k).find(|&g| starts_with(b, g) && !ends_with(a, g)) else {
            return moved;
        };
        let s = Permutation::generator(k, g);
        *a = a.then(&s);
        *b = s.then(b);
        moved = true;
    }
}

/// Conjugation by `Δ`: `σ_g ↦ σ_{k-g}`.
fn flip(p: &Permutation) -> Permutation {
    let k = p.len();
    let img = (0..k).map(|j| k - 1 - p.image(k - 1 - j)).collect();
    Permutation::from_images(img).expect("flip of a permutation")
}

/// A positive word for the simple element `p` (leftmost descent first).
pub(crate) fn positive_letters(p: &Permutation) -> Vec<i32> {
    let k = p.len();
    let mut rest = p.clone();
    let mut letters = Vec::with_capacity(rest.inversions());
    while let Some(g) = (1..k).find(|&g| starts_with(&rest, g)) {
        letters.push(g as i32);
        rest = Permutation::generator(k, g).then(&rest);
    }
    letters
}

pub(crate) fn left_normal_form(w: &BraidWord) -> NormalForm {
    let k = w.strands();
    let delta = Permutation::half_twist(k);

    // Each inverse letter contributes a Δ⁻¹ that is pulled to the front; the
    // simple factor it leaves behind, and every factor before it, is flipped
    // once per Δ⁻¹ it is crossed by.
    let mut negatives_after = w.letters().iter().filter(|&&g| g < 0).count();
    let inf_shift = -(negatives_after as i64);
    let mut simples = Vec::with_capacity(w.letters().len());
    for &g in w.letters() {
        let simple = if g > 0 {
            Permutation::generator(k, g as usize)
        } else {
            negatives_after -= 1;
            delta.then(&Permutation::generator(k, g.unsigned_abs() as usize))
        };
        simples.push(if negatives_after % 2 == 1 {
            flip(&simple)
        } else {
            simple
        });
    }

    let mut factors: Vec<Permutation> = Vec::new();
    for s in simples {
        if s.is_identity() {
            continue;
        }
        factors.push(s);
        let mut j = factors.len() - 1;
        while j > 0 {
            let (left, right) = factors.split_at_mut(j);
            if !left_weight(&mut left[j - 1], &mut right[0]) {
                break;
            }
            j -= 1;
        }
        while factors.last().is_some_and(Permutation::is_identity) {
            factors.pop();
        }
    }

    let leading_deltas = factors.iter().take_while(|f| **f == delta).count();
    factors.drain(..leading_deltas);
    debug_assert!(factors.iter().all(|f| !f.is_identity()));

    NormalForm {
        strands: k,
        inf: inf_shift + leading_deltas as i64,
        factors,
    }
}
