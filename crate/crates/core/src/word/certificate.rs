use std::fmt;

use serde::Serialize;

use super::{BraidWord, Permutation};

/// Data attached to a braid word that is unchanged by cyclic rotation and
/// free cancellation, used to label relative braid classes.
///
/// Two words with different certificates are not conjugate. Equal
/// certificates are strong evidence but not a proof of conjugacy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConjugacyCertificate {
    pub strands: usize,
    pub exponent_sum: i64,
    pub free_cycle_type: Vec<usize>,
    pub skeleton_cycle_type: Vec<usize>,
    pub inf: i64,
    pub factors: Vec<Permutation>,
}

fn free_reduce(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &g in letters {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

fn cyclically_reduce(letters: &[i32]) -> Vec<i32> {
    let mut w = free_reduce(letters);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w.truncate(hi);
    w.drain(..lo);
    w
}

impl ConjugacyCertificate {
    pub fn of(w: &BraidWord) -> Self {
        let perm = w.permutation();
        let reduced = cyclically_reduce(w.letters());
        let n = reduced.len();
        let best = (0..n.max(1))
            .map(|r| {
                let mut rotated = reduced[r.min(n)..].to_vec();
                rotated.extend_from_slice(&reduced[..r.min(n)]);
                w.with_letters(rotated).left_normal_form()
            })
            .min_by(|a, b| (a.inf(), a.factors()).cmp(&(b.inf(), b.factors())))
            .expect("at least one rotation");
        Self {
            strands: w.strands(),
            exponent_sum: w.exponent_sum(),
            free_cycle_type: perm.cycle_type_on(w.free_labels()),
            skeleton_cycle_type: perm.cycle_type_on(&w.skeleton_labels()),
            inf: best.inf(),
            factors: best.factors().to_vec(),
        }
    }
}

impl fmt::Display for ConjugacyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B{}:e{}:free{:?}:skel{:?}:inf{}:",
            self.strands,
            self.exponent_sum,
            self.free_cycle_type,
            self.skeleton_cycle_type,
            self.inf
        )?;
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            for v in p.images() {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
