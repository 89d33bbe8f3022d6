//! Positivity of braid words by subword reversing.
//!
//! Right reversing rewrites `s_i⁻¹ s_j` as `s_j s_i s_j⁻¹ s_i⁻¹` (adjacent),
//! `s_j s_i⁻¹` (distant) or nothing (`i = j`), and ends with a word `N D⁻¹`
//! with `N`, `D` positive. Left reversing of `N D⁻¹` then gives `D'⁻¹ N'`
//! with `D' N = N' D` the least common left multiple, and the braid is
//! positive exactly when `D'` is empty.

use braidchi::word::BraidWord;

use crate::OracleError;

/// Rewrites until no `a⁻¹ b` (right) or `a b⁻¹` (left) remains.
fn reverse(mut w: Vec<i32>, right: bool) -> Vec<i32> {
    loop {
        let hit = w.windows(2).position(|p| {
            if right {
                p[0] < 0 && p[1] > 0
            } else {
                p[0] > 0 && p[1] < 0
            }
        });
        let Some(at) = hit else {
            return w;
        };
        let (i, j) = (w[at].abs(), w[at + 1].abs());
        let replacement: Vec<i32> = if i == j {
            vec![]
        } else if (i - j).abs() >= 2 {
            if right {
                vec![j, -i]
            } else {
                vec![-j, i]
            }
        } else if right {
            vec![j, i, -j, -i]
        } else {
            vec![-j, -i, j, i]
        };
        w.splice(at..at + 2, replacement);
    }
}

/// Whether the letters represent an element of the positive monoid.
pub fn is_positive_element(letters: &[i32]) -> bool {
    let right = reverse(letters.to_vec(), true);
    let left = reverse(right, false);
    left.iter().all(|&g| g > 0)
}

fn delta(k: usize) -> Vec<i32> {
    // σ1 (σ2 σ1) (σ3 σ2 σ1) ...
    (1..k as i32).flat_map(|top| (1..=top).rev()).collect()
}

/// Largest `t` with `Δ^{-t} w` positive, scanning upward from the known
/// lower bound `-#negative letters`.
pub fn brute_force_inf(w: &BraidWord) -> Result<i64, OracleError> {
    let k = w.strands();
    if k > 4 || w.letters().len() > 6 {
        return Err(OracleError::Cap(format!(
            "{} strands, {} letters (caps 4, 6)",
            k,
            w.letters().len()
        )));
    }
    if k == 1 {
        return Ok(0);
    }
    let d = delta(k);
    let inv: Vec<i32> = d.iter().rev().map(|&g| -g).collect();
    let shifted = |t: i64| -> Vec<i32> {
        let block = if t >= 0 { &inv } else { &d };
        let mut out: Vec<i32> =
            std::iter::repeat_n(block.iter().copied(), t.unsigned_abs() as usize)
                .flatten()
                .collect();
        out.extend_from_slice(w.letters());
        out
    };
    let mut t = -(w.letters().iter().filter(|&&g| g < 0).count() as i64);
    debug_assert!(is_positive_element(&shifted(t)));
    while is_positive_element(&shifted(t + 1)) {
        t += 1;
    }
    Ok(t)
}
