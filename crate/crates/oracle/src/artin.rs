//! Artin's faithful action of `B_k` on the free group `F_k`.
//!
//! `σ_i` sends `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i` and fixes the other
//! generators; `σ_i⁻¹` sends `x_i ↦ x_{i+1}`, `x_{i+1} ↦ x_{i+1}⁻¹ x_i
//! x_{i+1}`. Two braid words are equal iff they induce the same images.

/// Freely reduced word in `x_1..x_k` (signed, 1-based).
type FreeWord = Vec<i32>;

fn reduce(w: impl IntoIterator<Item = i32>) -> FreeWord {
    let mut out = Vec::new();
    for g in w {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

fn invert(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|&g| -g).collect()
}

/// Images of the generators under one letter.
fn letter_images(k: usize, g: i32) -> Vec<FreeWord> {
    let i = g.unsigned_abs() as i32;
    let mut images: Vec<FreeWord> = (1..=k as i32).map(|j| vec![j]).collect();
    let (a, b) = (i as usize - 1, i as usize);
    if g > 0 {
        images[a] = vec![i, i + 1, -i];
        images[b] = vec![i];
    } else {
        images[a] = vec![i + 1];
        images[b] = vec![-(i + 1), i, i + 1];
    }
    images
}

/// Substitutes `images` into `w`.
fn substitute(w: &[i32], images: &[FreeWord]) -> FreeWord {
    reduce(w.iter().flat_map(|&g| {
        let img = &images[g.unsigned_abs() as usize - 1];
        if g > 0 {
            img.clone()
        } else {
            invert(img)
        }
    }))
}

/// Images of `x_1..x_k` under the automorphism of the word.
pub fn free_group_images(letters: &[i32], k: usize) -> Vec<Vec<i32>> {
    let mut current: Vec<FreeWord> = (1..=k as i32).map(|j| vec![j]).collect();
    for &g in letters {
        let step = letter_images(k, g);
        current = step.iter().map(|img| substitute(img, &current)).collect();
    }
    current
}

pub fn words_equal(a: &[i32], b: &[i32], k: usize) -> bool {
    free_group_images(a, k) == free_group_images(b, k)
}
