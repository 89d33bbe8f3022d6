use num_rational::BigRational;

use super::{DiagramError, DiscreteRelativeBraid};
use crate::word::BraidWord;

/// Realizes a positive word as a piecewise linear diagram on integer levels.
///
/// Letter `g` at step `i` swaps the strands at levels `g - 1` and `g` over
/// `[i, i + 1]`; after the last letter the strands stay constant. The period
/// is `max(2, letters + 1)`, the least one exceeding the crossing count.
/// Strands are listed by their time-0 position within each group.
pub fn word_to_diagram(w: &BraidWord) -> Result<DiscreteRelativeBraid, DiagramError> {
    if let Some(&g) = w.letters().iter().find(|&&g| g < 0) {
        return Err(DiagramError::NegativeLetter(g));
    }
    let k = w.strands();
    let free = w.free_labels();
    if free.is_empty() || free.len() == k {
        return Err(DiagramError::Labels);
    }
    let d = (w.letters().len() + 1).max(2);

    // level[j][i]: position of the strand starting at j, at time i.
    let mut level = vec![Vec::with_capacity(d + 1); k];
    let mut at: Vec<usize> = (0..k).collect();
    for i in 0..=d {
        for (pos, &strand) in at.iter().enumerate() {
            level[strand].push(BigRational::from_integer(pos.into()));
        }
        if let Some(&g) = w.letters().get(i) {
            at.swap(g as usize - 1, g as usize);
        }
    }
    let (free_rows, skeleton_rows): (Vec<_>, Vec<_>) = level
        .into_iter()
        .enumerate()
        .partition(|(j, _)| free.contains(j));
    let strip = |rows: Vec<(usize, Vec<BigRational>)>| rows.into_iter().map(|(_, r)| r).collect();
    DiscreteRelativeBraid::new(d, strip(skeleton_rows), strip(free_rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(
        text: &str,
        k: usize,
        free: &[usize],
    ) -> Result<DiscreteRelativeBraid, DiagramError> {
        let w = BraidWord::parse(text, k)
            .unwrap()
            .with_free_labels(free.iter().copied())
            .unwrap();
        word_to_diagram(&w)
    }

    #[test]
    fn single_swap() {
        let b = diagram("1", 3, &[2]).unwrap();
        assert_eq!(b.d(), 2);
        assert_eq!(b.crossing_report().unwrap().total, 1);
        assert!(b.connectivity_bound_ok().unwrap());
    }

    #[test]
    fn empty_word() {
        let b = diagram("", 2, &[0]).unwrap();
        assert_eq!(b.d(), 2);
        assert_eq!(b.crossing_report().unwrap().total, 0);
    }

    #[test]
    fn half_twist() {
        // Δ exchanges positions 0 and 2, so only the middle strand can be free.
        let b = diagram("1 2 1", 3, &[1]).unwrap();
        assert_eq!(b.d(), 4);
        assert_eq!(b.crossing_report().unwrap().total, 3);
        assert!(b.tangencies().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let w = BraidWord::parse("-1", 3)
            .unwrap()
            .with_free_labels([2])
            .unwrap();
        assert_eq!(word_to_diagram(&w), Err(DiagramError::NegativeLetter(-1)));
        assert_eq!(diagram("1", 3, &[]), Err(DiagramError::Labels));
        assert_eq!(diagram("", 2, &[0, 1]), Err(DiagramError::Labels));
    }
}
