//! Small diagrams with known invariants.

use num_rational::BigRational;

use crate::complex::Window;
use crate::diagram::DiscreteRelativeBraid;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn half(twice: i64) -> BigRational {
    BigRational::new(twice.into(), 2.into())
}

/// Values of the four-strand skeleton `Q1..Q4` at the two slices of one
/// period. Slice 0 orders them `Q4 < Q3 < Q2 < Q1`, slice 1 `Q3 < Q1 < Q4 <
/// Q2`.
const SKELETON: [[i64; 2]; 4] = [[4, 2], [3, 4], [2, 1], [1, 3]];

fn periodic(values: [i64; 2], periods: usize) -> Vec<BigRational> {
    (0..=2 * periods).map(|i| int(values[i % 2])).collect()
}

/// One free strand in the gap between `Q3` and `Q2` at slice 0 and between
/// `Q1` and `Q4` at slice 1. The closure `N` is a square whose exit set is
/// the pair of faces where the free strand meets `Q1` and `Q4`; the Conley
/// index is concentrated in degree 1, so `χ = -1`.
pub fn example1() -> DiscreteRelativeBraid {
    example2(&[Anchor::Middle])
}

/// Position of the free strand at an odd slice of [`example2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    /// Between `Q3` and `Q1`.
    Bottom,
    /// Between `Q1` and `Q4`.
    Middle,
    /// Between `Q4` and `Q2`.
    Top,
}

impl Anchor {
    pub const ALL: [Anchor; 3] = [Anchor::Bottom, Anchor::Middle, Anchor::Top];

    fn twice_value(self) -> i64 {
        match self {
            Anchor::Bottom => 3,
            Anchor::Middle => 5,
            Anchor::Top => 7,
        }
    }
}

/// The skeleton of [`example1`] repeated `ℓ = pattern.len()` times (so
/// `d = 2ℓ`), with one free strand that stays in the `Q3`–`Q2` gap at even
/// slices and follows `pattern` at odd slices. If `μ` anchors are in the
/// middle, the index is concentrated in degree `μ` and `χ = (-1)^μ`; the
/// all-bottom and all-top patterns are improper.
pub fn example2(pattern: &[Anchor]) -> DiscreteRelativeBraid {
    let ell = pattern.len();
    assert!(ell >= 1, "at least one period");
    let skeleton = SKELETON.iter().map(|&v| periodic(v, ell)).collect();
    let free = (0..=2 * ell)
        .map(|i| {
            if i % 2 == 0 {
                half(5)
            } else {
                half(pattern[i / 2].twice_value())
            }
        })
        .collect();
    DiscreteRelativeBraid::new(2 * ell, skeleton, vec![free]).expect("valid fixture")
}

/// Code window of the augmented [`example2`] diagrams: the `Q3`–`Q2` gap at
/// even slices, everything from `Q3` to `Q2` at odd slices. Every component
/// inside it is one of the `3^ℓ` patterns.
pub fn example2_window(ell: usize) -> Window {
    let row = (0..2 * ell)
        .map(|i| if i % 2 == 0 { (5, 5) } else { (2, 8) })
        .collect();
    Window::new(vec![row]).expect("valid window")
}

/// Twelve skeleton strands and three free strands closing up into one
/// cycle, each free strand in a gap of its own. Every free anchor is
/// trapped in its gap, so the closure is a single 6-cube; two of its six
/// coordinates carry exit faces on both ends and `χ = (-1)^2 = 1`.
pub fn example3() -> DiscreteRelativeBraid {
    const SKELETON: [[i64; 2]; 12] = [
        [0, 5],
        [1, 8],
        [2, 10],
        [3, 0],
        [5, 13],
        [6, 1],
        [8, 9],
        [9, 3],
        [10, 2],
        [12, 14],
        [13, 6],
        [14, 12],
    ];
    const FREE: [[i64; 3]; 3] = [[4, 4, 7], [7, 7, 11], [11, 11, 4]];
    DiscreteRelativeBraid::new(
        2,
        SKELETON.iter().map(|&v| periodic(v, 1)).collect(),
        FREE.iter()
            .map(|s| s.iter().map(|&v| int(v)).collect())
            .collect(),
    )
    .expect("valid fixture")
}
