//! Artin braid words.
//!
//! Letters are signed generator indices: `g > 0` is the positive crossing
//! `σ_g` of the strands at positions `g - 1` and `g` (0-based), `g < 0` its
//! inverse. Letters act on positions from left to right, so the word `1 2`
//! sends the strand starting at position 0 to position 2.

mod certificate;
mod garside;
mod permutation;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use certificate::ConjugacyCertificate;
pub use garside::NormalForm;
pub use permutation::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("malformed token {token:?} at position {position}")]
    Syntax { token: String, position: usize },
    #[error("generator {letter} out of range for {strands} strands (allowed 1..={max})", max = .strands.saturating_sub(1))]
    Range { letter: i64, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("strand label {label} out of range for {strands} strands")]
    LabelRange { label: usize, strands: usize },
    #[error("free labels {labels:?} are not preserved by the closure permutation {permutation:?}")]
    LabelsNotClosed {
        labels: Vec<usize>,
        permutation: Vec<usize>,
    },
}

/// A word in the Artin generators of `B_k`, together with the set of strand
/// positions (at time 0) that belong to the free braid. The remaining
/// positions carry the skeleton.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
    free_labels: BTreeSet<usize>,
}

impl BraidWord {
    /// Builds a word from letters, checking `1 <= |g| <= strands - 1`.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, WordError> {
        if strands == 0 {
            return Err(WordError::NoStrands);
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(WordError::Range {
                    letter: g as i64,
                    strands,
                });
            }
        }
        Ok(Self {
            strands,
            letters,
            free_labels: BTreeSet::new(),
        })
    }

    pub fn identity(strands: usize) -> Result<Self, WordError> {
        Self::new(strands, Vec::new())
    }

    /// Parses whitespace-separated signed decimal generator indices.
    pub fn parse(text: &str, strands: usize) -> Result<Self, WordError> {
        if strands == 0 {
            return Err(WordError::NoStrands);
        }
        let mut letters = Vec::new();
        for (position, token) in text.split_whitespace().enumerate() {
            let well_formed = {
                let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
                !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
            };
            if !well_formed {
                return Err(WordError::Syntax {
                    token: token.to_string(),
                    position,
                });
            }
            let value: i64 = match token.parse() {
                Ok(v) => v,
                // Digits only, so the only failure left is overflow.
                Err(_) => {
                    return Err(WordError::Range {
                        letter: if token.starts_with('-') {
                            i64::MIN
                        } else {
                            i64::MAX
                        },
                        strands,
                    })
                }
            };
            if value == 0 || value.unsigned_abs() >= strands as u64 {
                return Err(WordError::Range {
                    letter: value,
                    strands,
                });
            }
            letters.push(value as i32);
        }
        Ok(Self {
            strands,
            letters,
            free_labels: BTreeSet::new(),
        })
    }

    /// Marks the given time-0 positions as free strands. The set must be
    /// preserved by the closure permutation.
    pub fn with_free_labels<I>(mut self, labels: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = usize>,
    {
        let labels: BTreeSet<usize> = labels.into_iter().collect();
        if let Some(&label) = labels.iter().find(|&&l| l >= self.strands) {
            return Err(WordError::LabelRange {
                label,
                strands: self.strands,
            });
        }
        let perm = self.permutation();
        if !perm.preserves(&labels) {
            return Err(WordError::LabelsNotClosed {
                labels: labels.into_iter().collect(),
                permutation: perm.images().to_vec(),
            });
        }
        self.free_labels = labels;
        Ok(self)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn free_labels(&self) -> &BTreeSet<usize> {
        &self.free_labels
    }

    pub fn skeleton_labels(&self) -> BTreeSet<usize> {
        (0..self.strands)
            .filter(|j| !self.free_labels.contains(j))
            .collect()
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.is_empty()
    }

    /// Whether every letter is a positive generator (a literal check; see
    /// [`NormalForm::inf`] for positivity of the group element).
    pub fn is_positive_word(&self) -> bool {
        self.letters.iter().all(|&g| g > 0)
    }

    /// Closure permutation: the composition of the letters' transpositions.
    pub fn permutation(&self) -> Permutation {
        let mut img: Vec<usize> = (0..self.strands).collect();
        // at[position] = strand currently there
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let g = g.unsigned_abs() as usize;
            at.swap(g - 1, g);
        }
        for (pos, &strand) in at.iter().enumerate() {
            img[strand] = pos;
        }
        Permutation::from_images(img).expect("swaps compose to a permutation")
    }

    /// Signed crossing count of the word.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&g| g.signum() as i64).sum()
    }

    /// Concatenation `self · other` (free labels of `self` are kept).
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        debug_assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
            free_labels: self.free_labels.clone(),
        }
    }

    pub(crate) fn with_letters(&self, letters: Vec<i32>) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters,
            free_labels: self.free_labels.clone(),
        }
    }

    /// A positive word for the half twist `Δ`.
    pub fn half_twist(strands: usize) -> Result<Self, WordError> {
        Self::new(
            strands,
            garside::positive_letters(&Permutation::half_twist(strands)),
        )
    }

    /// A positive word for the full twist `Δ²`.
    pub fn full_twist(strands: usize) -> Result<Self, WordError> {
        let delta = Self::half_twist(strands)?;
        Ok(delta.concat(&delta))
    }

    pub fn left_normal_form(&self) -> NormalForm {
        garside::left_normal_form(self)
    }

    /// Least `ℓ ≥ 0` such that `w · Δ^{2ℓ}` is a positive element, and an
    /// all-positive word for that element (the normal-form expansion; not
    /// claimed to be a shortest positive representative).
    pub fn minimal_positive_twists(&self) -> (u32, BraidWord) {
        let nf = self.left_normal_form();
        let deficit = (-nf.inf()).max(0);
        let twists = ((deficit + 1) / 2) as u32;
        let lifted = nf.shifted(2 * twists as i64);
        (twists, self.with_letters(lifted.to_letters()))
    }

    pub fn conjugacy_certificate(&self) -> ConjugacyCertificate {
        ConjugacyCertificate::of(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for g in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BraidWord(k={}, [{}], free={:?})",
            self.strands, self, self.free_labels
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_letters() {
        let w = BraidWord::parse("1 2 -1", 3).unwrap();
        assert_eq!(w.letters(), &[1, 2, -1]);
        assert_eq!(w.strands(), 3);
    }

    #[test]
    fn empty_text_is_identity() {
        let w = BraidWord::parse("", 2).unwrap();
        assert!(w.is_identity_word());
        assert!(BraidWord::parse("  \n\t ", 2).unwrap().is_identity_word());
    }

    #[test]
    fn range_errors() {
        assert!(matches!(
            BraidWord::parse("3", 3),
            Err(WordError::Range {
                letter: 3,
                strands: 3
            })
        ));
        assert!(matches!(
            BraidWord::parse("-3", 3),
            Err(WordError::Range { letter: -3, .. })
        ));
        assert!(matches!(
            BraidWord::parse("0", 3),
            Err(WordError::Range { letter: 0, .. })
        ));
        assert!(matches!(
            BraidWord::parse("99999999999999999999999", 3),
            Err(WordError::Range { .. })
        ));
        assert!(matches!(
            BraidWord::parse("1", 0),
            Err(WordError::NoStrands)
        ));
    }

    #[test]
    fn syntax_errors() {
        for bad in ["1 x", "1.5", "--1", "1,2", "+", "2a"] {
            assert!(
                matches!(BraidWord::parse(bad, 4), Err(WordError::Syntax { .. })),
                "{bad}"
            );
        }
        let err = BraidWord::parse("1 2 q", 4).unwrap_err();
        assert_eq!(
            err,
            WordError::Syntax {
                token: "q".into(),
                position: 2
            }
        );
    }

    #[test]
    fn permutation_convention() {
        let w = BraidWord::parse("1", 2).unwrap();
        assert_eq!(w.permutation().images(), &[1, 0]);
        assert!(BraidWord::parse("", 4).unwrap().permutation().is_identity());
        // (0 1) then (1 2), acting left to right on positions.
        let w = BraidWord::parse("1 2", 3).unwrap();
        assert_eq!(w.permutation().images(), &[2, 0, 1]);
        // Signs do not matter.
        let w = BraidWord::parse("-1 2", 3).unwrap();
        assert_eq!(w.permutation().images(), &[2, 0, 1]);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(BraidWord::parse("1 -1", 2).unwrap().exponent_sum(), 0);
        assert_eq!(BraidWord::parse("1 2 1", 3).unwrap().exponent_sum(), 3);
        let full = BraidWord::parse("1 2 1 1 2 1", 3).unwrap();
        assert_eq!(full.exponent_sum(), 6);
        assert_eq!(BraidWord::full_twist(3).unwrap().exponent_sum(), 6);
        assert_eq!(BraidWord::full_twist(5).unwrap().exponent_sum(), 20);
    }

    #[test]
    fn free_labels_must_be_closed() {
        let w = BraidWord::parse("1", 2).unwrap();
        assert!(matches!(
            w.clone().with_free_labels([0]),
            Err(WordError::LabelsNotClosed { .. })
        ));
        assert!(matches!(
            w.with_free_labels([2]),
            Err(WordError::LabelRange { label: 2, .. })
        ));
        let w = BraidWord::parse("1 1 2 2", 3)
            .unwrap()
            .with_free_labels([1])
            .unwrap();
        assert_eq!(w.skeleton_labels(), [0, 2].into_iter().collect());
    }

    #[test]
    fn full_twist_is_pure() {
        for k in 1..6 {
            assert!(BraidWord::full_twist(k)
                .unwrap()
                .permutation()
                .is_identity());
        }
    }
}
