//! Discrete relative braid diagrams.
//!
//! A diagram stores, for every strand, its anchor values at the times
//! `0, 1/d, ..., 1`. Strands are split into a skeleton and a free group, and
//! each group closes up on itself: the value of a strand at index `d` is the
//! index-0 value of exactly one strand of the same group.

mod crossing;
mod from_word;
mod rational;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::Permutation;

pub(crate) use crossing::{scan_pairs, scan_pairs_where};
pub use crossing::{CrossingReport, PairCount};
pub use from_word::word_to_diagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("period d = {0} is too small (need d >= 2)")]
    PeriodTooShort(usize),
    #[error("{strand} has {found} anchors, expected d + 1 = {expected}")]
    Length {
        strand: StrandRef,
        found: usize,
        expected: usize,
    },
    #[error("a diagram needs at least one free strand")]
    NoFreeStrands,
    #[error("{group} strands do not close up: no bijection between index-d and index-0 values")]
    Closure { group: &'static str },
    #[error("skeleton strands {a} and {b} coincide at slice {slice}")]
    CoincidentSkeleton { slice: usize, a: usize, b: usize },
    #[error("diagram is marked augmented but has no extremal constant strands")]
    NotBounded,
    #[error("refinement factor must be at least 2 (got {0})")]
    RefineFactor(usize),
    #[error("singular diagram: {}", list_tangencies(.0))]
    Singular(Vec<Tangency>),
    #[error("word has a negative letter {0}; lift it to a positive braid first")]
    NegativeLetter(i32),
    #[error("free labels must be a nonempty proper subset of the strands")]
    Labels,
    #[error("malformed diagram JSON: {0}")]
    Json(String),
}

fn list_tangencies(ts: &[Tangency]) -> String {
    ts.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A strand of a diagram, by group and index within the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase", tag = "group", content = "index")]
pub enum StrandRef {
    Skeleton(usize),
    Free(usize),
}

impl fmt::Display for StrandRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrandRef::Skeleton(s) => write!(f, "skeleton {s}"),
            StrandRef::Free(a) => write!(f, "free {a}"),
        }
    }
}

/// An anchor equality between two strands whose neighbouring signs do not
/// strictly alternate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Tangency {
    pub a: StrandRef,
    pub b: StrandRef,
    pub slice: usize,
}

impl fmt::Display for Tangency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} and {} touch at slice {}", self.a, self.b, self.slice)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct DiscreteRelativeBraid {
    d: usize,
    skeleton: Vec<Vec<BigRational>>,
    free: Vec<Vec<BigRational>>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    d: usize,
    skeleton: Vec<Vec<rational::Json>>,
    free: Vec<Vec<rational::Json>>,
    #[serde(default)]
    augmented: bool,
}

/// Index of the strand in `group` whose index-0 value equals each strand's
/// index-`d` value, if that is a bijection.
fn closure_of(group: &[Vec<BigRational>], d: usize) -> Option<Permutation> {
    let img = group
        .iter()
        .map(|x| group.iter().position(|y| y[0] == x[d]))
        .collect::<Option<Vec<_>>>()?;
    Permutation::from_images(img)
}

impl DiscreteRelativeBraid {
    /// Validates shape, closure and genericity of the skeleton slices. Does
    /// not reject singular diagrams; see [`Self::tangencies`].
    pub fn new(
        d: usize,
        skeleton: Vec<Vec<BigRational>>,
        free: Vec<Vec<BigRational>>,
    ) -> Result<Self, DiagramError> {
        if d < 2 {
            return Err(DiagramError::PeriodTooShort(d));
        }
        if free.is_empty() {
            return Err(DiagramError::NoFreeStrands);
        }
        let refs = (0..skeleton.len())
            .map(StrandRef::Skeleton)
            .zip(&skeleton)
            .chain((0..free.len()).map(StrandRef::Free).zip(&free));
        for (strand, values) in refs {
            if values.len() != d + 1 {
                return Err(DiagramError::Length {
                    strand,
                    found: values.len(),
                    expected: d + 1,
                });
            }
        }
        if closure_of(&skeleton, d).is_none() {
            return Err(DiagramError::Closure { group: "skeleton" });
        }
        if closure_of(&free, d).is_none() {
            return Err(DiagramError::Closure { group: "free" });
        }
        for slice in 0..=d {
            for a in 0..skeleton.len() {
                for b in a + 1..skeleton.len() {
                    if skeleton[a][slice] == skeleton[b][slice] {
                        return Err(DiagramError::CoincidentSkeleton { slice, a, b });
                    }
                }
            }
        }
        Ok(Self { d, skeleton, free })
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let raw: DiagramJson =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        let convert =
            |rows: Vec<Vec<rational::Json>>| -> Result<Vec<Vec<BigRational>>, DiagramError> {
                rows.into_iter()
                    .map(|row| row.into_iter().map(rational::Json::into_rational).collect())
                    .collect::<Result<_, String>>()
                    .map_err(DiagramError::Json)
            };
        let b = Self::new(raw.d, convert(raw.skeleton)?, convert(raw.free)?)?;
        if raw.augmented && !b.is_augmented() {
            return Err(DiagramError::NotBounded);
        }
        Ok(b)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let convert = |rows: &[Vec<BigRational>]| {
            rows.iter()
                .map(|row| row.iter().map(rational::Json::from_rational).collect())
                .collect()
        };
        serde_json::to_value(DiagramJson {
            d: self.d,
            skeleton: convert(&self.skeleton),
            free: convert(&self.free),
            augmented: self.is_augmented(),
        })
        .expect("diagram serializes")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn skeleton(&self) -> &[Vec<BigRational>] {
        &self.skeleton
    }

    pub fn free(&self) -> &[Vec<BigRational>] {
        &self.free
    }

    pub fn skeleton_closure(&self) -> Permutation {
        closure_of(&self.skeleton, self.d).expect("validated")
    }

    pub fn free_closure(&self) -> Permutation {
        closure_of(&self.free, self.d).expect("validated")
    }

    fn all_strands(&self) -> impl Iterator<Item = &Vec<BigRational>> {
        self.skeleton.iter().chain(&self.free)
    }

    /// Indices of the bottom and top extremal constant skeleton strands, if
    /// the diagram has them: constant strands strictly below (above) every
    /// anchor of every other strand.
    pub fn extremal_constants(&self) -> Option<(usize, usize)> {
        let is_constant = |s: &Vec<BigRational>| s.iter().all(|v| *v == s[0]);
        let bounds = |pick: fn(&BigRational, &BigRational) -> bool| {
            self.skeleton.iter().position(|s| {
                is_constant(s)
                    && self
                        .all_strands()
                        .filter(|t| !std::ptr::eq(*t, s))
                        .flatten()
                        .all(|v| pick(&s[0], v))
            })
        };
        Some((bounds(|c, v| c < v)?, bounds(|c, v| c > v)?))
    }

    pub fn is_augmented(&self) -> bool {
        self.extremal_constants().is_some()
    }

    /// Appends constant skeleton strands at `min - 1` and `max + 1`; a
    /// diagram that already has extremal constants is returned unchanged.
    pub fn augment(&self) -> DiscreteRelativeBraid {
        if self.is_augmented() {
            return self.clone();
        }
        let values = || self.all_strands().flatten();
        let lo = values().min().expect("at least one free strand").clone() - BigRational::one();
        let hi = values().max().expect("at least one free strand").clone() + BigRational::one();
        let mut skeleton = self.skeleton.clone();
        skeleton.push(vec![lo; self.d + 1]);
        skeleton.push(vec![hi; self.d + 1]);
        DiscreteRelativeBraid {
            d: self.d,
            skeleton,
            free: self.free.clone(),
        }
    }

    /// Subdivides every segment into `factor` equal pieces. The piecewise
    /// linear curves are unchanged; the only possible failure is that a
    /// skeleton crossing lands exactly on a new anchor.
    pub fn refine(&self, factor: usize) -> Result<DiscreteRelativeBraid, DiagramError> {
        if factor < 2 {
            return Err(DiagramError::RefineFactor(factor));
        }
        let k = BigRational::from_integer(factor.into());
        let refine_strand = |s: &Vec<BigRational>| {
            let mut out = Vec::with_capacity(self.d * factor + 1);
            for i in 0..self.d {
                let step = (&s[i + 1] - &s[i]) / &k;
                let mut v = s[i].clone();
                for _ in 0..factor {
                    out.push(v.clone());
                    v += &step;
                }
            }
            out.push(s[self.d].clone());
            out
        };
        Self::new(
            self.d * factor,
            self.skeleton.iter().map(refine_strand).collect(),
            self.free.iter().map(refine_strand).collect(),
        )
    }

    /// Strands in combined order (skeleton first) with their closure
    /// permutation.
    fn combined(&self) -> (Vec<StrandRef>, Vec<&[BigRational]>, Permutation) {
        let m = self.skeleton.len();
        let refs = (0..m)
            .map(StrandRef::Skeleton)
            .chain((0..self.free.len()).map(StrandRef::Free))
            .collect();
        let values = self.all_strands().map(Vec::as_slice).collect();
        let tau = self.skeleton_closure();
        let pi = self.free_closure();
        let img = (0..m)
            .map(|s| tau.image(s))
            .chain((0..self.free.len()).map(|a| m + pi.image(a)))
            .collect();
        (
            refs,
            values,
            Permutation::from_images(img).expect("closure"),
        )
    }

    /// All anchor equalities involving a free strand whose neighbouring signs
    /// have product `>= 0`. Anchors are checked at indices `0..d`, with the
    /// neighbours of the first and last anchor taken across the closure.
    pub fn tangencies(&self) -> Vec<Tangency> {
        let (refs, values, closure) = self.combined();
        scan_pairs(&values, &closure)
            .tangencies
            .into_iter()
            .map(|(x, y, slice)| Tangency {
                a: refs[x],
                b: refs[y],
                slice,
            })
            .collect()
    }

    pub fn is_singular(&self) -> bool {
        !self.tangencies().is_empty()
    }

    pub fn crossing_report(&self) -> Result<CrossingReport, DiagramError> {
        let (refs, values, closure) = self.combined();
        let scan = scan_pairs(&values, &closure);
        if !scan.tangencies.is_empty() {
            return Err(DiagramError::Singular(self.tangencies()));
        }
        Ok(CrossingReport::from_counts(
            scan.counts
                .into_iter()
                .map(|(x, y, count)| PairCount {
                    a: refs[x],
                    b: refs[y],
                    count,
                })
                .collect(),
        ))
    }

    /// `d > #crossings`, the sufficient condition for the discretized fiber
    /// to be connected.
    pub fn connectivity_bound_ok(&self) -> Result<bool, DiagramError> {
        Ok(self.d > self.crossing_report()?.total)
    }

    /// Smallest and largest anchor values over all strands.
    pub fn value_range(&self) -> (BigRational, BigRational) {
        let mut it = self.all_strands().flatten();
        let first = it.next().cloned().unwrap_or_else(BigRational::zero);
        it.fold((first.clone(), first), |(lo, hi), v| {
            (lo.min(v.clone()), hi.max(v.clone()))
        })
    }
}

impl fmt::Debug for DiscreteRelativeBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiscreteRelativeBraid({})", self.to_json_value())
    }
}
