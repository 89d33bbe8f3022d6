//! Exhaustive value-level enumeration of discretized configurations.
//!
//! At each slice the free anchors range over a ladder: the sorted skeleton
//! values interleaved with the midpoints of consecutive values. A
//! configuration picks one rung per free strand and slice. Singularity,
//! crossings and collapse are all decided on the rational values.

use std::collections::{BTreeSet, HashSet, VecDeque};

use braidchi::diagram::DiscreteRelativeBraid;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::OracleError;

const MAX_SKELETON: usize = 6;
const MAX_FREE: usize = 2;
const MAX_PERIOD: usize = 4;
const MAX_GRID: u128 = 2_000_000;

/// One path component of non-singular configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComponent {
    /// Smallest configuration, as rung indices per free strand and slice.
    pub first: Vec<Vec<usize>>,
    pub size: usize,
    /// Alternating cell count of the closure minus that of the exit set.
    pub chi: i64,
    pub proper: bool,
    /// Some configuration of the component can move a free anchor into a
    /// gap already holding another free anchor.
    pub gap_contact: bool,
}

/// Rung indices, free strand major.
type Config = Vec<usize>;

struct Ladder<'a> {
    b: &'a DiscreteRelativeBraid,
    n: usize,
    d: usize,
    rungs: Vec<Vec<BigRational>>,
    free_next: Vec<usize>,
    free_prev: Vec<usize>,
    skel_next: Vec<usize>,
    skel_prev: Vec<usize>,
}

fn sign(x: &BigRational, y: &BigRational) -> i32 {
    match x.cmp(y) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// `next[x]`: the strand whose first value is the last value of `x`.
fn successor(group: &[Vec<BigRational>], d: usize) -> Vec<usize> {
    group
        .iter()
        .map(|x| group.iter().position(|y| y[0] == x[d]).expect("closed"))
        .collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j] = i;
    }
    q
}

impl<'a> Ladder<'a> {
    fn new(b: &'a DiscreteRelativeBraid) -> Self {
        let d = b.d();
        let two = BigRational::from_integer(BigInt::from(2));
        let rungs = (0..d)
            .map(|i| {
                let mut vals: Vec<BigRational> =
                    b.skeleton().iter().map(|s| s[i].clone()).collect();
                vals.sort();
                let mut r = Vec::with_capacity(2 * vals.len());
                for (j, v) in vals.iter().enumerate() {
                    if j > 0 {
                        r.push((&vals[j - 1] + v) / &two);
                    }
                    r.push(v.clone());
                }
                r
            })
            .collect();
        let free_next = successor(b.free(), d);
        let skel_next = successor(b.skeleton(), d);
        Self {
            b,
            n: b.free().len(),
            d,
            rungs,
            free_prev: invert(&free_next),
            skel_prev: invert(&skel_next),
            free_next,
            skel_next,
        }
    }

    fn size(&self) -> usize {
        self.rungs[0].len()
    }

    /// Value of free strand `a` at slice `i` in `0..=d`.
    fn free(&self, x: &Config, a: usize, i: usize) -> &BigRational {
        if i == self.d {
            &self.rungs[0][x[self.free_next[a] * self.d]]
        } else {
            &self.rungs[i][x[a * self.d + i]]
        }
    }

    fn skel(&self, t: usize, i: usize) -> &BigRational {
        &self.b.skeleton()[t][i]
    }

    fn is_midpoint(rung: usize) -> bool {
        rung % 2 == 1
    }

    fn interior(&self, x: &Config) -> bool {
        let m = self.b.skeleton().len();
        for i in 0..self.d {
            for a in 0..self.n {
                let v = self.free(x, a, i);
                if (a + 1..self.n).any(|b| self.free(x, b, i) == v) {
                    return false;
                }
                for t in (0..m).filter(|&t| self.skel(t, i) == v) {
                    let before = if i == 0 {
                        let (pa, pt) = (self.free_prev[a], self.skel_prev[t]);
                        sign(self.free(x, pa, self.d - 1), self.skel(pt, self.d - 1))
                    } else {
                        sign(self.free(x, a, i - 1), self.skel(t, i - 1))
                    };
                    let after = sign(self.free(x, a, i + 1), self.skel(t, i + 1));
                    if before * after >= 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Crossings of the free strands with the skeleton: for every closed
    /// orbit of (free, skeleton) strand pairs, the sign changes of their
    /// difference around the circle with zeros dropped.
    fn crossings(&self, x: &Config) -> usize {
        let m = self.b.skeleton().len();
        let mut seen = HashSet::new();
        let mut total = 0;
        for a0 in 0..self.n {
            for t0 in 0..m {
                if seen.contains(&(a0, t0)) {
                    continue;
                }
                let mut signs = Vec::new();
                let (mut a, mut t) = (a0, t0);
                loop {
                    seen.insert((a, t));
                    for i in 0..self.d {
                        let s = sign(self.free(x, a, i), self.skel(t, i));
                        if s != 0 {
                            signs.push(s);
                        }
                    }
                    (a, t) = (self.free_next[a], self.skel_next[t]);
                    if (a, t) == (a0, t0) {
                        break;
                    }
                }
                let len = signs.len();
                total += (0..len)
                    .filter(|&j| signs[j] != signs[(j + 1) % len])
                    .count();
            }
        }
        total
    }

    /// Whether some free strand coincides with a skeleton strand along its
    /// whole closed orbit.
    fn collapses(&self, x: &Config) -> bool {
        let m = self.b.skeleton().len();
        (0..self.n).any(|a0| {
            (0..m).any(|t0| {
                let (mut a, mut t) = (a0, t0);
                loop {
                    if (0..self.d).any(|i| self.free(x, a, i) != self.skel(t, i)) {
                        return false;
                    }
                    (a, t) = (self.free_next[a], self.skel_next[t]);
                    if (a, t) == (a0, t0) {
                        return true;
                    }
                }
            })
        })
    }

    fn moved(&self, x: &Config, j: usize, dir: i64) -> Option<Config> {
        let v = x[j] as i64 + dir;
        if v < 0 || v >= self.size() as i64 {
            return None;
        }
        let mut y = x.clone();
        y[j] = v as usize;
        Some(y)
    }

    fn two_in_a_gap(&self, x: &Config) -> bool {
        (0..self.d).any(|i| {
            (0..self.n).any(|a| {
                let r = x[a * self.d + i];
                Self::is_midpoint(r) && (a + 1..self.n).any(|b| x[b * self.d + i] == r)
            })
        })
    }

    fn faces(&self, x: &Config) -> Vec<Config> {
        (0..x.len())
            .filter(|&j| Self::is_midpoint(x[j]))
            .flat_map(|j| {
                [-1, 1]
                    .into_iter()
                    .filter_map(move |dir| self.moved(x, j, dir))
            })
            .collect()
    }

    fn closure(&self, seed: impl IntoIterator<Item = Config>) -> BTreeSet<Config> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<Config> = seed.into_iter().collect();
        while let Some(c) = stack.pop() {
            if out.insert(c.clone()) {
                stack.extend(self.faces(&c));
            }
        }
        out
    }

    fn dim_sign(x: &Config) -> i64 {
        if x.iter().filter(|&&r| Self::is_midpoint(r)).count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn analyze(&self, start: Config, visited: &mut HashSet<Config>) -> OracleComponent {
        let mut cells = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut gap_contact = false;
        while let Some(x) = queue.pop_front() {
            for j in 0..x.len() {
                for dir in [-1, 1] {
                    let Some(y) = self.moved(&x, j, dir) else {
                        continue;
                    };
                    if self.two_in_a_gap(&y) {
                        gap_contact = true;
                    } else if !cells.contains(&y) && self.interior(&y) {
                        cells.insert(y.clone());
                        queue.push_back(y);
                    }
                }
            }
        }
        visited.extend(cells.iter().cloned());

        // A tangent face of a top configuration is an exit when crossing it
        // lowers the crossing number.
        let mut exits = Vec::new();
        for x in cells
            .iter()
            .filter(|x| x.iter().all(|&r| Self::is_midpoint(r)))
        {
            let inside = self.crossings(x);
            for j in 0..x.len() {
                for dir in [-1, 1] {
                    let face = self.moved(x, j, dir).expect("midpoints have neighbours");
                    if self.interior(&face) {
                        continue;
                    }
                    let Some(beyond) = self.moved(&face, j, dir) else {
                        continue;
                    };
                    let outside = self.crossings(&beyond);
                    assert!(
                        outside + 2 == inside || outside == inside + 2,
                        "crossing jump {inside} -> {outside}"
                    );
                    if outside < inside {
                        exits.push(face);
                    }
                }
            }
        }
        let closure = self.closure(cells.iter().cloned());
        let exit_closure = self.closure(exits);
        let chi = closure.iter().map(Self::dim_sign).sum::<i64>()
            - exit_closure.iter().map(Self::dim_sign).sum::<i64>();
        let proper = !closure.iter().any(|x| self.collapses(x));
        let first = cells
            .first()
            .expect("nonempty")
            .chunks(self.d)
            .map(<[usize]>::to_vec)
            .collect();
        OracleComponent {
            first,
            size: cells.len(),
            chi,
            proper,
            gap_contact,
        }
    }
}

/// All components of non-singular configurations of an augmented diagram,
/// ordered by their smallest configuration.
pub fn brute_force_components(
    b: &DiscreteRelativeBraid,
) -> Result<Vec<OracleComponent>, OracleError> {
    if !b.is_augmented() {
        return Err(OracleError::NotAugmented);
    }
    let (m, n, d) = (b.skeleton().len(), b.free().len(), b.d());
    let grid = ((2 * m - 1) as u128).pow((n * d) as u32);
    if m > MAX_SKELETON || n > MAX_FREE || d > MAX_PERIOD || grid > MAX_GRID {
        return Err(OracleError::Cap(format!(
            "m = {m}, n = {n}, d = {d}, {grid} configurations"
        )));
    }
    let ladder = Ladder::new(b);
    let size = ladder.size();
    let mut visited = HashSet::new();
    let mut components = Vec::new();
    let mut x: Config = vec![0; n * d];
    loop {
        if !visited.contains(&x) && ladder.interior(&x) && !ladder.two_in_a_gap(&x) {
            components.push(ladder.analyze(x.clone(), &mut visited));
        }
        let mut j = x.len();
        loop {
            if j == 0 {
                return Ok(components);
            }
            j -= 1;
            x[j] += 1;
            if x[j] < size {
                break;
            }
            x[j] = 0;
        }
    }
}
