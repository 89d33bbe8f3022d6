use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::json;

use super::{CellKind, CodeCell, ComplexError, Component, CubeModel};

/// The closure `N` of one component with its exit set `N⁻`.
#[derive(Clone, Debug)]
pub struct ComplexPair {
    pub id: usize,
    /// Interior cells of the component.
    pub component: Component,
    /// All cells of `N`, sorted.
    pub cells: Vec<CodeCell>,
    /// `faces[j]`: indices in `cells` of the codimension-one faces of cell `j`.
    pub faces: Vec<Vec<usize>>,
    pub in_exit: Vec<bool>,
}

/// A cell of `N` in which a free strand lies on a skeleton strand along a
/// whole closed period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cell: CodeCell,
    pub free: usize,
    pub skeleton: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Properness {
    pub proper: bool,
    pub witness: Option<Witness>,
}

impl ComplexPair {
    pub fn crossing_number(&self) -> usize {
        self.component.crossing_number
    }

    pub fn index_of(&self, cell: &CodeCell) -> Option<usize> {
        self.cells.binary_search(cell).ok()
    }

    pub fn exit_cells(&self) -> impl Iterator<Item = &CodeCell> {
        self.cells
            .iter()
            .zip(&self.in_exit)
            .filter(|(_, &e)| e)
            .map(|(c, _)| c)
    }

    pub fn top_dimension(&self) -> usize {
        self.cells.iter().map(CodeCell::dim).max().unwrap_or(0)
    }

    /// Cell-dump JSON.
    pub fn dump(&self) -> serde_json::Value {
        let cells: Vec<_> = self
            .cells
            .iter()
            .zip(&self.in_exit)
            .map(|(c, &e)| json!({ "codes": c, "dim": c.dim(), "in_exit": e }))
            .collect();
        json!({
            "component": self.id,
            "cells": cells,
            "crossing_number": self.crossing_number(),
        })
    }
}

/// Downward closure of `seed` under taking faces.
fn face_closure(seed: impl IntoIterator<Item = CodeCell>) -> BTreeSet<CodeCell> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<CodeCell> = seed.into_iter().collect();
    while let Some(c) = stack.pop() {
        if out.contains(&c) {
            continue;
        }
        stack.extend(c.faces().map(|(_, _, f)| f));
        out.insert(c);
    }
    out
}

impl CubeModel {
    /// The closure `N` of a component, with face incidence; `N⁻` empty.
    pub fn close(&self, id: usize, component: Component) -> ComplexPair {
        let cells: Vec<CodeCell> = face_closure(component.cells.iter().cloned())
            .into_iter()
            .collect();
        let faces = cells
            .iter()
            .map(|c| {
                c.faces()
                    .map(|(_, _, f)| cells.binary_search(&f).expect("closed under faces"))
                    .collect()
            })
            .collect();
        let in_exit = vec![false; cells.len()];
        ComplexPair {
            id,
            component,
            cells,
            faces,
            in_exit,
        }
    }

    /// Marks `N⁻`, the face closure of the exit faces.
    ///
    /// A tangent face of a top cell of the component touches one skeleton
    /// strand from the side its flanks are on. If the inside of the cell lies
    /// on the other side, the inside has two more crossings with that strand
    /// than the outside and the face is an exit. Each face must get the same
    /// verdict from every top cell it bounds, and the cell across the face
    /// must have exactly two crossings fewer (exit) or more (entrance).
    pub fn exit_set(&self, mut pair: ComplexPair) -> Result<ComplexPair, ComplexError> {
        let c = pair.crossing_number();
        let mut verdicts: BTreeMap<CodeCell, bool> = BTreeMap::new();
        for top in pair.component.cells.iter().filter(|x| x.is_top()) {
            for (j, dir, face) in top.faces() {
                if self.classify(&face) == CellKind::Interior {
                    continue;
                }
                let (a, i) = (j / self.d(), j % self.d());
                let (p, q) = self.flanks(&face, a, i);
                // Other entries are odd, so neither flank is zero.
                debug_assert!(p == q && p != 0);
                let exit = p == dir;
                if *verdicts.entry(face.clone()).or_insert(exit) != exit {
                    return Err(ComplexError::ExitConflict {
                        face: face.to_string(),
                    });
                }
                let beyond = face.get(a, i) as i32 + dir;
                if beyond < 0 || beyond > self.skeleton().top_code() as i32 {
                    continue;
                }
                let outside = face.with(j, beyond as u16);
                if self.shares_gap(&outside).is_some() {
                    continue;
                }
                let expected = if exit { c - 2 } else { c + 2 };
                let found = self.crossing_number(&outside);
                if found != expected {
                    return Err(ComplexError::CrossingMismatch {
                        detail: format!(
                            "across {} face {face} expected {expected} crossings, found {found}",
                            if exit { "exit" } else { "entrance" }
                        ),
                    });
                }
            }
        }
        let exits = face_closure(verdicts.into_iter().filter(|(_, e)| *e).map(|(f, _)| f));
        for f in &exits {
            let k = pair.index_of(f).expect("exit faces lie in N");
            pair.in_exit[k] = true;
        }
        Ok(pair)
    }

    /// Looks for a cell of `N` in which some free strand follows a skeleton
    /// strand at every anchor of a full closed period, following both
    /// closures. Such a class can be collapsed onto its skeleton (the
    /// extremal constants included) and is improper.
    pub fn properness_check(&self, pair: &ComplexPair) -> Properness {
        for cell in &pair.cells {
            for a in 0..self.n() {
                let c = cell.get(a, 0);
                if c % 2 == 1 {
                    continue;
                }
                let t = self.skeleton().strand_at(0, c as usize / 2);
                let start = (a, 0, t);
                let mut state = start;
                let collapsed = loop {
                    let (fa, i, s) = state;
                    let code = cell.get(fa, i);
                    if code % 2 == 1 || code as usize != 2 * self.skeleton().rank_of(i, s) {
                        break false;
                    }
                    state = self.next(fa, i, s);
                    if state == start {
                        break true;
                    }
                };
                if collapsed {
                    return Properness {
                        proper: false,
                        witness: Some(Witness {
                            cell: cell.clone(),
                            free: a,
                            skeleton: t,
                        }),
                    };
                }
            }
        }
        Properness {
            proper: true,
            witness: None,
        }
    }
}
