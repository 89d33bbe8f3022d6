//! End-to-end driver: word or diagram in, Conley-index homology out.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::complex::{ComplexError, ComplexPair, CubeModel, Properness, Window};
use crate::diagram::{word_to_diagram, DiagramError, DiscreteRelativeBraid};
use crate::homology::{homology, HomologyError, HomologyResult};
use crate::word::{BraidWord, WordError};

pub const FORCING: &str = "χ ≠ 0: closed integral curves are forced in this class";
const NO_FORCING: &str = "χ = 0: the invariant does not force closed integral curves";
const IMPROPER: &str = "the class is improper; its Euler-Floer characteristic is not defined";

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("improper class: {0}")]
    Improper(String),
    #[error("gap separation violated: {0}")]
    GapSeparation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Invalid(_) => 2,
            PipelineError::Improper(_) => 3,
            PipelineError::GapSeparation(_) => 4,
            PipelineError::Internal(_) => 1,
        }
    }
}

impl From<WordError> for PipelineError {
    fn from(e: WordError) -> Self {
        PipelineError::Invalid(e.to_string())
    }
}

impl From<DiagramError> for PipelineError {
    fn from(e: DiagramError) -> Self {
        PipelineError::Invalid(e.to_string())
    }
}

impl From<ComplexError> for PipelineError {
    fn from(e: ComplexError) -> Self {
        let text = e.to_string();
        match e {
            ComplexError::GapSeparation { .. } | ComplexError::GapInfeasible { .. } => {
                PipelineError::GapSeparation(text)
            }
            ComplexError::ExitConflict { .. } => PipelineError::Improper(text),
            ComplexError::CrossingMismatch { .. } => PipelineError::Internal(text),
            _ => PipelineError::Invalid(text),
        }
    }
}

impl From<HomologyError> for PipelineError {
    fn from(e: HomologyError) -> Self {
        PipelineError::Internal(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The component of the given diagram.
    #[default]
    Component,
    /// Every component of the fiber (optionally inside a code window).
    Exhaustive,
}

#[derive(Clone, Debug)]
pub enum Source {
    Word {
        text: String,
        strands: usize,
        free: Vec<usize>,
    },
    Diagram(DiscreteRelativeBraid),
}

#[derive(Clone, Debug)]
pub struct Options {
    pub mode: Mode,
    pub refine: Option<usize>,
    pub augment: bool,
    pub window: Option<Window>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            mode: Mode::Component,
            refine: None,
            augment: true,
            window: None,
        }
    }
}

/// A positive word lifted from the input word, with the twists used.
#[derive(Clone, Debug)]
pub struct Lift {
    pub twists: u32,
    pub positive: BraidWord,
}

/// Turns a word into a positive one and then into a diagram.
pub fn lift_word(
    text: &str,
    strands: usize,
    free: &[usize],
) -> Result<(Lift, DiscreteRelativeBraid), PipelineError> {
    let w = BraidWord::parse(text, strands)?.with_free_labels(free.iter().copied())?;
    let (twists, positive) = w.minimal_positive_twists();
    let diagram = word_to_diagram(&positive)?;
    Ok((Lift { twists, positive }, diagram))
}

#[derive(Clone, Debug)]
pub struct AnalyzedComponent {
    pub pair: ComplexPair,
    pub properness: Properness,
    pub certificate: String,
    /// Index of the certificate group this component falls in.
    pub class: usize,
    /// Another component carries the same certificate.
    pub undecided: bool,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub input: Value,
    pub mode: Mode,
    pub lift: Option<Lift>,
    /// The diagram the complex was built from (refined and augmented).
    pub diagram: DiscreteRelativeBraid,
    pub crossings: usize,
    pub notes: Vec<String>,
    pub components: Vec<AnalyzedComponent>,
    /// Homology of the proper components, if there are any in component
    /// mode, or always in exhaustive mode.
    pub result: Option<HomologyResult>,
}

/// Prepares the diagram: word lifting, refinement and augmentation.
fn prepare(
    source: &Source,
    options: &Options,
) -> Result<(Value, Option<Lift>, DiscreteRelativeBraid, Vec<String>), PipelineError> {
    let mut notes = Vec::new();
    let (input, lift, mut diagram) = match source {
        Source::Word {
            text,
            strands,
            free,
        } => {
            let (lift, diagram) = lift_word(text, *strands, free)?;
            let input = json!({ "word": text, "strands": strands, "free": free });
            (input, Some(lift), diagram)
        }
        Source::Diagram(b) => (json!({ "diagram": b.to_json_value() }), None, b.clone()),
    };
    if let Some(k) = options.refine {
        diagram = diagram.refine(k)?;
    }
    let tangencies = diagram.tangencies();
    if !tangencies.is_empty() {
        return Err(DiagramError::Singular(tangencies).into());
    }
    if !diagram.is_augmented() {
        if !options.augment {
            return Err(PipelineError::Invalid(
                "augmentation disabled but the diagram has no extremal constant strands, so the class is unbounded".into(),
            ));
        }
        diagram = diagram.augment();
        notes.push("diagram augmented with extremal constant strands".into());
    }
    Ok((input, lift, diagram, notes))
}

fn analyze_pair(model: &CubeModel, pair: ComplexPair) -> Result<AnalyzedComponent, PipelineError> {
    let pair = model.exit_set(pair)?;
    let properness = model.properness_check(&pair);
    let certificate = model
        .certificate(pair.component.representative())
        .to_string();
    Ok(AnalyzedComponent {
        pair,
        properness,
        certificate,
        class: 0,
        undecided: false,
    })
}

pub fn run(source: &Source, options: &Options) -> Result<Analysis, PipelineError> {
    let (input, lift, diagram, mut notes) = prepare(source, options)?;
    let crossings = diagram.crossing_report()?.total;
    if diagram.d() <= crossings {
        notes.push(format!(
            "warning: d = {} does not exceed the {crossings} crossings; connectivity of the fiber is not guaranteed",
            diagram.d()
        ));
    }
    let (model, start) = CubeModel::normalize(&diagram)?;

    let mut components = Vec::new();
    match options.mode {
        Mode::Component => {
            if options.window.is_some() {
                return Err(PipelineError::Invalid(
                    "a window needs exhaustive mode".into(),
                ));
            }
            let component = model.enumerate_component(&start)?;
            components.push(analyze_pair(&model, model.close(0, component))?);
        }
        Mode::Exhaustive => {
            for (id, component) in model
                .enumerate_all(options.window.as_ref())?
                .into_iter()
                .enumerate()
            {
                components.push(analyze_pair(&model, model.close(id, component))?);
            }
        }
    }

    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (j, c) in components.iter().enumerate() {
        groups.entry(c.certificate.clone()).or_default().push(j);
    }
    for (class, members) in groups.values().enumerate() {
        for &j in members {
            components[j].class = class;
            components[j].undecided = members.len() > 1;
        }
    }

    let proper: Vec<&ComplexPair> = components
        .iter()
        .filter(|c| c.properness.proper)
        .map(|c| &c.pair)
        .collect();
    let result = match options.mode {
        Mode::Component if proper.is_empty() => None,
        _ => Some(homology(proper)?),
    };
    Ok(Analysis {
        input,
        mode: options.mode,
        lift,
        diagram,
        crossings,
        notes,
        components,
        result,
    })
}

impl Analysis {
    /// 0 on success, 3 for an improper class (component mode), 5 when
    /// exhaustive mode finds distinct components it cannot tell apart.
    pub fn exit_code(&self) -> i32 {
        match self.mode {
            Mode::Component if self.result.is_none() => 3,
            Mode::Exhaustive if self.components.iter().any(|c| c.undecided) => 5,
            _ => 0,
        }
    }

    pub fn interpretation(&self) -> &'static str {
        match &self.result {
            None => IMPROPER,
            Some(r) if r.euler != 0 => FORCING,
            Some(_) => NO_FORCING,
        }
    }

    pub fn report(&self) -> Value {
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "id": c.pair.id,
                    "cells": c.pair.cells.len(),
                    "exit_cells": c.pair.exit_cells().count(),
                    "interior_cells": c.pair.component.cells.len(),
                    "crossing_number": c.pair.crossing_number(),
                    "proper": c.properness.proper,
                    "witness": c.properness.witness,
                    "certificate": c.certificate,
                    "class": c.class,
                    "undecided": c.undecided,
                })
            })
            .collect();
        let pipeline = json!({
            "mode": self.mode,
            "twists": self.lift.as_ref().map(|l| l.twists),
            "positive_word": self.lift.as_ref().map(|l| l.positive.to_string()),
            "d": self.diagram.d(),
            "skeleton_strands": self.diagram.skeleton().len(),
            "free_strands": self.diagram.free().len(),
            "crossings": self.crossings,
            "connectivity_bound": self.diagram.d() > self.crossings,
            "augmented": self.diagram.is_augmented(),
            "proper": self.components.iter().all(|c| c.properness.proper),
            "components": components,
            "notes": self.notes,
        });
        json!({
            "input": self.input,
            "pipeline": pipeline,
            "result": self.result,
            "interpretation": self.interpretation(),
        })
    }

    /// Cell dumps: one object in component mode, an array in exhaustive mode.
    pub fn cell_dump(&self) -> Value {
        let dumps: Vec<Value> = self.components.iter().map(|c| c.pair.dump()).collect();
        match self.mode {
            Mode::Component => dumps.into_iter().next().unwrap_or(Value::Null),
            Mode::Exhaustive => Value::Array(dumps),
        }
    }
}

/// One admissibility check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Runs the admissibility checks without computing homology. Returns the
/// checks and the exit code they imply.
pub fn check(source: &Source, options: &Options) -> Result<(Vec<Check>, i32), PipelineError> {
    let mut diagram = match source {
        Source::Word {
            text,
            strands,
            free,
        } => lift_word(text, *strands, free)?.1,
        Source::Diagram(b) => b.clone(),
    };
    if let Some(k) = options.refine {
        diagram = diagram.refine(k)?;
    }
    let mut checks = Vec::new();
    let tangencies = diagram.tangencies();
    checks.push(Check {
        name: "non-singularity",
        ok: tangencies.is_empty(),
        detail: if tangencies.is_empty() {
            "no tangencies".into()
        } else {
            DiagramError::Singular(tangencies).to_string()
        },
    });
    if !checks[0].ok {
        return Ok((checks, 2));
    }
    let augmented = diagram.is_augmented();
    checks.push(Check {
        name: "augmentation",
        ok: augmented || options.augment,
        detail: match (augmented, options.augment) {
            (true, _) => "extremal constant strands present".into(),
            (false, true) => "diagram will be augmented automatically".into(),
            (false, false) => "no extremal constant strands and augmentation disabled".into(),
        },
    });
    if !checks[1].ok {
        return Ok((checks, 2));
    }
    let diagram = diagram.augment();
    let crossings = diagram.crossing_report()?.total;
    checks.push(Check {
        name: "connectivity bound",
        ok: true,
        detail: if diagram.d() > crossings {
            format!("d = {} > {crossings} crossings", diagram.d())
        } else {
            format!(
                "warning: d = {} <= {crossings} crossings; the bound is sufficient, not necessary",
                diagram.d()
            )
        },
    });
    let (model, start) = match CubeModel::normalize(&diagram) {
        Ok(x) => x,
        Err(e) => {
            let code = PipelineError::from(e.clone()).exit_code();
            checks.push(Check {
                name: "gap separation",
                ok: false,
                detail: e.to_string(),
            });
            return Ok((checks, code));
        }
    };
    let explored = model
        .enumerate_component(&start)
        .and_then(|c| model.exit_set(model.close(0, c)));
    let pair = match explored {
        Ok(p) => p,
        Err(e) => {
            let code = PipelineError::from(e.clone()).exit_code();
            checks.push(Check {
                name: "gap separation",
                ok: false,
                detail: e.to_string(),
            });
            return Ok((checks, code));
        }
    };
    checks.push(Check {
        name: "gap separation",
        ok: true,
        detail: "free strands never share a gap".into(),
    });
    let properness = model.properness_check(&pair);
    checks.push(Check {
        name: "properness",
        ok: properness.proper,
        detail: match &properness.witness {
            None => "no collapse onto the skeleton".into(),
            Some(w) => format!(
                "free strand {} collapses onto skeleton strand {} in cell {}",
                w.free, w.skeleton, w.cell
            ),
        },
    });
    let code = if properness.proper { 0 } else { 3 };
    Ok((checks, code))
}
