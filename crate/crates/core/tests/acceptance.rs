//! Acceptance suite. Prints one line per criterion and fails if any does.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use braidchi::complex::{ComplexError, ComplexPair, CubeModel};
use braidchi::diagram::DiscreteRelativeBraid;
use braidchi::fixtures::{self, Anchor};
use braidchi::homology::{pair_homology, ChainComplexGf2};
use braidchi::pipeline::{run, Analysis, Mode, Options, Source};
use braidchi::word::BraidWord;
use braidchi_oracle::{
    brute_force_components, brute_force_inf, is_positive_element, words_equal, OracleError,
};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Structural certificates gathered from every complex built in the suite.
#[derive(Default)]
struct Ledger {
    pairs: usize,
    failures: Vec<String>,
}

thread_local! {
    static LEDGER: RefCell<Ledger> = RefCell::new(Ledger::default());
}

/// Checks ∂∂ = 0, the Euler identity and constant crossing number of a
/// pair whose exit set was already marked consistently.
fn certify(model: &CubeModel, pair: &ComplexPair) -> Result<(Vec<usize>, i64), String> {
    let outcome = (|| {
        if let Some(k) = ChainComplexGf2::from_pair(pair).boundary_square_failure() {
            return Err(format!("∂∂ ≠ 0 in degree {k}"));
        }
        let c = pair.crossing_number();
        if let Some(x) = pair
            .component
            .cells
            .iter()
            .find(|x| model.crossing_number(x) != c)
        {
            return Err(format!("crossing number of {x} differs from {c}"));
        }
        pair_homology(pair).map_err(|e| e.to_string())
    })();
    LEDGER.with(|l| {
        let mut l = l.borrow_mut();
        l.pairs += 1;
        if let Err(e) = &outcome {
            l.failures.push(e.clone());
        }
    });
    outcome
}

fn structural_error(e: &ComplexError) -> bool {
    matches!(
        e,
        ComplexError::ExitConflict { .. } | ComplexError::CrossingMismatch { .. }
    )
}

/// Records exit conflicts and crossing mismatches, then passes the error on.
fn note<T>(r: Result<T, ComplexError>) -> Result<T, ComplexError> {
    if let Err(e) = &r {
        if structural_error(e) {
            LEDGER.with(|l| {
                let mut l = l.borrow_mut();
                l.pairs += 1;
                l.failures.push(e.to_string());
            });
        }
    }
    r
}

fn certify_analysis(a: &Analysis) -> Result<(), String> {
    let (model, _) = CubeModel::normalize(&a.diagram).map_err(|e| e.to_string())?;
    for c in &a.components {
        certify(&model, &c.pair)?;
    }
    Ok(())
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let a = run(&Source::Diagram(fixtures::example1()), &Options::default())
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    certify_analysis(&a)?;
    let pair = &a.components[0].pair;
    if pair.cells.len() != 9 || pair.top_dimension() != 2 {
        return Err(format!(
            "N has {} cells, expected a single rectangle",
            pair.cells.len()
        ));
    }
    // Exit edges vary the slice-0 code and sit at an extreme of slice 1.
    let exits: Vec<_> = pair.exit_cells().collect();
    let edges: Vec<_> = exits.iter().filter(|c| c.dim() == 1).collect();
    let (lo, hi) = pair
        .cells
        .iter()
        .map(|c| c.get(0, 1))
        .fold((u16::MAX, 0), |(l, h), v| (l.min(v), h.max(v)));
    let q1_extremal = edges.len() == 2
        && exits.len() == 6
        && edges
            .iter()
            .all(|e| e.get(0, 0) % 2 == 1 && (e.get(0, 1) == lo || e.get(0, 1) == hi))
        && edges[0].get(0, 1) != edges[1].get(0, 1);
    if !q1_extremal {
        return Err(format!(
            "exit set {exits:?} is not the two q_1-extremal faces"
        ));
    }
    let r = a.result.as_ref().ok_or("no homology")?;
    if r.betti_gf2 != [0, 1] || r.euler != -1 {
        return Err(format!("betti {:?}, χ = {}", r.betti_gf2, r.euler));
    }
    if elapsed > Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("betti_gf2 = (0,1), χ = -1 in {elapsed:.2?}"))
}

/// Number of patterns of length ℓ with μ middle anchors, less the two
/// improper ones at μ = 0.
fn expected_degrees(ell: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for code in 0..3usize.pow(ell as u32) {
        let mut x = code;
        let mut mu = 0;
        for _ in 0..ell {
            mu += usize::from(x % 3 == 1);
            x /= 3;
        }
        *out.entry(mu).or_insert(0) += 1;
    }
    *out.get_mut(&0).unwrap() -= 2;
    out.retain(|_, &mut count| count > 0);
    out
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for ell in 1..=4 {
        let options = Options {
            mode: Mode::Exhaustive,
            window: Some(fixtures::example2_window(ell)),
            ..Options::default()
        };
        let source = Source::Diagram(fixtures::example2(&vec![Anchor::Middle; ell]));
        let a = run(&source, &options).map_err(|e| format!("ℓ = {ell}: {e}"))?;
        certify_analysis(&a)?;
        let total = a.components.len();
        let r = a.result.as_ref().ok_or("no homology")?;
        let proper = r.per_component.len();
        if total != 3usize.pow(ell as u32) || proper != 3usize.pow(ell as u32) - 2 {
            return Err(format!("ℓ = {ell}: {proper} proper of {total}"));
        }
        let mut degrees = BTreeMap::new();
        for c in &r.per_component {
            let mu = c.betti_gf2.len() - 1;
            if c.betti_gf2
                .iter()
                .enumerate()
                .any(|(k, &b)| b != usize::from(k == mu))
            {
                return Err(format!(
                    "ℓ = {ell}: component {} has betti {:?}",
                    c.id, c.betti_gf2
                ));
            }
            let (_, chi) = pair_homology(&a.components[c.id].pair).map_err(|e| e.to_string())?;
            if chi != if mu % 2 == 0 { 1 } else { -1 } {
                return Err(format!("ℓ = {ell}: χ = {chi} in degree {mu}"));
            }
            *degrees.entry(mu).or_insert(0) += 1;
        }
        if degrees != expected_degrees(ell) {
            return Err(format!("ℓ = {ell}: degrees {degrees:?}"));
        }
        summary.push(format!("ℓ={ell}: {proper}/{total}"));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }

    let mut full = Vec::new();
    for ell in 1..=2 {
        let options = Options {
            mode: Mode::Exhaustive,
            ..Options::default()
        };
        let source = Source::Diagram(fixtures::example2(&vec![Anchor::Middle; ell]));
        let a = run(&source, &options).map_err(|e| format!("full grid ℓ = {ell}: {e}"))?;
        certify_analysis(&a)?;
        let proper = a.components.iter().filter(|c| c.properness.proper).count();
        full.push(format!("ℓ={ell}: {proper}/{}", a.components.len()));
    }
    Ok(format!(
        "windowed proper/components {} in {elapsed:.2?} (full grid, informational: {})",
        summary.join(", "),
        full.join(", ")
    ))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let a = run(&Source::Diagram(fixtures::example3()), &Options::default())
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    certify_analysis(&a)?;
    let pair = &a.components[0].pair;
    let tops = pair.cells.iter().filter(|c| c.dim() == 6).count();
    if pair.cells.len() != 729 || tops != 1 {
        return Err(format!("{} cells, {tops} of dimension 6", pair.cells.len()));
    }
    let r = a.result.as_ref().ok_or("no homology")?;
    if r.euler != 1 {
        return Err(format!("χ = {}", r.euler));
    }
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "one 6-cube (729 cells), betti {:?}, χ = 1 in {elapsed:.2?}",
        r.betti_gf2
    ))
}

/// Random skeleton of `m` strands with integer values and a random closure,
/// plus `n` free strands. Free anchors sit in gaps (half-integers) or, now
/// and then, on an integer level.
fn random_diagram(
    rng: &mut ChaCha8Rng,
    m: usize,
    n: usize,
    d: usize,
) -> Option<DiscreteRelativeBraid> {
    let levels: Vec<i64> = (0..=m as i64 + 1).collect();
    let mut skeleton = vec![Vec::with_capacity(d + 1); m];
    for _ in 0..d {
        let picked: Vec<i64> = levels.choose_multiple(rng, m).copied().collect();
        for (t, v) in picked.into_iter().enumerate() {
            skeleton[t].push(int(v));
        }
    }
    let mut sigma: Vec<usize> = (0..m).collect();
    sigma.shuffle(rng);
    for t in 0..m {
        let v = skeleton[sigma[t]][0].clone();
        skeleton[t].push(v);
    }
    let mut free = vec![Vec::with_capacity(d + 1); n];
    for _ in 0..d {
        let mut twice: Vec<i64> = (-1..=2 * m as i64 + 3).collect();
        twice.retain(|v| v % 2 != 0 || rng.gen_bool(0.15));
        for (a, v) in twice.choose_multiple(rng, n).enumerate() {
            free[a].push(BigRational::new((*v).into(), 2.into()));
        }
    }
    let mut tau: Vec<usize> = (0..n).collect();
    tau.shuffle(rng);
    for a in 0..n {
        let v = free[tau[a]][0].clone();
        free[a].push(v);
    }
    let b = DiscreteRelativeBraid::new(d, skeleton, free).ok()?;
    (!b.is_singular()).then_some(b)
}

fn component_run(b: &DiscreteRelativeBraid, refine: Option<usize>) -> Option<Analysis> {
    let options = Options {
        refine,
        ..Options::default()
    };
    let a = run(&Source::Diagram(b.clone()), &options).ok()?;
    a.components[0].properness.proper.then_some(a)
}

const MAX_COARSE_CELLS: usize = 200;
const MAX_FINE_CELLS: usize = 2_000;

fn refined_fits(b: &DiscreteRelativeBraid) -> bool {
    let Ok(fine) = b.refine(2) else { return false };
    let Ok((model, start)) = CubeModel::normalize(&fine.augment()) else {
        return false;
    };
    model
        .enumerate_component(&start)
        .is_ok_and(|c| c.cells.len() <= MAX_FINE_CELLS)
}

fn criterion4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut kept, mut attempts, mut nonzero, mut restarts) = (0, 0, 0, 0);
    while kept < 120 {
        attempts += 1;
        if attempts > 20_000 {
            return Err(format!(
                "only {kept} usable fixtures in {attempts} attempts"
            ));
        }
        let (m, d) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let Some(b) = random_diagram(&mut rng, m, 1, d) else {
            continue;
        };
        let Some(coarse) = component_run(&b, None) else {
            continue;
        };
        // Refined components can be orders of magnitude larger; keep the
        // suite within its time budget.
        if coarse.components[0].pair.component.cells.len() > MAX_COARSE_CELLS || !refined_fits(&b) {
            continue;
        }
        let Some(fine) = component_run(&b, Some(2)) else {
            continue;
        };
        kept += 1;
        certify_analysis(&coarse)?;
        certify_analysis(&fine)?;
        let (r1, r2) = (
            coarse.result.as_ref().unwrap(),
            fine.result.as_ref().unwrap(),
        );
        if (&r1.betti_gf2, r1.euler) != (&r2.betti_gf2, r2.euler) {
            return Err(format!(
                "refine(2) changed {:?}/{} to {:?}/{} on {}",
                r1.betti_gf2,
                r1.euler,
                r2.betti_gf2,
                r2.euler,
                b.to_json_value()
            ));
        }
        nonzero += usize::from(r1.euler != 0);

        let (model, _) = CubeModel::normalize(&coarse.diagram).map_err(|e| e.to_string())?;
        let component = &coarse.components[0].pair.component;
        let step = (component.cells.len() / 6).max(1);
        for start in component.cells.iter().step_by(step) {
            let again = note(model.enumerate_component(start)).map_err(|e| e.to_string())?;
            if again.cells != component.cells {
                return Err(format!("restart from {start} found another component"));
            }
            let pair = note(model.exit_set(model.close(0, again))).map_err(|e| e.to_string())?;
            let (betti, chi) = certify(&model, &pair)?;
            if (&betti, chi) != (&r1.betti_gf2, r1.euler) {
                return Err(format!("restart from {start} gave {betti:?}/{chi}"));
            }
            restarts += 1;
        }
    }
    Ok(format!(
        "{kept} fixtures ({nonzero} with χ ≠ 0), {restarts} restarts, {attempts} sampled"
    ))
}

/// Compares full enumeration with the oracle on one augmented diagram.
/// `None` when the instance is skipped: beyond the oracle caps, or a
/// gap-separation error once `want_contact` is off.
fn compare_with_oracle(
    b: &DiscreteRelativeBraid,
    want_contact: bool,
) -> Option<Result<usize, String>> {
    // An input that already puts two free strands in one gap is rejected
    // before any component exists, so there is nothing to compare.
    let (model, _) = match CubeModel::normalize(b) {
        Ok(x) => x,
        Err(ComplexError::GapSeparation { .. }) => return None,
        Err(e) => return Some(Err(format!("normalize: {e} on {}", b.to_json_value()))),
    };
    let enumerated = note(model.enumerate_all(None));
    if !want_contact && matches!(enumerated, Err(ComplexError::GapSeparation { .. })) {
        return None;
    }
    let oracle = match brute_force_components(b) {
        Err(OracleError::Cap(_)) => return None,
        Err(e) => return Some(Err(e.to_string())),
        Ok(o) => o,
    };
    let contact = oracle.iter().any(|c| c.gap_contact);
    let outcome = (|| {
        let components = match enumerated {
            Ok(c) if !contact => c,
            Err(ComplexError::GapSeparation { .. }) if contact => return Ok(0),
            Ok(_) => return Err("oracle sees gap contact, enumeration does not".into()),
            Err(e) => return Err(e.to_string()),
        };
        if components.len() != oracle.len() {
            return Err(format!(
                "{} components, oracle {}",
                components.len(),
                oracle.len()
            ));
        }
        for (id, (c, o)) in components.into_iter().zip(&oracle).enumerate() {
            let first: Vec<Vec<usize>> = c.cells[0]
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(usize::from).collect())
                .collect();
            let size = c.cells.len();
            let pair = note(model.exit_set(model.close(id, c))).map_err(|e| e.to_string())?;
            let (_, chi) = certify(&model, &pair)?;
            let proper = model.properness_check(&pair).proper;
            if (first.clone(), size, chi, proper) != (o.first.clone(), o.size, o.chi, o.proper) {
                return Err(format!(
                    "component {id}: {first:?} size {size} χ {chi} proper {proper}, oracle {o:?}"
                ));
            }
        }
        Ok(oracle.len())
    })();
    Some(outcome.map_err(|e| format!("{e} on {}", b.to_json_value())))
}

/// Fixtures to compare per free-strand count, and how many of them must
/// get past the gap-separation rule to a full component comparison.
/// Gap-separation errors are confirmed against the oracle up to
/// `MAX_CONTACTS` times per strand count; the oracle is slow on them.
const MAX_CONTACTS: usize = 40;
const ORACLE_TARGETS: [(usize, usize, usize); 2] = [(1, 150, 150), (2, 60, 15)];

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut summary = Vec::new();
    for (n, total, separated) in ORACLE_TARGETS {
        let (mut compared, mut matched, mut contacts, mut components) = (0, 0, 0, 0);
        let mut attempts = 0;
        while compared < total || matched < separated {
            attempts += 1;
            if attempts > 50_000 {
                return Err(format!(
                    "n = {n}: only {compared} fixtures within caps, {matched} without gap contact"
                ));
            }
            let (m, d) = if n == 1 {
                (rng.gen_range(2..=4), rng.gen_range(2..=4))
            } else {
                *[(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]
                    .choose(&mut rng)
                    .unwrap()
            };
            let Some(b) = random_diagram(&mut rng, m, n, d) else {
                continue;
            };
            match compare_with_oracle(&b.augment(), contacts < MAX_CONTACTS) {
                None => continue,
                Some(Err(e)) => return Err(e),
                Some(Ok(0)) => contacts += 1,
                Some(Ok(k)) => {
                    matched += 1;
                    components += k;
                }
            }
            compared += 1;
        }
        summary.push(format!(
            "n={n}: {compared} fixtures, {components} components matched, {contacts} gap-separation errors matched"
        ));
    }
    Ok(summary.join("; "))
}

fn words(k: usize, max_len: usize) -> Vec<Vec<i32>> {
    let alphabet: Vec<i32> = (1..k as i32).flat_map(|g| [g, -g]).collect();
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<i32>| {
                alphabet.iter().map(move |&g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn criterion6() -> Outcome {
    let mut checked = 0;
    for k in [3, 4] {
        let full = BraidWord::full_twist(k).map_err(|e| e.to_string())?;
        for letters in words(k, 6) {
            let w = BraidWord::new(k, letters.clone()).map_err(|e| e.to_string())?;
            let inf = brute_force_inf(&w).map_err(|e| e.to_string())?;
            let garside = w.left_normal_form().inf();
            if garside != inf {
                return Err(format!("{w} in B_{k}: inf {garside}, oracle {inf}"));
            }
            let (ell, positive) = w.minimal_positive_twists();
            let least = ((-inf).max(0) + 1) / 2;
            if ell as i64 != least {
                return Err(format!("{w} in B_{k}: {ell} twists, least is {least}"));
            }
            let mut target = letters.clone();
            for _ in 0..ell {
                target.extend_from_slice(full.letters());
            }
            if positive.letters().iter().any(|&g| g < 0)
                || !words_equal(positive.letters(), &target, k)
            {
                return Err(format!(
                    "{w} in B_{k}: {positive} is not a positive form of w·Δ^{}",
                    2 * ell
                ));
            }
            if ell > 0 {
                let mut fewer = letters.clone();
                for _ in 1..ell {
                    fewer.extend_from_slice(full.letters());
                }
                if is_positive_element(&fewer) {
                    return Err(format!("{w} in B_{k}: {} twists already suffice", ell - 1));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} words in B_3 and B_4 of length ≤ 6"))
}

fn criterion7() -> Outcome {
    LEDGER.with(|l| {
        let l = l.borrow();
        if l.pairs == 0 {
            return Err("no complexes were built".to_string());
        }
        match l.failures.first() {
            Some(e) => Err(format!(
                "{} violations in {} complexes, first: {e}",
                l.failures.len(),
                l.pairs
            )),
            None => Ok(format!(
                "∂∂ = 0, Euler identity, exit verdicts and crossing numbers hold on {} complexes",
                l.pairs
            )),
        }
    })
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("Example 1 rectangle", criterion1),
        ("Example 2 family", criterion2),
        ("Example 3 six-cube", criterion3),
        ("invariance under refinement and restart", criterion4),
        ("oracle equivalence", criterion5),
        ("Garside infimum and twist lifting", criterion6),
        ("structural certificates", criterion7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{elapsed:.1?}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} [{elapsed:.1?}]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
