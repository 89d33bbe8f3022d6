use braidchi::complex::{ComplexPair, CubeModel};
use braidchi::diagram::DiscreteRelativeBraid;
use braidchi::fixtures::{self, Anchor};
use braidchi::homology::pair_homology;

fn analyze(b: &DiscreteRelativeBraid) -> (CubeModel, ComplexPair) {
    let (model, start) = CubeModel::normalize(&b.augment()).unwrap();
    let component = model.enumerate_component(&start).unwrap();
    let pair = model.exit_set(model.close(0, component)).unwrap();
    (model, pair)
}

fn counts_by_dim(cells: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v = Vec::new();
    for k in cells {
        if v.len() <= k {
            v.resize(k + 1, 0);
        }
        v[k] += 1;
    }
    v
}

#[test]
fn example1_rectangle() {
    let (model, pair) = analyze(&fixtures::example1());
    assert_eq!(
        counts_by_dim(pair.cells.iter().map(|c| c.dim())),
        vec![4, 4, 1]
    );
    assert_eq!(
        counts_by_dim(pair.exit_cells().map(|c| c.dim())),
        vec![4, 2]
    );
    assert!(model.properness_check(&pair).proper);
    assert_eq!(pair_homology(&pair).unwrap(), (vec![0, 1], -1));
}

#[test]
fn example2_patterns() {
    for pattern in [
        vec![Anchor::Middle, Anchor::Middle],
        vec![Anchor::Bottom, Anchor::Middle],
        vec![Anchor::Top, Anchor::Bottom],
        vec![Anchor::Top, Anchor::Top, Anchor::Middle],
    ] {
        let (model, pair) = analyze(&fixtures::example2(&pattern));
        let mu = pattern.iter().filter(|&&a| a == Anchor::Middle).count();
        assert!(model.properness_check(&pair).proper, "{pattern:?}");
        let (betti, chi) = pair_homology(&pair).unwrap();
        let mut expected = vec![0; mu + 1];
        expected[mu] = 1;
        assert_eq!(betti, expected, "{pattern:?}");
        assert_eq!(chi, if mu % 2 == 0 { 1 } else { -1 });
    }
    let ell2 = analyze(&fixtures::example2(&[Anchor::Middle; 2])).1;
    assert_eq!(ell2.cells.len(), 81);
    for pattern in [[Anchor::Bottom; 2], [Anchor::Top; 2]] {
        let (model, pair) = analyze(&fixtures::example2(&pattern));
        assert!(!model.properness_check(&pair).proper, "{pattern:?}");
    }
}

#[test]
fn example3_six_cube() {
    let (model, pair) = analyze(&fixtures::example3());
    assert_eq!(pair.cells.len(), 729);
    assert_eq!(pair.top_dimension(), 6);
    assert_eq!(pair.exit_cells().count(), 648);
    assert!(model.properness_check(&pair).proper);
    assert_eq!(pair_homology(&pair).unwrap(), (vec![0, 0, 1], 1));
}
