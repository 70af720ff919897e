//! Pinned outcomes of the searches.

use hyperkit_core::ablation::{ablate, ablate_all, Property};
use hyperkit_core::axioms::MosaicAxiom;
use hyperkit_core::enumeration::{enumerate_lmosaic, is_isomorphic, Bounds, RhoMode};
use hyperkit_core::equivalence::{assoc_scan, hyper_assoc_witness};
use hyperkit_core::{
    check_lmosaic, extract_join, nakano, BJoinSemilattice, ElemSet, ExtractJoinError, LMosaic,
    Structure,
};

fn set(xs: &[usize]) -> ElemSet {
    xs.iter().copied().collect()
}

/// 0 < 2 < 3 < 4 and 0 < 1 < 4.
fn pentagon() -> BJoinSemilattice {
    let up = [
        set(&[0, 1, 2, 3, 4]),
        set(&[1, 4]),
        set(&[2, 3, 4]),
        set(&[3, 4]),
        set(&[4]),
    ];
    BJoinSemilattice::from_fn(5, 0, |x, y| {
        let common = up[x].intersection(up[y]);
        common.iter().find(|&z| up[z] == common).unwrap()
    })
    .unwrap()
}

#[test]
fn assoc_scan_is_pinned() {
    let bounds = Bounds::default();
    assert_eq!(assoc_scan(4, &bounds).unwrap(), None);

    let w = assoc_scan(5, &bounds).unwrap().expect("a size-5 witness");
    assert_eq!((w.size, w.index), (5, 3));
    assert_eq!(w.triple, (1, 1, 2));
    // 1⊕1 = {0,1}; {0,1}⊕2 = {2} ∪ {4}; 1⊕2 = {4}; 1⊕4 = {2,3,4}
    assert_eq!(w.left, set(&[2, 4]));
    assert_eq!(w.right, set(&[2, 3, 4]));
    assert_eq!(w.semilattice, pentagon());
}

#[test]
fn small_nakano_structures_are_associative() {
    let b = Bounds::default();
    for n in 1..=4 {
        for m in enumerate_lmosaic(n, &b, RhoMode::Identity).unwrap() {
            assert_eq!(hyper_assoc_witness(&m), None);
        }
    }
}

#[test]
fn pentagon_witness_is_independent_of_labeling() {
    let p = pentagon().relabel(&[0, 4, 2, 1, 3]);
    assert!(hyper_assoc_witness(&nakano(&p).unwrap()).is_some());
    let q = Structure::from(p);
    assert!(is_isomorphic(&q, &Structure::from(pentagon()))
        .unwrap()
        .is_some());
}

#[test]
fn lm4_ablation_is_pinned() {
    let r = ablate(2, MosaicAxiom::Lm4, &Bounds::default())
        .unwrap()
        .unwrap();
    let full = LMosaic::from_fn(2, 0, |_, _| set(&[0, 1])).unwrap();
    assert_eq!(r.structure, full);
    let broken: Vec<_> = r
        .broken
        .iter()
        .map(|b| (b.property, b.witness.to_string()))
        .collect();
    assert_eq!(
        broken,
        [
            (Property::OrderAntisymmetry, "(0, 1)".to_string()),
            (
                Property::ExtractJoinDefinedness,
                "(0, 0, {0,1})".to_string()
            ),
            (Property::RoundtripIdentity, "(0, 0)".to_string()),
        ]
    );
    assert_eq!(
        ablate(2, MosaicAxiom::Lm4, &Bounds::default())
            .unwrap()
            .unwrap(),
        r
    );
}

#[test]
fn reversibility_ablation_is_pinned() {
    let r = ablate(2, MosaicAxiom::Reversibility, &Bounds::default())
        .unwrap()
        .unwrap();
    let expected = LMosaic::from_fn(
        2,
        0,
        |x, y| if x + y == 0 { set(&[0]) } else { set(&[0, 1]) },
    )
    .unwrap();
    assert_eq!(r.structure, expected);
    assert!(r.breaks(Property::RoundtripIdentity));
    assert!(!r.breaks(Property::ExtractJoinDefinedness));
}

#[test]
fn ablation_class_counts_at_four() {
    let b = Bounds::default();
    let count = |ax| ablate_all(4, ax, &b).unwrap().len();
    assert_eq!(count(MosaicAxiom::Comm), 0);
    assert_eq!(count(MosaicAxiom::Lm1E), 0);
    assert_eq!(count(MosaicAxiom::Lm1Id), 0);
    assert_eq!(count(MosaicAxiom::Lm3), 0);
    assert_eq!(count(MosaicAxiom::Lm2), 1);
    assert_eq!(count(MosaicAxiom::Lm4), 8);
}

#[test]
fn ablation_results_fail_only_the_dropped_axiom() {
    let b = Bounds::default();
    for ax in [
        MosaicAxiom::Lm2,
        MosaicAxiom::Lm4,
        MosaicAxiom::Reversibility,
    ] {
        for n in 2..=3 {
            for r in ablate_all(n, ax, &b).unwrap() {
                let fails: Vec<_> = check_lmosaic(&r.structure, false)
                    .failures()
                    .map(|v| v.axiom)
                    .collect();
                assert_eq!(fails, [ax.name()]);
                assert!(r.broken.iter().all(|p| p.replays(&r.structure)));
            }
        }
    }
}

#[test]
fn full_structure_has_two_join_candidates() {
    let full = LMosaic::from_fn(2, 0, |_, _| set(&[0, 1])).unwrap();
    match extract_join(&full, 0, 1) {
        Err(ExtractJoinError::MultipleWitnesses {
            x: 0,
            y: 1,
            candidates,
        }) => {
            assert_eq!(candidates, set(&[0, 1]))
        }
        other => panic!("{other:?}"),
    }
}
