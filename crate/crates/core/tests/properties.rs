use std::sync::OnceLock;

use proptest::prelude::*;

use hyperkit_core::axioms::{JoinAxiom, MosaicAxiom};
use hyperkit_core::enumeration::{enumerate_bjoin, Bounds, Canonize};
use hyperkit_core::equivalence::{roundtrip_bjoin, roundtrip_lmosaic};
use hyperkit_core::extraction::lub_properties;
use hyperkit_core::{
    check_lmosaic, extract_bjoin, extract_join, induced_order, nakano, BJoinSemilattice, ElemSet,
    HyperOpTable, LMosaic,
};

fn family() -> &'static [Vec<BJoinSemilattice>] {
    static ALL: OnceLock<Vec<Vec<BJoinSemilattice>>> = OnceLock::new();
    ALL.get_or_init(|| {
        let b = Bounds::default();
        (1..=6).map(|n| enumerate_bjoin(n, &b).unwrap()).collect()
    })
}

/// A semilattice of size at most 6 under a random labeling.
fn semilattice() -> impl Strategy<Value = BJoinSemilattice> {
    (1..=6usize)
        .prop_flat_map(|n| {
            let count = family()[n - 1].len();
            (
                0..count,
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                Just(n),
            )
        })
        .prop_map(|(i, perm, n)| family()[n - 1][i].relabel(&perm))
}

/// Any table of nonempty cells on at most 5 points.
fn hyper_table() -> impl Strategy<Value = LMosaic> {
    (1..=5usize).prop_flat_map(|n| {
        prop::collection::vec(1..(1u64 << n), n * n).prop_map(move |cells| {
            let table =
                HyperOpTable::new(n, cells.into_iter().map(ElemSet::from_bits).collect()).unwrap();
            LMosaic::new(
                hyperkit_core::Carrier::new(n).unwrap(),
                table,
                0,
                (0..n).collect(),
            )
            .unwrap()
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = ElemSet> {
    (0..(1u64 << n)).prop_map(ElemSet::from_bits)
}

proptest! {
    #[test]
    fn nakano_image_is_an_lmosaic(s in semilattice()) {
        let m = nakano(&s).unwrap();
        prop_assert!(check_lmosaic(&m, false).all_pass());
        prop_assert_eq!(m.e(), s.bot());
    }

    #[test]
    fn nakano_diagonal_is_the_down_set(s in semilattice()) {
        let m = nakano(&s).unwrap();
        for x in 0..s.size() {
            let down: ElemSet = (0..s.size()).filter(|&y| s.leq(y, x)).collect();
            prop_assert_eq!(m.hyper(x, x), down);
        }
    }

    #[test]
    fn nakano_cells_follow_the_definition(s in semilattice()) {
        let m = nakano(&s).unwrap();
        let n = s.size();
        for x in 0..n {
            for y in 0..n {
                let j = s.join(x, y);
                let expected: ElemSet =
                    (0..n).filter(|&z| s.join(x, z) == j && s.join(z, y) == j).collect();
                prop_assert_eq!(m.hyper(x, y), expected);
            }
        }
    }

    #[test]
    fn induced_order_is_the_join_order(s in semilattice()) {
        let o = induced_order(&nakano(&s).unwrap());
        for x in 0..s.size() {
            for y in 0..s.size() {
                prop_assert_eq!(o.leq(x, y), s.join(x, y) == y);
            }
        }
    }

    #[test]
    fn extracted_join_is_the_original_join(s in semilattice()) {
        let m = nakano(&s).unwrap();
        for x in 0..s.size() {
            for y in 0..s.size() {
                prop_assert_eq!(extract_join(&m, x, y).unwrap(), s.join(x, y));
            }
        }
        prop_assert!(lub_properties(&m).unwrap().all_pass());
        prop_assert_eq!(extract_bjoin(&m).unwrap(), s);
    }

    #[test]
    fn bot_is_the_order_minimum(s in semilattice()) {
        let o = induced_order(&nakano(&s).unwrap());
        prop_assert!((0..s.size()).all(|x| o.leq(s.bot(), x)));
    }

    #[test]
    fn round_trips_are_identical(s in semilattice()) {
        prop_assert!(roundtrip_bjoin(&s).unwrap().is_identical());
        prop_assert!(roundtrip_lmosaic(&nakano(&s).unwrap()).unwrap().is_identical());
    }

    #[test]
    fn canonical_form_ignores_labeling(
        s in semilattice(),
        seed in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let n = s.size();
        let perm: Vec<usize> = seed.into_iter().filter(|&x| x < n).collect();
        let t = s.relabel(&perm);
        prop_assert_eq!(s.canonical_form(), t.canonical_form());
        prop_assert_eq!(
            nakano(&s).unwrap().canonical_form(),
            nakano(&t).unwrap().canonical_form()
        );
    }

    #[test]
    fn set_mul_is_the_union_of_cells(m in hyper_table(), a in subset(5), b in subset(5)) {
        let all = ElemSet::full(m.size());
        let (a, b) = (a.intersection(all), b.intersection(all));
        let mut expected = ElemSet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                expected = expected.union(m.hyper(x, y));
            }
        }
        prop_assert_eq!(m.set_mul(a, b), expected);
        for x in a.iter() {
            prop_assert_eq!(m.right_mul(x, b), m.set_mul(ElemSet::singleton(x), b));
        }
        for y in b.iter() {
            prop_assert_eq!(m.left_mul(a, y), m.set_mul(a, ElemSet::singleton(y)));
        }
    }

    #[test]
    fn set_mul_is_monotone(m in hyper_table(), a in subset(5), b in subset(5), c in subset(5)) {
        let all = ElemSet::full(m.size());
        let (a, b, c) = (a.intersection(all), b.intersection(all), c.intersection(all));
        let bigger = b.union(c);
        prop_assert!(m.set_mul(a, b).is_subset(m.set_mul(a, bigger)));
        prop_assert!(m.set_mul(b, a).is_subset(m.set_mul(bigger, a)));
    }

    #[test]
    fn set_mul_commutes_for_lmosaics(s in semilattice(), a in subset(6), b in subset(6)) {
        let m = nakano(&s).unwrap();
        let all = ElemSet::full(m.size());
        let (a, b) = (a.intersection(all), b.intersection(all));
        prop_assert_eq!(m.set_mul(a, b), m.set_mul(b, a));
    }

    #[test]
    fn witnesses_replay(m in hyper_table()) {
        for ax in MosaicAxiom::ALL {
            if let Some(w) = ax.first_violation(&m) {
                prop_assert!(!ax.holds_at(&m, &w), "{} at {}", ax, w);
            }
        }
    }

    #[test]
    fn join_witnesses_replay(
        n in 1..=3usize,
        cells in prop::collection::vec(0..3usize, 9),
    ) {
        let s = BJoinSemilattice::from_fn(n, 0, |x, y| cells[x * 3 + y] % n).unwrap();
        for ax in JoinAxiom::ALL {
            if let Some(w) = ax.first_violation(&s) {
                prop_assert!(!ax.holds_at(&s, &w), "{} at {}", ax.name(), w);
            }
        }
    }
}
