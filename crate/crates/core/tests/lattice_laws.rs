use proptest::prelude::*;

use stonespec::bitset::ElementSet;
use stonespec::corpus::CORPUS_NAMES;
use stonespec::doc::{load_lattice, LatticeDoc};
use stonespec::random::{random_lattice, random_ortholattice, rng};
use stonespec::spectrum::{atom_quasipoints, generic_quasipoints, is_filter};
use stonespec::{corpus, Lattice, StoneSpectrum};

/// Maximal proper filters by scanning every subset; only for tiny lattices.
fn maximal_filters_by_scan(l: &Lattice) -> Vec<ElementSet> {
    let proper: Vec<ElementSet> = stonespec::bitset::subsets(l.all())
        .filter(|s| !s.is_empty() && !s.contains(l.bottom()) && is_filter(l, s))
        .collect();
    let mut max: Vec<ElementSet> = proper
        .iter()
        .copied()
        .filter(|f| !proper.iter().any(|g| g != f && f.is_subset(g)))
        .collect();
    max.sort_by_key(|f| stonespec::spectrum::min_element(l, f));
    max
}

fn lattice_from_seed(seed: u64) -> Lattice {
    random_lattice(&mut rng(seed), 12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn meet_and_join_are_bounds(seed in any::<u64>()) {
        let l = lattice_from_seed(seed);
        for a in 0..l.len() {
            for b in 0..l.len() {
                let (m, j) = (l.meet(a, b), l.join(a, b));
                prop_assert!(l.leq(m, a) && l.leq(m, b) && l.leq(a, j) && l.leq(b, j));
                for x in 0..l.len() {
                    if l.leq(x, a) && l.leq(x, b) {
                        prop_assert!(l.leq(x, m));
                    }
                    if l.leq(a, x) && l.leq(b, x) {
                        prop_assert!(l.leq(j, x));
                    }
                }
            }
        }
    }

    #[test]
    fn absorption_and_associativity(seed in any::<u64>()) {
        let l = lattice_from_seed(seed);
        let n = l.len();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                for c in 0..n {
                    prop_assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)));
                    prop_assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)));
                }
            }
        }
    }

    #[test]
    fn quasipoints_match_subset_scan(seed in any::<u64>()) {
        let l = random_lattice(&mut rng(seed), 9);
        let scanned = maximal_filters_by_scan(&l);
        prop_assert_eq!(&generic_quasipoints(&l), &scanned);
        prop_assert_eq!(&atom_quasipoints(&l), &scanned);
    }

    #[test]
    fn documents_roundtrip(seed in any::<u64>()) {
        let o = random_ortholattice(&mut rng(seed), 12);
        let text = serde_json::to_string(&LatticeDoc::from_lattice(&o, Some(o.perp_table()))).unwrap();
        let back = load_lattice(&text, 64).unwrap();
        prop_assert_eq!(back.ortho().unwrap(), &o);
    }

    #[test]
    fn relabelling_preserves_the_spectrum_size(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_lattice(&mut r, 12);
        let perm = stonespec::random::random_permutation(&mut r, l.len());
        let m = l.relabel(&perm).unwrap();
        prop_assert_eq!(StoneSpectrum::new(&l).len(), StoneSpectrum::new(&m).len());
    }
}

#[test]
fn corpus_spectra_have_one_quasipoint_per_atom() {
    for name in CORPUS_NAMES {
        let l = corpus(name).unwrap().into_lattice();
        let s = StoneSpectrum::new(&l);
        assert_eq!(s.len(), l.atoms().len(), "{name}");
        if l.len() <= 16 {
            assert_eq!(s.quasipoints, maximal_filters_by_scan(&l), "{name}");
        }
    }
}
