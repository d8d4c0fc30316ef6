//! Seeded generators for random lattices and ortholattices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::corpus::corpus;
use crate::lattice::Lattice;
use crate::ortho::OrthoLattice;

/// The generator used by every randomized suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random lattice with `2..=max_n` elements, built as an intersection-closed
/// family of subsets of a small ground set and then shuffled.
pub fn random_lattice<R: Rng>(rng: &mut R, max_n: usize) -> Lattice {
    assert!(max_n >= 2);
    loop {
        let ground = rng.gen_range(2..=5usize);
        let full = (1u64 << ground) - 1;
        let picks = rng.gen_range(1..=6);
        let mut family: Vec<u64> = vec![full];
        for _ in 0..picks {
            family.push(rng.gen_range(0..=full));
        }
        family.sort_unstable();
        family.dedup();
        // close under intersection
        loop {
            let mut grown = family.clone();
            for &a in &family {
                for &b in &family {
                    grown.push(a & b);
                }
            }
            grown.sort_unstable();
            grown.dedup();
            if grown.len() == family.len() {
                break;
            }
            family = grown;
        }
        if family.len() < 2 || family.len() > max_n {
            continue;
        }
        let sets: Vec<ElementSet> = family.iter().map(|&m| ElementSet::from_mask(m)).collect();
        let l = Lattice::from_set_family(&sets, None)
            .expect("intersection-closed family with top is a lattice");
        let perm = random_permutation(rng, l.len());
        return l.relabel(&perm).expect("permutation");
    }
}

/// A random ortholattice with at most `max_n` elements (`max_n ≥ 6`), mixing
/// orthomodular and non-orthomodular members: horizontal sums and products of
/// small blocks, shuffled.
pub fn random_ortholattice<R: Rng>(rng: &mut R, max_n: usize) -> OrthoLattice {
    assert!(max_n >= 6);
    let block = |name: &str| corpus(name).unwrap().into_ortho().unwrap();
    let blocks = [
        block("C2"),
        block("B2"),
        block("B3"),
        block("O6"),
        block("MO2"),
    ];
    loop {
        let candidate = match rng.gen_range(0..3) {
            0 => blocks.choose(rng).unwrap().clone(),
            1 => {
                let k = rng.gen_range(2..=3);
                let parts: Vec<&OrthoLattice> = (0..k)
                    .map(|_| &blocks[rng.gen_range(1..blocks.len())])
                    .collect();
                let size = 2 + parts.iter().map(|p| p.len() - 2).sum::<usize>();
                if size > max_n {
                    continue;
                }
                OrthoLattice::horizontal_sum(&parts).expect("horizontal sum")
            }
            _ => {
                let a = blocks.choose(rng).unwrap();
                let b = blocks.choose(rng).unwrap();
                if a.len() * b.len() > max_n {
                    continue;
                }
                a.product(b).expect("product")
            }
        };
        let perm = random_permutation(rng, candidate.len());
        return candidate.relabel(&perm).expect("permutation");
    }
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A uniformly random subset of `base`.
pub fn random_subset<R: Rng>(rng: &mut R, base: &ElementSet) -> ElementSet {
    base.iter().filter(|_| rng.gen_bool(0.5)).collect()
}
