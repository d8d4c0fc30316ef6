//! Quasipoints, points and dual ideals of a finite lattice, and the Stone
//! topology generated by the basis sets `Q_a`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ortho::OrthoLattice;

/// Default element bound for dual-ideal enumeration.
pub const DEFAULT_DUAL_IDEAL_BOUND: usize = 20;

/// Nonempty, upward-closed, meet-closed subset avoiding bottom.
pub fn is_filter(l: &Lattice, s: &ElementSet) -> bool {
    !s.is_empty()
        && !s.contains(l.bottom())
        && s.iter().all(|a| l.up_set(a).is_subset(s))
        && s.iter().all(|a| s.iter().all(|b| s.contains(l.meet(a, b))))
}

/// Smallest filter containing `seed`, or `None` if it would contain bottom.
pub fn generated_filter(l: &Lattice, seed: &ElementSet) -> Option<ElementSet> {
    let mut s = *seed;
    loop {
        let mut grown = s;
        for a in s.iter() {
            for b in s.iter() {
                grown.insert(l.meet(a, b));
            }
        }
        if grown == s {
            break;
        }
        s = grown;
    }
    if s.contains(l.bottom()) {
        return None;
    }
    Some(
        s.iter()
            .fold(ElementSet::new(), |acc, a| acc.union(&l.up_set(a))),
    )
}

/// Maximal filters found by growing filters from every nonzero seed and
/// saturating, without using atoms. Sorted by minimal element.
pub fn generic_quasipoints(l: &Lattice) -> Vec<ElementSet> {
    let bottom = l.bottom();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for a in 0..l.len() {
        if a == bottom {
            continue;
        }
        if let Some(f) = generated_filter(l, &ElementSet::singleton(a)) {
            if seen.insert(f) {
                queue.push_back(f);
            }
        }
    }
    let mut maximal = Vec::new();
    while let Some(f) = queue.pop_front() {
        let mut extended = false;
        for b in l.all().difference(&f).iter() {
            if f.iter().any(|x| l.meet(x, b) == bottom) {
                continue;
            }
            let mut seed = f;
            seed.insert(b);
            if let Some(g) = generated_filter(l, &seed) {
                extended = true;
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        if !extended {
            maximal.push(f);
        }
    }
    maximal.sort_by_key(|f| (min_element(l, f), *f));
    maximal
}

/// Principal filters at the atoms, sorted by atom index.
pub fn atom_quasipoints(l: &Lattice) -> Vec<ElementSet> {
    l.atoms().iter().map(|a| l.up_set(a)).collect()
}

/// The least member of a filter in a finite lattice.
pub fn min_element(l: &Lattice, f: &ElementSet) -> usize {
    l.family_meet(f)
}

/// The Stone spectrum of a finite lattice: its quasipoints and the basis map
/// `a ↦ Q_a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StoneSpectrum {
    /// Quasipoints as element sets, ordered by minimal element.
    pub quasipoints: Vec<ElementSet>,
    /// `basis[a]` is the set of quasipoint indices containing `a`.
    pub basis: Vec<ElementSet>,
}

impl StoneSpectrum {
    /// Enumerates quasipoints generically and checks the result against the
    /// principal filters at atoms.
    ///
    /// Panics if the two enumerations disagree, which cannot happen for a
    /// valid finite lattice.
    pub fn new(l: &Lattice) -> Self {
        let generic = generic_quasipoints(l);
        let fast = atom_quasipoints(l);
        assert_eq!(
            generic, fast,
            "generic quasipoint enumeration disagrees with atom filters"
        );
        Self::from_quasipoints(l, generic)
    }

    /// Builds the spectrum from the atom filters only.
    pub fn from_atoms(l: &Lattice) -> Self {
        Self::from_quasipoints(l, atom_quasipoints(l))
    }

    fn from_quasipoints(l: &Lattice, quasipoints: Vec<ElementSet>) -> Self {
        let basis = (0..l.len())
            .map(|a| {
                quasipoints
                    .iter()
                    .enumerate()
                    .filter(|(_, q)| q.contains(a))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        StoneSpectrum { quasipoints, basis }
    }

    pub fn len(&self) -> usize {
        self.quasipoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quasipoints.is_empty()
    }

    /// `Q_a`.
    pub fn basis_set(&self, a: usize) -> ElementSet {
        self.basis[a]
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Index of a quasipoint given as an element set.
    pub fn index_of(&self, q: &ElementSet) -> Option<usize> {
        self.quasipoints.iter().position(|p| p == q)
    }

    /// Whether `Q_a` is closed, i.e. its complement is a union of basis sets.
    pub fn basis_set_is_clopen(&self, a: usize) -> bool {
        let complement = self.all().difference(&self.basis[a]);
        let covered = self
            .basis
            .iter()
            .filter(|b| b.is_subset(&complement))
            .fold(ElementSet::new(), |acc, b| acc.union(b));
        covered == complement
    }

    /// Closure of `⋃_k Q_{a_k}`: a quasipoint lies in it iff every member
    /// meets some `a_k` nontrivially.
    pub fn closure_of_union(&self, l: &Lattice, family: &[usize]) -> ElementSet {
        self.quasipoints
            .iter()
            .enumerate()
            .filter(|(_, q)| {
                q.iter()
                    .all(|a| family.iter().any(|&k| l.meet(a, k) != l.bottom()))
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// All unions of basis sets, sorted.
    pub fn basis_unions(&self) -> Result<Vec<ElementSet>> {
        if self.len() > 20 {
            return Err(Error::SizeBound {
                what: "spectrum",
                size: self.len(),
                bound: 20,
            });
        }
        let mut unions = BTreeSet::new();
        unions.insert(ElementSet::new());
        let distinct: BTreeSet<ElementSet> = self.basis.iter().copied().collect();
        for b in distinct {
            let next: Vec<ElementSet> = unions.iter().map(|u| u.union(&b)).collect();
            unions.extend(next);
        }
        Ok(unions.into_iter().collect())
    }
}

/// Whether a filter is join-prime: `a ∨ b ∈ p` forces `a ∈ p` or `b ∈ p`.
///
/// For finite families this is equivalent to the condition on arbitrary
/// families, since a finite join is an iterated binary join and the empty
/// join is bottom.
pub fn is_join_prime(l: &Lattice, p: &ElementSet) -> bool {
    (0..l.len())
        .all(|a| p.contains(a) || (a..l.len()).all(|b| p.contains(b) || !p.contains(l.join(a, b))))
}

/// Quasipoints that are also points (join-prime).
pub fn points(l: &Lattice, spectrum: &StoneSpectrum) -> Vec<ElementSet> {
    spectrum
        .quasipoints
        .iter()
        .copied()
        .filter(|q| is_join_prime(l, q))
        .collect()
}

/// A proper dual ideal tagged with its generator when principal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualIdeal {
    pub members: ElementSet,
    pub principal: Option<usize>,
}

/// All proper dual ideals, enumerated as up-sets that are meet-closed and
/// avoid bottom. Sorted by member list.
pub fn dual_ideals(l: &Lattice, bound: usize) -> Result<Vec<DualIdeal>> {
    if l.len() > bound {
        return Err(Error::SizeBound {
            what: "lattice for dual ideal enumeration",
            size: l.len(),
            bound,
        });
    }
    // Decide elements from the top down so that every upper cover is decided first.
    let mut order: Vec<usize> = (0..l.len()).collect();
    order.sort_by_key(|&a| std::cmp::Reverse(l.down_set(a).len()));
    let mut out = Vec::new();
    let mut current = ElementSet::new();
    upsets(l, &order, 0, &mut current, &mut |s| {
        if is_filter(l, s) {
            let m = l.family_meet(s);
            let principal = (l.up_set(m) == *s).then_some(m);
            out.push(DualIdeal {
                members: *s,
                principal,
            });
        }
    });
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

fn upsets(
    l: &Lattice,
    order: &[usize],
    i: usize,
    current: &mut ElementSet,
    emit: &mut impl FnMut(&ElementSet),
) {
    if i == order.len() {
        emit(current);
        return;
    }
    let a = order[i];
    upsets(l, order, i + 1, current, emit);
    let strict_up = l.up_set(a).difference(&ElementSet::singleton(a));
    if strict_up.is_subset(current) && a != l.bottom() {
        current.insert(a);
        upsets(l, order, i + 1, current, emit);
        current.remove(a);
    }
}

/// Outcome of comparing `cl(⋃ Q_{a_k})` with `Q_{⋁ a_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureUnionReport {
    pub family: Vec<usize>,
    pub join: usize,
    pub union: ElementSet,
    pub closure: ElementSet,
    pub basis_of_join: ElementSet,
    pub equal: bool,
    /// A quasipoint in exactly one of the two sets.
    pub witness: Option<usize>,
}

pub fn closure_union_check(
    l: &Lattice,
    spectrum: &StoneSpectrum,
    family: &[usize],
) -> ClosureUnionReport {
    let union = family.iter().fold(ElementSet::new(), |acc, &a| {
        acc.union(&spectrum.basis_set(a))
    });
    let closure = spectrum.closure_of_union(l, family);
    let join = family.iter().fold(l.bottom(), |j, &a| l.join(j, a));
    let basis_of_join = spectrum.basis_set(join);
    let diff = closure
        .difference(&basis_of_join)
        .union(&basis_of_join.difference(&closure));
    ClosureUnionReport {
        family: family.to_vec(),
        join,
        union,
        closure,
        basis_of_join,
        equal: diff.is_empty(),
        witness: diff.first(),
    }
}

/// The four spectral characterizations of distributivity for an
/// orthomodular lattice, evaluated independently, plus quasidistributivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributivityReport {
    /// Direct check of the distributive law.
    pub distributive: bool,
    /// `Q_a ∪ Q_b = Q_{a∨b}` for all pairs.
    pub union_of_basis_sets: bool,
    pub union_witness: Option<(usize, usize)>,
    /// `Q_a ∪ Q_{a⊥} = Q` for all `a`.
    pub complement_cover: bool,
    pub complement_witness: Option<usize>,
    /// Every union of basis sets is itself a basis set. On a finite spectrum
    /// every subset is clopen, so this is the finite reading of "the only
    /// clopen sets are the `Q_a`".
    pub clopen_are_basis: bool,
    pub clopen_witness: Option<ElementSet>,
    /// `Q_{(a∧b)∨(a∧c)} = Q_{a∧(b∨c)}` for all triples.
    pub quasidistributive: bool,
    pub quasidistributive_witness: Option<(usize, usize, usize)>,
    /// `Q_a = Q_b` implies `a = b`.
    pub basis_injective: bool,
}

impl DistributivityReport {
    pub fn all_agree(&self) -> bool {
        let d = self.distributive;
        self.union_of_basis_sets == d
            && self.complement_cover == d
            && self.clopen_are_basis == d
            && self.quasidistributive == d
    }
}

pub fn distributivity_equivalences(ol: &OrthoLattice) -> Result<DistributivityReport> {
    if let Some(w) = ol.orthomodular_witness() {
        return Err(Error::NotOrthomodular(w));
    }
    let l = ol.lattice();
    let spec = StoneSpectrum::new(l);
    let n = l.len();
    let q = |a: usize| spec.basis_set(a);

    let distributive = l.classify().is_distributive;

    let mut union_witness = None;
    'outer: for a in 0..n {
        for b in a..n {
            if q(a).union(&q(b)) != q(l.join(a, b)) {
                union_witness = Some((a, b));
                break 'outer;
            }
        }
    }

    let complement_witness = (0..n).find(|&a| q(a).union(&q(ol.perp(a))) != spec.all());

    let basis_sets: BTreeSet<ElementSet> = spec.basis.iter().copied().collect();
    let clopen_witness = spec
        .basis_unions()?
        .into_iter()
        .find(|u| !basis_sets.contains(u));

    let mut quasidistributive_witness = None;
    'triples: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = l.join(l.meet(a, b), l.meet(a, c));
                let rhs = l.meet(a, l.join(b, c));
                if q(lhs) != q(rhs) {
                    quasidistributive_witness = Some((a, b, c));
                    break 'triples;
                }
            }
        }
    }

    let basis_injective = basis_sets.len() == n;

    let report = DistributivityReport {
        distributive,
        union_of_basis_sets: union_witness.is_none(),
        union_witness,
        complement_cover: complement_witness.is_none(),
        complement_witness,
        clopen_are_basis: clopen_witness.is_none(),
        clopen_witness,
        quasidistributive: quasidistributive_witness.is_none(),
        quasidistributive_witness,
        basis_injective,
    };
    if !report.all_agree() || !report.basis_injective {
        return Err(Error::InternalContradiction(format!(
            "spectral distributivity criteria disagree: {report:?}"
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::subsets;
    use crate::corpus::corpus;

    /// Brute force: every subset that is a filter, then keep the maximal ones.
    fn maximal_filters_brute(l: &Lattice) -> Vec<ElementSet> {
        let filters: Vec<ElementSet> = subsets(l.all()).filter(|s| is_filter(l, s)).collect();
        let mut out: Vec<ElementSet> = filters
            .iter()
            .copied()
            .filter(|f| !filters.iter().any(|g| g != f && f.is_subset(g)))
            .collect();
        out.sort_by_key(|f| min_element(l, f));
        out
    }

    /// Join-primeness over every subset family.
    fn is_point_brute(l: &Lattice, p: &ElementSet) -> bool {
        subsets(l.all()).all(|fam| !p.contains(l.family_join(&fam)) || !fam.is_disjoint(p))
    }

    #[test]
    fn b3_and_mo2_quasipoints_match_brute_force() {
        for name in ["B3", "MO2", "C2", "C3", "M3", "N5", "O6"] {
            let l = corpus(name).unwrap().into_lattice();
            let s = StoneSpectrum::new(&l);
            assert_eq!(s.quasipoints, maximal_filters_brute(&l), "{name}");
        }
        let b3 = corpus("B3").unwrap().into_lattice();
        let s = StoneSpectrum::new(&b3);
        assert_eq!(s.len(), 3);
        assert_eq!(s.quasipoints[0], b3.up_set(0b001));
        let c2 = corpus("C2").unwrap().into_lattice();
        assert_eq!(
            StoneSpectrum::new(&c2).quasipoints,
            vec![ElementSet::singleton(1)]
        );
    }

    #[test]
    fn basis_sets() {
        let b3 = corpus("B3").unwrap().into_lattice();
        let s = StoneSpectrum::new(&b3);
        assert_eq!(s.basis_set(0b011).to_vec(), vec![0, 1]);
        assert!(s.basis_set(0).is_empty());
        assert_eq!(s.basis_set(7), s.all());
        let mo2 = corpus("MO2").unwrap().into_lattice();
        let s = StoneSpectrum::new(&mo2);
        assert_eq!(s.len(), 4);
        assert_eq!(s.basis_set(3).len(), 1);
        for a in 0..mo2.len() {
            assert!(s.basis_set_is_clopen(a));
        }
    }

    #[test]
    fn points_agree_with_subset_scan() {
        for name in ["B3", "MO2", "C3", "M3", "N5", "O6", "B2"] {
            let l = corpus(name).unwrap().into_lattice();
            let s = StoneSpectrum::new(&l);
            let fast = points(&l, &s);
            let brute: Vec<_> = s
                .quasipoints
                .iter()
                .copied()
                .filter(|q| is_point_brute(&l, q))
                .collect();
            assert_eq!(fast, brute, "{name}");
        }
        let b3 = corpus("B3").unwrap().into_lattice();
        assert_eq!(points(&b3, &StoneSpectrum::new(&b3)).len(), 3);
        let mo2 = corpus("MO2").unwrap().into_lattice();
        assert!(points(&mo2, &StoneSpectrum::new(&mo2)).is_empty());
        let c3 = corpus("C3").unwrap().into_lattice();
        assert_eq!(points(&c3, &StoneSpectrum::new(&c3)).len(), 1);
    }

    #[test]
    fn dual_ideals_match_subset_scan() {
        for name in ["B2", "C3", "MO2", "N5", "O6", "B3"] {
            let l = corpus(name).unwrap().into_lattice();
            let mut brute: Vec<ElementSet> =
                subsets(l.all()).filter(|s| is_filter(&l, s)).collect();
            brute.sort();
            let fast: Vec<ElementSet> = dual_ideals(&l, 20)
                .unwrap()
                .into_iter()
                .map(|d| d.members)
                .collect();
            assert_eq!(fast, brute, "{name}");
        }
        let mo2 = corpus("MO2").unwrap().into_lattice();
        let d = dual_ideals(&mo2, 20).unwrap();
        assert_eq!(d.len(), 5);
        assert!(d.iter().all(|x| x.principal.is_some()));
        let b2 = corpus("B2").unwrap().into_lattice();
        assert_eq!(dual_ideals(&b2, 20).unwrap().len(), 3);
        let c3 = corpus("C3").unwrap().into_lattice();
        assert_eq!(dual_ideals(&c3, 20).unwrap().len(), 2);
        assert!(matches!(dual_ideals(&b2, 3), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn closure_union_examples() {
        let b3 = corpus("B3").unwrap().into_lattice();
        let s = StoneSpectrum::new(&b3);
        let r = closure_union_check(&b3, &s, &[0b001, 0b010]);
        assert!(r.equal);
        assert_eq!(r.closure, s.basis_set(0b011));
        let mo2 = corpus("MO2").unwrap().into_lattice();
        let s = StoneSpectrum::new(&mo2);
        let r = closure_union_check(&mo2, &s, &[1, 3]);
        assert!(!r.equal);
        assert_eq!(r.closure.len(), 2);
        assert_eq!(r.basis_of_join, s.all());
        assert!(closure_union_check(&mo2, &s, &[mo2.top()]).equal);
    }

    #[test]
    fn distributivity_examples() {
        let b4 = corpus("B4").unwrap().into_ortho().unwrap();
        let r = distributivity_equivalences(&b4).unwrap();
        assert!(
            r.distributive && r.union_of_basis_sets && r.complement_cover && r.clopen_are_basis
        );
        for name in ["MO2", "MO3"] {
            let ol = corpus(name).unwrap().into_ortho().unwrap();
            let r = distributivity_equivalences(&ol).unwrap();
            assert!(
                !r.distributive
                    && !r.union_of_basis_sets
                    && !r.complement_cover
                    && !r.clopen_are_basis
            );
            assert!(!r.quasidistributive);
        }
        let mo2 = corpus("MO2").unwrap().into_ortho().unwrap();
        let r = distributivity_equivalences(&mo2).unwrap();
        let (a, b) = r.union_witness.unwrap();
        let s = StoneSpectrum::new(mo2.lattice());
        assert!(s.basis_set(a).union(&s.basis_set(b)) != s.basis_set(mo2.join(a, b)));
        let o6 = corpus("O6").unwrap().into_ortho().unwrap();
        assert!(matches!(
            distributivity_equivalences(&o6),
            Err(Error::NotOrthomodular(_))
        ));
    }
}
