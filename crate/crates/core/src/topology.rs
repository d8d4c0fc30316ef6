//! Finite topological spaces, regular open algebras, the meagre ideal, and
//! traces of Borel quasipoints on the open-set lattice.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::{ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::lattice::{subset_name, Lattice};
use crate::ortho::OrthoLattice;
use crate::quotient::{correspondence, CorrespondenceReport, IdealSpec, QuotientAlgebra};
use crate::spectrum::StoneSpectrum;

/// Spaces are limited to 8 points so that the powerset fits a wide lattice.
pub const MAX_POINTS: usize = 8;

/// Exhaustive enumeration of topologies is limited to this many points.
pub const MAX_ENUMERATED_POINTS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteSpace {
    points: usize,
    /// Open sets, sorted by bitmask.
    opens: Vec<ElementSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TopoOps {
    pub interior: ElementSet,
    pub closure: ElementSet,
    pub boundary: ElementSet,
}

fn mask(s: &ElementSet) -> u64 {
    s.low_mask()
}

fn show(s: &ElementSet) -> String {
    subset_name(mask(s))
}

impl FiniteSpace {
    /// Validates a family of open sets on `points` points.
    pub fn new(points: usize, opens: &[ElementSet]) -> Result<Self> {
        if points > MAX_POINTS {
            return Err(Error::SizeBound {
                what: "points",
                size: points,
                bound: MAX_POINTS,
            });
        }
        let full = ElementSet::full(points);
        let mut sorted: Vec<ElementSet> = opens.to_vec();
        sorted.sort_by_key(mask);
        sorted.dedup();
        for u in &sorted {
            if !u.is_subset(&full) {
                return Err(Error::InvalidTopology(format!(
                    "open set {} has points outside the space",
                    show(u)
                )));
            }
        }
        let has = |s: &ElementSet| sorted.binary_search_by_key(&mask(s), mask).is_ok();
        if !has(&ElementSet::new()) {
            return Err(Error::InvalidTopology("the empty set is not open".into()));
        }
        if !has(&full) {
            return Err(Error::InvalidTopology("the whole space is not open".into()));
        }
        for (i, u) in sorted.iter().enumerate() {
            for v in &sorted[i + 1..] {
                if !has(&u.union(v)) {
                    return Err(Error::InvalidTopology(format!(
                        "union of {} and {} is missing",
                        show(u),
                        show(v)
                    )));
                }
                if !has(&u.intersection(v)) {
                    return Err(Error::InvalidTopology(format!(
                        "intersection of {} and {} is missing",
                        show(u),
                        show(v)
                    )));
                }
            }
        }
        Ok(FiniteSpace {
            points,
            opens: sorted,
        })
    }

    pub fn discrete(points: usize) -> Result<Self> {
        let opens: Vec<ElementSet> = (0..1u64 << points).map(ElementSet::from_mask).collect();
        Self::new(points, &opens)
    }

    pub fn indiscrete(points: usize) -> Result<Self> {
        Self::new(points, &[ElementSet::new(), ElementSet::full(points)])
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn opens(&self) -> &[ElementSet] {
        &self.opens
    }

    pub fn whole(&self) -> ElementSet {
        ElementSet::full(self.points)
    }

    pub fn is_open(&self, a: &ElementSet) -> bool {
        self.open_index(a).is_some()
    }

    pub fn open_index(&self, a: &ElementSet) -> Option<usize> {
        self.opens.binary_search_by_key(&mask(a), mask).ok()
    }

    pub fn interior(&self, a: &ElementSet) -> ElementSet {
        self.opens
            .iter()
            .filter(|u| u.is_subset(a))
            .fold(ElementSet::new(), |acc, u| acc.union(u))
    }

    pub fn closure(&self, a: &ElementSet) -> ElementSet {
        let whole = self.whole();
        whole.difference(&self.interior(&whole.difference(a)))
    }

    pub fn boundary(&self, a: &ElementSet) -> ElementSet {
        self.closure(a)
            .intersection(&self.closure(&self.whole().difference(a)))
    }

    pub fn topo_ops(&self, a: &ElementSet) -> TopoOps {
        TopoOps {
            interior: self.interior(a),
            closure: self.closure(a),
            boundary: self.boundary(a),
        }
    }

    /// `U^c = M ∖ cl(U)`.
    pub fn pseudocomplement(&self, u: &ElementSet) -> ElementSet {
        self.whole().difference(&self.closure(u))
    }

    pub fn is_regular(&self, u: &ElementSet) -> bool {
        self.is_open(u) && self.pseudocomplement(&self.pseudocomplement(u)) == *u
    }

    pub fn is_nowhere_dense(&self, a: &ElementSet) -> bool {
        self.interior(&self.closure(a)).is_empty()
    }

    /// Smallest open set containing `x`.
    pub fn minimal_neighborhood(&self, x: usize) -> ElementSet {
        self.opens
            .iter()
            .filter(|u| u.contains(x))
            .fold(self.whole(), |acc, u| acc.intersection(u))
    }

    /// The open sets as a lattice under inclusion; element `i` is `opens()[i]`.
    pub fn open_lattice(&self) -> Lattice {
        let names = self.opens.iter().map(show).collect();
        Lattice::from_set_family_bounded(&self.opens, Some(names), MAX_ELEMENTS)
            .expect("open sets of a space form a lattice")
    }

    /// Classes of points lying in exactly the same open sets, ordered by
    /// least point. These are the atoms of the Borel algebra.
    pub fn borel_atoms(&self) -> Vec<ElementSet> {
        let mut atoms: Vec<ElementSet> = Vec::new();
        for x in 0..self.points {
            let nb = self.minimal_neighborhood(x);
            match atoms
                .iter_mut()
                .find(|a| self.minimal_neighborhood(a.first().unwrap()) == nb)
            {
                Some(a) => {
                    a.insert(x);
                }
                None => atoms.push(ElementSet::singleton(x)),
            }
        }
        atoms
    }

    /// Point set of Borel element `m`: the union of the atoms selected by the bits of `m`.
    pub fn borel_set(&self, m: usize) -> ElementSet {
        self.borel_atoms()
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .fold(ElementSet::new(), |acc, (_, a)| acc.union(a))
    }

    /// Borel index of a point set, if it is a union of atoms.
    pub fn borel_index(&self, a: &ElementSet) -> Option<usize> {
        let mut m = 0;
        for (i, atom) in self.borel_atoms().iter().enumerate() {
            if atom.is_subset(a) {
                m |= 1 << i;
            } else if !atom.is_disjoint(a) {
                return None;
            }
        }
        Some(m)
    }

    /// The Boolean algebra generated by the open sets. Element `m` is
    /// `borel_set(m)`; for a T0 space this is the whole powerset with `m`
    /// the bitmask of the set.
    pub fn borel_algebra(&self) -> OrthoLattice {
        let k = self.borel_atoms().len();
        let sets: Vec<ElementSet> = (0..1usize << k).map(|m| self.borel_set(m)).collect();
        let names = sets.iter().map(show).collect();
        let lattice = Lattice::from_set_family_bounded(&sets, Some(names), MAX_ELEMENTS)
            .expect("at most 8 atoms");
        let full = (1usize << k) - 1;
        OrthoLattice::new(lattice, (0..=full).map(|m| full ^ m).collect()).expect("complement")
    }
}

/// `𝒯_r(M)` and the identities it must satisfy.
#[derive(Debug, Clone, Serialize)]
pub struct RegularOpenAlgebra {
    /// Regular open sets; element `i` of `algebra` is `regular[i]`.
    pub regular: Vec<ElementSet>,
    #[serde(skip)]
    pub algebra: OrthoLattice,
    /// `U^ccc = U^c` for every open `U`.
    pub heyting_identity: bool,
    pub boolean: bool,
    /// Meet is intersection and join is `(U ∪ V)^cc`.
    pub operations_match: bool,
}

impl RegularOpenAlgebra {
    pub fn holds(&self) -> bool {
        self.heyting_identity && self.boolean && self.operations_match
    }

    pub fn index_of(&self, u: &ElementSet) -> Option<usize> {
        self.regular.iter().position(|r| r == u)
    }
}

pub fn regular_open_lattice(space: &FiniteSpace) -> RegularOpenAlgebra {
    let cc = |u: &ElementSet| space.pseudocomplement(&space.pseudocomplement(u));
    let heyting_identity = space
        .opens()
        .iter()
        .all(|u| space.pseudocomplement(&cc(u)) == space.pseudocomplement(u));
    let regular: Vec<ElementSet> = space
        .opens()
        .iter()
        .copied()
        .filter(|u| cc(u) == *u)
        .collect();
    let names = regular.iter().map(show).collect();
    let lattice = Lattice::from_set_family_bounded(&regular, Some(names), MAX_ELEMENTS)
        .expect("regular open sets form a lattice");
    let perp = regular
        .iter()
        .map(|u| {
            let c = space.pseudocomplement(u);
            regular
                .iter()
                .position(|r| *r == c)
                .expect("pseudocomplement of a regular open set is regular")
        })
        .collect();
    let algebra = OrthoLattice::new(lattice, perp)
        .expect("pseudocomplement is an orthocomplement on regular opens");
    let boolean = algebra.is_boolean();
    let n = regular.len();
    let operations_match = (0..n).all(|i| {
        (0..n).all(|j| {
            regular[algebra.meet(i, j)] == regular[i].intersection(&regular[j])
                && regular[algebra.join(i, j)] == cc(&regular[i].union(&regular[j]))
        })
    });
    RegularOpenAlgebra {
        regular,
        algebra,
        heyting_identity,
        boolean,
        operations_match,
    }
}

/// `ρ : Q(𝒯) → Q(𝒯_r)`, `𝔅 ↦ {U^cc : U ∈ 𝔅}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoReport {
    /// Quasipoints of `𝒯` as sets of open-set indices.
    pub open_quasipoints: Vec<ElementSet>,
    /// Quasipoints of `𝒯_r` as sets of regular-open indices.
    pub regular_quasipoints: Vec<ElementSet>,
    /// `forward[i]`: index of `ρ(𝔅_i)`, or `None` if it is not a quasipoint.
    pub forward: Vec<Option<usize>>,
    pub bijective: bool,
    pub basis_compatible: bool,
}

impl RhoReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.basis_compatible
    }
}

pub fn rho_map(space: &FiniteSpace) -> RhoReport {
    let reg = regular_open_lattice(space);
    rho_with(space, &reg)
}

fn rho_with(space: &FiniteSpace, reg: &RegularOpenAlgebra) -> RhoReport {
    let opens = space.open_lattice();
    let qt = StoneSpectrum::new(&opens);
    let qr = StoneSpectrum::new(&reg.algebra);
    let cc_index: Vec<usize> = space
        .opens()
        .iter()
        .map(|u| {
            reg.index_of(&space.pseudocomplement(&space.pseudocomplement(u)))
                .unwrap()
        })
        .collect();
    let forward: Vec<Option<usize>> = qt
        .quasipoints
        .iter()
        .map(|q| qr.index_of(&q.iter().map(|u| cc_index[u]).collect()))
        .collect();
    let mut hit = vec![0usize; qr.len()];
    for j in forward.iter().flatten() {
        hit[*j] += 1;
    }
    let bijective = forward.iter().all(Option::is_some) && hit.iter().all(|&h| h == 1);
    let image = |s: &ElementSet| -> ElementSet { s.iter().filter_map(|i| forward[i]).collect() };
    let preimage = |s: &ElementSet| -> ElementSet {
        (0..forward.len())
            .filter(|&i| forward[i].is_some_and(|j| s.contains(j)))
            .collect()
    };
    let basis_compatible = bijective
        && (0..opens.len()).all(|u| image(&qt.basis_set(u)) == qr.basis_set(cc_index[u]))
        && reg.regular.iter().enumerate().all(|(w, set)| {
            let u = space.open_index(set).unwrap();
            preimage(&qr.basis_set(w)) == qt.basis_set(u)
        });
    RhoReport {
        open_quasipoints: qt.quasipoints,
        regular_quasipoints: qr.quasipoints,
        forward,
        bijective,
        basis_compatible,
    }
}

/// Meagre ideal, Baire test, and (for Baire spaces) regular representatives
/// and the `π_M` correspondence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeagreReport {
    /// Meagre sets as point sets.
    pub meagre: Vec<ElementSet>,
    pub is_baire: bool,
    /// A nonempty meagre open set, when the space is not Baire.
    pub non_baire_witness: Option<ElementSet>,
    /// `representatives[k]`: the regular open sets in class `k` of `B(M)/I₁`.
    pub representatives: Vec<Vec<ElementSet>>,
    pub representatives_unique: Option<bool>,
    /// `pi_m[i]`: index in `Q(B(M))` of `π_M(𝔅_i)` for the quasipoints of `𝒯`.
    pub pi_m: Vec<Option<usize>>,
    pub pi_m_bijective: Option<bool>,
    pub pi_m_basis_compatible: Option<bool>,
    pub correspondence: CorrespondenceReport,
}

impl MeagreReport {
    /// Non-Baire spaces are outside the hypothesis and pass vacuously.
    pub fn holds(&self) -> bool {
        self.correspondence.holds()
            && (!self.is_baire
                || (self.representatives_unique == Some(true)
                    && self.pi_m_bijective == Some(true)
                    && self.pi_m_basis_compatible == Some(true)))
    }
}

pub fn meagre_baire(space: &FiniteSpace) -> Result<MeagreReport> {
    if space.points() == 0 {
        return Err(Error::InvalidTopology(
            "the empty space has no proper ideals".into(),
        ));
    }
    let borel = space.borel_algebra();
    let nowhere_dense: ElementSet = (0..borel.len())
        .filter(|&m| space.is_nowhere_dense(&space.borel_set(m)))
        .collect();
    let ideal = IdealSpec::from_generators(&borel, &nowhere_dense)?;
    let meagre: Vec<ElementSet> = ideal.members.iter().map(|m| space.borel_set(m)).collect();
    let borel_of = |u: &ElementSet| space.borel_index(u).expect("open sets are Borel");
    let non_baire_witness = space
        .opens()
        .iter()
        .find(|u| !u.is_empty() && ideal.members.contains(borel_of(u)))
        .copied();
    let is_baire = non_baire_witness.is_none();
    let quotient = QuotientAlgebra::new(&borel, ideal)?;
    let corr = correspondence(&borel, &quotient);

    let representatives: Vec<Vec<ElementSet>> = quotient
        .classes
        .iter()
        .map(|c| {
            c.iter()
                .map(|m| space.borel_set(m))
                .filter(|s| space.is_regular(s))
                .collect()
        })
        .collect();

    let (mut unique, mut pi_m, mut bijective, mut basis_ok) = (None, Vec::new(), None, None);
    if is_baire {
        unique = Some(representatives.iter().all(|r| r.len() == 1));
        let opens = space.open_lattice();
        let qt = StoneSpectrum::new(&opens);
        let qb = StoneSpectrum::new(&borel);
        let pi = |q: &ElementSet| -> ElementSet {
            let members: ElementSet = q.iter().map(|u| borel_of(&space.opens()[u])).collect();
            quotient.preimage(&quotient.image(&members))
        };
        pi_m = qt.quasipoints.iter().map(|q| qb.index_of(&pi(q))).collect();
        let q2: ElementSet = corr.second_category.iter().copied().collect();
        let image: ElementSet = pi_m.iter().flatten().copied().collect();
        bijective =
            Some(pi_m.iter().all(Option::is_some) && image == q2 && image.len() == pi_m.len());
        basis_ok = Some(space.opens().iter().enumerate().all(|(u, set)| {
            let pushed: ElementSet = qt.basis_set(u).iter().filter_map(|i| pi_m[i]).collect();
            pushed == qb.basis_set(borel_of(set)).intersection(&q2)
        }));
    }
    Ok(MeagreReport {
        meagre,
        is_baire,
        non_baire_witness,
        representatives,
        representatives_unique: unique,
        pi_m,
        pi_m_bijective: bijective,
        pi_m_basis_compatible: basis_ok,
        correspondence: corr,
    })
}

/// Trace of a powerset quasipoint on the open sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasipointAnalysis {
    /// The Borel atom whose principal filter was analysed.
    pub atom: ElementSet,
    /// Open sets containing the atom.
    pub trace: Vec<ElementSet>,
    pub trace_is_quasipoint: bool,
    /// No open `U` has `∂U` in the filter.
    pub boundary_criterion: bool,
    /// An open `U` whose boundary contains the atom, when the criterion fails.
    pub boundary_witness: Option<ElementSet>,
    pub agree: bool,
    /// `U ∈ trace` or `U^c ∈ trace` for every open `U`.
    pub alternative_holds: bool,
    /// `⋂ cl(U)` over the trace.
    pub support: ElementSet,
    pub support_is_singleton: bool,
}

impl QuasipointAnalysis {
    pub fn holds(&self) -> bool {
        self.agree && (!self.trace_is_quasipoint || self.alternative_holds)
    }
}

/// Analyses a quasipoint of the Borel algebra, given as a set of Borel
/// indices. Every such quasipoint is the principal filter at an atom.
pub fn quasipoint_analysis(space: &FiniteSpace, filter: &ElementSet) -> Result<QuasipointAnalysis> {
    let k = space.borel_atoms().len();
    let i = (0..k)
        .find(|&i| *filter == atom_filter(k, i))
        .ok_or_else(|| {
            Error::NotAQuasipoint(format!(
                "{:?} is not a maximal filter of the Borel algebra",
                filter.to_vec()
            ))
        })?;
    Ok(analyse_atom(space, i))
}

/// `{m : bit i of m is set}`: the principal filter at atom `i` of a Borel
/// algebra with `atoms` atoms.
pub fn atom_filter(atoms: usize, i: usize) -> ElementSet {
    (0..1usize << atoms).filter(|m| m >> i & 1 == 1).collect()
}

fn analyse_atom(space: &FiniteSpace, i: usize) -> QuasipointAnalysis {
    let atom = space.borel_atoms()[i];
    let x = atom.first().unwrap();
    let opens = space.open_lattice();
    let qt = StoneSpectrum::new(&opens);
    let trace_idx: ElementSet = (0..space.opens().len())
        .filter(|&u| space.opens()[u].contains(x))
        .collect();
    let trace: Vec<ElementSet> = trace_idx.iter().map(|u| space.opens()[u]).collect();
    let trace_is_quasipoint = qt.index_of(&trace_idx).is_some();
    let boundary_witness = space
        .opens()
        .iter()
        .find(|u| space.boundary(u).contains(x))
        .copied();
    let boundary_criterion = boundary_witness.is_none();
    let alternative_holds = space
        .opens()
        .iter()
        .all(|u| u.contains(x) || space.pseudocomplement(u).contains(x));
    let support = trace
        .iter()
        .fold(space.whole(), |acc, u| acc.intersection(&space.closure(u)));
    QuasipointAnalysis {
        atom,
        trace,
        trace_is_quasipoint,
        boundary_criterion,
        boundary_witness,
        agree: trace_is_quasipoint == boundary_criterion,
        alternative_holds,
        support,
        support_is_singleton: support.len() == 1,
    }
}

/// Every topology on `n` points, ordered by the bitmask of the family of
/// nonempty proper open sets.
pub fn all_topologies(n: usize) -> Result<Vec<FiniteSpace>> {
    if n > MAX_ENUMERATED_POINTS {
        return Err(Error::SizeBound {
            what: "enumerated points",
            size: n,
            bound: MAX_ENUMERATED_POINTS,
        });
    }
    let full = (1u64 << n) - 1;
    let proper: Vec<u64> = (1..full).collect();
    let families: u64 = 1 << proper.len();
    let found: Vec<u64> = (0..families)
        .into_par_iter()
        .filter(|&f| {
            let member = |s: u64| s == 0 || s == full || (f >> (s - 1) & 1 == 1);
            proper.iter().filter(|&&s| member(s)).all(|&a| {
                proper
                    .iter()
                    .filter(|&&s| member(s))
                    .all(|&b| member(a | b) && member(a & b))
            })
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|f| {
            let opens: Vec<ElementSet> = std::iter::once(0)
                .chain(proper.iter().copied().filter(|&s| f >> (s - 1) & 1 == 1))
                .chain(std::iter::once(full))
                .map(ElementSet::from_mask)
                .collect();
            let mut opens = opens;
            opens.sort_by_key(mask);
            FiniteSpace { points: n, opens }
        })
        .collect())
}

/// All checks on one space.
#[derive(Debug, Clone, Serialize)]
pub struct SpaceReport {
    pub space: FiniteSpace,
    pub regular_open: RegularOpenAlgebra,
    pub open_lattice_distributive: bool,
    pub rho: RhoReport,
    pub meagre: MeagreReport,
    pub quasipoints: Vec<QuasipointAnalysis>,
}

impl SpaceReport {
    pub fn holds(&self) -> bool {
        self.regular_open.holds()
            && self.open_lattice_distributive
            && self.rho.holds()
            && self.meagre.holds()
            && self.quasipoints.iter().all(QuasipointAnalysis::holds)
    }
}

pub fn analyse_space(space: &FiniteSpace) -> Result<SpaceReport> {
    let regular_open = regular_open_lattice(space);
    let rho = rho_with(space, &regular_open);
    Ok(SpaceReport {
        space: space.clone(),
        open_lattice_distributive: space.open_lattice().classify().is_distributive,
        rho,
        meagre: meagre_baire(space)?,
        quasipoints: (0..space.borel_atoms().len())
            .map(|i| analyse_atom(space, i))
            .collect(),
        regular_open,
    })
}

/// Counts over a family of spaces, with the first failing spaces listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologySuiteReport {
    pub points: usize,
    pub spaces: usize,
    pub enumerated: usize,
    pub regular_open_ok: usize,
    pub rho_ok: usize,
    pub baire: usize,
    pub baire_ok: usize,
    pub boundary_criterion_ok: usize,
    pub failures: Vec<FiniteSpace>,
}

impl TopologySuiteReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
            && self.regular_open_ok == self.spaces
            && self.rho_ok == self.spaces
            && self.baire_ok == self.baire
            && self.boundary_criterion_ok == self.spaces
    }
}

/// Runs every check on all topologies on `n` points, or on `sample` of them
/// chosen with `rng`.
pub fn topology_suite<R: rand::Rng>(
    n: usize,
    sample: Option<(usize, &mut R)>,
) -> Result<TopologySuiteReport> {
    let all = all_topologies(n)?;
    let enumerated = all.len();
    let spaces: Vec<FiniteSpace> = match sample {
        Some((k, rng)) if k < all.len() => {
            let mut picked: Vec<usize> = (0..all.len())
                .collect::<Vec<_>>()
                .choose_multiple(rng, k)
                .copied()
                .collect();
            picked.sort_unstable();
            picked.into_iter().map(|i| all[i].clone()).collect()
        }
        _ => all,
    };
    let reports: Vec<SpaceReport> = spaces
        .par_iter()
        .map(analyse_space)
        .collect::<Result<_>>()?;
    let count = |f: &dyn Fn(&SpaceReport) -> bool| reports.iter().filter(|r| f(r)).count();
    Ok(TopologySuiteReport {
        points: n,
        spaces: reports.len(),
        enumerated,
        regular_open_ok: count(&|r| r.regular_open.holds()),
        rho_ok: count(&|r| r.rho.holds()),
        baire: count(&|r| r.meagre.is_baire),
        baire_ok: count(&|r| r.meagre.is_baire && r.meagre.holds()),
        boundary_criterion_ok: count(&|r| r.quasipoints.iter().all(QuasipointAnalysis::holds)),
        failures: reports
            .iter()
            .filter(|r| !r.holds())
            .take(5)
            .map(|r| r.space.clone())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(points: &[usize]) -> ElementSet {
        points.iter().copied().collect()
    }

    /// Points 1, 2, 3 are indices 0, 1, 2.
    fn t3() -> FiniteSpace {
        FiniteSpace::new(
            3,
            &[
                set(&[]),
                set(&[0]),
                set(&[2]),
                set(&[0, 2]),
                set(&[0, 1, 2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn t3_operations() {
        let t = t3();
        assert_eq!(
            t.topo_ops(&set(&[0])),
            TopoOps {
                interior: set(&[0]),
                closure: set(&[0, 1]),
                boundary: set(&[1])
            }
        );
        let m = t.whole();
        assert_eq!(
            t.topo_ops(&m),
            TopoOps {
                interior: m,
                closure: m,
                boundary: set(&[])
            }
        );
        assert_eq!(
            t.topo_ops(&set(&[1])),
            TopoOps {
                interior: set(&[]),
                closure: set(&[1]),
                boundary: set(&[1])
            }
        );
    }

    #[test]
    fn validation_names_missing_sets() {
        let err =
            FiniteSpace::new(3, &[set(&[]), set(&[0]), set(&[2]), set(&[0, 1, 2])]).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidTopology("union of {1} and {3} is missing".into())
        );
        assert!(matches!(
            FiniteSpace::new(2, &[set(&[0, 1])]),
            Err(Error::InvalidTopology(_))
        ));
    }

    #[test]
    fn t3_regular_opens() {
        let t = t3();
        let r = regular_open_lattice(&t);
        assert!(r.holds());
        assert_eq!(
            r.regular,
            vec![set(&[]), set(&[0]), set(&[2]), set(&[0, 1, 2])]
        );
        let (a, b) = (
            r.index_of(&set(&[0])).unwrap(),
            r.index_of(&set(&[2])).unwrap(),
        );
        assert_eq!(r.regular[r.algebra.join(a, b)], t.whole());
        let d = regular_open_lattice(&FiniteSpace::discrete(2).unwrap());
        assert_eq!(d.regular.len(), 4);
        let i = regular_open_lattice(&FiniteSpace::indiscrete(3).unwrap());
        assert_eq!(i.regular.len(), 2);
    }

    #[test]
    fn t3_rho() {
        let r = rho_map(&t3());
        assert!(r.holds());
        assert_eq!(r.open_quasipoints.len(), 2);
        assert_eq!(r.regular_quasipoints.len(), 2);
        let d = rho_map(&FiniteSpace::discrete(3).unwrap());
        assert!(d.holds());
        assert_eq!(d.forward, vec![Some(0), Some(1), Some(2)]);
        let i = rho_map(&FiniteSpace::indiscrete(2).unwrap());
        assert_eq!(i.forward, vec![Some(0)]);
    }

    #[test]
    fn t3_meagre() {
        let t = t3();
        let m = meagre_baire(&t).unwrap();
        assert_eq!(m.meagre, vec![set(&[]), set(&[1])]);
        assert!(m.is_baire);
        assert!(m.holds(), "{m:?}");
        // quasipoints of the powerset are ordered by point: atoms {1}, {3}
        assert_eq!(m.correspondence.second_category, vec![0, 2]);
        let class = m
            .representatives
            .iter()
            .find(|r| r.contains(&t.whole()))
            .unwrap();
        assert_eq!(class, &vec![t.whole()]);
        let d = meagre_baire(&FiniteSpace::discrete(2).unwrap()).unwrap();
        assert_eq!(d.meagre, vec![set(&[])]);
        assert!(d.holds());
    }

    #[test]
    fn finite_spaces_are_baire() {
        // U ⊆ int(cl U), so a nonempty open set is never nowhere dense
        for n in 1..=3 {
            for s in all_topologies(n).unwrap() {
                assert!(meagre_baire(&s).unwrap().is_baire);
            }
        }
    }

    #[test]
    fn t3_quasipoint_traces() {
        let t = t3();
        let at2 = quasipoint_analysis(&t, &atom_filter(3, 1)).unwrap();
        assert!(!at2.trace_is_quasipoint && !at2.boundary_criterion && at2.agree);
        assert_eq!(at2.boundary_witness, Some(set(&[0])));
        let at1 = quasipoint_analysis(&t, &atom_filter(3, 0)).unwrap();
        assert!(at1.trace_is_quasipoint && at1.boundary_criterion && at1.alternative_holds);
        assert_eq!(at1.trace[0], set(&[0]));
        let d = FiniteSpace::discrete(3).unwrap();
        for x in 0..3 {
            let a = quasipoint_analysis(&d, &atom_filter(3, x)).unwrap();
            assert!(a.trace_is_quasipoint && a.support == set(&[x]));
        }
        assert!(matches!(
            quasipoint_analysis(&t, &set(&[7])),
            Err(Error::NotAQuasipoint(_))
        ));
    }

    #[test]
    fn borel_algebra_is_generated_by_opens() {
        let t = t3();
        assert_eq!(t.borel_atoms().len(), 3);
        assert_eq!(t.borel_algebra().len(), 8);
        // points 1 and 2 share every neighbourhood
        let s = FiniteSpace::new(3, &[set(&[]), set(&[0, 1]), set(&[0, 1, 2])]).unwrap();
        assert_eq!(s.borel_atoms(), vec![set(&[0, 1]), set(&[2])]);
        assert_eq!(s.borel_set(0b01), set(&[0, 1]));
        assert_eq!(s.borel_index(&set(&[0])), None);
        let m = meagre_baire(&s).unwrap();
        assert_eq!(m.meagre, vec![set(&[]), set(&[2])]);
        assert!(m.holds(), "{m:?}");
        let i = meagre_baire(&FiniteSpace::indiscrete(3).unwrap()).unwrap();
        assert_eq!(
            i.representatives,
            vec![vec![set(&[])], vec![set(&[0, 1, 2])]]
        );
        assert!(i.holds());
    }

    #[test]
    fn regular_representatives_match_brute_force() {
        // independent scan over all point sets of each 3-point topology
        for s in all_topologies(3).unwrap() {
            let full = s.whole();
            for m in 0..s.borel_algebra().len() {
                let a = s.borel_set(m);
                let reps: Vec<ElementSet> = s
                    .opens()
                    .iter()
                    .filter(|u| s.interior(&s.closure(u)) == **u)
                    .filter(|u| {
                        let sym = a.difference(u).union(&u.difference(&a));
                        s.interior(&s.closure(&sym)).is_empty()
                    })
                    .copied()
                    .collect();
                assert_eq!(reps.len(), 1, "{s:?} {a:?}");
                assert!(reps[0].is_subset(&full));
            }
        }
    }

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_topologies(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn topology_counts_match_brute_force() {
        // independent scan: all families of subsets of 3 points
        let mut count = 0;
        for fam in 0u32..1 << 8 {
            let has = |s: u32| fam >> s & 1 == 1;
            if !has(0) || !has(7) {
                continue;
            }
            if (0..8).all(|a| (0..8).all(|b| !has(a) || !has(b) || (has(a | b) && has(a & b)))) {
                count += 1;
            }
        }
        assert_eq!(count, 29);
    }

    #[test]
    fn three_point_suite() {
        let r = topology_suite::<rand_chacha::ChaCha8Rng>(3, None).unwrap();
        assert_eq!(r.spaces, 29);
        assert!(r.holds(), "{r:?}");
    }
}
