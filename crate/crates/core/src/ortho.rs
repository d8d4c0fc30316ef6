//! Orthocomplemented lattices: commutativity, commutants, orthomodularity,
//! Boolean sectors and Boolean quasipoints.

use std::collections::BTreeSet;
use std::ops::Deref;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::{check_permutation, Lattice};
use crate::spectrum::{is_filter, StoneSpectrum};

/// A lattice together with an orthocomplement `a ↦ a⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoLattice {
    lattice: Lattice,
    perp: Vec<usize>,
}

impl Deref for OrthoLattice {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}

/// Symmetry of the commutativity relation set against orthomodularity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NakamuraReport {
    pub symmetric: bool,
    pub orthomodular: bool,
    /// `(a, b)` with `a C b` but not `b C a`.
    pub asymmetric_pair: Option<(usize, usize)>,
    /// `(a, b)` with `b ≤ a` and `a ∧ (a⊥ ∨ b) ≠ b`.
    pub orthomodular_witness: Option<(usize, usize)>,
}

/// Closure properties of a commutant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutantReport {
    pub subset: ElementSet,
    pub commutant: ElementSet,
    pub closed_under_meet: bool,
    pub closed_under_join: bool,
    pub closed_under_perp: bool,
    /// Every family join of commutant members stays in the commutant.
    pub closed_under_family_joins: bool,
    /// `a ∧ ⋁ b_k = ⋁ (a ∧ b_k)` for `a` in the subset and families in the commutant.
    pub subset_distributes: bool,
}

impl CommutantReport {
    pub fn holds(&self) -> bool {
        self.closed_under_meet
            && self.closed_under_join
            && self.closed_under_perp
            && self.closed_under_family_joins
            && self.subset_distributes
    }
}

/// A maximal pairwise-commuting subset, which is a Boolean subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Sector {
    pub elements: ElementSet,
}

/// A maximal pairwise-commuting filter base and the sector containing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanQuasipoint {
    pub members: ElementSet,
    pub sector: usize,
}

/// Boolean quasipoints with the per-sector comparison against Stone spectra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanQuasipointReport {
    pub sectors: Vec<Sector>,
    pub quasipoints: Vec<BooleanQuasipoint>,
    /// Each Boolean quasipoint lies in exactly one sector.
    pub unique_sector: bool,
    /// Upward closure within the sector adds nothing.
    pub closed_within_sector: bool,
    /// Adding commuting majorants adds nothing.
    pub closed_under_commuting_majorants: bool,
    /// Per sector: the assigned Boolean quasipoints equal the sector's own
    /// Stone spectrum.
    pub matches_sector_spectra: Vec<bool>,
}

impl BooleanQuasipointReport {
    pub fn holds(&self) -> bool {
        self.unique_sector
            && self.closed_within_sector
            && self.closed_under_commuting_majorants
            && self.matches_sector_spectra.iter().all(|&b| b)
    }
}

/// Restriction of a quasipoint to a central subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub restricted: ElementSet,
    pub supports: ElementSet,
    pub agree: bool,
}

impl OrthoLattice {
    /// Attaches a candidate orthocomplement and checks every axiom.
    pub fn new(lattice: Lattice, perp: Vec<usize>) -> Result<Self> {
        let n = lattice.len();
        check_permutation(&perp, n)?;
        let fail = |axiom, witness: Vec<usize>| Err(Error::NotAnOrthocomplement { axiom, witness });
        for a in 0..n {
            if perp[perp[a]] != a {
                return fail("involution", vec![a]);
            }
        }
        for a in 0..n {
            if lattice.meet(a, perp[a]) != lattice.bottom() {
                return fail("a ∧ a⊥ = 0", vec![a]);
            }
            if lattice.join(a, perp[a]) != lattice.top() {
                return fail("a ∨ a⊥ = 1", vec![a]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                if perp[lattice.meet(a, b)] != lattice.join(perp[a], perp[b]) {
                    return fail("(a ∧ b)⊥ = a⊥ ∨ b⊥", vec![a, b]);
                }
                if perp[lattice.join(a, b)] != lattice.meet(perp[a], perp[b]) {
                    return fail("(a ∨ b)⊥ = a⊥ ∧ b⊥", vec![a, b]);
                }
                if lattice.leq(a, b) != lattice.leq(perp[b], perp[a]) {
                    return fail("a ≤ b ⟺ b⊥ ≤ a⊥", vec![a, b]);
                }
            }
        }
        Ok(OrthoLattice { lattice, perp })
    }

    /// The powerset of a `k`-element set with set complement.
    pub fn boolean(k: usize) -> Result<Self> {
        Self::boolean_bounded(k, crate::lattice::DEFAULT_MAX_ELEMENTS)
    }

    /// The powerset of a `k`-element set with complement as `⊥`, up to `bound` elements.
    pub fn boolean_bounded(k: usize, bound: usize) -> Result<Self> {
        let l = Lattice::powerset_bounded(k, bound)?;
        let full = l.top();
        let perp = (0..l.len()).map(|m| full ^ m).collect();
        Self::new(l, perp)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    #[inline]
    pub fn perp(&self, a: usize) -> usize {
        self.perp[a]
    }

    pub fn perp_table(&self) -> &[usize] {
        &self.perp
    }

    /// `a C b ⟺ a = (a ∧ b) ∨ (a ∧ b⊥)`, evaluated literally.
    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        let l = &self.lattice;
        a == l.join(l.meet(a, b), l.meet(a, self.perp[b]))
    }

    /// First pair `(a, b)` in lexicographic order with `b ≤ a` and
    /// `a ∧ (a⊥ ∨ b) ≠ b`.
    pub fn orthomodular_witness(&self) -> Option<(usize, usize)> {
        let l = &self.lattice;
        (0..l.len()).find_map(|a| {
            l.down_set(a)
                .iter()
                .find(|&b| l.meet(a, l.join(self.perp[a], b)) != b)
                .map(|b| (a, b))
        })
    }

    pub fn is_orthomodular(&self) -> bool {
        self.orthomodular_witness().is_none()
    }

    pub fn is_boolean(&self) -> bool {
        self.lattice.classify().is_distributive
    }

    /// Compares symmetry of `C` with orthomodularity; disagreement means a bug.
    pub fn nakamura_report(&self) -> Result<NakamuraReport> {
        let n = self.len();
        let mut asymmetric_pair = None;
        'outer: for a in 0..n {
            for b in 0..n {
                if self.commutes(a, b) && !self.commutes(b, a) {
                    asymmetric_pair = Some((a, b));
                    break 'outer;
                }
            }
        }
        let orthomodular_witness = self.orthomodular_witness();
        let report = NakamuraReport {
            symmetric: asymmetric_pair.is_none(),
            orthomodular: orthomodular_witness.is_none(),
            asymmetric_pair,
            orthomodular_witness,
        };
        if report.symmetric != report.orthomodular {
            return Err(Error::InternalContradiction(format!(
                "commutativity symmetry and orthomodularity disagree: {report:?}"
            )));
        }
        Ok(report)
    }

    /// `{b : a C b}` for every `a`: the single-element commutants.
    pub fn commutant_rows(&self) -> Vec<ElementSet> {
        let n = self.len();
        (0..n)
            .map(|a| (0..n).filter(|&b| self.commutes(a, b)).collect())
            .collect()
    }

    /// `M^C = {b : a C b for all a ∈ M}`.
    pub fn commutant(&self, m: &ElementSet) -> Result<ElementSet> {
        if m.is_empty() {
            return Err(Error::EmptySubset);
        }
        let n = self.len();
        Ok((0..n)
            .filter(|&b| m.iter().all(|a| self.commutes(a, b)))
            .collect())
    }

    /// Computes `M^C` and checks its lattice closure properties. Family joins
    /// are checked exhaustively when the commutant has at most 10 members and
    /// through binary joins otherwise, which suffices by induction on the
    /// family size once binary joins stay inside.
    pub fn commutant_report(&self, m: &ElementSet) -> Result<CommutantReport> {
        let c = self.commutant(m)?;
        let l = &self.lattice;
        let pairs = || c.iter().flat_map(move |a| c.iter().map(move |b| (a, b)));
        let closed_under_meet = pairs().all(|(a, b)| c.contains(l.meet(a, b)));
        let closed_under_join = pairs().all(|(a, b)| c.contains(l.join(a, b)));
        let closed_under_perp = c.iter().all(|a| c.contains(self.perp[a]));
        let (closed_under_family_joins, subset_distributes) = if c.len() <= 10 {
            let mut closed = true;
            let mut distributes = true;
            for fam in crate::bitset::subsets(c) {
                let j = l.family_join(&fam);
                closed &= c.contains(j);
                for a in m.iter() {
                    let lhs = l.meet(a, j);
                    let rhs = fam
                        .iter()
                        .fold(l.bottom(), |acc, b| l.join(acc, l.meet(a, b)));
                    distributes &= lhs == rhs;
                }
            }
            (closed, distributes)
        } else {
            let distributes = m.iter().all(|a| {
                pairs().all(|(b1, b2)| {
                    l.meet(a, l.join(b1, b2)) == l.join(l.meet(a, b1), l.meet(a, b2))
                })
            });
            (closed_under_join, distributes)
        };
        Ok(CommutantReport {
            subset: *m,
            commutant: c,
            closed_under_meet,
            closed_under_join,
            closed_under_perp,
            closed_under_family_joins,
            subset_distributes,
        })
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> ElementSet {
        self.commutant(&self.all()).expect("nonempty lattice")
    }

    /// Maximal pairwise-commuting subsets, found as the fixed points
    /// `M = M^C` by a branching search whose candidate set at each step is the
    /// current commutant. Sorted by smallest member, then member list.
    pub fn boolean_sectors(&self) -> Result<Vec<Sector>> {
        if let Some(w) = self.orthomodular_witness() {
            return Err(Error::NotOrthomodular(w));
        }
        let rows = self.commutant_rows();
        let mut found = BTreeSet::new();
        maximal_cliques(
            &rows,
            ElementSet::new(),
            self.all(),
            ElementSet::new(),
            &mut |k| {
                found.insert(k);
            },
        );
        let sectors: Vec<Sector> = found
            .into_iter()
            .map(|elements| Sector { elements })
            .collect();
        for s in &sectors {
            let c = self.commutant(&s.elements)?;
            if c != s.elements {
                return Err(Error::InternalContradiction(format!(
                    "sector {:?} differs from its commutant {:?}",
                    s.elements, c
                )));
            }
        }
        Ok(sectors)
    }

    /// Maximal pairwise-commuting filter bases, each assigned to the unique
    /// sector containing it, and compared sector by sector with the Stone
    /// spectrum of the sector taken as a standalone lattice.
    pub fn boolean_quasipoints(&self) -> Result<BooleanQuasipointReport> {
        let sectors = self.boolean_sectors()?;
        let rows = self.commutant_rows();
        let l = &self.lattice;
        let bottom = l.bottom();

        // A finite filter base has a least member m and lies in ↑m, where
        // every element commutes with m.
        let mut candidates = BTreeSet::new();
        for m in 0..l.len() {
            if m == bottom {
                continue;
            }
            let above = l.up_set(m).difference(&ElementSet::singleton(m));
            maximal_cliques(
                &rows,
                ElementSet::singleton(m),
                above.intersection(&rows[m]),
                ElementSet::new(),
                &mut |k| {
                    candidates.insert(k);
                },
            );
        }
        let candidates: Vec<ElementSet> = candidates.into_iter().collect();
        let mut maximal: Vec<ElementSet> = candidates
            .iter()
            .copied()
            .filter(|b| !candidates.iter().any(|c| c != b && b.is_subset(c)))
            .collect();
        maximal.sort_by_key(|b| (l.family_meet(b), *b));

        let mut unique_sector = true;
        let mut closed_within_sector = true;
        let mut closed_under_commuting_majorants = true;
        let mut quasipoints = Vec::with_capacity(maximal.len());
        for beta in maximal {
            let containing: Vec<usize> = (0..sectors.len())
                .filter(|&i| beta.is_subset(&sectors[i].elements))
                .collect();
            unique_sector &= containing.len() == 1;
            let sector = containing.first().copied().unwrap_or(usize::MAX);
            let upward = beta
                .iter()
                .fold(ElementSet::new(), |acc, b| acc.union(&l.up_set(b)));
            if let Some(s) = sectors.get(sector) {
                closed_within_sector &= upward.intersection(&s.elements) == beta;
            }
            let commuting = beta
                .iter()
                .fold(self.all(), |acc, b| acc.intersection(&rows[b]));
            closed_under_commuting_majorants &= upward.intersection(&commuting) == beta;
            quasipoints.push(BooleanQuasipoint {
                members: beta,
                sector,
            });
        }

        let mut matches_sector_spectra = Vec::with_capacity(sectors.len());
        for (i, s) in sectors.iter().enumerate() {
            let (sub, map) = l.sublattice(&s.elements)?;
            let spectrum = StoneSpectrum::new(&sub);
            let mut expected: Vec<ElementSet> = spectrum
                .quasipoints
                .iter()
                .map(|q| q.iter().map(|x| map[x]).collect())
                .collect();
            let mut assigned: Vec<ElementSet> = quasipoints
                .iter()
                .filter(|q| q.sector == i)
                .map(|q| q.members)
                .collect();
            expected.sort();
            assigned.sort();
            matches_sector_spectra.push(expected == assigned);
        }

        Ok(BooleanQuasipointReport {
            sectors,
            quasipoints,
            unique_sector,
            closed_within_sector,
            closed_under_commuting_majorants,
            matches_sector_spectra,
        })
    }

    /// `s_A(P) = ⋀{Q ∈ A : P ≤ Q}` for a sublattice `A` containing 0 and 1.
    pub fn support(&self, a: &ElementSet, p: usize) -> Result<usize> {
        self.check_bounded_sublattice(a)?;
        if p >= self.len() {
            return Err(Error::OutOfRange {
                index: p,
                n: self.len(),
            });
        }
        Ok(self.family_meet(&a.intersection(&self.up_set(p))))
    }

    /// `ζ_A(𝔅) = 𝔅 ∩ A` for central `A`, compared with `{s_A(P) : P ∈ 𝔅}`.
    pub fn zeta(&self, a: &ElementSet, quasipoint: &ElementSet) -> Result<ZetaReport> {
        self.check_bounded_sublattice(a)?;
        let center = self.center();
        if let Some(x) = a.difference(&center).first() {
            return Err(Error::NotCentral(x));
        }
        if !is_filter(self, quasipoint) {
            return Err(Error::NotAQuasipoint(format!(
                "{quasipoint:?} is not a filter"
            )));
        }
        let restricted = quasipoint.intersection(a);
        let mut supports = ElementSet::new();
        for p in quasipoint.iter() {
            supports.insert(self.support(a, p)?);
        }
        Ok(ZetaReport {
            restricted,
            supports,
            agree: restricted == supports,
        })
    }

    fn check_bounded_sublattice(&self, a: &ElementSet) -> Result<()> {
        if !a.contains(self.bottom()) || !a.contains(self.top()) {
            return Err(Error::NotASublattice("must contain bottom and top".into()));
        }
        if !self.is_sublattice(a) {
            return Err(Error::NotASublattice(format!(
                "{a:?} is not closed under meet and join"
            )));
        }
        Ok(())
    }

    /// Renames elements: old `a` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let lattice = self.lattice.relabel(perm)?;
        let mut p = vec![0; self.len()];
        for a in 0..self.len() {
            p[perm[a]] = perm[self.perp[a]];
        }
        Self::new(lattice, p)
    }

    pub fn product(&self, other: &OrthoLattice) -> Result<Self> {
        let lattice = self.lattice.product(&other.lattice)?;
        let m = other.len();
        let perp = (0..lattice.len())
            .map(|x| self.perp[x / m] * m + other.perp[x % m])
            .collect();
        Self::new(lattice, perp)
    }

    /// Glues ortholattices at their bounds. Each summand must have at least
    /// two elements.
    pub fn horizontal_sum(parts: &[&OrthoLattice]) -> Result<Self> {
        // new index: 0 = bottom, then the inner elements of each part, then top.
        let mut index = Vec::new();
        let mut next = 1;
        for p in parts {
            let mut map = vec![usize::MAX; p.len()];
            for (x, slot) in map.iter_mut().enumerate() {
                if x != p.bottom() && x != p.top() {
                    *slot = next;
                    next += 1;
                }
            }
            index.push(map);
        }
        let n = next + 1;
        let top = n - 1;
        crate::lattice::check_size(n, crate::bitset::MAX_ELEMENTS)?;
        let mut leq = vec![vec![false; n]; n];
        let mut names = vec![String::new(); n];
        let mut perp = vec![0; n];
        for row in leq.iter_mut() {
            row[top] = true;
        }
        leq[0] = vec![true; n];
        names[0] = "0".into();
        names[top] = "1".into();
        perp[0] = top;
        perp[top] = 0;
        for (pi, p) in parts.iter().enumerate() {
            let map = &index[pi];
            for x in 0..p.len() {
                if map[x] == usize::MAX {
                    continue;
                }
                names[map[x]] = format!("{}.{}", pi, p.name(x));
                perp[map[x]] = map[p.perp(x)];
                for y in 0..p.len() {
                    if map[y] != usize::MAX && p.leq(x, y) {
                        leq[map[x]][map[y]] = true;
                    }
                }
            }
        }
        Self::new(
            Lattice::from_leq_bounded(&leq, Some(names), crate::bitset::MAX_ELEMENTS)?,
            perp,
        )
    }
}

/// Bron–Kerbosch with pivoting over adjacency rows that include the diagonal.
/// Reports every maximal `r ∪ K` where `K` is a clique drawn from `p`.
pub(crate) fn maximal_cliques(
    rows: &[ElementSet],
    r: ElementSet,
    p: ElementSet,
    x: ElementSet,
    emit: &mut impl FnMut(ElementSet),
) {
    if p.is_empty() {
        if x.is_empty() {
            emit(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| p.intersection(&rows[u]).len())
        .unwrap();
    let mut p = p;
    let mut x = x;
    let skip = rows[pivot].difference(&ElementSet::singleton(pivot));
    for v in p.difference(&skip).iter() {
        let nv = rows[v].difference(&ElementSet::singleton(v));
        let mut r2 = r;
        r2.insert(v);
        maximal_cliques(rows, r2, p.intersection(&nv), x.intersection(&nv), emit);
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::subsets;
    use crate::corpus::corpus;

    fn ol(name: &str) -> OrthoLattice {
        corpus(name).unwrap().into_ortho().unwrap()
    }

    /// All maximal pairwise-commuting subsets by subset enumeration.
    fn sectors_brute(o: &OrthoLattice) -> Vec<ElementSet> {
        let commuting: Vec<ElementSet> = subsets(o.all())
            .filter(|s| s.iter().all(|a| s.iter().all(|b| o.commutes(a, b))))
            .collect();
        let mut out: Vec<ElementSet> = commuting
            .iter()
            .copied()
            .filter(|s| !commuting.iter().any(|t| t != s && s.is_subset(t)))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn boolean_complement_is_valid() {
        let b3 = ol("B3");
        assert_eq!(b3.perp(0b001), 0b110);
    }

    #[test]
    fn m3_has_no_orthocomplement() {
        let m3 = corpus("M3").unwrap().into_lattice();
        // every involution of the atoms, with 0 ↔ 1
        let atom_perms = [[1, 2, 3], [2, 1, 3], [3, 2, 1], [1, 3, 2]];
        for p in atom_perms {
            let perp = vec![4, p[0], p[1], p[2], 0];
            assert!(matches!(
                OrthoLattice::new(m3.clone(), perp),
                Err(Error::NotAnOrthocomplement { .. })
            ));
        }
        let err = OrthoLattice::new(m3, vec![4, 2, 1, 3, 0]).unwrap_err();
        assert_eq!(
            err,
            Error::NotAnOrthocomplement {
                axiom: "a ∧ a⊥ = 0",
                witness: vec![3]
            }
        );
    }

    #[test]
    fn commutes_examples() {
        let mo2 = ol("MO2");
        assert!(!mo2.commutes(1, 3));
        for a in 0..mo2.len() {
            assert!(mo2.commutes(a, mo2.perp(a)));
        }
        let b3 = ol("B3");
        for a in 0..8 {
            for b in 0..8 {
                assert!(b3.commutes(a, b));
            }
        }
    }

    #[test]
    fn orthomodularity_examples() {
        assert!(ol("MO3").is_orthomodular());
        assert!(ol("B4").is_orthomodular());
        let o6 = ol("O6");
        assert_eq!(o6.orthomodular_witness(), Some((2, 1)));
    }

    #[test]
    fn nakamura_examples() {
        let r = ol("MO2").nakamura_report().unwrap();
        assert!(r.symmetric && r.orthomodular);
        let r = ol("O6").nakamura_report().unwrap();
        assert!(!r.symmetric && !r.orthomodular);
        let (a, b) = r.asymmetric_pair.unwrap();
        let o6 = ol("O6");
        assert!(o6.commutes(a, b) && !o6.commutes(b, a));
        assert!(ol("B3").nakamura_report().unwrap().symmetric);
    }

    #[test]
    fn commutant_examples() {
        let mo2 = ol("MO2");
        let c = mo2.commutant(&ElementSet::singleton(1)).unwrap();
        assert_eq!(c.to_vec(), vec![0, 1, 2, 5]);
        let c = mo2.commutant(&[1, 3].into_iter().collect()).unwrap();
        assert_eq!(c.to_vec(), vec![0, 5]);
        let b3 = ol("B3");
        assert_eq!(b3.commutant(&ElementSet::singleton(3)).unwrap(), b3.all());
        assert_eq!(mo2.commutant(&ElementSet::new()), Err(Error::EmptySubset));
        assert!(mo2
            .commutant_report(&ElementSet::singleton(1))
            .unwrap()
            .holds());
        assert_eq!(mo2.center().to_vec(), vec![0, 5]);
    }

    #[test]
    fn sectors_match_brute_force() {
        for name in ["MO2", "MO3", "MO4", "B3", "C2", "B4"] {
            let o = ol(name);
            let fast: Vec<ElementSet> = o
                .boolean_sectors()
                .unwrap()
                .into_iter()
                .map(|s| s.elements)
                .collect();
            assert_eq!(fast, sectors_brute(&o), "{name}");
        }
        for k in 2..=4 {
            let s = ol(&format!("MO{k}")).boolean_sectors().unwrap();
            assert_eq!(s.len(), k);
            assert!(s.iter().all(|x| x.elements.len() == 4));
        }
        assert_eq!(ol("B3").boolean_sectors().unwrap().len(), 1);
        assert!(matches!(
            ol("O6").boolean_sectors(),
            Err(Error::NotOrthomodular(_))
        ));
    }

    #[test]
    fn boolean_quasipoint_examples() {
        let r = ol("MO2").boolean_quasipoints().unwrap();
        assert!(r.holds());
        assert_eq!(r.quasipoints.len(), 4);
        for s in 0..2 {
            assert_eq!(r.quasipoints.iter().filter(|q| q.sector == s).count(), 2);
        }
        let r = ol("B3").boolean_quasipoints().unwrap();
        assert!(r.holds());
        let spectrum = StoneSpectrum::new(ol("B3").lattice());
        let got: Vec<ElementSet> = r.quasipoints.iter().map(|q| q.members).collect();
        assert_eq!(got, spectrum.quasipoints);
        assert_eq!(ol("C2").boolean_quasipoints().unwrap().quasipoints.len(), 1);
    }

    #[test]
    fn support_and_center() {
        let b3 = ol("B3");
        let a: ElementSet = [0, 0b001, 0b110, 0b111].into_iter().collect();
        assert_eq!(b3.support(&a, 0b010).unwrap(), 0b110);
        for p in 0..8 {
            assert_eq!(b3.support(&b3.all(), p).unwrap(), p);
        }
        let s = StoneSpectrum::new(b3.lattice());
        for q in &s.quasipoints {
            assert!(b3.zeta(&a, q).unwrap().agree);
        }
        let mo2 = ol("MO2");
        let not_central: ElementSet = [0, 1, 2, 5].into_iter().collect();
        assert_eq!(
            mo2.zeta(&not_central, &mo2.up_set(1)),
            Err(Error::NotCentral(1))
        );
        let not_sub: ElementSet = [0, 0b001, 0b010, 0b111].into_iter().collect();
        assert!(matches!(
            b3.support(&not_sub, 1),
            Err(Error::NotASublattice(_))
        ));
    }

    #[test]
    fn constructions_preserve_axioms() {
        let hs = OrthoLattice::horizontal_sum(&[&ol("B2"), &ol("B2"), &ol("B2")]).unwrap();
        assert_eq!(hs.len(), 8);
        assert!(hs.is_orthomodular());
        assert_eq!(hs.boolean_sectors().unwrap().len(), 3);
        let p = ol("O6").product(&ol("C2")).unwrap();
        assert_eq!(p.len(), 12);
        assert!(!p.is_orthomodular());
        let perm: Vec<usize> = (0..6).rev().collect();
        let r = ol("MO2").relabel(&perm).unwrap();
        assert!(r.is_orthomodular());
        assert_eq!(r.bottom(), 5);
    }
}
