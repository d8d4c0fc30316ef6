//! Ideals and quotients of finite Boolean algebras, and the correspondence
//! between quasipoints of `B/I` and quasipoints of `B` avoiding `I`.

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ortho::OrthoLattice;
use crate::spectrum::StoneSpectrum;

/// A proper ideal: contains bottom, downward closed, join closed, misses top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSpec {
    pub members: ElementSet,
    /// The generators the ideal was closed from, if it was built that way.
    pub generators: Option<ElementSet>,
}

impl IdealSpec {
    /// Closes a generator set under downward closure and binary joins.
    pub fn from_generators(l: &Lattice, generators: &ElementSet) -> Result<Self> {
        for g in generators.iter() {
            if g >= l.len() {
                return Err(Error::OutOfRange {
                    index: g,
                    n: l.len(),
                });
            }
        }
        let mut members = ElementSet::singleton(l.bottom());
        members = members.union(generators);
        loop {
            let mut grown = members
                .iter()
                .fold(members, |acc, a| acc.union(&l.down_set(a)));
            for a in members.iter() {
                for b in members.iter() {
                    grown.insert(l.join(a, b));
                }
            }
            if grown == members {
                break;
            }
            members = grown;
        }
        if members.contains(l.top()) {
            return Err(Error::ImproperIdeal);
        }
        Ok(IdealSpec {
            members,
            generators: Some(*generators),
        })
    }

    /// Validates an explicit member set.
    pub fn from_members(l: &Lattice, members: &ElementSet) -> Result<Self> {
        if !members.contains(l.bottom()) {
            return Err(Error::NotAnIdeal("bottom is missing".into()));
        }
        for a in members.iter() {
            if a >= l.len() {
                return Err(Error::OutOfRange {
                    index: a,
                    n: l.len(),
                });
            }
            if let Some(b) = l.down_set(a).difference(members).first() {
                return Err(Error::NotAnIdeal(format!("{b} <= {a} but {b} is missing")));
            }
            for b in members.iter() {
                if !members.contains(l.join(a, b)) {
                    return Err(Error::NotAnIdeal(format!("join of {a} and {b} is missing")));
                }
            }
        }
        if members.contains(l.top()) {
            return Err(Error::ImproperIdeal);
        }
        Ok(IdealSpec {
            members: *members,
            generators: None,
        })
    }
}

/// `B/I` with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientAlgebra {
    pub ideal: IdealSpec,
    /// Equivalence classes ordered by smallest member.
    pub classes: Vec<ElementSet>,
    /// `projection[a]` is the class index of `a`.
    pub projection: Vec<usize>,
    pub quotient: OrthoLattice,
}

impl QuotientAlgebra {
    /// Builds `B/I` by the symmetric-difference criterion and checks that the
    /// result is Boolean and the projection is a surjective homomorphism
    /// preserving complements.
    pub fn new(b: &OrthoLattice, ideal: IdealSpec) -> Result<Self> {
        if !b.is_boolean() {
            return Err(Error::NotBoolean("base lattice is not distributive".into()));
        }
        let n = b.len();
        let i = ideal.members;
        let equivalent =
            |x: usize, y: usize| i.contains(b.join(b.meet(x, b.perp(y)), b.meet(y, b.perp(x))));

        let mut projection = vec![usize::MAX; n];
        let mut classes: Vec<ElementSet> = Vec::new();
        for a in 0..n {
            if projection[a] != usize::MAX {
                continue;
            }
            let class: ElementSet = (a..n).filter(|&x| equivalent(a, x)).collect();
            for x in class.iter() {
                projection[x] = classes.len();
            }
            classes.push(class);
        }
        let k = classes.len();
        let rep: Vec<usize> = classes.iter().map(|c| c.first().unwrap()).collect();
        // [x] ≤ [y] iff x ∧ y⊥ ∈ I
        let leq: Vec<Vec<bool>> = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| i.contains(b.meet(rep[p], b.perp(rep[q]))))
                    .collect()
            })
            .collect();
        let names = classes
            .iter()
            .map(|c| format!("[{}]", b.name(c.first().unwrap())))
            .collect();
        let lattice = Lattice::from_leq_bounded(&leq, Some(names), crate::bitset::MAX_ELEMENTS)?;
        let perp = rep.iter().map(|&r| projection[b.perp(r)]).collect();
        let quotient = OrthoLattice::new(lattice, perp)?;
        if !quotient.is_boolean() {
            return Err(Error::InternalContradiction(
                "quotient of a Boolean algebra is not Boolean".into(),
            ));
        }
        let q = QuotientAlgebra {
            ideal,
            classes,
            projection,
            quotient,
        };
        q.check_projection(b)?;
        Ok(q)
    }

    fn check_projection(&self, b: &OrthoLattice) -> Result<()> {
        let p = &self.projection;
        let q = &self.quotient;
        for x in 0..b.len() {
            if p[b.perp(x)] != q.perp(p[x]) {
                return Err(Error::InternalContradiction(format!(
                    "projection does not preserve ⊥ at {x}"
                )));
            }
            for y in 0..b.len() {
                if p[b.join(x, y)] != q.join(p[x], p[y]) || p[b.meet(x, y)] != q.meet(p[x], p[y]) {
                    return Err(Error::InternalContradiction(format!(
                        "projection is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.projection[a]
    }

    /// Meet of a family of classes, defined as `(⋁ [a_k]⊥)⊥`.
    pub fn family_meet(&self, classes: &ElementSet) -> usize {
        let q = &self.quotient;
        let perps: ElementSet = classes.iter().map(|c| q.perp(c)).collect();
        q.perp(q.family_join(&perps))
    }

    /// `π⁻¹` of a set of classes.
    pub fn preimage(&self, classes: &ElementSet) -> ElementSet {
        classes
            .iter()
            .fold(ElementSet::new(), |acc, c| acc.union(&self.classes[c]))
    }

    /// `π` of a set of elements.
    pub fn image(&self, elements: &ElementSet) -> ElementSet {
        elements.iter().map(|a| self.projection[a]).collect()
    }
}

pub fn quotient_boolean(b: &OrthoLattice, ideal: &ElementSet) -> Result<QuotientAlgebra> {
    if !b.is_boolean() {
        return Err(Error::NotBoolean("base lattice is not distributive".into()));
    }
    QuotientAlgebra::new(b, IdealSpec::from_generators(b, ideal)?)
}

/// Both directions of `Q²(B) ↔ Q(B/I)` and the checks tying them together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    /// Indices into `Q(B)` of the quasipoints avoiding the ideal.
    pub second_category: Vec<usize>,
    /// `forward[i]`: index in `Q(B/I)` of `π(𝔅)` for `second_category[i]`.
    pub forward: Vec<usize>,
    /// `backward[j]`: index in `Q(B)` of `π⁻¹(𝔠_j)`.
    pub backward: Vec<usize>,
    pub images_are_quasipoints: bool,
    pub preimages_are_quasipoints: bool,
    pub mutually_inverse: bool,
    /// `π⁻¹(Q_{[A]}) ∩ Q² = Q_A ∩ Q²` for every `A`.
    pub basis_compatible: bool,
    /// `𝔅 ∩ I = ∅ ⟺ I⊥ ⊆ 𝔅` for every quasipoint of `B`.
    pub perp_criterion: bool,
    /// Every quasipoint outside `Q²` has a basis neighbourhood missing `Q²`.
    pub second_category_closed: bool,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.images_are_quasipoints
            && self.preimages_are_quasipoints
            && self.mutually_inverse
            && self.basis_compatible
            && self.perp_criterion
            && self.second_category_closed
    }
}

pub fn spectrum_correspondence(
    b: &OrthoLattice,
    ideal: &ElementSet,
) -> Result<(QuotientAlgebra, CorrespondenceReport)> {
    let quotient = quotient_boolean(b, ideal)?;
    let report = correspondence(b, &quotient);
    Ok((quotient, report))
}

pub fn correspondence(b: &OrthoLattice, quotient: &QuotientAlgebra) -> CorrespondenceReport {
    let i = quotient.ideal.members;
    let qb = StoneSpectrum::new(b);
    let qq = StoneSpectrum::new(&quotient.quotient);
    let second_category: Vec<usize> = (0..qb.len())
        .filter(|&k| qb.quasipoints[k].is_disjoint(&i))
        .collect();
    let q2: ElementSet = second_category.iter().copied().collect();

    let mut images_are_quasipoints = true;
    let forward: Vec<usize> = second_category
        .iter()
        .map(|&k| {
            let img = quotient.image(&qb.quasipoints[k]);
            qq.index_of(&img).unwrap_or_else(|| {
                images_are_quasipoints = false;
                usize::MAX
            })
        })
        .collect();
    let mut preimages_are_quasipoints = true;
    let backward: Vec<usize> = qq
        .quasipoints
        .iter()
        .map(|c| {
            let pre = quotient.preimage(c);
            match qb.index_of(&pre) {
                Some(k) if q2.contains(k) => k,
                _ => {
                    preimages_are_quasipoints = false;
                    usize::MAX
                }
            }
        })
        .collect();

    let mutually_inverse = forward.len() == backward.len()
        && second_category
            .iter()
            .zip(&forward)
            .all(|(&k, &j)| backward.get(j) == Some(&k))
        && backward.iter().enumerate().all(|(j, &k)| {
            second_category
                .iter()
                .position(|&x| x == k)
                .map(|pos| forward[pos])
                == Some(j)
        });

    let basis_compatible = (0..b.len()).all(|a| {
        let cls = quotient.class_of(a);
        let pulled: ElementSet = second_category
            .iter()
            .zip(&forward)
            .filter(|(_, &j)| j != usize::MAX && qq.basis_set(cls).contains(j))
            .map(|(&k, _)| k)
            .collect();
        pulled == qb.basis_set(a).intersection(&q2)
    });

    let i_perp: ElementSet = i.iter().map(|x| b.perp(x)).collect();
    let perp_criterion = qb
        .quasipoints
        .iter()
        .all(|q| q.is_disjoint(&i) == i_perp.is_subset(q));

    let second_category_closed = (0..qb.len()).filter(|k| !q2.contains(*k)).all(|k| {
        (0..b.len()).any(|a| qb.basis_set(a).contains(k) && qb.basis_set(a).is_disjoint(&q2))
    });

    CorrespondenceReport {
        second_category,
        forward,
        backward,
        images_are_quasipoints,
        preimages_are_quasipoints,
        mutually_inverse,
        basis_compatible,
        perp_criterion,
        second_category_closed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus;

    fn b(k: usize) -> OrthoLattice {
        corpus(&format!("B{k}")).unwrap().into_ortho().unwrap()
    }

    #[test]
    fn b3_mod_singleton() {
        let b3 = b(3);
        let q = quotient_boolean(&b3, &ElementSet::singleton(0b010)).unwrap();
        assert_eq!(q.ideal.members.to_vec(), vec![0, 0b010]);
        assert_eq!(q.quotient.len(), 4);
        assert!(q.quotient.is_boolean());
        assert_eq!(q.classes[q.class_of(0b001)].to_vec(), vec![0b001, 0b011]);
    }

    #[test]
    fn trivial_and_improper_ideals() {
        let b2 = b(2);
        let q = quotient_boolean(&b2, &ElementSet::new()).unwrap();
        assert_eq!(q.quotient.len(), 4);
        assert_eq!(q.projection, vec![0, 1, 2, 3]);
        assert_eq!(
            quotient_boolean(&b2, &b2.all()).unwrap_err(),
            Error::ImproperIdeal
        );
        let mo2 = corpus("MO2").unwrap().into_ortho().unwrap();
        assert!(matches!(
            quotient_boolean(&mo2, &ElementSet::new()),
            Err(Error::NotBoolean(_))
        ));
        let not_closed: ElementSet = [0, 0b001, 0b010].into_iter().collect();
        assert!(matches!(
            IdealSpec::from_members(&b(3), &not_closed),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn correspondence_examples() {
        let b3 = b(3);
        let (q, r) = spectrum_correspondence(&b3, &ElementSet::singleton(0b010)).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.second_category, vec![0, 2]);
        assert_eq!(StoneSpectrum::new(&q.quotient).len(), 2);

        let (_, r) = spectrum_correspondence(&b3, &ElementSet::new()).unwrap();
        assert!(r.holds());
        assert_eq!(r.second_category, vec![0, 1, 2]);
        assert_eq!(r.forward, vec![0, 1, 2]);

        let (q, r) = spectrum_correspondence(&b3, &ElementSet::singleton(0b011)).unwrap();
        assert!(r.holds());
        assert_eq!(r.second_category, vec![2]);
        assert_eq!(q.quotient.len(), 2);
    }

    #[test]
    fn quotient_operations_are_well_defined() {
        let b4 = b(4);
        let q = quotient_boolean(&b4, &[0b0011].into_iter().collect()).unwrap();
        let n = b4.len();
        for x in 0..n {
            for x2 in q.classes[q.class_of(x)].iter() {
                assert_eq!(q.class_of(b4.perp(x)), q.class_of(b4.perp(x2)));
                for y in 0..n {
                    for y2 in q.classes[q.class_of(y)].iter() {
                        assert_eq!(q.class_of(b4.join(x, y)), q.class_of(b4.join(x2, y2)));
                        assert_eq!(q.class_of(b4.meet(x, y)), q.class_of(b4.meet(x2, y2)));
                    }
                }
            }
        }
        let all: ElementSet = (0..q.quotient.len()).collect();
        assert_eq!(q.family_meet(&all), q.quotient.family_meet(&all));
    }
}
