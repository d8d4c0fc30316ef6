//! Presheaves of finite sets on finite lattices: completeness, stalks at
//! quasipoints, the etale space over the Stone spectrum and sheafification.
//!
//! Completeness follows the gluing condition literally, including the guard
//! that only members with nonzero meet need to agree. Two reductions keep the
//! search finite and small:
//!
//! * The empty family joins to `0`, and has exactly one (empty) compatible
//!   tuple, so `S(0)` must be a singleton. Once it is, any member equal to `0`
//!   is irrelevant: it is compatible with everything and every gluing
//!   restricts to the single element of `S(0)`.
//! * If `a_i ≤ a_j` with `a_i ≠ 0` then `a_i ∧ a_j = a_i`, so compatibility
//!   forces `f_i = ρ(f_j)` and every gluing of the rest restricts correctly
//!   to `a_i`. Dropping the smaller member changes neither the join nor the
//!   set of compatible tuples and gluings.
//!
//! Hence it suffices to check antichains of nonzero elements. Redundant
//! members of an antichain cannot be dropped (a gluing of the others need
//! not restrict to the given section on the redundant one), so every
//! antichain is checked, not only join-irredundant ones.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::corpus::{chain, mo};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::spectrum::{min_element, StoneSpectrum};

/// Largest lattice accepted by the completeness check.
pub const MAX_COMPLETENESS_ELEMENTS: usize = 32;
/// Largest number of antichains scanned by the completeness check.
pub const MAX_ANTICHAINS: usize = 1 << 20;
/// Largest number of candidate tuples or sections enumerated at once.
pub const MAX_TUPLES: usize = 1 << 20;
/// Default number of candidate presheaves for the horizontal-sum search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;

/// Corpus presheaf names.
pub const PRESHEAF_NAMES: &[&str] = &[
    "C3-collapse",
    "B2-functions",
    "B3-functions",
    "B2-small-top",
    "B2-trivial",
    "MO2-trivial",
];

/// A presheaf of finite labelled sets. `S(a)` is a list of labels; sections
/// are addressed by their position in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    lattice: Lattice,
    sets: Vec<Vec<String>>,
    // maps[b * n + a] is ρ^b_a for a ≤ b, empty otherwise
    maps: Vec<Vec<usize>>,
}

/// Restriction maps keyed by `(b, a)`, meaning `ρ^b_a : S(b) → S(a)`.
pub type MapTable = BTreeMap<(usize, usize), Vec<usize>>;

impl Presheaf {
    /// Builds a presheaf from the given maps. Identities are added, missing
    /// composites are derived along chains, and functoriality is checked on
    /// every triple `a ≤ b ≤ c`.
    pub fn new(lattice: Lattice, sets: Vec<Vec<String>>, given: &MapTable) -> Result<Self> {
        let n = lattice.len();
        if sets.len() != n {
            return Err(Error::InvalidPresheaf(format!(
                "{} sets for {n} elements",
                sets.len()
            )));
        }
        for (a, s) in sets.iter().enumerate() {
            let mut sorted: Vec<&String> = s.iter().collect();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPresheaf(format!(
                    "duplicate label in S({})",
                    lattice.name(a)
                )));
            }
        }
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; n * n];
        for (&(b, a), map) in given {
            if a >= n || b >= n {
                return Err(Error::OutOfRange { index: a.max(b), n });
            }
            if !lattice.leq(a, b) {
                return Err(Error::InvalidPresheaf(format!(
                    "map {} -> {} between incomparable elements",
                    lattice.name(b),
                    lattice.name(a)
                )));
            }
            if map.len() != sets[b].len() || map.iter().any(|&x| x >= sets[a].len()) {
                return Err(Error::InvalidPresheaf(format!(
                    "map {} -> {} is not a function S({}) -> S({})",
                    lattice.name(b),
                    lattice.name(a),
                    lattice.name(b),
                    lattice.name(a)
                )));
            }
            if a == b && map.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(Error::FunctorialityViolation { a, b: a, c: a });
            }
            maps[b * n + a] = Some(map.clone());
        }
        for a in 0..n {
            maps[a * n + a].get_or_insert_with(|| (0..sets[a].len()).collect());
        }
        loop {
            let mut changed = false;
            for b in 0..n {
                for a in lattice.down_set(b).iter() {
                    if maps[b * n + a].is_some() {
                        continue;
                    }
                    let between = lattice.up_set(a).intersection(&lattice.down_set(b));
                    let via = between.iter().find(|&c| {
                        c != a && c != b && maps[b * n + c].is_some() && maps[c * n + a].is_some()
                    });
                    if let Some(c) = via {
                        let upper = maps[b * n + c].as_ref().unwrap();
                        let lower = maps[c * n + a].as_ref().unwrap();
                        maps[b * n + a] = Some(upper.iter().map(|&x| lower[x]).collect());
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for b in 0..n {
            for a in lattice.down_set(b).iter() {
                if maps[b * n + a].is_none() {
                    return Err(Error::MissingMap { from: b, to: a });
                }
            }
        }
        let maps: Vec<Vec<usize>> = maps.into_iter().map(Option::unwrap_or_default).collect();
        for c in 0..n {
            for b in lattice.down_set(c).iter() {
                for a in lattice.down_set(b).iter() {
                    let direct = &maps[c * n + a];
                    let (cb, ba) = (&maps[c * n + b], &maps[b * n + a]);
                    if (0..sets[c].len()).any(|f| ba[cb[f]] != direct[f]) {
                        return Err(Error::FunctorialityViolation { a, b, c });
                    }
                }
            }
        }
        Ok(Presheaf {
            lattice,
            sets,
            maps,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Labels of `S(a)`.
    pub fn set(&self, a: usize) -> &[String] {
        &self.sets[a]
    }

    pub fn size(&self, a: usize) -> usize {
        self.sets[a].len()
    }

    /// `ρ^b_a` as an index table. Empty unless `a ≤ b`.
    pub fn map(&self, b: usize, a: usize) -> &[usize] {
        &self.maps[b * self.lattice.len() + a]
    }

    pub fn restrict(&self, b: usize, a: usize, f: usize) -> usize {
        self.map(b, a)[f]
    }

    /// Every set is a singleton.
    pub fn is_trivial(&self) -> bool {
        self.sets.iter().all(|s| s.len() == 1)
    }

    /// Maps along covering pairs, which determine all others.
    pub fn cover_maps(&self) -> MapTable {
        self.lattice
            .covers()
            .into_iter()
            .map(|(a, b)| ((b, a), self.map(b, a).to_vec()))
            .collect()
    }

    pub fn to_doc(&self) -> PresheafDoc {
        let l = &self.lattice;
        let sets = (0..l.len())
            .map(|a| (l.name(a).to_string(), self.sets[a].clone()))
            .collect();
        let maps = self
            .cover_maps()
            .into_iter()
            .map(|((b, a), m)| {
                let table = m
                    .iter()
                    .enumerate()
                    .map(|(f, &g)| (self.sets[b][f].clone(), self.sets[a][g].clone()));
                (format!("{}->{}", l.name(b), l.name(a)), table.collect())
            })
            .collect();
        PresheafDoc { sets, maps }
    }

    /// Reads a presheaf document against a lattice. Elements are referred
    /// to by name, or by index when no name matches.
    pub fn from_doc(lattice: Lattice, doc: &PresheafDoc) -> Result<Self> {
        let n = lattice.len();
        let element = |key: &str, path: &str| -> Result<usize> {
            let key = key.trim();
            lattice
                .index_of(key)
                .or_else(|| key.parse().ok().filter(|&i| i < n))
                .ok_or_else(|| Error::Parse {
                    path: path.to_string(),
                    message: format!("unknown element {key:?}"),
                })
        };
        let mut sets = vec![None; n];
        for (key, labels) in &doc.sets {
            let a = element(key, &format!("sets.{key}"))?;
            sets[a] = Some(labels.clone());
        }
        let sets: Vec<Vec<String>> = sets
            .into_iter()
            .enumerate()
            .map(|(a, s)| {
                s.ok_or_else(|| Error::Parse {
                    path: "sets".into(),
                    message: format!("no set for element {}", lattice.name(a)),
                })
            })
            .collect::<Result<_>>()?;
        let mut given = MapTable::new();
        for (key, table) in &doc.maps {
            let path = format!("maps.{key}");
            let (b, a) = key.split_once("->").ok_or_else(|| Error::Parse {
                path: path.clone(),
                message: "expected \"b->a\"".into(),
            })?;
            let (b, a) = (element(b, &path)?, element(a, &path)?);
            let position = |x: usize, label: &str| {
                sets[x]
                    .iter()
                    .position(|s| s == label)
                    .ok_or_else(|| Error::Parse {
                        path: path.clone(),
                        message: format!("{label:?} is not in S({})", lattice.name(x)),
                    })
            };
            let mut map = vec![usize::MAX; sets[b].len()];
            for (from, to) in table {
                map[position(b, from)?] = position(a, to)?;
            }
            if let Some(f) = map.iter().position(|&x| x == usize::MAX) {
                return Err(Error::Parse {
                    path,
                    message: format!("no image for {:?}", sets[b][f]),
                });
            }
            given.insert((b, a), map);
        }
        Presheaf::new(lattice, sets, &given)
    }

    /// Checks the gluing condition on every family.
    pub fn is_complete(&self) -> Result<CompletenessReport> {
        let l = &self.lattice;
        let n = l.len();
        if n > MAX_COMPLETENESS_ELEMENTS {
            return Err(Error::SizeBound {
                what: "presheaf lattice",
                size: n,
                bound: MAX_COMPLETENESS_ELEMENTS,
            });
        }
        let bottom_singleton = self.size(l.bottom()) == 1;
        let mut report = CompletenessReport {
            complete: true,
            bottom_singleton,
            families_checked: 1,
            witness: None,
        };
        if !bottom_singleton {
            report.complete = false;
            report.witness = Some(GluingWitness {
                element: l.bottom(),
                family: Vec::new(),
                tuple: Vec::new(),
                gluings: self.size(l.bottom()),
            });
            return Ok(report);
        }
        let nonzero: Vec<usize> = (0..n).filter(|&a| a != l.bottom()).collect();
        let mut family = Vec::new();
        let mut scanned = 0usize;
        self.scan_antichains(&nonzero, 0, &mut family, &mut scanned, &mut report)?;
        report.families_checked += scanned;
        Ok(report)
    }

    fn scan_antichains(
        &self,
        pool: &[usize],
        from: usize,
        family: &mut Vec<usize>,
        scanned: &mut usize,
        report: &mut CompletenessReport,
    ) -> Result<()> {
        for i in from..pool.len() {
            let x = pool[i];
            if family
                .iter()
                .any(|&y| self.lattice.leq(x, y) || self.lattice.leq(y, x))
            {
                continue;
            }
            family.push(x);
            *scanned += 1;
            if *scanned > MAX_ANTICHAINS {
                return Err(Error::SizeBound {
                    what: "antichains",
                    size: *scanned,
                    bound: MAX_ANTICHAINS,
                });
            }
            if let Some(w) = self.check_family(family)? {
                report.complete = false;
                report.witness = Some(w);
            } else {
                self.scan_antichains(pool, i + 1, family, scanned, report)?;
            }
            family.pop();
            if !report.complete {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Counts gluings of every compatible tuple on `family`; returns the
    /// first tuple with zero or several.
    fn check_family(&self, family: &[usize]) -> Result<Option<GluingWitness>> {
        let l = &self.lattice;
        let a = family.iter().fold(l.bottom(), |acc, &x| l.join(acc, x));
        let mut images: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in 0..self.size(a) {
            let tuple: Vec<usize> = family.iter().map(|&x| self.restrict(a, x, f)).collect();
            *images.entry(tuple).or_default() += 1;
        }
        let mut repeated: Vec<(&Vec<usize>, &usize)> =
            images.iter().filter(|(_, &c)| c > 1).collect();
        repeated.sort();
        if let Some((tuple, &gluings)) = repeated.first() {
            return Ok(Some(GluingWitness {
                element: a,
                family: family.to_vec(),
                tuple: tuple.to_vec(),
                gluings,
            }));
        }
        let mut tuple = Vec::with_capacity(family.len());
        let mut visited = 0usize;
        Ok(self
            .find_unglued(family, &images, &mut tuple, &mut visited)?
            .map(|tuple| GluingWitness {
                element: a,
                family: family.to_vec(),
                tuple,
                gluings: 0,
            }))
    }

    fn find_unglued(
        &self,
        family: &[usize],
        images: &HashMap<Vec<usize>, usize>,
        tuple: &mut Vec<usize>,
        visited: &mut usize,
    ) -> Result<Option<Vec<usize>>> {
        let l = &self.lattice;
        let k = tuple.len();
        if k == family.len() {
            *visited += 1;
            if *visited > MAX_TUPLES {
                return Err(Error::SizeBound {
                    what: "compatible tuples",
                    size: *visited,
                    bound: MAX_TUPLES,
                });
            }
            return Ok((!images.contains_key(tuple)).then(|| tuple.clone()));
        }
        let x = family[k];
        for f in 0..self.size(x) {
            let compatible = family[..k].iter().zip(tuple.iter()).all(|(&y, &g)| {
                let w = l.meet(x, y);
                w == l.bottom() || self.restrict(x, w, f) == self.restrict(y, w, g)
            });
            if compatible {
                tuple.push(f);
                let found = self.find_unglued(family, images, tuple, visited)?;
                tuple.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    /// The stalk at a quasipoint, built as a quotient of the disjoint union
    /// of `S(V)` over `V` in the filter, and checked against `S(min 𝔅)`.
    pub fn stalk(&self, filter: &ElementSet) -> Stalk {
        let l = &self.lattice;
        let members: Vec<usize> = filter.iter().collect();
        let mut offsets = vec![None; l.len()];
        let mut representatives = Vec::new();
        for &v in &members {
            offsets[v] = Some(representatives.len());
            representatives.extend((0..self.size(v)).map(|f| (v, f)));
        }
        let r = representatives.len();
        let related = |&(v, f): &(usize, usize), &(w, g): &(usize, usize)| {
            let vw = l.meet(v, w);
            members
                .iter()
                .any(|&u| l.leq(u, vw) && self.restrict(v, u, f) == self.restrict(w, u, g))
        };
        let mut relation = vec![false; r * r];
        for i in 0..r {
            for j in 0..r {
                relation[i * r + j] = related(&representatives[i], &representatives[j]);
            }
        }
        let reflexive = (0..r).all(|i| relation[i * r + i]);
        let symmetric = (0..r).all(|i| (0..r).all(|j| relation[i * r + j] == relation[j * r + i]));
        let transitive = (0..r).all(|i| {
            (0..r).all(|j| {
                !relation[i * r + j] || (0..r).all(|k| !relation[j * r + k] || relation[i * r + k])
            })
        });

        let mut parent: Vec<usize> = (0..r).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..r {
            for j in i + 1..r {
                if relation[i * r + j] {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut class_of = vec![0; r];
        let mut roots: Vec<usize> = Vec::new();
        for i in 0..r {
            let root = find(&mut parent, i);
            class_of[i] = match roots.iter().position(|&x| x == root) {
                Some(c) => c,
                None => {
                    roots.push(root);
                    roots.len() - 1
                }
            };
        }

        let minimum = min_element(l, filter);
        let mut canonical = vec![None; roots.len()];
        let mut consistent = true;
        for (i, &(v, f)) in representatives.iter().enumerate() {
            let image = self.restrict(v, minimum, f);
            match canonical[class_of[i]] {
                None => canonical[class_of[i]] = Some(image),
                Some(x) if x != image => consistent = false,
                _ => {}
            }
        }
        let canonical: Vec<usize> = canonical
            .into_iter()
            .map(|c| c.unwrap_or(usize::MAX))
            .collect();
        let mut hit: Vec<usize> = canonical.clone();
        hit.sort_unstable();
        hit.dedup();
        let oracle_ok = consistent
            && hit.len() == canonical.len()
            && hit == (0..self.size(minimum)).collect::<Vec<_>>();
        Stalk {
            minimum,
            representatives,
            offsets,
            class_of,
            canonical,
            equivalence_ok: reflexive && symmetric && transitive,
            oracle_ok,
        }
    }

    /// Stalks, germ basis and section enumeration over the Stone spectrum.
    pub fn etale_space(&self) -> Result<EtaleSpace> {
        let l = &self.lattice;
        let spectrum = StoneSpectrum::new(l);
        let opens = spectrum.basis_unions()?;
        let stalks: Vec<Stalk> = spectrum.quasipoints.iter().map(|q| self.stalk(q)).collect();
        let mut offsets = Vec::with_capacity(stalks.len());
        let mut points = Vec::new();
        for (q, s) in stalks.iter().enumerate() {
            offsets.push(points.len());
            points.extend((0..s.len()).map(|c| (q, c)));
        }
        let mut basis = Vec::new();
        for u in 0..l.len() {
            for f in 0..self.size(u) {
                let over: Vec<usize> = spectrum.basis_set(u).iter().collect();
                let pts: Vec<usize> = over
                    .iter()
                    .map(|&q| offsets[q] + stalks[q].germ(u, f).unwrap())
                    .collect();
                let projected: ElementSet = pts.iter().map(|&p| points[p].0).collect();
                let bijective = projected == spectrum.basis_set(u) && projected.len() == pts.len();
                basis.push(BasicOpen {
                    element: u,
                    member: f,
                    points: pts,
                    projection_bijective: bijective,
                });
            }
        }
        Ok(EtaleSpace {
            spectrum,
            opens,
            stalks,
            offsets,
            points,
            basis,
        })
    }

    /// The associated sheaf on the open sets of the spectrum, with the
    /// comparison map `S(U) → Γ(Q_U)` at every element.
    pub fn sheafify(&self) -> Result<Sheafification> {
        let l = &self.lattice;
        let etale = self.etale_space()?;
        let opens = etale.opens.clone();
        let name_of = |v: &ElementSet| {
            let items: Vec<&str> = v.iter().map(|q| l.name(etale.stalks[q].minimum)).collect();
            format!("Q{{{}}}", items.join(","))
        };
        let names: Vec<String> = opens.iter().map(name_of).collect();
        let open_lattice = Lattice::from_set_family(&opens, Some(names))?;
        let sections: Vec<Vec<Vec<usize>>> = opens
            .iter()
            .map(|v| etale.sections(v))
            .collect::<Result<_>>()?;
        let index: Vec<HashMap<&Vec<usize>, usize>> = sections
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let sets: Vec<Vec<String>> = opens
            .iter()
            .zip(&sections)
            .map(|(v, secs)| {
                secs.iter()
                    .map(|s| etale.section_label(self, v, s))
                    .collect()
            })
            .collect();
        let mut given = MapTable::new();
        for (a, b) in open_lattice.covers() {
            let map = sections[b]
                .iter()
                .map(|s| index[a][&etale.restrict_section(&opens[b], s, &opens[a])])
                .collect();
            given.insert((b, a), map);
        }
        let sheaf = Presheaf::new(open_lattice, sets, &given)?;
        let completeness = sheaf.is_complete()?;

        let mut comparisons = Vec::with_capacity(l.len());
        for u in 0..l.len() {
            let qu = etale.spectrum.basis_set(u);
            let open = opens
                .iter()
                .position(|v| *v == qu)
                .expect("basis sets are open");
            let mut images: Vec<usize> = (0..self.size(u))
                .map(|f| {
                    let s: Vec<usize> = qu
                        .iter()
                        .map(|q| etale.offsets[q] + etale.stalks[q].germ(u, f).unwrap())
                        .collect();
                    index[open][&s]
                })
                .collect();
            images.sort_unstable();
            let total = images.len();
            images.dedup();
            comparisons.push(Comparison {
                element: u,
                open,
                injective: images.len() == total,
                surjective: images.len() == sections[open].len(),
            });
        }
        Ok(Sheafification {
            sheaf,
            completeness,
            comparisons,
            atomistic: is_atomistic(l),
        })
    }
}

/// JSON form of a presheaf: labels per element and label tables per map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresheafDoc {
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

/// A compatible tuple on a family, with its number of gluings (`0` or `≥ 2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingWitness {
    pub element: usize,
    pub family: Vec<usize>,
    /// Positions in `S(a_i)` for each family member.
    pub tuple: Vec<usize>,
    pub gluings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    /// Whether `S(0)` is a singleton, as the empty family demands.
    pub bottom_singleton: bool,
    pub families_checked: usize,
    pub witness: Option<GluingWitness>,
}

/// Germs at one quasipoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stalk {
    /// Least element of the quasipoint.
    pub minimum: usize,
    /// `(V, f)` pairs with `V` in the quasipoint.
    pub representatives: Vec<(usize, usize)>,
    #[serde(skip)]
    offsets: Vec<Option<usize>>,
    /// Germ class of each representative.
    pub class_of: Vec<usize>,
    /// Position in `S(min)` of each germ class.
    pub canonical: Vec<usize>,
    /// Reflexivity, symmetry and transitivity of the germ relation.
    pub equivalence_ok: bool,
    /// Germ classes correspond bijectively to `S(min)` under restriction.
    pub oracle_ok: bool,
}

impl Stalk {
    /// Number of germs.
    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Germ class of `f ∈ S(u)`, or `None` when `u` is not in the quasipoint.
    pub fn germ(&self, u: usize, f: usize) -> Option<usize> {
        self.offsets
            .get(u)
            .copied()
            .flatten()
            .map(|o| self.class_of[o + f])
    }
}

/// A basic open set `𝒪_{f,U}` of the etale space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicOpen {
    pub element: usize,
    pub member: usize,
    pub points: Vec<usize>,
    /// The projection maps the set bijectively onto `Q_U`.
    pub projection_bijective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaleSpace {
    #[serde(skip)]
    pub spectrum: StoneSpectrum,
    /// Open subsets of the spectrum.
    pub opens: Vec<ElementSet>,
    pub stalks: Vec<Stalk>,
    /// First point index of each stalk.
    pub offsets: Vec<usize>,
    /// `(quasipoint, germ class)` per point.
    pub points: Vec<(usize, usize)>,
    pub basis: Vec<BasicOpen>,
}

impl EtaleSpace {
    pub fn projection_bijective(&self) -> bool {
        self.basis.iter().all(|b| b.projection_bijective)
    }

    /// Continuous sections over an open set of quasipoints, as point indices
    /// listed in quasipoint order. Continuity is checked against the basis:
    /// the preimage of every basic open set must be open.
    pub fn sections(&self, v: &ElementSet) -> Result<Vec<Vec<usize>>> {
        if !self.opens.contains(v) {
            return Err(Error::InvalidTopology(format!(
                "{v:?} is not open in the spectrum"
            )));
        }
        let qs: Vec<usize> = v.iter().collect();
        let total = qs.iter().try_fold(1usize, |acc, &q| {
            acc.checked_mul(self.stalks[q].len())
                .filter(|&t| t <= MAX_TUPLES)
        });
        if total.is_none() {
            return Err(Error::SearchBudgetExceeded(format!(
                "more than {MAX_TUPLES} choice functions"
            )));
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; qs.len()];
        loop {
            let section: Vec<usize> = qs
                .iter()
                .zip(&choice)
                .map(|(&q, &c)| self.offsets[q] + c)
                .collect();
            if self.is_continuous(&qs, &section) {
                out.push(section);
            }
            let mut i = qs.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < self.stalks[qs[i]].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }

    fn is_continuous(&self, qs: &[usize], section: &[usize]) -> bool {
        self.basis.iter().all(|b| {
            let preimage: ElementSet = qs
                .iter()
                .zip(section)
                .filter(|(_, p)| b.points.contains(p))
                .map(|(&q, _)| q)
                .collect();
            self.opens.contains(&preimage)
        })
    }

    fn restrict_section(
        &self,
        from: &ElementSet,
        section: &[usize],
        to: &ElementSet,
    ) -> Vec<usize> {
        from.iter()
            .zip(section)
            .filter(|(q, _)| to.contains(*q))
            .map(|(_, &p)| p)
            .collect()
    }

    fn section_label(&self, p: &Presheaf, v: &ElementSet, section: &[usize]) -> String {
        let items: Vec<String> = v
            .iter()
            .zip(section)
            .map(|(q, &pt)| {
                let stalk = &self.stalks[q];
                let germ = self.points[pt].1;
                format!(
                    "{}:{}",
                    p.lattice.name(stalk.minimum),
                    p.set(stalk.minimum)[stalk.canonical[germ]]
                )
            })
            .collect();
        format!("[{}]", items.join(","))
    }
}

/// Comparison map `S(U) → Γ(Q_U)` at one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub element: usize,
    /// Index of `Q_U` in the sheaf's lattice.
    pub open: usize,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sheafification {
    #[serde(skip)]
    pub sheaf: Presheaf,
    pub completeness: CompletenessReport,
    pub comparisons: Vec<Comparison>,
    /// Every element is the join of the atoms below it.
    pub atomistic: bool,
}

impl Sheafification {
    pub fn comparison_bijective(&self) -> bool {
        self.comparisons.iter().all(|c| c.injective && c.surjective)
    }
}

/// Every element is the join of the atoms below it.
///
/// On such a lattice a complete presheaf has `S(U) ≅ ∏ S(p)` over the atoms
/// `p ≤ U`, since distinct atoms meet in `0`. That product is exactly the
/// set of sections over `Q_U`, so the comparison maps are bijective.
pub fn is_atomistic(l: &Lattice) -> bool {
    let atoms = l.atoms();
    (0..l.len()).all(|a| l.family_join(&atoms.intersection(&l.down_set(a))) == a)
}

/// Outcome of the exhaustive search over presheaves on `MO_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    pub n: usize,
    pub k: usize,
    /// Whether assignments with `|S(0)| ≠ 1` were skipped as incomplete.
    pub bottom_pruned: bool,
    pub size_assignments: u64,
    pub pruned_size_assignments: u64,
    pub presheaves_checked: u64,
    pub complete: u64,
    /// Complete presheaves with some set of size above one, verbatim.
    pub counterexamples: Vec<PresheafDoc>,
}

impl TrivialityReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty() && self.complete > 0
    }
}

/// Searches all presheaves on `MO_n` with `1 ≤ |S(a)| ≤ k` and checks that
/// the complete ones are trivial. Assignments with `|S(0)| ≠ 1` are skipped,
/// since the empty family already rules them out.
pub fn horizontal_sum_triviality(n: usize, k: usize) -> Result<TrivialityReport> {
    horizontal_sum_search(n, k, DEFAULT_SEARCH_BUDGET, true)
}

/// As [`horizontal_sum_triviality`], with an explicit budget on the number of
/// candidate map tables and optionally enumerating `|S(0)| > 1` as well.
pub fn horizontal_sum_search(
    n: usize,
    k: usize,
    budget: u64,
    prune_bottom: bool,
) -> Result<TrivialityReport> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidPresheaf(format!(
            "horizontal sum search needs n >= 2 and k >= 1, got n={n}, k={k}"
        )));
    }
    let lattice = mo(n)?.lattice().clone();
    let size = lattice.len();
    let (bottom, top) = (lattice.bottom(), lattice.top());
    let atoms: Vec<usize> = lattice.atoms().iter().collect();

    let mut report = TrivialityReport {
        n,
        k,
        bottom_pruned: prune_bottom,
        size_assignments: 0,
        pruned_size_assignments: 0,
        presheaves_checked: 0,
        complete: 0,
        counterexamples: Vec::new(),
    };

    let mut sizes = vec![1usize; size];
    let mut work = Vec::new();
    loop {
        report.size_assignments += 1;
        if prune_bottom && sizes[bottom] != 1 {
            report.pruned_size_assignments += 1;
        } else {
            let mut slots: Vec<(usize, usize)> = atoms.iter().map(|&a| (top, a)).collect();
            if sizes[bottom] > 1 {
                slots.extend(atoms.iter().map(|&a| (a, bottom)));
            }
            let count = slots.iter().try_fold(1u64, |acc, &(b, a)| {
                acc.checked_mul((sizes[a] as u64).checked_pow(sizes[b] as u32)?)
            });
            work.push((sizes.clone(), slots, count.unwrap_or(u64::MAX)));
        }
        let mut i = 0;
        loop {
            if i == size {
                break;
            }
            sizes[i] += 1;
            if sizes[i] <= k {
                break;
            }
            sizes[i] = 1;
            i += 1;
        }
        if i == size {
            break;
        }
    }
    let total = work.iter().fold(0u64, |acc, w| acc.saturating_add(w.2));
    if total > budget {
        return Err(Error::SearchBudgetExceeded(format!(
            "{total} candidate presheaves on MO{n} with k={k}, budget {budget}"
        )));
    }

    for (sizes, slots, _) in work {
        let sets: Vec<Vec<String>> = sizes
            .iter()
            .map(|&s| {
                (0..s)
                    .map(|i| ((b'x' + i as u8) as char).to_string())
                    .collect()
            })
            .collect();
        let mut tables: Vec<Vec<usize>> = slots.iter().map(|&(b, _)| vec![0; sizes[b]]).collect();
        loop {
            let mut given: MapTable = slots.iter().cloned().zip(tables.iter().cloned()).collect();
            if sizes[bottom] == 1 {
                given.extend(atoms.iter().map(|&a| ((a, bottom), vec![0; sizes[a]])));
            }
            match Presheaf::new(lattice.clone(), sets.clone(), &given) {
                Ok(p) => {
                    report.presheaves_checked += 1;
                    if p.is_complete()?.complete {
                        report.complete += 1;
                        if !p.is_trivial() {
                            report.counterexamples.push(p.to_doc());
                        }
                    }
                }
                Err(Error::FunctorialityViolation { .. }) => {}
                Err(e) => return Err(e),
            }
            if !advance(&mut tables, &slots, &sizes) {
                break;
            }
        }
    }
    Ok(report)
}

fn advance(tables: &mut [Vec<usize>], slots: &[(usize, usize)], sizes: &[usize]) -> bool {
    for (t, &(_, a)) in tables.iter_mut().zip(slots) {
        for x in t.iter_mut() {
            *x += 1;
            if *x < sizes[a] {
                return true;
            }
            *x = 0;
        }
    }
    false
}

/// `S(U)` = functions from the atoms below `U` to `{0,1}` on the powerset of
/// `k` points, with restriction of the domain. Element `m` is a bitmask and
/// a function on it is a bitmask inside `m`.
pub fn function_presheaf(k: usize) -> Result<Presheaf> {
    let lattice = Lattice::powerset(k)?;
    let n = lattice.len();
    let functions = |m: usize| -> Vec<usize> { (0..n).filter(|&g| g & !m == 0).collect() };
    let label = |m: usize, g: usize| {
        let items: Vec<String> = (0..k)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| format!("{}:{}", i + 1, g >> i & 1))
            .collect();
        format!("{{{}}}", items.join(","))
    };
    let sets: Vec<Vec<String>> = (0..n)
        .map(|m| functions(m).into_iter().map(|g| label(m, g)).collect())
        .collect();
    let mut given = MapTable::new();
    for (a, b) in lattice.covers() {
        let target = functions(a);
        let map = functions(b)
            .into_iter()
            .map(|g| target.iter().position(|&h| h == g & a).unwrap())
            .collect();
        given.insert((b, a), map);
    }
    Presheaf::new(lattice, sets, &given)
}

/// Presheaf with a singleton at every element.
pub fn trivial_presheaf(lattice: Lattice) -> Result<Presheaf> {
    let sets = vec![vec!["*".to_string()]; lattice.len()];
    let given = lattice
        .covers()
        .into_iter()
        .map(|(a, b)| ((b, a), vec![0]))
        .collect();
    Presheaf::new(lattice, sets, &given)
}

/// Looks up a named corpus presheaf.
pub fn presheaf_corpus(name: &str) -> Result<Presheaf> {
    let labels = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match name {
        "C3-collapse" => {
            let l = chain(3)?;
            let sets = vec![labels(&["*"]), labels(&["z"]), labels(&["x", "y"])];
            let given = MapTable::from([((1, 0), vec![0]), ((2, 1), vec![0, 0])]);
            Presheaf::new(l, sets, &given)
        }
        "B2-functions" => function_presheaf(2),
        "B3-functions" => function_presheaf(3),
        "B2-small-top" => {
            let l = Lattice::powerset(2)?;
            let sets = vec![
                labels(&["*"]),
                labels(&["p0", "p1"]),
                labels(&["q0", "q1"]),
                labels(&["t"]),
            ];
            let given = MapTable::from([
                ((3, 1), vec![0]),
                ((3, 2), vec![0]),
                ((1, 0), vec![0, 0]),
                ((2, 0), vec![0, 0]),
            ]);
            Presheaf::new(l, sets, &given)
        }
        "B2-trivial" => trivial_presheaf(Lattice::powerset(2)?),
        "MO2-trivial" => trivial_presheaf(mo(2)?.lattice().clone()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::subsets;

    fn b2_functions() -> Presheaf {
        function_presheaf(2).unwrap()
    }

    /// Completeness straight from the definition: every family of elements
    /// (as a set, including `0` and comparable members) and every tuple.
    fn complete_oracle(p: &Presheaf) -> bool {
        let l = p.lattice();
        for fam in subsets(l.all()) {
            let family: Vec<usize> = fam.iter().collect();
            let a = l.family_join(&fam);
            let sizes: Vec<usize> = family.iter().map(|&x| p.size(x)).collect();
            let total: usize = sizes.iter().product();
            for code in 0..total {
                let mut rest = code;
                let tuple: Vec<usize> = sizes
                    .iter()
                    .map(|&s| {
                        let f = rest % s;
                        rest /= s;
                        f
                    })
                    .collect();
                let compatible = (0..family.len()).all(|i| {
                    (0..family.len()).all(|j| {
                        let w = l.meet(family[i], family[j]);
                        w == l.bottom()
                            || p.restrict(family[i], w, tuple[i])
                                == p.restrict(family[j], w, tuple[j])
                    })
                });
                if !compatible {
                    continue;
                }
                let gluings = (0..p.size(a))
                    .filter(|&f| {
                        family
                            .iter()
                            .zip(&tuple)
                            .all(|(&x, &g)| p.restrict(a, x, f) == g)
                    })
                    .count();
                if gluings != 1 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn corpus_presheaves_load() {
        for name in PRESHEAF_NAMES {
            presheaf_corpus(name).unwrap();
        }
        assert!(matches!(
            presheaf_corpus("nope"),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn composites_are_derived() {
        let p = b2_functions();
        assert_eq!(p.map(3, 0), &[0, 0, 0, 0]);
        assert_eq!(p.size(3), 4);
        assert_eq!(p.set(3)[2], "{1:0,2:1}");
        assert_eq!(p.map(3, 1), &[0, 1, 0, 1]);
    }

    #[test]
    fn functoriality_violation_is_reported() {
        let l = chain(3).unwrap();
        let sets = vec![
            vec!["*".into(), "o".into()],
            vec!["z".into()],
            vec!["x".into(), "y".into()],
        ];
        let given = MapTable::from([
            ((1, 0), vec![0]),
            ((2, 1), vec![0, 0]),
            ((2, 0), vec![0, 1]),
        ]);
        assert_eq!(
            Presheaf::new(l, sets, &given),
            Err(Error::FunctorialityViolation { a: 0, b: 1, c: 2 })
        );
    }

    #[test]
    fn missing_map_is_reported() {
        let l = chain(3).unwrap();
        let sets = vec![vec!["*".into()], vec!["z".into()], vec!["x".into()]];
        let given = MapTable::from([((1, 0), vec![0])]);
        assert_eq!(
            Presheaf::new(l, sets, &given),
            Err(Error::MissingMap { from: 2, to: 0 })
        );
    }

    #[test]
    fn completeness_examples() {
        let c3 = presheaf_corpus("C3-collapse").unwrap();
        assert!(c3.is_complete().unwrap().complete);
        assert!(b2_functions().is_complete().unwrap().complete);
        let small = presheaf_corpus("B2-small-top")
            .unwrap()
            .is_complete()
            .unwrap();
        assert!(!small.complete);
        let w = small.witness.unwrap();
        assert_eq!((w.element, w.family, w.gluings), (3, vec![1, 2], 0));
    }

    #[test]
    fn completeness_matches_definition() {
        for name in PRESHEAF_NAMES {
            let p = presheaf_corpus(name).unwrap();
            if p.lattice().len() <= 8 {
                assert_eq!(
                    p.is_complete().unwrap().complete,
                    complete_oracle(&p),
                    "{name}"
                );
            }
        }
        // a presheaf on B2 whose top is too big: two gluings
        let l = Lattice::powerset(2).unwrap();
        let sets = vec![
            vec!["*".into()],
            vec!["p".into()],
            vec!["q".into()],
            vec!["s".into(), "t".into()],
        ];
        let p = Presheaf::new(
            l,
            sets,
            &MapTable::from([
                ((3, 1), vec![0, 0]),
                ((3, 2), vec![0, 0]),
                ((1, 0), vec![0]),
                ((2, 0), vec![0]),
            ]),
        )
        .unwrap();
        let r = p.is_complete().unwrap();
        assert!(!r.complete && !complete_oracle(&p));
        assert_eq!(r.witness.unwrap().gluings, 2);
    }

    #[test]
    fn bottom_must_be_singleton() {
        let l = chain(2).unwrap();
        let sets = vec![vec!["u".into(), "v".into()], vec!["x".into()]];
        let p = Presheaf::new(l, sets, &MapTable::from([((1, 0), vec![0])])).unwrap();
        let r = p.is_complete().unwrap();
        assert!(!r.complete && !r.bottom_singleton);
        assert!(!complete_oracle(&p));
    }

    #[test]
    fn stalk_examples() {
        let c3 = presheaf_corpus("C3-collapse").unwrap();
        let q = StoneSpectrum::new(c3.lattice()).quasipoints[0];
        let s = c3.stalk(&q);
        assert_eq!(s.len(), 1);
        assert!(s.equivalence_ok && s.oracle_ok);

        let p = b2_functions();
        for q in StoneSpectrum::new(p.lattice()).quasipoints {
            let s = p.stalk(&q);
            assert_eq!(s.len(), 2);
            assert!(s.equivalence_ok && s.oracle_ok);
        }
    }

    #[test]
    fn stalk_oracle_on_corpus() {
        for name in PRESHEAF_NAMES {
            let p = presheaf_corpus(name).unwrap();
            for q in StoneSpectrum::new(p.lattice()).quasipoints {
                let s = p.stalk(&q);
                assert!(s.equivalence_ok && s.oracle_ok, "{name}");
                assert_eq!(s.len(), p.size(s.minimum));
            }
        }
    }

    #[test]
    fn etale_and_sections() {
        let c3 = presheaf_corpus("C3-collapse")
            .unwrap()
            .etale_space()
            .unwrap();
        assert_eq!(c3.points.len(), 1);
        assert_eq!(c3.sections(&ElementSet::full(1)).unwrap().len(), 1);
        assert_eq!(
            c3.sections(&ElementSet::new()).unwrap(),
            vec![Vec::<usize>::new()]
        );

        let b2 = b2_functions().etale_space().unwrap();
        assert!(b2.projection_bijective());
        assert_eq!(b2.sections(&ElementSet::full(2)).unwrap().len(), 4);
    }

    #[test]
    fn sheafification_examples() {
        let b2 = b2_functions().sheafify().unwrap();
        assert!(b2.completeness.complete && b2.comparison_bijective());

        let c3 = presheaf_corpus("C3-collapse").unwrap().sheafify().unwrap();
        assert!(c3.completeness.complete);
        let top = c3.comparisons.iter().find(|c| c.element == 2).unwrap();
        assert!(!top.injective && top.surjective);
        assert!(!c3.atomistic);

        let t = presheaf_corpus("B2-trivial").unwrap().sheafify().unwrap();
        assert!(t.sheaf.is_trivial() && t.comparison_bijective());
    }

    #[test]
    fn complete_atomistic_presheaves_sheafify_bijectively() {
        for name in PRESHEAF_NAMES {
            let p = presheaf_corpus(name).unwrap();
            let s = p.sheafify().unwrap();
            assert!(s.completeness.complete, "{name}: sheaf incomplete");
            if s.atomistic && p.is_complete().unwrap().complete {
                assert!(s.comparison_bijective(), "{name}");
            }
        }
    }

    #[test]
    fn doc_roundtrip() {
        for name in PRESHEAF_NAMES {
            let p = presheaf_corpus(name).unwrap();
            let doc = p.to_doc();
            let back = Presheaf::from_doc(p.lattice().clone(), &doc).unwrap();
            assert_eq!(back, p, "{name}");
        }
    }

    #[test]
    fn horizontal_sums_have_only_trivial_complete_presheaves() {
        let r = horizontal_sum_triviality(2, 1).unwrap();
        assert_eq!((r.presheaves_checked, r.complete), (1, 1));
        assert!(r.holds());
        for n in [2, 3] {
            let r = horizontal_sum_triviality(n, 2).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.complete, 1);
        }
    }

    #[test]
    fn pruning_bottom_loses_nothing() {
        let full = horizontal_sum_search(2, 2, u64::MAX, false).unwrap();
        let pruned = horizontal_sum_triviality(2, 2).unwrap();
        assert_eq!(full.complete, pruned.complete);
        assert_eq!(full.counterexamples, pruned.counterexamples);
        assert!(full.presheaves_checked > pruned.presheaves_checked);
    }

    #[test]
    fn search_budget() {
        assert!(matches!(
            horizontal_sum_search(3, 3, 1000, true),
            Err(Error::SearchBudgetExceeded(_))
        ));
    }

    #[test]
    fn atomistic_lattices() {
        assert!(is_atomistic(&Lattice::powerset(3).unwrap()));
        assert!(is_atomistic(mo(3).unwrap().lattice()));
        assert!(!is_atomistic(&chain(3).unwrap()));
    }
}
