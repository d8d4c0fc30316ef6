//! Finite bounded lattices with cached meet and join tables.

use serde::Serialize;

use crate::bitset::{ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// Default element bound: one machine word per element subset.
pub const DEFAULT_MAX_ELEMENTS: usize = 64;

/// A finite bounded lattice on the dense index set `0..n`.
///
/// The order is stored as up-sets and down-sets so that bound scans are
/// bitset intersections. Bottom and top are discovered from the order.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    bottom: usize,
    top: usize,
    meet: Vec<u16>,
    join: Vec<u16>,
    names: Vec<String>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("n", &self.n)
            .field("names", &self.names)
            .field("covers", &self.covers())
            .finish()
    }
}

/// Distributivity and modularity of a lattice, with the first violating
/// triple in lexicographic order when a law fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub is_distributive: bool,
    pub is_modular: bool,
    /// `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub distributive_witness: Option<(usize, usize, usize)>,
    /// `a ≤ c` and `a ∨ (b ∧ c) ≠ (a ∨ b) ∧ c`.
    pub modular_witness: Option<(usize, usize, usize)>,
    /// Whether the dual law `a ∨ (b ∧ c) = (a ∨ b) ∧ (a ∨ c)` holds everywhere.
    pub join_distributive: bool,
}

impl Lattice {
    /// Builds a lattice from a Hasse diagram given as `(lower, upper)` pairs.
    pub fn from_covers(
        n: usize,
        covers: &[(usize, usize)],
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::from_covers_bounded(n, covers, names, DEFAULT_MAX_ELEMENTS)
    }

    pub fn from_covers_bounded(
        n: usize,
        covers: &[(usize, usize)],
        names: Option<Vec<String>>,
        bound: usize,
    ) -> Result<Self> {
        check_size(n, bound)?;
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(lo, hi) in covers {
            for i in [lo, hi] {
                if i >= n {
                    return Err(Error::OutOfRange { index: i, n });
                }
            }
            up[lo].insert(hi);
        }
        // Warshall closure on rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(&up[k]);
                }
            }
        }
        Self::from_up_sets(up, names)
    }

    /// Builds a lattice from a full order matrix, `leq[a][b]` meaning `a ≤ b`.
    pub fn from_leq(leq: &[Vec<bool>], names: Option<Vec<String>>) -> Result<Self> {
        Self::from_leq_bounded(leq, names, DEFAULT_MAX_ELEMENTS)
    }

    pub fn from_leq_bounded(
        leq: &[Vec<bool>],
        names: Option<Vec<String>>,
        bound: usize,
    ) -> Result<Self> {
        let n = leq.len();
        check_size(n, bound)?;
        let mut up = Vec::with_capacity(n);
        for (a, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAPoset(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if !row[a] {
                return Err(Error::NotAPoset(format!(
                    "relation is not reflexive at {a}"
                )));
            }
            up.push(
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x)
                    .map(|(b, _)| b)
                    .collect::<ElementSet>(),
            );
        }
        for a in 0..n {
            for b in up[a].iter() {
                if !up[b].is_subset(&up[a]) {
                    let c = up[b].difference(&up[a]).first().unwrap();
                    return Err(Error::NotAPoset(format!(
                        "relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}"
                    )));
                }
            }
        }
        Self::from_up_sets(up, names)
    }

    /// Builds the lattice of a family of sets ordered by inclusion. The family
    /// must have a least and a greatest member and pairwise bounds.
    pub fn from_set_family(sets: &[ElementSet], names: Option<Vec<String>>) -> Result<Self> {
        Self::from_set_family_bounded(sets, names, DEFAULT_MAX_ELEMENTS)
    }

    pub fn from_set_family_bounded(
        sets: &[ElementSet],
        names: Option<Vec<String>>,
        bound: usize,
    ) -> Result<Self> {
        let n = sets.len();
        check_size(n, bound)?;
        let up = (0..n)
            .map(|a| (0..n).filter(|&b| sets[a].is_subset(&sets[b])).collect())
            .collect();
        Self::from_up_sets(up, names)
    }

    /// The powerset of a `k`-element set. Element `i` is the subset with bitmask `i`.
    pub fn powerset(k: usize) -> Result<Self> {
        Self::powerset_bounded(k, DEFAULT_MAX_ELEMENTS)
    }

    pub fn powerset_bounded(k: usize, bound: usize) -> Result<Self> {
        if k >= 16 {
            return Err(Error::SizeBound {
                what: "powerset",
                size: k,
                bound: 15,
            });
        }
        let n = 1usize << k;
        check_size(n, bound)?;
        let sets: Vec<ElementSet> = (0..n as u64).map(ElementSet::from_mask).collect();
        let names = (0..n).map(|m| subset_name(m as u64)).collect();
        Self::from_set_family_bounded(&sets, Some(names), bound)
    }

    fn from_up_sets(up: Vec<ElementSet>, names: Option<Vec<String>>) -> Result<Self> {
        let n = up.len();
        if n == 0 {
            return Err(Error::NoBounds("bottom"));
        }
        let mut down = vec![ElementSet::new(); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        for a in 0..n {
            let both = up[a].intersection(&down[a]);
            if both.len() > 1 {
                let b = both.iter().find(|&b| b != a).unwrap();
                return Err(Error::NotAPoset(format!(
                    "antisymmetry fails: {a} <= {b} <= {a}"
                )));
            }
        }
        let all = ElementSet::full(n);
        let bottom = (0..n)
            .find(|&a| up[a] == all)
            .ok_or(Error::NoBounds("bottom"))?;
        let top = (0..n)
            .find(|&a| down[a] == all)
            .ok_or(Error::NoBounds("top"))?;

        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        for a in 0..n {
            for b in a..n {
                let lower = down[a].intersection(&down[b]);
                let m = lower
                    .iter()
                    .find(|&g| lower.is_subset(&down[g]))
                    .ok_or(Error::NotALattice { a, b, op: "meet" })?;
                let upper = up[a].intersection(&up[b]);
                let j = upper
                    .iter()
                    .find(|&l| upper.is_subset(&up[l]))
                    .ok_or(Error::NotALattice { a, b, op: "join" })?;
                meet[a * n + b] = m as u16;
                meet[b * n + a] = m as u16;
                join[a * n + b] = j as u16;
                join[b * n + a] = j as u16;
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(Error::Parse {
                    path: "names".into(),
                    message: format!("{} names for {n} elements", v.len()),
                })
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(Lattice {
            n,
            up,
            down,
            bottom,
            top,
            meet,
            join,
            names,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    /// `{b : a ≤ b}`.
    #[inline]
    pub fn up_set(&self, a: usize) -> ElementSet {
        self.up[a]
    }

    /// `{b : b ≤ a}`.
    #[inline]
    pub fn down_set(&self, a: usize) -> ElementSet {
        self.down[a]
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Meet and join of a family; the empty family gives `(top, bottom)`.
    pub fn family_meet_join(&self, s: &ElementSet) -> (usize, usize) {
        s.iter().fold((self.top, self.bottom), |(m, j), a| {
            (self.meet(m, a), self.join(j, a))
        })
    }

    pub fn family_meet(&self, s: &ElementSet) -> usize {
        s.iter().fold(self.top, |m, a| self.meet(m, a))
    }

    pub fn family_join(&self, s: &ElementSet) -> usize {
        s.iter().fold(self.bottom, |j, a| self.join(j, a))
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> ElementSet {
        self.upper_covers(self.bottom)
    }

    pub fn upper_covers(&self, a: usize) -> ElementSet {
        let strict = self.up[a].difference(&ElementSet::singleton(a));
        strict
            .iter()
            .filter(|&b| {
                let between = strict.intersection(&self.down[b]);
                between.len() == 1
            })
            .collect()
    }

    /// Hasse diagram edges `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| {
                self.upper_covers(a)
                    .iter()
                    .map(move |b| (a, b))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Length of the longest chain from bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| self.down[a].len());
        let mut h = vec![0; self.n];
        for &a in &order {
            for b in self.upper_covers(a).iter() {
                h[b] = h[b].max(h[a] + 1);
            }
        }
        h
    }

    /// Exhaustive distributivity and modularity scan.
    pub fn classify(&self) -> ClassificationReport {
        let n = self.n;
        let mut distributive_witness = None;
        let mut modular_witness = None;
        let mut join_distributive = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if distributive_witness.is_none()
                        && self.meet(a, self.join(b, c))
                            != self.join(self.meet(a, b), self.meet(a, c))
                    {
                        distributive_witness = Some((a, b, c));
                    }
                    if join_distributive
                        && self.join(a, self.meet(b, c))
                            != self.meet(self.join(a, b), self.join(a, c))
                    {
                        join_distributive = false;
                    }
                    if modular_witness.is_none()
                        && self.leq(a, c)
                        && self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c)
                    {
                        modular_witness = Some((a, b, c));
                    }
                }
            }
        }
        ClassificationReport {
            is_distributive: distributive_witness.is_none(),
            is_modular: modular_witness.is_none(),
            distributive_witness,
            modular_witness,
            join_distributive,
        }
    }

    /// Whether `s` is closed under binary meet and join.
    pub fn is_sublattice(&self, s: &ElementSet) -> bool {
        s.iter().all(|a| {
            s.iter()
                .all(|b| s.contains(self.meet(a, b)) && s.contains(self.join(a, b)))
        })
    }

    /// Extracts a meet/join-closed subset as a standalone lattice. The returned
    /// vector maps new indices to the parent's indices (increasing order).
    pub fn sublattice(&self, s: &ElementSet) -> Result<(Lattice, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::NotASublattice("empty subset".into()));
        }
        for a in s.iter() {
            for b in s.iter() {
                if !s.contains(self.meet(a, b)) || !s.contains(self.join(a, b)) {
                    return Err(Error::NotASublattice(format!("not closed at ({a}, {b})")));
                }
            }
        }
        let map = s.to_vec();
        let m = map.len();
        let up = (0..m)
            .map(|i| (0..m).filter(|&j| self.leq(map[i], map[j])).collect())
            .collect();
        let names = map.iter().map(|&a| self.names[a].clone()).collect();
        let sub = Self::from_up_sets(up, Some(names))?;
        Ok((sub, map))
    }

    /// Renames elements: old element `a` becomes `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Lattice> {
        let n = self.n;
        check_permutation(perm, n)?;
        let mut up = vec![ElementSet::new(); n];
        let mut names = vec![String::new(); n];
        for a in 0..n {
            up[perm[a]] = self.up[a].iter().map(|b| perm[b]).collect();
            names[perm[a]] = self.names[a].clone();
        }
        Self::from_up_sets(up, Some(names))
    }

    /// Cartesian product; `(a, b)` has index `a * other.len() + b`.
    pub fn product(&self, other: &Lattice) -> Result<Lattice> {
        let m = other.n;
        let n = self.n * m;
        check_size(n, MAX_ELEMENTS)?;
        let up = (0..n)
            .map(|x| {
                let (a, b) = (x / m, x % m);
                (0..n)
                    .filter(|&y| self.leq(a, y / m) && other.leq(b, y % m))
                    .collect()
            })
            .collect();
        let names = (0..n)
            .map(|x| format!("({},{})", self.names[x / m], other.names[x % m]))
            .collect();
        Self::from_up_sets(up, Some(names))
    }

    /// The order matrix.
    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.leq(a, b)).collect())
            .collect()
    }
}

pub(crate) fn check_size(n: usize, bound: usize) -> Result<()> {
    let bound = bound.min(MAX_ELEMENTS);
    if n > bound {
        return Err(Error::SizeBound {
            what: "lattice",
            size: n,
            bound,
        });
    }
    Ok(())
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Parse {
            path: "perm".into(),
            message: format!("permutation has {} entries, expected {n}", perm.len()),
        });
    }
    let mut seen = ElementSet::new();
    for &p in perm {
        if p >= n {
            return Err(Error::OutOfRange { index: p, n });
        }
        if !seen.insert(p) {
            return Err(Error::Parse {
                path: "perm".into(),
                message: format!("{p} appears twice"),
            });
        }
    }
    Ok(())
}

/// Label for a subset of `{1, .., k}` given by a bitmask.
pub fn subset_name(mask: u64) -> String {
    let items: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}
