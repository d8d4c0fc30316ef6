//! Spectral families, observable and completely increasing functions,
//! spectral measures, and the measurable, continuous and diagonal-algebra
//! correspondences.
//!
//! Everything is generic over a [`Scalar`]; exact work uses
//! [`crate::Rational`].

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num};
use rand::Rng;
use serde::Serialize;

use crate::bitset::{ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ortho::OrthoLattice;
use crate::quotient::spectrum_correspondence;
use crate::spectrum::{dual_ideals, StoneSpectrum, DEFAULT_DUAL_IDEAL_BOUND};
use crate::topology::FiniteSpace;

pub trait Scalar: Num + FromPrimitive + Clone + PartialOrd + Debug + Display + Send + Sync {}

impl<T: Num + FromPrimitive + Clone + PartialOrd + Debug + Display + Send + Sync> Scalar for T {}

fn max_of<T: Scalar>(a: &T, b: &T) -> T {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn min_opt<T: Scalar>(acc: Option<T>, x: &T) -> Option<T> {
    match acc {
        Some(a) if a <= *x => Some(a),
        _ => Some(x.clone()),
    }
}

fn sorted_distinct<T: Scalar>(values: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut v: Vec<T> = values.into_iter().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    v.dedup();
    v
}

/// A right-continuous step family: `E_λ` is bottom below the first
/// threshold, `values[i]` on `[thresholds[i], thresholds[i+1])`, and top from
/// the last threshold on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralFamily<T> {
    thresholds: Vec<T>,
    values: Vec<usize>,
}

impl<T: Scalar> SpectralFamily<T> {
    pub fn new(l: &Lattice, steps: Vec<(T, usize)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for (i, (_, e)) in steps.iter().enumerate() {
            if *e >= l.len() {
                return Err(Error::OutOfRange {
                    index: *e,
                    n: l.len(),
                });
            }
            if i > 0 {
                if !(steps[i - 1].0 < steps[i].0) {
                    return Err(Error::UnsortedThresholds(i));
                }
            }
        }
        for i in 1..steps.len() {
            if !l.leq(steps[i - 1].1, steps[i].1) {
                return Err(Error::NotMonotone(i));
            }
        }
        if steps.last().unwrap().1 != l.top() {
            return Err(Error::TopMissing);
        }
        let (thresholds, values) = steps.into_iter().unzip();
        Ok(SpectralFamily { thresholds, values })
    }

    /// The family that jumps from bottom to top at `c`.
    pub fn constant(l: &Lattice, c: T) -> Self {
        SpectralFamily {
            thresholds: vec![c],
            values: vec![l.top()],
        }
    }

    pub fn thresholds(&self) -> &[T] {
        &self.thresholds
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn steps(&self) -> impl Iterator<Item = (&T, usize)> {
        self.thresholds.iter().zip(self.values.iter().copied())
    }

    /// `E_λ`.
    pub fn evaluate(&self, l: &Lattice, lambda: &T) -> usize {
        self.steps()
            .filter(|(t, _)| *t <= lambda)
            .last()
            .map_or(l.bottom(), |(_, e)| e)
    }

    /// `F_λ = ⋁_{μ<λ} E_μ`, the left-continuous companion.
    pub fn left_limit(&self, l: &Lattice, lambda: &T) -> usize {
        self.steps()
            .filter(|(t, _)| *t < lambda)
            .last()
            .map_or(l.bottom(), |(_, e)| e)
    }

    /// Drops steps that do not change the value, starting from bottom. Two
    /// families define the same map `λ ↦ E_λ` iff their normal forms agree.
    pub fn normalized(&self, l: &Lattice) -> Self {
        let mut prev = l.bottom();
        let mut out = SpectralFamily {
            thresholds: Vec::new(),
            values: Vec::new(),
        };
        for (t, e) in self.steps() {
            if e != prev {
                out.thresholds.push(t.clone());
                out.values.push(e);
                prev = e;
            }
        }
        out
    }

    pub fn same_family(&self, other: &Self, l: &Lattice) -> bool {
        self.normalized(l) == other.normalized(l)
    }

    /// Monotone, bottom below the first threshold, top from the last one.
    pub fn axioms_hold(&self, l: &Lattice) -> bool {
        let below = self.thresholds[0].clone() - T::one();
        self.values.windows(2).all(|w| l.leq(w[0], w[1]))
            && self.evaluate(l, &below) == l.bottom()
            && self.evaluate(l, self.thresholds.last().unwrap()) == l.top()
            && self.steps().all(|(t, e)| self.evaluate(l, t) == e)
    }

    /// `inf{λ : E_λ ∈ 𝒥}` for a dual ideal given by its members.
    pub fn observable_at(&self, members: &ElementSet) -> Result<T> {
        self.steps()
            .find(|(_, e)| members.contains(*e))
            .map(|(t, _)| t.clone())
            .ok_or_else(|| Error::NoThresholdInIdeal(members.to_vec()))
    }

    pub fn observable(&self, l: &Lattice, spectrum: &StoneSpectrum) -> ObservableFn<T> {
        let at = |m: &ElementSet| self.observable_at(m).expect("top lies in every dual ideal");
        ObservableFn {
            on_quasipoints: spectrum.quasipoints.iter().map(at).collect(),
            on_dual_ideals: (0..l.len())
                .map(|a| (a != l.bottom()).then(|| at(&l.up_set(a))))
                .collect(),
        }
    }
}

/// An observable function. Every dual ideal of a finite lattice is principal,
/// so the table is indexed by the generator `a` of `H_a = ↑a`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableFn<T> {
    pub on_quasipoints: Vec<T>,
    /// `on_dual_ideals[a]` is `f(H_a)`; `None` at bottom.
    pub on_dual_ideals: Vec<Option<T>>,
}

impl<T: Scalar> ObservableFn<T> {
    /// A family of dual ideals `H_{a_1}, …` on which `f(⋂) ≠ max f`, if any.
    /// Families are scanned exhaustively for at most 12 dual ideals and
    /// pairwise beyond that, which suffices since `⋂ H_{a_j} = H_{⋁ a_j}`.
    pub fn intersection_condition_witness(&self, l: &Lattice) -> Option<Vec<usize>> {
        let gens: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom()).collect();
        let f = |a: usize| self.on_dual_ideals[a].clone().unwrap();
        if gens.len() <= 12 {
            for mask in 1u32..1 << gens.len() {
                let fam: Vec<usize> = (0..gens.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| gens[i])
                    .collect();
                let join = fam.iter().fold(l.bottom(), |acc, &a| l.join(acc, a));
                let max = fam
                    .iter()
                    .skip(1)
                    .fold(f(fam[0]), |acc, &a| max_of(&acc, &f(a)));
                if f(join) != max {
                    return Some(fam);
                }
            }
        } else {
            for &a in &gens {
                for &b in &gens {
                    if f(l.join(a, b)) != max_of(&f(a), &f(b)) {
                        return Some(vec![a, b]);
                    }
                }
            }
        }
        None
    }

    /// `f(𝒥) = min{f(H_P) : P ∈ 𝒥}` on every dual ideal and quasipoint.
    pub fn minimum_condition(&self, l: &Lattice, spectrum: &StoneSpectrum) -> bool {
        let min_over = |m: &ElementSet| {
            m.iter()
                .filter_map(|p| self.on_dual_ideals[p].as_ref())
                .fold(None, min_opt)
        };
        (0..l.len())
            .filter(|&a| a != l.bottom())
            .all(|a| min_over(&l.up_set(a)).as_ref() == self.on_dual_ideals[a].as_ref())
            && spectrum
                .quasipoints
                .iter()
                .zip(&self.on_quasipoints)
                .all(|(q, v)| min_over(q).as_ref() == Some(v))
    }

    /// `r_f(a) = f(H_a)`.
    pub fn completely_increasing(&self) -> CompletelyIncreasingFn<T> {
        CompletelyIncreasingFn {
            values: self.on_dual_ideals.clone(),
        }
    }
}

/// A completely increasing function on the nonzero elements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletelyIncreasingFn<T> {
    /// `values[a]` is `r(a)`; `None` at bottom.
    pub values: Vec<Option<T>>,
}

impl<T: Scalar> CompletelyIncreasingFn<T> {
    /// Validates `r(a ∨ b) = max(r(a), r(b))`, which gives the law for every
    /// finite nonempty family.
    pub fn new(l: &Lattice, values: Vec<Option<T>>) -> Result<Self> {
        if values.len() != l.len() {
            return Err(Error::DimensionMismatch {
                expected: l.len(),
                got: values.len(),
            });
        }
        for (a, v) in values.iter().enumerate() {
            if v.is_some() == (a == l.bottom()) {
                return Err(Error::NotCompletelyIncreasing(format!(
                    "a value is required exactly on the nonzero elements, element {a}"
                )));
            }
        }
        let r = CompletelyIncreasingFn { values };
        if let Some((a, b)) = r.violation(l) {
            return Err(Error::NotCompletelyIncreasing(format!(
                "r({} ∨ {}) = {} but max is {}",
                l.name(a),
                l.name(b),
                r.at(l.join(a, b)),
                max_of(&r.at(a), &r.at(b))
            )));
        }
        Ok(r)
    }

    fn at(&self, a: usize) -> T {
        self.values[a].clone().unwrap()
    }

    fn violation(&self, l: &Lattice) -> Option<(usize, usize)> {
        let nonzero: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom()).collect();
        nonzero
            .iter()
            .flat_map(|&a| nonzero.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| self.at(l.join(a, b)) != max_of(&self.at(a), &self.at(b)))
    }

    pub fn observable(&self, l: &Lattice, spectrum: &StoneSpectrum) -> ObservableFn<T> {
        let on_quasipoints = spectrum
            .quasipoints
            .iter()
            .map(|q| self.at(crate::spectrum::min_element(l, q)))
            .collect();
        ObservableFn {
            on_quasipoints,
            on_dual_ideals: self.values.clone(),
        }
    }

    /// `E_λ = ⋁{a : r(a) ≤ λ}` at each value of `r`.
    pub fn spectral_family(&self, l: &Lattice) -> Result<SpectralFamily<T>> {
        let thresholds = sorted_distinct(self.values.iter().flatten().cloned());
        let steps = thresholds
            .into_iter()
            .map(|t| {
                let below: ElementSet = (0..l.len())
                    .filter(|&a| self.values[a].as_ref().is_some_and(|v| *v <= t))
                    .collect();
                let e = l.family_join(&below);
                (t, e)
            })
            .collect();
        SpectralFamily::new(l, steps)
    }
}

/// Every monotone chain `e_1 ≤ … ≤ e_m = top` over `thresholds` whose
/// observable function equals `f` on all dual ideals.
pub fn families_inducing<T: Scalar>(
    l: &Lattice,
    thresholds: &[T],
    f: &ObservableFn<T>,
) -> Vec<SpectralFamily<T>> {
    let m = thresholds.len();
    let mut found = Vec::new();
    let mut chain = vec![l.top(); m];
    fn walk<T: Scalar>(
        l: &Lattice,
        thresholds: &[T],
        f: &ObservableFn<T>,
        i: usize,
        chain: &mut Vec<usize>,
        found: &mut Vec<SpectralFamily<T>>,
    ) {
        if i == 0 {
            let family = SpectralFamily {
                thresholds: thresholds.to_vec(),
                values: chain.clone(),
            };
            let ok = (0..l.len()).filter(|&a| a != l.bottom()).all(|a| {
                family.observable_at(&l.up_set(a)).ok().as_ref() == f.on_dual_ideals[a].as_ref()
            });
            if ok {
                found.push(family);
            }
            return;
        }
        for e in l.down_set(chain[i]).iter() {
            chain[i - 1] = e;
            walk(l, thresholds, f, i - 1, chain, found);
        }
    }
    if m == 0 {
        return found;
    }
    walk(l, thresholds, f, m - 1, &mut chain, &mut found);
    found
}

/// The three conversions between spectral families, observable functions and
/// completely increasing functions, composed in each cyclic order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTripReport {
    pub axioms: bool,
    /// family → observable → increasing → family.
    pub family_cycle: bool,
    /// observable → increasing → family → observable.
    pub observable_cycle: bool,
    /// increasing → family → observable → increasing.
    pub increasing_cycle: bool,
    pub intersection_condition: bool,
    pub intersection_witness: Option<Vec<usize>>,
    pub minimum_condition: bool,
    /// The table agrees with direct evaluation on independently enumerated
    /// dual ideals; `None` above the enumeration bound.
    pub dual_ideal_oracle: Option<bool>,
    /// Number of chains over the threshold set inducing the same function.
    pub inducing_families: usize,
}

impl RoundTripReport {
    pub fn holds(&self) -> bool {
        self.axioms
            && self.family_cycle
            && self.observable_cycle
            && self.increasing_cycle
            && self.intersection_condition
            && self.minimum_condition
            && self.dual_ideal_oracle != Some(false)
            && self.inducing_families == 1
    }
}

pub fn observable_roundtrip<T: Scalar>(
    l: &Lattice,
    family: &SpectralFamily<T>,
) -> Result<RoundTripReport> {
    let spectrum = StoneSpectrum::new(l);
    let e = family.normalized(l);
    let f = family.observable(l, &spectrum);
    let r = f.completely_increasing();
    let r_checked = CompletelyIncreasingFn::new(l, r.values.clone());
    let rebuilt = r.spectral_family(l)?;
    let family_cycle = r_checked.is_ok() && rebuilt.normalized(l) == e;
    let observable_cycle = rebuilt.observable(l, &spectrum) == f;
    let increasing_cycle = rebuilt.observable(l, &spectrum).completely_increasing() == r;
    let intersection_witness = f.intersection_condition_witness(l);
    let dual_ideal_oracle = if l.len() <= DEFAULT_DUAL_IDEAL_BOUND {
        let ideals = dual_ideals(l, DEFAULT_DUAL_IDEAL_BOUND)?;
        Some(ideals.iter().all(|d| {
            let direct = family.observable_at(&d.members).ok();
            let gen = crate::spectrum::min_element(l, &d.members);
            direct.as_ref() == f.on_dual_ideals[gen].as_ref()
        }))
    } else {
        None
    };
    Ok(RoundTripReport {
        axioms: family.axioms_hold(l),
        family_cycle,
        observable_cycle,
        increasing_cycle,
        intersection_condition: intersection_witness.is_none(),
        intersection_witness,
        minimum_condition: f.minimum_condition(l, &spectrum),
        dual_ideal_oracle,
        inducing_families: families_inducing(l, e.thresholds(), &f).len(),
    })
}

/// A small random rational-like scalar `p/q` with `|p| ≤ 6`, `1 ≤ q ≤ 3`.
pub fn random_scalar<T: Scalar, R: Rng>(rng: &mut R) -> T {
    let p = T::from_i64(rng.gen_range(-6..=6)).unwrap();
    let q = T::from_i64(rng.gen_range(1..=3)).unwrap();
    p / q
}

/// A random family with 1 to `max_steps` steps; values form a random chain
/// ending at top and may repeat.
pub fn random_family<T: Scalar, R: Rng>(
    rng: &mut R,
    l: &Lattice,
    max_steps: usize,
) -> SpectralFamily<T> {
    let m = rng.gen_range(1..=max_steps);
    let mut thresholds: Vec<T> = Vec::new();
    while thresholds.len() < m {
        let t = random_scalar::<T, R>(rng);
        if !thresholds.contains(&t) {
            thresholds.push(t);
        }
    }
    thresholds.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let mut values = vec![l.top(); m];
    for i in (0..m - 1).rev() {
        let below = l.down_set(values[i + 1]).to_vec();
        values[i] = below[rng.gen_range(0..below.len())];
    }
    SpectralFamily::new(l, thresholds.into_iter().zip(values).collect())
        .expect("random chain is a spectral family")
}

/// A set of reals built from half-open intervals `]lo, hi]`, where `lo = None`
/// is `-∞` and `hi = None` is `+∞` (then the interval is `]lo, ∞[`).
/// Intervals are kept sorted, disjoint and non-adjacent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalSet<T> {
    intervals: Vec<(Option<T>, Option<T>)>,
}

fn lo_cmp<T: Scalar>(a: &Option<T>, b: &Option<T>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some(x), Some(y)) => x.partial_cmp(y).unwrap_or(Ordering::Equal),
    }
}

fn hi_cmp<T: Scalar>(a: &Option<T>, b: &Option<T>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
        (Some(x), Some(y)) => x.partial_cmp(y).unwrap_or(Ordering::Equal),
    }
}

/// Whether an upper end `hi` lies strictly below a lower end `lo`.
fn hi_below_lo<T: Scalar>(hi: &Option<T>, lo: &Option<T>) -> bool {
    match (hi, lo) {
        (Some(h), Some(l)) => h < l,
        _ => false,
    }
}

impl<T: Scalar> IntervalSet<T> {
    pub fn empty() -> Self {
        IntervalSet {
            intervals: Vec::new(),
        }
    }

    pub fn real_line() -> Self {
        IntervalSet {
            intervals: vec![(None, None)],
        }
    }

    /// `]lo, hi]`, empty unless `lo < hi`.
    pub fn interval(lo: Option<T>, hi: Option<T>) -> Self {
        Self::from_intervals(vec![(lo, hi)])
    }

    pub fn from_intervals(raw: Vec<(Option<T>, Option<T>)>) -> Self {
        let mut v: Vec<(Option<T>, Option<T>)> = raw
            .into_iter()
            .filter(|(lo, hi)| match (lo, hi) {
                (Some(l), Some(h)) => l < h,
                _ => true,
            })
            .collect();
        v.sort_by(|a, b| lo_cmp(&a.0, &b.0));
        let mut out: Vec<(Option<T>, Option<T>)> = Vec::new();
        for (lo, hi) in v {
            if let Some(last) = out.last_mut() {
                if !hi_below_lo(&last.1, &lo) {
                    if hi_cmp(&hi, &last.1) == Ordering::Greater {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            out.push((lo, hi));
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[(Option<T>, Option<T>)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.intervals.iter().any(|(lo, hi)| {
            lo.as_ref().map_or(true, |l| l < x) && hi.as_ref().map_or(true, |h| x <= h)
        })
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut cursor: Option<Option<T>> = Some(None);
        for (lo, hi) in &self.intervals {
            if let Some(start) = cursor.take() {
                if lo.is_some() {
                    out.push((start, lo.clone()));
                }
            }
            cursor = hi.clone().map(Some);
        }
        if let Some(start) = cursor {
            out.push((start, None));
        }
        Self::from_intervals(out)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for (a_lo, a_hi) in &self.intervals {
            for (b_lo, b_hi) in &other.intervals {
                let lo = if lo_cmp(a_lo, b_lo) == Ordering::Greater {
                    a_lo
                } else {
                    b_lo
                };
                let hi = if hi_cmp(a_hi, b_hi) == Ordering::Less {
                    a_hi
                } else {
                    b_hi
                };
                if !hi_below_lo(hi, lo) && !(lo.is_some() && lo == hi) {
                    out.push((lo.clone(), hi.clone()));
                }
            }
        }
        Self::from_intervals(out)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(
            self.intervals
                .iter()
                .chain(&other.intervals)
                .cloned()
                .collect(),
        )
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }
}

/// The measure induced by a spectral family in an orthomodular lattice,
/// restricted to finite unions of half-open intervals.
#[derive(Debug, Clone)]
pub struct SpectralMeasure<'a, T> {
    ortho: &'a OrthoLattice,
    family: SpectralFamily<T>,
}

impl<'a, T: Scalar> SpectralMeasure<'a, T> {
    pub fn new(ortho: &'a OrthoLattice, family: SpectralFamily<T>) -> Result<Self> {
        if let Some(w) = ortho.orthomodular_witness() {
            return Err(Error::NotOrthomodular(w));
        }
        Ok(SpectralMeasure { ortho, family })
    }

    fn at(&self, end: &Option<T>, infinite: usize) -> usize {
        end.as_ref()
            .map_or(infinite, |x| self.family.evaluate(self.ortho, x))
    }

    /// `ℰ(]a,b]) = E_b ∧ E_a⊥`, joined over the pieces of the set.
    pub fn measure(&self, set: &IntervalSet<T>) -> usize {
        let o = self.ortho;
        set.intervals().iter().fold(o.bottom(), |acc, (lo, hi)| {
            let piece = o.meet(self.at(hi, o.top()), o.perp(self.at(lo, o.bottom())));
            o.join(acc, piece)
        })
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.ortho.leq(a, self.ortho.perp(b))
    }
}

/// Outcome of the measure checks on one family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub whole_line_is_top: bool,
    pub empty_is_bottom: bool,
    /// Disjoint pieces map to orthogonal elements whose join is the measure of the union.
    pub additive: bool,
    /// `ℰ(M ∖ N) = ℰ(M) ∧ ℰ(N)⊥` for `N ⊆ M`.
    pub difference: bool,
    pub union: bool,
    pub intersection: bool,
    pub cases: usize,
}

impl MeasureReport {
    pub fn holds(&self) -> bool {
        self.whole_line_is_top
            && self.empty_is_bottom
            && self.additive
            && self.difference
            && self.union
            && self.intersection
    }
}

fn random_interval_set<T: Scalar, R: Rng>(rng: &mut R, points: &[T]) -> IntervalSet<T> {
    let pick = |rng: &mut R| -> Option<T> {
        if rng.gen_bool(0.15) {
            None
        } else {
            Some(points[rng.gen_range(0..points.len())].clone())
        }
    };
    let k = rng.gen_range(0..=3);
    IntervalSet::from_intervals((0..k).map(|_| (pick(rng), pick(rng))).collect())
}

/// Checks the measure laws on `cases` random interval sets whose endpoints
/// are the thresholds and points between and around them.
pub fn measure_properties<T: Scalar, R: Rng>(
    ortho: &OrthoLattice,
    family: &SpectralFamily<T>,
    rng: &mut R,
    cases: usize,
) -> Result<MeasureReport> {
    let measure = SpectralMeasure::new(ortho, family.clone())?;
    let two = T::one() + T::one();
    let th = family.thresholds();
    let mut points: Vec<T> = th.to_vec();
    points.push(th[0].clone() - T::one());
    points.push(th[th.len() - 1].clone() + T::one());
    for w in th.windows(2) {
        points.push((w[0].clone() + w[1].clone()) / two.clone());
    }
    let mut r = MeasureReport {
        whole_line_is_top: measure.measure(&IntervalSet::real_line()) == ortho.top(),
        empty_is_bottom: measure.measure(&IntervalSet::empty()) == ortho.bottom(),
        additive: true,
        difference: true,
        union: true,
        intersection: true,
        cases,
    };
    for _ in 0..cases {
        let m = random_interval_set(rng, &points);
        let n = m.intersection(&random_interval_set(rng, &points));
        let p = random_interval_set(rng, &points);
        let (em, en, ep) = (
            measure.measure(&m),
            measure.measure(&n),
            measure.measure(&p),
        );
        r.difference &= measure.measure(&m.difference(&n)) == ortho.meet(em, ortho.perp(en));
        r.union &= measure.measure(&m.union(&p)) == ortho.join(em, ep);
        r.intersection &= measure.measure(&m.intersection(&p)) == ortho.meet(em, ep);
        let pieces: Vec<usize> = m
            .intervals()
            .iter()
            .map(|iv| measure.measure(&IntervalSet::from_intervals(vec![iv.clone()])))
            .collect();
        let pairwise = pieces
            .iter()
            .enumerate()
            .all(|(i, &a)| pieces[i + 1..].iter().all(|&b| measure.orthogonal(a, b)));
        let joined = pieces
            .iter()
            .fold(ortho.bottom(), |acc, &a| ortho.join(acc, a));
        r.additive &= pairwise && joined == em;
    }
    Ok(r)
}

/// `σ_g`, `g_σ` and `f_g` on a finite set with its powerset algebra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurableReport<T> {
    pub sigma: SpectralFamily<T>,
    pub g_of_sigma: Vec<T>,
    /// `g_{σ_g} = g`.
    pub function_roundtrip: bool,
    /// `σ_{g_σ} = σ` for `σ = σ_g`.
    pub family_roundtrip: bool,
    /// `f_g` on the quasipoint at each point.
    pub gelfand: Vec<T>,
    /// `f_g(𝔅_x) = g(x)`.
    pub gelfand_matches: bool,
}

impl<T> MeasurableReport<T> {
    pub fn holds(&self) -> bool {
        self.function_roundtrip && self.family_roundtrip && self.gelfand_matches
    }
}

/// The powerset of `n ≤ 8` points, element `m` being the set with bitmask `m`.
pub fn powerset_algebra(n: usize) -> Result<Lattice> {
    Lattice::powerset_bounded(n, MAX_ELEMENTS)
}

/// `σ_g(λ) = g⁻¹(]-∞, λ])` on the distinct values of `g`.
pub fn sigma_of<T: Scalar>(powerset: &Lattice, g: &[T]) -> Result<SpectralFamily<T>> {
    let steps = sorted_distinct(g.iter().cloned())
        .into_iter()
        .map(|t| {
            let m: usize = g
                .iter()
                .enumerate()
                .filter(|(_, v)| **v <= t)
                .map(|(x, _)| 1 << x)
                .sum();
            (t, m)
        })
        .collect();
    SpectralFamily::new(powerset, steps)
}

/// `g_σ(x) = min{λ : x ∈ σ(λ)}`.
pub fn g_of<T: Scalar>(n: usize, sigma: &SpectralFamily<T>) -> Vec<T> {
    (0..n)
        .map(|x| {
            sigma
                .steps()
                .find(|(_, e)| e >> x & 1 == 1)
                .map(|(t, _)| t.clone())
                .expect("the last value is the whole set")
        })
        .collect()
}

pub fn measurable_correspondence<T: Scalar>(g: &[T]) -> Result<MeasurableReport<T>> {
    let n = g.len();
    let l = powerset_algebra(n)?;
    let sigma = sigma_of(&l, g)?;
    let g_of_sigma = g_of(n, &sigma);
    let back = sigma_of(&l, &g_of_sigma)?;
    let spectrum = StoneSpectrum::from_atoms(&l);
    let gelfand: Vec<T> = spectrum
        .quasipoints
        .iter()
        .map(|q| {
            sigma
                .observable_at(q)
                .expect("top lies in every quasipoint")
        })
        .collect();
    Ok(MeasurableReport {
        function_roundtrip: g_of_sigma == g,
        family_roundtrip: back.same_family(&sigma, &l),
        gelfand_matches: gelfand == g,
        gelfand,
        sigma,
        g_of_sigma,
    })
}

/// `σ_{g_σ} = σ` for an arbitrary family in the powerset of `n` points.
pub fn family_roundtrip<T: Scalar>(
    powerset: &Lattice,
    n: usize,
    sigma: &SpectralFamily<T>,
) -> Result<bool> {
    Ok(sigma_of(powerset, &g_of(n, sigma))?.same_family(sigma, powerset))
}

/// `σ_f`, its admissible domain and induced function for a continuous `f` on
/// a finite space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuousReport<T> {
    /// Values are indices into the space's open sets.
    pub sigma: SpectralFamily<T>,
    /// `cl σ(λ) ⊆ σ(μ)` for all `λ < μ`.
    pub regular: bool,
    /// `cl σ(λ_i) ⊆ σ(λ_{i+1})` at consecutive thresholds.
    pub regular_at_thresholds: bool,
    pub admissible_domain: ElementSet,
    pub domain_dense: bool,
    /// `f_σ` on the admissible domain, indexed by point.
    pub induced: Vec<Option<T>>,
    /// `f_{σ_f} = f` on the domain.
    pub function_roundtrip: bool,
    /// `σ_{f_σ}(λ) = σ(λ) ∩ 𝒟(σ)` at every threshold.
    pub family_restriction: bool,
    /// `f_σ(𝔅) = f_σ(x)` for every open-set quasipoint `𝔅` and every `x`
    /// in `⋂_{U ∈ 𝔅} cl U` lying in the domain.
    pub quasipoint_values: bool,
}

impl<T> ContinuousReport<T> {
    pub fn holds(&self) -> bool {
        self.regular
            && self.regular_at_thresholds
            && self.domain_dense
            && self.function_roundtrip
            && self.family_restriction
            && self.quasipoint_values
    }
}

/// `f` is continuous iff it is constant on the smallest open set around each
/// point. Returns the first point where it is not.
pub fn continuity_witness<T: Scalar>(space: &FiniteSpace, f: &[T]) -> Option<usize> {
    (0..space.points()).find(|&x| space.minimal_neighborhood(x).iter().any(|y| f[y] != f[x]))
}

pub fn continuous_correspondence<T: Scalar>(
    space: &FiniteSpace,
    f: &[T],
) -> Result<ContinuousReport<T>> {
    if f.len() != space.points() {
        return Err(Error::DimensionMismatch {
            expected: space.points(),
            got: f.len(),
        });
    }
    if let Some(x) = continuity_witness(space, f) {
        return Err(Error::NotContinuous(x));
    }
    let opens = space.open_lattice();
    let whole = space.whole();
    let preimage = |t: &T| -> ElementSet { (0..f.len()).filter(|&x| f[x] <= *t).collect() };
    let thresholds = sorted_distinct(f.iter().cloned());
    let steps = thresholds
        .iter()
        .map(|t| {
            (
                t.clone(),
                space.open_index(&space.interior(&preimage(t))).unwrap(),
            )
        })
        .collect();
    let sigma = SpectralFamily::new(&opens, steps)?;
    let set = |i: usize| space.opens()[i];
    let values: Vec<ElementSet> = sigma.values().iter().map(|&i| set(i)).collect();

    let regular_at_thresholds = values
        .windows(2)
        .all(|w| space.closure(&w[0]).is_subset(&w[1]));
    // between consecutive thresholds the value is constant, so each value must be closed
    let regular = regular_at_thresholds
        && values[..values.len() - 1]
            .iter()
            .all(|v| space.closure(v) == *v);

    let below = sigma.evaluate(&opens, &(thresholds[0].clone() - T::one()));
    let always = values.iter().fold(set(below), |acc, v| acc.intersection(v));
    let admissible_domain = whole.difference(&always);
    let domain_dense = space.closure(&admissible_domain) == whole;
    let induced: Vec<Option<T>> = (0..f.len())
        .map(|x| {
            admissible_domain
                .contains(x)
                .then(|| {
                    sigma
                        .steps()
                        .find(|(_, e)| set(*e).contains(x))
                        .map(|(t, _)| t.clone())
                })
                .flatten()
        })
        .collect();
    let function_roundtrip = admissible_domain
        .iter()
        .all(|x| induced[x].as_ref() == Some(&f[x]));
    let family_restriction = thresholds.iter().zip(&values).all(|(t, v)| {
        let sub: ElementSet = admissible_domain
            .iter()
            .filter(|&x| induced[x].as_ref().is_some_and(|g| g <= t))
            .collect();
        // interior relative to the domain
        let rel_interior = space
            .opens()
            .iter()
            .map(|u| u.intersection(&admissible_domain))
            .filter(|u| u.is_subset(&sub))
            .fold(ElementSet::new(), |acc, u| acc.union(&u));
        rel_interior == v.intersection(&admissible_domain)
    });
    let spectrum = StoneSpectrum::new(&opens);
    let quasipoint_values = spectrum.quasipoints.iter().all(|q| {
        let value = sigma
            .observable_at(q)
            .expect("the whole space lies in every quasipoint");
        let support = q
            .iter()
            .fold(whole, |acc, u| acc.intersection(&space.closure(&set(u))));
        support
            .intersection(&admissible_domain)
            .iter()
            .all(|x| induced[x].as_ref() == Some(&value))
    });
    Ok(ContinuousReport {
        sigma,
        regular,
        regular_at_thresholds,
        admissible_domain,
        domain_dense,
        induced,
        function_roundtrip,
        family_restriction,
        quasipoint_values,
    })
}

/// A combination `Σ c_j χ_{P_j}` of coordinate projections in the diagonal
/// algebra of dimension `n`.
pub type Combination<T> = Vec<(T, ElementSet)>;

/// The element of the diagonal algebra given by a combination.
pub fn evaluate_combination<T: Scalar>(n: usize, terms: &Combination<T>) -> Vec<T> {
    (0..n)
        .map(|x| {
            terms
                .iter()
                .filter(|(_, p)| p.contains(x))
                .fold(T::zero(), |acc, (c, _)| acc + c.clone())
        })
        .collect()
}

/// Rewrites `Σ a_k χ_{E_k}` over all sign patterns: for every nonempty
/// `S ⊆ {1..K}` the projection `⋂_{k∈S} E_k ∩ ⋂_{k∉S} E_k^c` gets coefficient
/// `Σ_{k∈S} a_k`. Empty projections are dropped. Patterns are listed by
/// decreasing size, then lexicographically.
pub fn standard_orthogonal_representation<T: Scalar>(
    n: usize,
    terms: &Combination<T>,
) -> Result<Combination<T>> {
    let full = ElementSet::full(n);
    for (_, p) in terms {
        if !p.is_subset(&full) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.iter().last().unwrap() + 1,
            });
        }
    }
    let k = terms.len();
    if k > 16 {
        return Err(Error::SizeBound {
            what: "projections",
            size: k,
            bound: 16,
        });
    }
    let mut patterns: Vec<u32> = (1u32..1 << k).collect();
    patterns.sort_by_key(|s| {
        (
            std::cmp::Reverse(s.count_ones()),
            (0..k).map(|i| s >> i & 1 == 0).collect::<Vec<_>>(),
        )
    });
    let mut out = Vec::new();
    for s in patterns {
        let p = (0..k).fold(full, |acc, i| {
            if s >> i & 1 == 1 {
                acc.intersection(&terms[i].1)
            } else {
                acc.difference(&terms[i].1)
            }
        });
        if !p.is_empty() {
            let c = (0..k)
                .filter(|i| s >> i & 1 == 1)
                .fold(T::zero(), |acc, i| acc + terms[i].0.clone());
            out.push((c, p));
        }
    }
    Ok(out)
}

/// Value of an orthogonal combination at the quasipoint `q` of the powerset
/// algebra: the coefficient of the projection lying in `q`, or zero.
fn value_at_quasipoint<T: Scalar>(terms: &Combination<T>, q: &ElementSet) -> T {
    terms
        .iter()
        .filter(|(_, p)| q.contains(p.low_mask() as usize))
        .fold(T::zero(), |acc, (c, _)| acc + c.clone())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GelfandReport<T> {
    pub standard: Combination<T>,
    pub orthogonal: bool,
    /// The representation evaluated at each quasipoint equals the coordinates.
    pub matches_evaluation: bool,
    /// The standard and the coordinatewise representation give the same function.
    pub invariant: bool,
    /// `τ_x(P) = 1` iff `P` lies in the quasipoint at `x`, `τ_x` is
    /// multiplicative, and distinct quasipoints give distinct characters.
    pub characters: bool,
    /// Coordinates whose quasipoints avoid the ideal, when one was given.
    pub quotient_points: Option<Vec<usize>>,
    /// Characters of the quotient correspond to those quasipoints.
    pub quotient_matches: Option<bool>,
}

impl<T> GelfandReport<T> {
    pub fn holds(&self) -> bool {
        self.orthogonal
            && self.matches_evaluation
            && self.invariant
            && self.characters
            && self.quotient_matches != Some(false)
    }
}

/// Characters and orthogonal representations for the diagonal algebra of
/// dimension `n ≤ 6`, optionally with the ideal of functions supported on
/// `ideal_coordinates`.
pub fn gelfand_finite<T: Scalar>(
    n: usize,
    terms: &Combination<T>,
    ideal_coordinates: Option<&ElementSet>,
) -> Result<GelfandReport<T>> {
    let b = OrthoLattice::boolean(n)?;
    let standard = standard_orthogonal_representation(n, terms)?;
    let spectrum = StoneSpectrum::new(&b);
    let target = evaluate_combination(n, terms);
    let orthogonal = standard
        .iter()
        .enumerate()
        .all(|(i, (_, p))| standard[i + 1..].iter().all(|(_, q)| p.is_disjoint(q)));
    // quasipoint k is the atom filter at coordinate k
    let matches_evaluation =
        (0..n).all(|x| value_at_quasipoint(&standard, &spectrum.quasipoints[x]) == target[x]);
    let coordinatewise: Combination<T> = (0..n)
        .map(|x| (target[x].clone(), ElementSet::singleton(x)))
        .collect();
    let invariant = spectrum
        .quasipoints
        .iter()
        .all(|q| value_at_quasipoint(&standard, q) == value_at_quasipoint(&coordinatewise, q));

    let tau = |x: usize, v: &[T]| v[x].clone();
    let mut elements: Vec<Vec<T>> = vec![target.clone()];
    elements.extend(terms.iter().map(|(_, p)| {
        (0..n)
            .map(|i| if p.contains(i) { T::one() } else { T::zero() })
            .collect()
    }));
    let characters = (0..n).all(|x| {
        let q = &spectrum.quasipoints[x];
        let indicator_ok = (0..b.len()).all(|m| {
            let chi: Vec<T> = (0..n)
                .map(|i| if m >> i & 1 == 1 { T::one() } else { T::zero() })
                .collect();
            let t = tau(x, &chi);
            (t == T::one()) == q.contains(m) && (t == T::one() || t == T::zero())
        });
        let multiplicative = elements.iter().all(|u| {
            elements.iter().all(|v| {
                let prod: Vec<T> = u
                    .iter()
                    .zip(v)
                    .map(|(a, c)| a.clone() * c.clone())
                    .collect();
                tau(x, &prod) == tau(x, u) * tau(x, v)
            })
        });
        indicator_ok && multiplicative
    }) && spectrum.len() == n;

    let (quotient_points, quotient_matches) = match ideal_coordinates {
        None => (None, None),
        Some(j) => {
            let (_, corr) =
                spectrum_correspondence(&b, &ElementSet::singleton(j.low_mask() as usize))?;
            let points: Vec<usize> = corr.second_category.clone();
            let chars: Vec<usize> = (0..n).filter(|x| !j.contains(*x)).collect();
            (Some(points.clone()), Some(corr.holds() && points == chars))
        }
    };
    Ok(GelfandReport {
        standard,
        orthogonal,
        matches_evaluation,
        invariant,
        characters,
        quotient_points,
        quotient_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::corpus;
    use crate::random::rng;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn lat(name: &str) -> Lattice {
        corpus(name).unwrap().into_lattice()
    }

    #[test]
    fn construction_and_evaluation() {
        let b2 = lat("B2");
        let e = SpectralFamily::new(&b2, vec![(int(0), 0b01), (int(1), 0b11)]).unwrap();
        assert_eq!(e.evaluate(&b2, &q(1, 2)), 0b01);
        assert_eq!(e.evaluate(&b2, &int(-1)), 0);
        assert_eq!(e.evaluate(&b2, &int(5)), 0b11);
        assert_eq!(e.left_limit(&b2, &int(0)), 0);
        assert!(e.axioms_hold(&b2));
        let mo2 = lat("MO2");
        assert!(SpectralFamily::new(&mo2, vec![(int(0), 1), (int(1), 5)]).is_ok());
        assert_eq!(
            SpectralFamily::new(&b2, vec![(int(0), 0b11), (int(1), 0b01)]).unwrap_err(),
            Error::NotMonotone(1)
        );
        assert_eq!(
            SpectralFamily::new(&b2, vec![(int(0), 0b01)]).unwrap_err(),
            Error::TopMissing
        );
        assert_eq!(
            SpectralFamily::new(&b2, vec![(int(1), 0b01), (int(0), 0b11)]).unwrap_err(),
            Error::UnsortedThresholds(1)
        );
        assert_eq!(
            SpectralFamily::<Rational>::new(&b2, vec![]).unwrap_err(),
            Error::EmptyFamily
        );
    }

    #[test]
    fn observable_examples() {
        let b2 = lat("B2");
        let s = StoneSpectrum::new(&b2);
        let e = SpectralFamily::new(&b2, vec![(int(0), 0b01), (int(1), 0b11)]).unwrap();
        let f = e.observable(&b2, &s);
        assert_eq!(f.on_quasipoints, vec![int(0), int(1)]);
        assert_eq!(f.on_dual_ideals[0b11], Some(int(1)));
        assert!(f.intersection_condition_witness(&b2).is_none());
        let c = SpectralFamily::constant(&lat("MO3"), q(3, 2));
        let fc = c.observable(&lat("MO3"), &StoneSpectrum::new(&lat("MO3")));
        assert!(fc.on_quasipoints.iter().all(|v| *v == q(3, 2)));
    }

    #[test]
    fn reconstruction_examples() {
        let b2 = lat("B2");
        let r =
            CompletelyIncreasingFn::new(&b2, vec![None, Some(int(0)), Some(int(1)), Some(int(1))])
                .unwrap();
        let e = r.spectral_family(&b2).unwrap();
        assert_eq!(
            e,
            SpectralFamily::new(&b2, vec![(int(0), 0b01), (int(1), 0b11)]).unwrap()
        );
        let mo2 = lat("MO2");
        let constant =
            CompletelyIncreasingFn::new(&mo2, (0..6).map(|a| (a != 0).then(|| int(4))).collect())
                .unwrap();
        assert_eq!(
            constant.spectral_family(&mo2).unwrap(),
            SpectralFamily::constant(&mo2, int(4))
        );
        // any two distinct atoms of MO2 join to top
        let err = CompletelyIncreasingFn::new(
            &mo2,
            vec![
                None,
                Some(int(0)),
                Some(int(1)),
                Some(int(2)),
                Some(int(3)),
                Some(int(3)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotCompletelyIncreasing(_)));
        let ok = CompletelyIncreasingFn::new(
            &mo2,
            vec![
                None,
                Some(int(0)),
                Some(int(3)),
                Some(int(3)),
                Some(int(3)),
                Some(int(3)),
            ],
        )
        .unwrap();
        let e = ok.spectral_family(&mo2).unwrap();
        let rt = observable_roundtrip(&mo2, &e).unwrap();
        assert!(rt.holds(), "{rt:?}");
        assert_eq!(
            e.observable(&mo2, &StoneSpectrum::new(&mo2))
                .completely_increasing(),
            ok
        );
    }

    #[test]
    fn roundtrips_on_random_families() {
        let mut r = rng(11);
        for name in ["B1", "B2", "B3", "MO2", "MO3", "O6", "C3", "N5"] {
            let l = lat(name);
            for _ in 0..10 {
                let e = random_family::<Rational, _>(&mut r, &l, 4);
                let rt = observable_roundtrip(&l, &e).unwrap();
                assert!(rt.holds(), "{name} {e:?} {rt:?}");
            }
        }
    }

    #[test]
    fn uniqueness_scan_agrees_with_oracle() {
        // brute force over all chains of B2 with thresholds {0, 1}
        let b2 = lat("B2");
        let s = StoneSpectrum::new(&b2);
        let target = SpectralFamily::new(&b2, vec![(int(0), 0b10), (int(1), 0b11)]).unwrap();
        let f = target.observable(&b2, &s);
        let mut count = 0;
        for e1 in 0..4 {
            let fam = SpectralFamily {
                thresholds: vec![int(0), int(1)],
                values: vec![e1, 3],
            };
            if fam.observable(&b2, &s) == f {
                count += 1;
            }
        }
        assert_eq!(count, 1);
        assert_eq!(families_inducing(&b2, &[int(0), int(1)], &f).len(), 1);
    }

    #[test]
    fn float_scalars_work_too() {
        let b2 = lat("B2");
        let e = SpectralFamily::new(&b2, vec![(0.0f64, 0b01), (1.5, 0b11)]).unwrap();
        assert_eq!(e.evaluate(&b2, &1.0), 0b01);
        assert!(observable_roundtrip(&b2, &e).unwrap().holds());
    }

    #[test]
    fn interval_algebra() {
        let i = |a: i64, b: i64| IntervalSet::interval(Some(int(a)), Some(int(b)));
        let u = i(0, 1).union(&i(1, 2));
        assert_eq!(u, i(0, 2));
        assert!(u.contains(&int(2)) && !u.contains(&int(0)));
        let c = u.complement();
        assert_eq!(c.intervals().len(), 2);
        assert!(c.contains(&int(0)) && c.contains(&int(3)) && !c.contains(&int(1)));
        assert_eq!(c.complement(), u);
        assert!(i(0, 2).intersection(&i(2, 3)).is_empty());
        assert_eq!(i(0, 3).difference(&i(1, 2)), i(0, 1).union(&i(2, 3)));
        assert_eq!(
            IntervalSet::<Rational>::real_line().complement(),
            IntervalSet::empty()
        );
        // brute-force membership on a grid
        let a = i(-2, 0).union(&IntervalSet::interval(Some(int(1)), None));
        let b = IntervalSet::interval(None, Some(int(-1))).union(&i(0, 2));
        for k in -12..=12 {
            let x = q(k, 4);
            assert_eq!(a.union(&b).contains(&x), a.contains(&x) || b.contains(&x));
            assert_eq!(
                a.intersection(&b).contains(&x),
                a.contains(&x) && b.contains(&x)
            );
            assert_eq!(
                a.difference(&b).contains(&x),
                a.contains(&x) && !b.contains(&x)
            );
        }
    }

    #[test]
    fn measure_examples() {
        let b2 = corpus("B2").unwrap().into_ortho().unwrap();
        let e = SpectralFamily::new(&b2, vec![(int(0), 0b01), (int(1), 0b11)]).unwrap();
        let m = SpectralMeasure::new(&b2, e.clone()).unwrap();
        let lo = IntervalSet::interval(Some(int(-1)), Some(int(0)));
        let hi = IntervalSet::interval(Some(int(0)), Some(int(1)));
        assert_eq!(m.measure(&lo), 0b01);
        assert_eq!(m.measure(&hi), 0b10);
        assert!(m.orthogonal(0b01, 0b10));
        assert_eq!(m.measure(&lo.union(&hi)), 0b11);
        assert_eq!(m.measure(&IntervalSet::real_line()), 0b11);
        assert_eq!(m.measure(&IntervalSet::empty()), 0);
        let o6 = corpus("O6").unwrap().into_ortho().unwrap();
        let f = SpectralFamily::constant(&o6, int(0));
        assert!(matches!(
            SpectralMeasure::new(&o6, f),
            Err(Error::NotOrthomodular(_))
        ));
        let mut r = rng(5);
        let mo3 = corpus("MO3").unwrap().into_ortho().unwrap();
        for _ in 0..20 {
            let fam = random_family::<Rational, _>(&mut r, &mo3, 4);
            assert!(measure_properties(&mo3, &fam, &mut r, 20).unwrap().holds());
        }
    }

    #[test]
    fn measurable_examples() {
        let r = measurable_correspondence(&[int(0), int(1)]).unwrap();
        assert!(r.holds());
        assert_eq!(r.sigma.values(), &[0b01, 0b11]);
        let c = measurable_correspondence(&[int(4), int(4), int(4)]).unwrap();
        assert_eq!(c.sigma.values(), &[0b111]);
        let r = measurable_correspondence(&[int(2), int(0), int(2)]).unwrap();
        assert_eq!(r.sigma.thresholds(), &[int(0), int(2)]);
        assert_eq!(r.gelfand, vec![int(2), int(0), int(2)]);
        assert!(r.holds());
        let l = powerset_algebra(3).unwrap();
        let mut g = rng(2);
        for _ in 0..20 {
            let s = random_family::<Rational, _>(&mut g, &l, 4);
            assert!(family_roundtrip(&l, 3, &s).unwrap());
        }
    }

    #[test]
    fn continuous_examples() {
        let set = |p: &[usize]| -> ElementSet { p.iter().copied().collect() };
        let t3 = FiniteSpace::new(
            3,
            &[
                set(&[]),
                set(&[0]),
                set(&[2]),
                set(&[0, 2]),
                set(&[0, 1, 2]),
            ],
        )
        .unwrap();
        // the smallest open set around point 2 is the whole space
        assert_eq!(
            continuous_correspondence(&t3, &[int(0), int(0), int(1)]).unwrap_err(),
            Error::NotContinuous(1)
        );
        assert_eq!(
            continuous_correspondence(&t3, &[int(0), int(1), int(0)]).unwrap_err(),
            Error::NotContinuous(1)
        );
        let r = continuous_correspondence(&t3, &[int(1), int(1), int(1)]).unwrap();
        assert!(r.holds());
        let d = FiniteSpace::discrete(3).unwrap();
        let r = continuous_correspondence(&d, &[int(2), int(0), q(1, 2)]).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.admissible_domain, d.whole());
        let two = FiniteSpace::new(
            4,
            &[set(&[]), set(&[0, 1]), set(&[2, 3]), set(&[0, 1, 2, 3])],
        )
        .unwrap();
        let r = continuous_correspondence(&two, &[int(1), int(1), int(-1), int(-1)]).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn gelfand_worked_example() {
        let terms = vec![
            (int(2), [0, 1].into_iter().collect()),
            (int(3), [1, 2].into_iter().collect()),
        ];
        let r = gelfand_finite(3, &terms, None).unwrap();
        let expected: Combination<Rational> = vec![
            (int(5), ElementSet::singleton(1)),
            (int(2), ElementSet::singleton(0)),
            (int(3), ElementSet::singleton(2)),
        ];
        assert_eq!(r.standard, expected);
        assert!(r.holds());
        let single = vec![(int(7), [0, 1].into_iter().collect())];
        assert_eq!(gelfand_finite(2, &single, None).unwrap().standard, single);
        let r = gelfand_finite(3, &terms, Some(&ElementSet::singleton(1))).unwrap();
        assert_eq!(r.quotient_points, Some(vec![0, 2]));
        assert!(r.holds());
        let bad = vec![(int(1), ElementSet::singleton(4))];
        assert!(matches!(
            gelfand_finite(3, &bad, None),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
