//! Named example lattices.

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ortho::OrthoLattice;

/// A corpus lattice, carrying its orthocomplement when one is defined.
#[derive(Debug, Clone)]
pub enum CorpusLattice {
    Plain(Lattice),
    Ortho(OrthoLattice),
}

impl CorpusLattice {
    pub fn lattice(&self) -> &Lattice {
        match self {
            CorpusLattice::Plain(l) => l,
            CorpusLattice::Ortho(o) => o.lattice(),
        }
    }

    pub fn into_lattice(self) -> Lattice {
        match self {
            CorpusLattice::Plain(l) => l,
            CorpusLattice::Ortho(o) => o.into_lattice(),
        }
    }

    pub fn ortho(&self) -> Option<&OrthoLattice> {
        match self {
            CorpusLattice::Plain(_) => None,
            CorpusLattice::Ortho(o) => Some(o),
        }
    }

    pub fn into_ortho(self) -> Option<OrthoLattice> {
        match self {
            CorpusLattice::Plain(_) => None,
            CorpusLattice::Ortho(o) => Some(o),
        }
    }
}

/// Every corpus name, in a fixed order.
pub const CORPUS_NAMES: &[&str] = &[
    "C2", "C3", "B0", "B1", "B2", "B3", "B4", "B5", "B6", "M3", "N5", "MO1", "MO2", "MO3", "MO4",
    "O6",
];

/// Looks up a named lattice: `C2`, `C3`, `B0`..`B6`, `M3`, `N5`, `MO1`..`MO4`, `O6`.
pub fn corpus(name: &str) -> Result<CorpusLattice> {
    let unknown = || Error::UnknownName(name.to_string());
    match name {
        "C2" => Ok(CorpusLattice::Ortho(c2())),
        "C3" => Ok(CorpusLattice::Plain(chain(3)?)),
        "M3" => Ok(CorpusLattice::Plain(m3())),
        "N5" => Ok(CorpusLattice::Plain(n5())),
        "O6" => Ok(CorpusLattice::Ortho(o6())),
        _ => {
            if let Some(k) = name.strip_prefix("MO") {
                let k: usize = k.parse().map_err(|_| unknown())?;
                if !(1..=4).contains(&k) {
                    return Err(unknown());
                }
                Ok(CorpusLattice::Ortho(mo(k)?))
            } else if let Some(k) = name.strip_prefix('B') {
                let k: usize = k.parse().map_err(|_| unknown())?;
                if k > 6 {
                    return Err(unknown());
                }
                Ok(CorpusLattice::Ortho(OrthoLattice::boolean(k)?))
            } else {
                Err(unknown())
            }
        }
    }
}

/// Chain `0 < 1 < .. < n-1`.
pub fn chain(n: usize) -> Result<Lattice> {
    let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    let names = match n {
        3 => vec!["0".into(), "m".into(), "1".into()],
        _ => (0..n).map(|i| i.to_string()).collect(),
    };
    Lattice::from_covers(n, &covers, Some(names))
}

fn names(v: &[&str]) -> Option<Vec<String>> {
    Some(v.iter().map(|s| s.to_string()).collect())
}

fn c2() -> OrthoLattice {
    let l = Lattice::from_covers(2, &[(0, 1)], names(&["0", "1"])).expect("C2");
    OrthoLattice::new(l, vec![1, 0]).expect("C2 ortho")
}

fn m3() -> Lattice {
    Lattice::from_covers(
        5,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        names(&["0", "a", "b", "c", "1"]),
    )
    .expect("M3")
}

/// Pentagon `0 < a < b < 1`, `0 < c < 1`.
fn n5() -> Lattice {
    Lattice::from_covers(
        5,
        &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        names(&["0", "a", "b", "c", "1"]),
    )
    .expect("N5")
}

/// Hexagon `0 < a < b < 1`, `0 < b' < a' < 1` with `a ↔ a'`, `b ↔ b'`.
fn o6() -> OrthoLattice {
    let l = Lattice::from_covers(
        6,
        &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)],
        names(&["0", "a", "b", "b'", "a'", "1"]),
    )
    .expect("O6");
    OrthoLattice::new(l, vec![5, 4, 3, 2, 1, 0]).expect("O6 ortho")
}

/// Horizontal sum of `k` four-element Boolean blocks: atoms `a_i` at index
/// `2i-1` and `a_i⊥` at `2i`, top at `2k+1`.
pub fn mo(k: usize) -> Result<OrthoLattice> {
    let n = 2 * k + 2;
    let top = n - 1;
    let mut covers = Vec::new();
    let mut nm = vec!["0".to_string()];
    let mut perp = vec![0; n];
    perp[0] = top;
    perp[top] = 0;
    for i in 1..=k {
        let (a, b) = (2 * i - 1, 2 * i);
        covers.extend([(0, a), (0, b), (a, top), (b, top)]);
        nm.push(format!("a{i}"));
        nm.push(format!("a{i}'"));
        perp[a] = b;
        perp[b] = a;
    }
    nm.push("1".into());
    OrthoLattice::new(Lattice::from_covers(n, &covers, Some(nm))?, perp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in CORPUS_NAMES {
            corpus(name).unwrap();
        }
        assert!(matches!(corpus("B7"), Err(Error::UnknownName(_))));
        assert!(matches!(corpus("MO5"), Err(Error::UnknownName(_))));
        assert!(matches!(corpus("X"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn sizes_and_shapes() {
        assert_eq!(corpus("B3").unwrap().lattice().len(), 8);
        let mo2 = corpus("MO2").unwrap().into_ortho().unwrap();
        assert_eq!(mo2.len(), 6);
        assert!(!mo2.classify().is_distributive);
        assert!(mo2.is_orthomodular());
        let o6 = corpus("O6").unwrap().into_ortho().unwrap();
        assert_eq!(o6.len(), 6);
        assert!(!o6.is_orthomodular());
        // a ≤ b but a ∨ (a⊥ ∧ b) = a ≠ b
        let (a, b) = (1, 2);
        assert!(o6.leq(a, b));
        assert_eq!(o6.join(a, o6.meet(o6.perp(a), b)), a);
        assert!(corpus("C3").unwrap().ortho().is_none());
    }

    #[test]
    fn classification_laws() {
        for k in 0..=6 {
            let r = corpus(&format!("B{k}")).unwrap().lattice().classify();
            assert!(r.is_distributive && r.join_distributive);
        }
        for k in 2..=4 {
            assert!(
                !corpus(&format!("MO{k}"))
                    .unwrap()
                    .lattice()
                    .classify()
                    .is_distributive
            );
        }
        for name in CORPUS_NAMES {
            let r = corpus(name).unwrap().lattice().classify();
            assert_eq!(r.is_distributive, r.join_distributive, "{name}");
        }
    }
}
