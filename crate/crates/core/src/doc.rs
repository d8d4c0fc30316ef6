//! JSON documents for lattices, ideals, spaces, spectral families and
//! presheaves. Every loader accepts `corpus:NAME` where a corpus entry
//! exists, inline JSON (text starting with `{`), or a file path.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::corpus::{corpus, CorpusLattice};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::ortho::OrthoLattice;
use crate::presheaf::{presheaf_corpus, Presheaf, PresheafDoc};
use crate::spectral::SpectralFamily;
use crate::topology::FiniteSpace;
use crate::Rational;

/// An element given by index or by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

impl ElementRef {
    pub fn resolve(&self, l: &Lattice, path: &str) -> Result<usize> {
        match self {
            ElementRef::Index(i) if *i < l.len() => Ok(*i),
            ElementRef::Index(i) => Err(Error::Parse {
                path: path.into(),
                message: format!("element {i} out of range"),
            }),
            ElementRef::Name(s) => l.index_of(s).ok_or_else(|| Error::Parse {
                path: path.into(),
                message: format!("unknown element {s:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<bool>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perp: Option<Vec<usize>>,
}

impl LatticeDoc {
    pub fn from_lattice(l: &Lattice, perp: Option<&[usize]>) -> Self {
        LatticeDoc {
            n: Some(l.len()),
            covers: Some(l.covers()),
            leq: None,
            names: Some(l.names().to_vec()),
            perp: perp.map(<[usize]>::to_vec),
        }
    }

    pub fn build(&self, bound: usize) -> Result<CorpusLattice> {
        let l = match (&self.covers, &self.leq) {
            (Some(covers), None) => {
                let n = self.n.ok_or_else(|| Error::Parse {
                    path: "n".into(),
                    message: "\"covers\" needs \"n\"".into(),
                })?;
                Lattice::from_covers_bounded(n, covers, self.names.clone(), bound)?
            }
            (None, Some(leq)) => {
                if self.n.is_some_and(|n| n != leq.len()) {
                    return Err(Error::Parse {
                        path: "n".into(),
                        message: "\"n\" disagrees with \"leq\"".into(),
                    });
                }
                Lattice::from_leq_bounded(leq, self.names.clone(), bound)?
            }
            _ => {
                return Err(Error::Parse {
                    path: "covers".into(),
                    message: "exactly one of \"covers\" and \"leq\" is required".into(),
                })
            }
        };
        Ok(match &self.perp {
            Some(perp) => CorpusLattice::Ortho(OrthoLattice::new(l, perp.clone())?),
            None => CorpusLattice::Plain(l),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub generators: Vec<ElementRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub lambda: Scalar,
    pub element: ElementRef,
}

/// A rational written as `"p/q"`, `"p"` or an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn value(&self, path: &str) -> Result<Rational> {
        match self {
            Scalar::Int(i) => Ok(Rational::from_integer(*i)),
            Scalar::Text(s) => Rational::from_str(s.trim()).map_err(|e| Error::Parse {
                path: path.into(),
                message: format!("{s:?} is not a rational: {e}"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub steps: Vec<StepDoc>,
}

impl FamilyDoc {
    pub fn from_family(f: &SpectralFamily<Rational>) -> Self {
        let steps = f
            .steps()
            .map(|(t, e)| StepDoc {
                lambda: Scalar::Text(t.to_string()),
                element: ElementRef::Index(e),
            })
            .collect();
        FamilyDoc { steps }
    }
}

/// Reads inline JSON or a file.
pub fn read_input(input: &str) -> Result<(String, String)> {
    if input.trim_start().starts_with('{') {
        return Ok(("<inline>".into(), input.to_string()));
    }
    let text = std::fs::read_to_string(input).map_err(|e| Error::Parse {
        path: input.to_string(),
        message: e.to_string(),
    })?;
    Ok((input.to_string(), text))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_string(),
        message: e.to_string(),
    })
}

/// Loads a lattice, with its orthocomplement when one is given.
pub fn load_lattice(input: &str, bound: usize) -> Result<CorpusLattice> {
    if let Some(name) = input.strip_prefix("corpus:") {
        let c = corpus(name)?;
        if c.lattice().len() > bound {
            return Err(Error::SizeBound {
                what: "lattice",
                size: c.lattice().len(),
                bound,
            });
        }
        return Ok(c);
    }
    let (path, text) = read_input(input)?;
    parse::<LatticeDoc>(&path, &text)?.build(bound)
}

pub fn load_ideal(input: &str, l: &Lattice) -> Result<ElementSet> {
    let (path, text) = read_input(input)?;
    let doc: IdealDoc = parse(&path, &text)?;
    doc.generators
        .iter()
        .map(|g| g.resolve(l, &format!("{path}: generators")))
        .collect()
}

pub fn load_space(input: &str) -> Result<FiniteSpace> {
    let (path, text) = read_input(input)?;
    let doc: SpaceDoc = parse(&path, &text)?;
    let opens: Vec<ElementSet> = doc
        .opens
        .iter()
        .map(|o| {
            if let Some(&p) = o.iter().find(|&&p| p >= doc.points) {
                return Err(Error::Parse {
                    path: path.clone(),
                    message: format!("point {p} out of range"),
                });
            }
            Ok(o.iter().copied().collect())
        })
        .collect::<Result<_>>()?;
    FiniteSpace::new(doc.points, &opens)
}

pub fn load_family(input: &str, l: &Lattice) -> Result<SpectralFamily<Rational>> {
    let (path, text) = read_input(input)?;
    let doc: FamilyDoc = parse(&path, &text)?;
    let steps = doc
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let at = format!("{path}: steps[{i}]");
            Ok((s.lambda.value(&at)?, s.element.resolve(l, &at)?))
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralFamily::new(l, steps)
}

/// Loads a presheaf on `l`, or a corpus presheaf by name (its own lattice
/// is used then).
pub fn load_presheaf(input: &str, l: Option<&Lattice>) -> Result<Presheaf> {
    if let Some(name) = input.strip_prefix("corpus:") {
        return presheaf_corpus(name);
    }
    let l = l.ok_or_else(|| Error::Parse {
        path: input.to_string(),
        message: "a presheaf document needs a lattice".into(),
    })?;
    let (path, text) = read_input(input)?;
    let doc: PresheafDoc = parse(&path, &text)?;
    Presheaf::from_doc(l.clone(), &doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_MAX_ELEMENTS;

    #[test]
    fn lattice_documents() {
        let c = load_lattice(
            r#"{"n": 4, "covers": [[0,1],[0,2],[1,3],[2,3]], "perp": [3,2,1,0]}"#,
            64,
        )
        .unwrap();
        assert!(c.ortho().unwrap().is_boolean());
        let leq = r#"{"leq": [[true,true],[false,true]]}"#;
        assert_eq!(load_lattice(leq, 64).unwrap().lattice().len(), 2);
        let bad = r#"{"n": 4, "covers": [[0,1],[0,2]]}"#;
        assert!(load_lattice(bad, 64).is_err());
        assert!(matches!(
            load_lattice(r#"{"n": 2}"#, 64),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            load_lattice(r#"{"n": 2, "covers": [[0,1]], "x": 1}"#, 64),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            load_lattice("corpus:B6", 16),
            Err(Error::SizeBound { .. })
        ));
        assert!(matches!(
            load_lattice("/nonexistent.json", 64),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn lattice_doc_roundtrip() {
        let o = corpus("O6").unwrap().into_ortho().unwrap();
        let doc = LatticeDoc::from_lattice(&o, Some(o.perp_table()));
        let text = serde_json::to_string(&doc).unwrap();
        let back = load_lattice(&text, DEFAULT_MAX_ELEMENTS).unwrap();
        assert_eq!(back.ortho().unwrap(), &o);
    }

    #[test]
    fn other_documents() {
        let b3 = corpus("B3").unwrap().into_lattice();
        assert_eq!(
            load_ideal(r#"{"generators": [2, "{1}"]}"#, &b3)
                .unwrap()
                .to_vec(),
            vec![1, 2]
        );
        assert!(load_ideal(r#"{"generators": [9]}"#, &b3).is_err());
        let s = load_space(r#"{"points": 3, "opens": [[], [0], [2], [0,2], [0,1,2]]}"#).unwrap();
        assert_eq!(s.opens().len(), 5);
        assert!(matches!(
            load_space(r#"{"points": 3, "opens": [[], [0], [2], [0,1,2]]}"#),
            Err(Error::InvalidTopology(_))
        ));
        let f = load_family(
            r#"{"steps": [{"lambda": "-1/2", "element": 1}, {"lambda": 3, "element": "{1,2,3}"}]}"#,
            &b3,
        )
        .unwrap();
        assert_eq!(f.thresholds()[0], Rational::new(-1, 2));
        let text = serde_json::to_string(&FamilyDoc::from_family(&f)).unwrap();
        assert_eq!(load_family(&text, &b3).unwrap(), f);
        assert!(load_family(r#"{"steps": [{"lambda": "x", "element": 7}]}"#, &b3).is_err());
    }

    #[test]
    fn presheaf_documents() {
        let c3 = corpus("C3").unwrap().into_lattice();
        let doc = r#"{"sets": {"0": ["*"], "m": ["z"], "1": ["x", "y"]},
                      "maps": {"1->m": {"x": "z", "y": "z"}, "m->0": {"z": "*"}}}"#;
        let p = load_presheaf(doc, Some(&c3)).unwrap();
        assert_eq!(p, presheaf_corpus("C3-collapse").unwrap());
        let bad = r#"{"sets": {"0": ["*"], "m": ["z"], "1": ["x", "y"]}, "maps": {"1->m": {"x": "z", "y": "z"}}}"#;
        assert!(matches!(
            load_presheaf(bad, Some(&c3)),
            Err(Error::MissingMap { .. })
        ));
        assert!(load_presheaf("corpus:B2-functions", None).is_ok());
    }
}
