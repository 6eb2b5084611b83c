//! Closure models and their JSON encodings.
//!
//! Model files look like
//!
//! ```json
//! {"nodes":["a","b"],"edges":[["a","b"]],"symmetric":false,"valuation":{"p":["a"]}}
//! ```
//!
//! Node names are strings on disk and dense [`PointId`]s in memory; the
//! loader owns the mapping. `symmetric: true` mirrors every listed edge.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::{PointId, PointSet};
use crate::space::SpaceGraph;

/// A closure space together with a valuation of proposition letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureModel {
    space: SpaceGraph,
    valuation: BTreeMap<String, PointSet>,
    labels: Option<Vec<String>>,
}

impl ClosureModel {
    pub fn new(space: SpaceGraph, valuation: BTreeMap<String, PointSet>) -> Result<Self> {
        for set in valuation.values() {
            set.check_universe(space.len())?;
        }
        Ok(ClosureModel {
            space,
            valuation,
            labels: None,
        })
    }

    /// Builds a model from raw edges and index-based valuation sets.
    pub fn from_edges<E, V, S>(n: usize, edges: E, valuation: V) -> Result<Self>
    where
        E: IntoIterator<Item = (usize, usize)>,
        V: IntoIterator<Item = (S, Vec<usize>)>,
        S: Into<String>,
    {
        let space = SpaceGraph::from_edges(n, edges)?;
        let mut val = BTreeMap::new();
        for (letter, members) in valuation {
            let letter = letter.into();
            let set = PointSet::from_indices(n, members)?;
            if val.insert(letter.clone(), set).is_some() {
                return Err(Error::DuplicateLetter(letter));
            }
        }
        Self::new(space, val)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.space.len() {
            return Err(Error::UniverseMismatch {
                expected: self.space.len(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn space(&self) -> &SpaceGraph {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn valuation(&self) -> &BTreeMap<String, PointSet> {
        &self.valuation
    }

    pub fn letter(&self, name: &str) -> Option<&PointSet> {
        self.valuation.get(name)
    }

    pub fn set_letter(&mut self, name: impl Into<String>, set: PointSet) -> Result<()> {
        set.check_universe(self.space.len())?;
        self.valuation.insert(name.into(), set);
        Ok(())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a point: its label, or its index.
    pub fn name_of(&self, p: PointId) -> String {
        match &self.labels {
            Some(l) => l[p.index()].clone(),
            None => p.to_string(),
        }
    }

    fn name_index(&self) -> HashMap<String, usize> {
        (0..self.len()).map(|i| (self.name_of(PointId::from(i)), i)).collect()
    }
}

// valuation is an object on disk; keep duplicate keys visible to the loader
mod valuation_object {
    use serde::de::{MapAccess, Visitor};
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &[(String, Vec<String>)], s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(v.len()))?;
        for (k, names) in v {
            m.serialize_entry(k, names)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(String, Vec<String>)>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<(String, Vec<String>)>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping letters to node lists")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry()? {
                    out.push(entry);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    nodes: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    symmetric: bool,
    #[serde(default, with = "valuation_object")]
    valuation: Vec<(String, Vec<String>)>,
}

/// Parses a model file.
pub fn load_model(bytes: &[u8]) -> Result<ClosureModel> {
    let file: ModelFile = serde_json::from_slice(bytes)?;
    let n = file.nodes.len();
    let mut index = HashMap::with_capacity(n);
    for (i, name) in file.nodes.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(Error::DuplicateNode(name.clone()));
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    };

    let mut edges = Vec::with_capacity(file.edges.len() * if file.symmetric { 2 } else { 1 });
    for (from, to) in &file.edges {
        let (a, b) = (lookup(from)? as u32, lookup(to)? as u32);
        edges.push((a, b));
        if file.symmetric {
            edges.push((b, a));
        }
    }
    let space = SpaceGraph::from_checked_edges(n, edges);

    let mut valuation = BTreeMap::new();
    for (letter, names) in &file.valuation {
        let mut set = PointSet::empty(n);
        for name in names {
            set.insert(PointId::from(lookup(name)?));
        }
        if valuation.insert(letter.clone(), set).is_some() {
            return Err(Error::DuplicateLetter(letter.clone()));
        }
    }
    Ok(ClosureModel {
        space,
        valuation,
        labels: Some(file.nodes),
    })
}

/// Serializes a model with explicit directed edges (`symmetric: false`).
pub fn save_model(model: &ClosureModel) -> Vec<u8> {
    let name = |p: PointId| model.name_of(p);
    let repr = ModelFile {
        nodes: (0..model.len()).map(|i| name(PointId::from(i))).collect(),
        edges: model.space.edges().map(|(a, b)| (name(a), name(b))).collect(),
        symmetric: false,
        valuation: model
            .valuation
            .iter()
            .map(|(k, set)| (k.clone(), set.iter().map(name).collect()))
            .collect(),
    };
    serde_json::to_vec(&repr).expect("model serialization cannot fail")
}

/// Satisfying points of a formula, as produced by the checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultSet {
    pub formula: String,
    pub members: PointSet,
}

#[derive(Serialize, Deserialize)]
struct ResultFile {
    formula: String,
    points: Vec<String>,
}

/// Serializes a result with points named as in `model`.
pub fn save_result(result: &ResultSet, model: &ClosureModel) -> Result<Vec<u8>> {
    result.members.check_universe(model.len())?;
    let file = ResultFile {
        formula: result.formula.clone(),
        points: result.members.iter().map(|p| model.name_of(p)).collect(),
    };
    Ok(serde_json::to_vec(&file)?)
}

pub fn load_result(bytes: &[u8], model: &ClosureModel) -> Result<ResultSet> {
    let file: ResultFile = serde_json::from_slice(bytes)?;
    let index = model.name_index();
    let mut members = PointSet::empty(model.len());
    for name in &file.points {
        let i = index.get(name).ok_or_else(|| Error::UnknownNode(name.clone()))?;
        members.insert(PointId::from(*i));
    }
    Ok(ResultSet {
        formula: file.formula,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_model() {
        let m = load_model(br#"{"nodes":[],"edges":[],"symmetric":false,"valuation":{}}"#).unwrap();
        assert_eq!(m.len(), 0);
        assert_eq!(m.space().edge_count(), 0);
    }

    #[test]
    fn symmetric_loading() {
        let m = load_model(br#"{"nodes":["a","b","c"],"edges":[["a","b"],["b","c"],["b","a"]],"symmetric":true,"valuation":{"p":["c"]}}"#).unwrap();
        assert_eq!(m.space().edge_count(), 4);
        assert_eq!(m.letter("p").unwrap().to_indices(), vec![2]);
    }

    #[test]
    fn validation_errors() {
        type Case = (&'static str, fn(&Error) -> bool);
        let cases: &[Case] = &[
            (
                r#"{"nodes":["a"],"edges":[["a","z"]]}"#,
                |e| matches!(e, Error::UnknownNode(n) if n == "z"),
            ),
            (
                r#"{"nodes":["a"],"valuation":{"p":["q"]}}"#,
                |e| matches!(e, Error::UnknownNode(n) if n == "q"),
            ),
            (
                r#"{"nodes":["a"],"valuation":{"p":[],"p":["a"]}}"#,
                |e| matches!(e, Error::DuplicateLetter(p) if p == "p"),
            ),
            (r#"{"nodes":["a","a"]}"#, |e| matches!(e, Error::DuplicateNode(_))),
            (r#"{"nodes":["a"],"edges":[["a"]]}"#, |e| matches!(e, Error::Json(_))),
            (r#"{"nodes":"#, |e| matches!(e, Error::Json(_))),
        ];
        for (src, check) in cases {
            let err = load_model(src.as_bytes()).unwrap_err();
            assert!(check(&err), "{src}: {err:?}");
        }
    }

    #[test]
    fn chain_from_edges() {
        let m = ClosureModel::from_edges(3, [(0, 1), (1, 2)], [("p", vec![0])]).unwrap();
        assert_eq!(m.space().edge_count(), 2);
        assert!(m.space().contains_edge(PointId(0), PointId(1)));
        assert_eq!(m.letter("p").unwrap().to_indices(), vec![0]);
        assert!(matches!(
            ClosureModel::from_edges(3, [(0, 3)], [("p", vec![])]),
            Err(Error::PointOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            ClosureModel::from_edges(3, [], [("p", vec![5])]),
            Err(Error::PointOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn empty_result_bytes() {
        let m = ClosureModel::from_edges(2, [], Vec::<(String, Vec<usize>)>::new()).unwrap();
        let r = ResultSet {
            formula: "bot".into(),
            members: PointSet::empty(2),
        };
        assert_eq!(save_result(&r, &m).unwrap(), br#"{"formula":"bot","points":[]}"#);
    }

    #[test]
    fn stable_key_order() {
        let m = ClosureModel::from_edges(2, [(1, 0)], [("z", vec![1]), ("a", vec![0])]).unwrap();
        let text = String::from_utf8(save_model(&m)).unwrap();
        assert_eq!(
            text,
            r#"{"nodes":["0","1"],"edges":[["1","0"]],"symmetric":false,"valuation":{"a":["0"],"z":["1"]}}"#
        );
    }

    fn arb_model() -> impl Strategy<Value = ClosureModel> {
        (0usize..=30).prop_flat_map(|n| {
            let edge = (0..n.max(1), 0..n.max(1));
            let edges = if n == 0 {
                Just(vec![]).boxed()
            } else {
                prop::collection::vec(edge, 0..90).boxed()
            };
            let set = if n == 0 {
                Just(vec![]).boxed()
            } else {
                prop::collection::vec(0..n, 0..n).boxed()
            };
            (Just(n), edges, set.clone(), set)
                .prop_map(|(n, e, p, q)| ClosureModel::from_edges(n, e, [("p", p), ("q", q)]).unwrap())
        })
    }

    proptest! {
        #[test]
        fn model_roundtrip(m in arb_model()) {
            let back = load_model(&save_model(&m)).unwrap();
            // the loader attaches labels; compare against the labelled original
            let labels = (0..m.len()).map(|i| i.to_string()).collect();
            prop_assert_eq!(back.clone(), m.with_labels(labels).unwrap());
            prop_assert_eq!(save_model(&back), save_model(&back.clone()));
        }

        #[test]
        fn result_roundtrip(m in arb_model(), bits in any::<u32>()) {
            let members = PointSet::from_indices(m.len(), (0..m.len()).filter(|i| bits & (1 << i) != 0)).unwrap();
            let r = ResultSet { formula: "p U q".into(), members };
            let bytes = save_result(&r, &m).unwrap();
            prop_assert_eq!(load_result(&bytes, &m).unwrap(), r);
        }
    }
}
