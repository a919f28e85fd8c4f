//! The JSON input document.
//!
//! ```json
//! {"n": 2,
//!  "regions": [[1], [0, 1]],
//!  "operator": {"[]": [], "[0]": [], "[1]": [0, 1], "[0,1]": [0, 1]},
//!  "topology": [[], [1], [0, 1]]}
//! ```
//!
//! Subsets are strictly ascending element arrays. Operator keys are the
//! same arrays written as strings; the operator must cover all `2^n`
//! subsets. Unknown fields are rejected.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;

use catbase::{OperatorTable, PointSet, MAX_N};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("{0}")]
pub struct ParseError(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub n: usize,
    pub regions: Vec<PointSet>,
    pub operator: Option<OperatorTable>,
    pub topology: Option<Vec<PointSet>>,
}

thread_local! {
    /// Ground-set size for the subset deserializers of the current parse.
    static GROUND: Cell<usize> = const { Cell::new(0) };
}

fn subset_from_elements<E: de::Error>(elements: &[u64]) -> Result<PointSet, E> {
    let n = GROUND.with(Cell::get);
    for (i, &e) in elements.iter().enumerate() {
        if e >= n as u64 {
            return Err(E::custom(format!(
                "element {e} at index {i} out of range for n={n}"
            )));
        }
        if i > 0 && elements[i - 1] >= e {
            return Err(E::custom(format!(
                "subset {elements:?} is not strictly ascending"
            )));
        }
    }
    PointSet::from_elements(n, elements.iter().map(|&e| e as usize)).map_err(E::custom)
}

struct Subset(PointSet);

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let elements = Vec::<u64>::deserialize(d)?;
        subset_from_elements(&elements).map(Subset)
    }
}

struct SubsetKey(PointSet);

impl<'de> Deserialize<'de> for SubsetKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct KeyVisitor;
        impl Visitor<'_> for KeyVisitor {
            type Value = SubsetKey;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a subset written as a string such as \"[0,1]\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<SubsetKey, E> {
                let elements: Vec<u64> = serde_json::from_str(v)
                    .map_err(|_| E::custom(format!("operator key {v:?} is not an element array")))?;
                subset_from_elements(&elements).map(SubsetKey)
            }
        }
        d.deserialize_str(KeyVisitor)
    }
}

struct OperatorMap(Vec<(PointSet, PointSet)>);

impl<'de> Deserialize<'de> for OperatorMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct MapVisitor;
        impl<'de> Visitor<'de> for MapVisitor {
            type Value = OperatorMap;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from subset keys to subsets")
            }
            fn visit_map<A: de::MapAccess<'de>>(self, mut map: A) -> Result<OperatorMap, A::Error> {
                let mut entries: Vec<(PointSet, PointSet)> = Vec::new();
                while let Some((SubsetKey(k), Subset(v))) = map.next_entry()? {
                    if entries.iter().any(|&(seen, _)| seen == k) {
                        return Err(de::Error::custom(format!("duplicate operator key {k}")));
                    }
                    entries.push((k, v));
                }
                Ok(OperatorMap(entries))
            }
        }
        d.deserialize_map(MapVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[allow(dead_code)]
    n: usize,
    regions: Vec<Subset>,
    #[serde(default)]
    operator: Option<OperatorMap>,
    #[serde(default)]
    topology: Option<Vec<Subset>>,
}

#[derive(Deserialize)]
struct Header {
    n: usize,
}

fn check_n(n: usize) -> Result<(), ParseError> {
    if n == 0 {
        return Err(ParseError("n must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(ParseError(format!("n={n} exceeds the limit {MAX_N}")));
    }
    Ok(())
}

fn operator_from_entries(n: usize, entries: Vec<(PointSet, PointSet)>) -> Result<OperatorTable, ParseError> {
    let size = 1usize << n;
    let mut table: Vec<Option<u32>> = vec![None; size];
    for (k, v) in entries {
        table[k.bits() as usize] = Some(v.bits());
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(s, v)| {
            v.ok_or_else(|| {
                let s = PointSet::new(n, s as u32).expect("index below 2^n");
                ParseError(format!("operator has no entry for {}", subset_key(s)))
            })
        })
        .collect::<Result<Vec<u32>, _>>()?;
    OperatorTable::new(n, table).map_err(|e| ParseError(e.to_string()))
}

/// Parses a full input document.
pub fn parse_input(text: &str) -> Result<InputDocument, ParseError> {
    let header: Header =
        serde_json::from_str(text).map_err(|e| ParseError(format!("malformed input: {e}")))?;
    check_n(header.n)?;
    GROUND.with(|g| g.set(header.n));
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| ParseError(format!("malformed input: {e}")))?;
    let operator = raw
        .operator
        .map(|m| operator_from_entries(header.n, m.0))
        .transpose()?;
    Ok(InputDocument {
        n: header.n,
        regions: raw.regions.into_iter().map(|s| s.0).collect(),
        operator,
        topology: raw.topology.map(|v| v.into_iter().map(|s| s.0).collect()),
    })
}

/// Parses a standalone operator file: a JSON map in the `operator` format.
pub fn parse_operator(text: &str, n: usize) -> Result<OperatorTable, ParseError> {
    check_n(n)?;
    GROUND.with(|g| g.set(n));
    let map: OperatorMap =
        serde_json::from_str(text).map_err(|e| ParseError(format!("malformed operator: {e}")))?;
    operator_from_entries(n, map.0)
}

/// Parses one subset written as an element array, e.g. `[0,2]`.
pub fn parse_subset(text: &str, n: usize) -> Result<PointSet, ParseError> {
    check_n(n)?;
    GROUND.with(|g| g.set(n));
    let s: Subset =
        serde_json::from_str(text).map_err(|e| ParseError(format!("malformed subset: {e}")))?;
    Ok(s.0)
}

/// Canonical key text of a subset, e.g. `[0,1]`.
pub fn subset_key(s: PointSet) -> String {
    serde_json::to_string(&s).expect("element arrays serialize")
}

#[derive(Serialize)]
struct OutDocument<'a> {
    n: usize,
    regions: &'a [PointSet],
    #[serde(skip_serializing_if = "Option::is_none")]
    operator: Option<BTreeMap<String, PointSet>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    topology: Option<&'a [PointSet]>,
}

pub fn serialize_input(doc: &InputDocument) -> String {
    let out = OutDocument {
        n: doc.n,
        regions: &doc.regions,
        operator: doc
            .operator
            .as_ref()
            .map(|d| d.entries().map(|(s, v)| (subset_key(s), v)).collect()),
        topology: doc.topology.as_deref(),
    };
    serde_json::to_string(&out).expect("document serializes")
}
