//! Faces of the Pareto front and their JSON form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hasse::{HasseDiagram, VertexColour, VertexId};

/// Free parameter of a face, numbered from 1 in order of the smallest
/// variable index of its aggregate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamId(pub usize);

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Binding {
    FixedZero,
    FixedOne,
    Free(ParamId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Aggregate {
    pub indices: Vec<usize>,
    pub binding: Binding,
}

/// One face: variables split into aggregates fixed at 0, fixed at 1, or
/// sharing a free parameter. `param_constraints` holds `(a, b)` for
/// `t_a >= t_b`, transitively reduced.
///
/// The representation is canonical: aggregates are sorted by smallest
/// index and constraints are sorted, so structural equality is point-set
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParetoFace {
    aggregates: Vec<Aggregate>,
    param_constraints: Vec<(ParamId, ParamId)>,
    dimension: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Const(u8),
    Param(ParamId),
}

impl ParetoFace {
    /// Canonicalizes and checks a face description.
    pub fn new(
        mut aggregates: Vec<Aggregate>,
        constraints: Vec<(ParamId, ParamId)>,
    ) -> Result<ParetoFace> {
        for agg in &mut aggregates {
            agg.indices.sort_unstable();
            if agg.indices.is_empty() {
                return Err(Error::Precondition("empty aggregate in face".into()));
            }
        }
        aggregates.sort();
        // renumber parameters by position so equal point sets compare equal
        let mut renamed: BTreeMap<ParamId, ParamId> = BTreeMap::new();
        for agg in &mut aggregates {
            if let Binding::Free(p) = agg.binding {
                let next = ParamId(renamed.len() + 1);
                if renamed.insert(p, next).is_some() {
                    return Err(Error::Precondition(format!(
                        "parameter {p} shared by two aggregates"
                    )));
                }
                agg.binding = Binding::Free(next);
            }
        }
        let constraints = constraints
            .into_iter()
            .map(|(a, b)| match (renamed.get(&a), renamed.get(&b)) {
                (Some(&a), Some(&b)) => Ok((a, b)),
                _ => Err(Error::Precondition(format!(
                    "constraint on unknown parameter {a} or {b}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let params = renamed;
        let mut face = ParetoFace {
            dimension: params.len(),
            aggregates,
            param_constraints: constraints,
        };
        face.param_constraints.sort();
        face.param_constraints.dedup();
        Ok(face)
    }

    pub fn aggregates(&self) -> &[Aggregate] {
        &self.aggregates
    }

    pub fn param_constraints(&self) -> &[(ParamId, ParamId)] {
        &self.param_constraints
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of variables covered by the face.
    pub fn n(&self) -> usize {
        self.aggregates.iter().map(|a| a.indices.len()).sum()
    }

    /// The free-parameter aggregates.
    pub fn free_aggregates(&self) -> impl Iterator<Item = (ParamId, &[usize])> + '_ {
        self.aggregates.iter().filter_map(|a| match a.binding {
            Binding::Free(p) => Some((p, a.indices.as_slice())),
            _ => None,
        })
    }

    /// Partition of the variables, ignoring bindings.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.aggregates.iter().map(|a| a.indices.clone()).collect()
    }

    fn values(&self) -> BTreeMap<usize, Value> {
        let mut out = BTreeMap::new();
        for agg in &self.aggregates {
            let value = match agg.binding {
                Binding::FixedZero => Value::Const(0),
                Binding::FixedOne => Value::Const(1),
                Binding::Free(p) => Value::Param(p),
            };
            for &i in &agg.indices {
                out.insert(i, value);
            }
        }
        out
    }

    /// Pairs `(a, b)` with `t_a >= t_b` implied by the constraints (reflexive).
    fn param_order(&self) -> BTreeSet<(ParamId, ParamId)> {
        let params: Vec<ParamId> = self.free_aggregates().map(|(p, _)| p).collect();
        let mut order: BTreeSet<(ParamId, ParamId)> = params.iter().map(|&p| (p, p)).collect();
        order.extend(self.param_constraints.iter().copied());
        // Floyd-Warshall style closure; dimensions are small
        for &k in &params {
            for &i in &params {
                if !order.contains(&(i, k)) {
                    continue;
                }
                for &j in &params {
                    if order.contains(&(k, j)) {
                        order.insert((i, j));
                    }
                }
            }
        }
        order
    }

    /// True when every point of `self` is also a point of `other`.
    pub fn is_subset_of(&self, other: &ParetoFace) -> bool {
        let mine = self.values();
        let order = self.param_order();
        let mut image: BTreeMap<ParamId, Value> = BTreeMap::new();
        for agg in &other.aggregates {
            let mut values = agg.indices.iter().map(|i| mine.get(i).copied());
            let Some(Some(first)) = values.next() else {
                return false;
            };
            if !values.all(|v| v == Some(first)) {
                return false;
            }
            match (agg.binding, first) {
                (Binding::FixedZero, Value::Const(0)) | (Binding::FixedOne, Value::Const(1)) => {}
                (Binding::Free(q), v) => {
                    image.insert(q, v);
                }
                _ => return false,
            }
        }
        other
            .param_constraints
            .iter()
            .all(|(a, b)| match (image[a], image[b]) {
                (Value::Const(x), Value::Const(y)) => x >= y,
                (Value::Param(_), Value::Const(y)) => y == 0,
                (Value::Const(x), Value::Param(_)) => x == 1,
                (Value::Param(p), Value::Param(q)) => order.contains(&(p, q)),
            })
    }

    /// True when the aggregates partition `1..=n`.
    pub fn covers(&self, n: usize) -> bool {
        let mut seen = vec![false; n + 1];
        for agg in &self.aggregates {
            for &i in &agg.indices {
                if i == 0 || i > n || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Copy of this face with one aggregate's binding replaced.
    pub fn with_binding(&self, aggregate: usize, binding: Binding) -> Result<ParetoFace> {
        let mut aggregates = self.aggregates.clone();
        let old = std::mem::replace(&mut aggregates[aggregate].binding, binding);
        let mut constraints = self.param_constraints.clone();
        if let Binding::Free(p) = old {
            constraints.retain(|(a, b)| *a != p && *b != p);
        }
        ParetoFace::new(aggregates, constraints)
    }
}

/// Reads the face parameterized by a terminal diagram.
///
/// Aggregates merged with the lower bound are fixed at 0, those merged
/// with the upper bound at 1, and every trade-off vertex is a free
/// parameter. Order constraints between trade-off vertices become
/// parameter constraints.
pub fn face_from_terminal(diagram: &HasseDiagram) -> Result<ParetoFace> {
    if let Some(v) = diagram.vertices().find(|v| v.colour().is_monochrome()) {
        return Err(Error::NotTerminal(v.id()));
    }
    let upper = diagram.signature().upper_index();
    let mut params: BTreeMap<VertexId, ParamId> = BTreeMap::new();
    let mut aggregates = Vec::new();
    for v in diagram.vertices() {
        let indices: Vec<usize> = v
            .indices()
            .iter()
            .copied()
            .filter(|&i| i != 0 && i != upper)
            .collect();
        if indices.is_empty() {
            continue;
        }
        let binding = match v.colour() {
            VertexColour::BoundaryLower => Binding::FixedZero,
            VertexColour::BoundaryUpper => Binding::FixedOne,
            VertexColour::TradeOff => {
                let p = ParamId(params.len() + 1);
                params.insert(v.id(), p);
                Binding::Free(p)
            }
            _ => unreachable!("terminal diagrams hold no monochromatic vertex"),
        };
        aggregates.push(Aggregate { indices, binding });
    }

    // the diagram is reduced, so its edges between trade-off vertices are
    // the covering relation, apart from frozen edges kept despite a longer
    // path; paths between trade-off vertices never pass through a bound
    let constraints = diagram
        .edges()
        .filter_map(|(a, b, state)| {
            let (&pa, &pb) = (params.get(&a)?, params.get(&b)?);
            (!state.is_frozen() || !diagram.reaches_avoiding_edge(a, b)).then_some((pa, pb))
        })
        .collect();
    ParetoFace::new(aggregates, constraints)
}

/// Removes duplicate faces and faces whose point set lies inside another
/// face. The result is sorted canonically.
pub fn dedupe_and_prune(faces: &[ParetoFace]) -> Vec<ParetoFace> {
    let mut unique: Vec<ParetoFace> = faces.to_vec();
    unique.sort();
    unique.dedup();
    unique
        .iter()
        .filter(|f| !unique.iter().any(|g| g != *f && f.is_subset_of(g)))
        .cloned()
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AggregateRecord {
    indices: Vec<usize>,
    binding: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceRecord {
    aggregates: Vec<AggregateRecord>,
    constraints: Vec<[String; 2]>,
    dimension: usize,
}

impl From<&ParetoFace> for FaceRecord {
    fn from(face: &ParetoFace) -> Self {
        FaceRecord {
            aggregates: face
                .aggregates
                .iter()
                .map(|a| {
                    let (binding, param) = match a.binding {
                        Binding::FixedZero => ("zero", None),
                        Binding::FixedOne => ("one", None),
                        Binding::Free(p) => ("free", Some(p.to_string())),
                    };
                    AggregateRecord {
                        indices: a.indices.clone(),
                        binding: binding.to_string(),
                        param,
                    }
                })
                .collect(),
            constraints: face
                .param_constraints
                .iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect(),
            dimension: face.dimension,
        }
    }
}

fn parse_param(text: &str) -> Result<ParamId> {
    text.strip_prefix('t')
        .and_then(|s| s.parse().ok())
        .map(ParamId)
        .ok_or_else(|| Error::Precondition(format!("bad parameter name {text:?}")))
}

impl TryFrom<FaceRecord> for ParetoFace {
    type Error = Error;

    fn try_from(record: FaceRecord) -> Result<Self> {
        let aggregates = record
            .aggregates
            .into_iter()
            .map(|a| {
                let binding = match (a.binding.as_str(), a.param) {
                    ("zero", None) => Binding::FixedZero,
                    ("one", None) => Binding::FixedOne,
                    ("free", Some(p)) => Binding::Free(parse_param(&p)?),
                    (other, _) => {
                        return Err(Error::Precondition(format!("bad binding {other:?}")))
                    }
                };
                Ok(Aggregate {
                    indices: a.indices,
                    binding,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let constraints = record
            .constraints
            .iter()
            .map(|[a, b]| Ok((parse_param(a)?, parse_param(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let face = ParetoFace::new(aggregates, constraints)?;
        if face.dimension != record.dimension {
            return Err(Error::Precondition(format!(
                "declared dimension {} but found {} free aggregates",
                record.dimension, face.dimension
            )));
        }
        Ok(face)
    }
}

/// Serializes faces as a JSON array (pretty printed, trailing newline).
pub fn faces_to_json(faces: &[ParetoFace]) -> String {
    let records: Vec<FaceRecord> = faces.iter().map(FaceRecord::from).collect();
    let mut text = serde_json::to_string_pretty(&records).expect("faces serialize");
    text.push('\n');
    text
}

pub fn faces_from_json(text: &str) -> Result<Vec<ParetoFace>> {
    let records: Vec<FaceRecord> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    records.into_iter().map(ParetoFace::try_from).collect()
}
