use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, to_graph6};

use super::TheoremId;

/// The input a checker runs on.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Graph(Graph),
    Star(usize),
    Edge { g: Graph, u: usize, v: usize },
    Subdivision { g: Graph, edges: Vec<(usize, usize)> },
    Identify { g1: Graph, u: usize, g2: Graph, v: usize },
    Subtree { t: Graph, vertices: Vec<usize> },
    Transfer { g: Graph, u: usize, v: usize, targets: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    Graph,
    Star,
    Edge,
    Subdivision,
    Identify,
    Subtree,
    Transfer,
}

impl TheoremId {
    pub fn instance_kind(self) -> InstanceKind {
        match self {
            TheoremId::L2_4 | TheoremId::C2_2 => InstanceKind::Graph,
            TheoremId::C2_3 => InstanceKind::Star,
            TheoremId::T3_1 | TheoremId::T4_1 => InstanceKind::Edge,
            TheoremId::C3_2 => InstanceKind::Subdivision,
            TheoremId::T3_3 | TheoremId::C3_4 | TheoremId::T4_2 => InstanceKind::Identify,
            TheoremId::C3_5 => InstanceKind::Subtree,
            TheoremId::T3_6 | TheoremId::T4_3 => InstanceKind::Transfer,
        }
    }
}

fn g6(g: &Graph) -> String {
    to_graph6(g).expect("graphs never exceed 62 vertices")
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::Graph(_) => InstanceKind::Graph,
            Instance::Star(_) => InstanceKind::Star,
            Instance::Edge { .. } => InstanceKind::Edge,
            Instance::Subdivision { .. } => InstanceKind::Subdivision,
            Instance::Identify { .. } => InstanceKind::Identify,
            Instance::Subtree { .. } => InstanceKind::Subtree,
            Instance::Transfer { .. } => InstanceKind::Transfer,
        }
    }

    /// The base graph: `G`, `G₁` for identification, `T` for subtrees.
    pub fn primary(&self) -> Option<&Graph> {
        match self {
            Instance::Graph(g)
            | Instance::Edge { g, .. }
            | Instance::Subdivision { g, .. }
            | Instance::Transfer { g, .. } => Some(g),
            Instance::Identify { g1, .. } => Some(g1),
            Instance::Subtree { t, .. } => Some(t),
            Instance::Star(_) => None,
        }
    }

    pub fn primary_graph6(&self) -> String {
        match self {
            Instance::Star(n) => crate::graph::star(*n).map(|g| g6(&g)).unwrap_or_default(),
            other => g6(other.primary().expect("non-star instances carry a graph")),
        }
    }

    pub fn params(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        match self {
            Instance::Graph(_) => {}
            Instance::Star(n) => {
                p.insert("n".into(), json!(n));
            }
            Instance::Edge { u, v, .. } => {
                p.insert("u".into(), json!(u));
                p.insert("v".into(), json!(v));
            }
            Instance::Subdivision { edges, .. } => {
                p.insert("edges".into(), json!(edges));
            }
            Instance::Identify { u, g2, v, .. } => {
                p.insert("u".into(), json!(u));
                p.insert("g2".into(), json!(g6(g2)));
                p.insert("v".into(), json!(v));
            }
            Instance::Subtree { vertices, .. } => {
                p.insert("vertices".into(), json!(vertices));
            }
            Instance::Transfer { u, v, targets, .. } => {
                p.insert("u".into(), json!(u));
                p.insert("v".into(), json!(v));
                p.insert("targets".into(), json!(targets));
            }
        }
        p
    }

    /// Rebuilds an instance from the `graph6` and `params` fields of a verdict
    /// or witness record.
    pub fn from_params(kind: InstanceKind, graph6: &str, params: &BTreeMap<String, Value>) -> Result<Self> {
        let missing = |k: &str| Error::InvalidConfig(format!("missing or malformed parameter {k:?}"));
        let get_usize = |k: &str| -> Result<usize> {
            params.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| missing(k))
        };
        let get_list = |k: &str| -> Result<Vec<usize>> {
            params
                .get(k)
                .and_then(Value::as_array)
                .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
                .ok_or_else(|| missing(k))
        };
        if kind == InstanceKind::Star {
            return Ok(Instance::Star(get_usize("n")?));
        }
        let g = parse_graph6(graph6)?;
        Ok(match kind {
            InstanceKind::Graph => Instance::Graph(g),
            InstanceKind::Star => unreachable!(),
            InstanceKind::Edge => Instance::Edge { g, u: get_usize("u")?, v: get_usize("v")? },
            InstanceKind::Subdivision => {
                let edges = params
                    .get("edges")
                    .and_then(|e| serde_json::from_value::<Vec<(usize, usize)>>(e.clone()).ok())
                    .ok_or_else(|| missing("edges"))?;
                Instance::Subdivision { g, edges }
            }
            InstanceKind::Identify => {
                let g2 = params.get("g2").and_then(Value::as_str).ok_or_else(|| missing("g2"))?;
                Instance::Identify { g1: g, u: get_usize("u")?, g2: parse_graph6(g2)?, v: get_usize("v")? }
            }
            InstanceKind::Subtree => Instance::Subtree { t: g, vertices: get_list("vertices")? },
            InstanceKind::Transfer => Instance::Transfer {
                g,
                u: get_usize("u")?,
                v: get_usize("v")?,
                targets: get_list("targets")?,
            },
        })
    }
}
