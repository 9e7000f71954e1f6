//! The incidence structure between the nonzero vectors of `I1^(n+1)` and the
//! NFCS containing them. At `q = n = 2` it has 63 nodes and 21 polygons of 7
//! nodes each.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;
use ternion_core::{FreeModule, RadVector, Result, TVector, VectorOrbit};

use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, Serialize)]
pub struct Node {
    pub id: usize,
    /// Literal form `x,y,z;...`, which also fixes the node order.
    pub vector: String,
    /// Coordinates in `F^(n+1)` for vectors of `(rad R)^(n+1)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rad: Option<RadVector>,
    pub case: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    /// Number of NFCS containing the vector.
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Polygon {
    pub id: usize,
    pub generator: String,
    /// Ids of the `q^3 - 1` nonzero members, ascending.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SnowflakeGraph {
    pub schema: u32,
    pub q: u64,
    pub n: usize,
    pub nodes: Vec<Node>,
    pub polygons: Vec<Polygon>,
}

impl SnowflakeGraph {
    pub fn build(module: &FreeModule) -> Result<Self> {
        let nfcs = module.enumerate_nfcs()?;
        let vectors: Vec<TVector> = module.i1_vectors()?.filter(|x| !x.is_zero()).collect();
        let ids: BTreeMap<&TVector, usize> =
            vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();

        let polygons: Vec<Polygon> = nfcs
            .iter()
            .enumerate()
            .map(|(id, s)| {
                let members: BTreeSet<usize> = module
                    .span(&s.generator)
                    .iter()
                    .filter(|x| !x.is_zero())
                    .map(|x| ids[x])
                    .collect();
                Polygon {
                    id,
                    generator: s.generator.to_string(),
                    members: members.into_iter().collect(),
                }
            })
            .collect();

        let mut multiplicity = vec![0u64; vectors.len()];
        for p in &polygons {
            for &m in &p.members {
                multiplicity[m] += 1;
            }
        }
        let nodes = vectors
            .iter()
            .enumerate()
            .map(|(id, v)| {
                let orbit = module.classify_vector(v);
                Node {
                    id,
                    vector: v.to_string(),
                    rad: module.rad_coordinates(v),
                    case: orbit.case_number(),
                    b: match orbit {
                        VectorOrbit::Case3(b) => Some(b.index()),
                        _ => None,
                    },
                    multiplicity: multiplicity[id],
                }
            })
            .collect();
        Ok(SnowflakeGraph {
            schema: SCHEMA_VERSION,
            q: module.q(),
            n: module.n(),
            nodes,
            polygons,
        })
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Graphviz rendering: one node per vector, sized by multiplicity class,
    /// and one closed cycle of edges per polygon.
    pub fn to_dot(&self) -> String {
        let classes: BTreeSet<u64> = self.nodes.iter().map(|n| n.multiplicity).collect();
        let rank: BTreeMap<u64, usize> = classes.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut out = String::new();
        writeln!(out, "graph snowflake {{").unwrap();
        writeln!(out, "  graph [q={}, n={}];", self.q, self.n).unwrap();
        writeln!(out, "  node [shape=circle, fixedsize=true];").unwrap();
        for node in &self.nodes {
            let width = 0.2 + 0.15 * rank[&node.multiplicity] as f64;
            writeln!(
                out,
                "  n{} [label=\"{}\", case={}, multiplicity={}, width={:.2}];",
                node.id, node.vector, node.case, node.multiplicity, width
            )
            .unwrap();
        }
        for p in &self.polygons {
            let m = &p.members;
            for (i, &a) in m.iter().enumerate() {
                let b = m[(i + 1) % m.len()];
                writeln!(out, "  n{a} -- n{b} [polygon={}];", p.id).unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}
