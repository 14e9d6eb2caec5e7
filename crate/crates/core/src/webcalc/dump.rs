//! JSON form of a web.
//!
//! Half-edges are numbered: vertex slots first, in vertex order, then the
//! boundary points. Each vertex lists its half-edges counter-clockwise
//! (trivalent: single, single, double).
//!
//! ```json
//! {"vertices": [{"kind": "tetravalent", "half_edges": [0, 1, 2, 3]}],
//!  "boundary": [{"strand": "single", "half_edge": 4}],
//!  "pairings": [[0, 1], [2, 4], ...],
//!  "free_loops": {"single": 0, "double": 0}}
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::web::{End, Strand, VertexKind, Web};
use super::WebError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDump {
    pub kind: VertexKind,
    pub half_edges: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDump {
    pub strand: Strand,
    pub half_edge: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopDump {
    #[serde(default)]
    pub single: u32,
    #[serde(default)]
    pub double: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebDump {
    #[serde(default)]
    pub vertices: Vec<VertexDump>,
    #[serde(default)]
    pub boundary: Vec<BoundaryDump>,
    #[serde(default)]
    pub pairings: Vec<[u32; 2]>,
    #[serde(default)]
    pub free_loops: LoopDump,
}

impl WebDump {
    pub fn from_web(w: &Web) -> Self {
        let mut ids = HashMap::new();
        let mut next = 0u32;
        let mut vertices = Vec::with_capacity(w.kinds.len());
        for (v, k) in w.kinds.iter().enumerate() {
            let mut he = Vec::with_capacity(k.degree());
            for s in 0..k.degree() {
                ids.insert(End::V(v as u32, s as u8), next);
                he.push(next);
                next += 1;
            }
            vertices.push(VertexDump {
                kind: *k,
                half_edges: he,
            });
        }
        let mut boundary = Vec::with_capacity(w.bnd.len());
        for (i, t) in w.boundary.iter().enumerate() {
            ids.insert(End::B(i as u32), next);
            boundary.push(BoundaryDump {
                strand: *t,
                half_edge: next,
            });
            next += 1;
        }
        let mut pairings = Vec::new();
        for e in w.all_ends() {
            let (a, b) = (ids[&e], ids[&w.partner(e)]);
            if a < b {
                pairings.push([a, b]);
            }
        }
        WebDump {
            vertices,
            boundary,
            pairings,
            free_loops: LoopDump {
                single: w.loops[0],
                double: w.loops[1],
            },
        }
    }

    pub fn to_web(&self) -> Result<Web, WebError> {
        let mut ends: HashMap<u32, End> = HashMap::new();
        let mut claim = |id: u32, e: End| {
            if ends.insert(id, e).is_some() {
                Err(WebError::Malformed(format!("half-edge {id} listed twice")))
            } else {
                Ok(())
            }
        };
        for (v, vd) in self.vertices.iter().enumerate() {
            if vd.half_edges.len() != vd.kind.degree() {
                return Err(WebError::Malformed(format!(
                    "vertex {v} has {} half-edges",
                    vd.half_edges.len()
                )));
            }
            for (s, id) in vd.half_edges.iter().enumerate() {
                claim(*id, End::V(v as u32, s as u8))?;
            }
        }
        for (i, b) in self.boundary.iter().enumerate() {
            claim(b.half_edge, End::B(i as u32))?;
        }
        let mut partner: HashMap<End, End> = HashMap::new();
        for [a, b] in &self.pairings {
            let ea = *ends
                .get(a)
                .ok_or_else(|| WebError::Malformed(format!("unknown half-edge {a}")))?;
            let eb = *ends
                .get(b)
                .ok_or_else(|| WebError::Malformed(format!("unknown half-edge {b}")))?;
            if partner.insert(ea, eb).is_some() || partner.insert(eb, ea).is_some() {
                return Err(WebError::Malformed(format!(
                    "half-edge in more than one pairing: {a} or {b}"
                )));
            }
        }
        let get = |e: End| {
            partner
                .get(&e)
                .copied()
                .ok_or_else(|| WebError::Malformed(format!("unpaired half-edge {e:?}")))
        };
        let kinds: Vec<VertexKind> = self.vertices.iter().map(|v| v.kind).collect();
        let adj = kinds
            .iter()
            .enumerate()
            .map(|(v, k)| {
                (0..k.degree())
                    .map(|s| get(End::V(v as u32, s as u8)))
                    .collect()
            })
            .collect::<Result<Vec<Vec<End>>, _>>()?;
        let bnd = (0..self.boundary.len())
            .map(|i| get(End::B(i as u32)))
            .collect::<Result<Vec<_>, _>>()?;
        Web::from_parts(
            kinds,
            adj,
            self.boundary.iter().map(|b| b.strand).collect(),
            bnd,
            [self.free_loops.single, self.free_loops.double],
        )
    }
}

pub fn dump_web(w: &Web) -> String {
    serde_json::to_string_pretty(&WebDump::from_web(w)).expect("web dumps serialize")
}

pub fn parse_web(s: &str) -> Result<Web, WebError> {
    let d: WebDump = serde_json::from_str(s).map_err(|e| WebError::Malformed(e.to_string()))?;
    d.to_web()
}
