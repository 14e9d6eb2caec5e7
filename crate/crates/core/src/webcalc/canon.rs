//! Canonical labeling of embedded webs.
//!
//! Vertices are relabeled in breadth-first order. Tetravalent slots are
//! rotated so the slot we entered through becomes slot 0; trivalent slots
//! keep their typed order. Open webs are rooted at boundary point 0, so
//! boundary positions are labeled. Closed components are minimized over all
//! starting darts and then sorted.

use super::web::{End, VertexKind, Web};

const UNSEEN: u32 = u32::MAX;
const BOUNDARY_TAG: u32 = 1 << 31;

struct Labeling<'a> {
    web: &'a Web,
    label: Vec<u32>,
    rot: Vec<u8>,
    order: Vec<u32>,
    code: Vec<u32>,
}

impl<'a> Labeling<'a> {
    fn new(web: &'a Web) -> Self {
        let n = web.kinds.len();
        Labeling {
            web,
            label: vec![UNSEEN; n],
            rot: vec![0; n],
            order: Vec::with_capacity(n),
            code: Vec::with_capacity(4 * n + web.bnd.len() + 4),
        }
    }

    fn enter(&mut self, v: u32, slot: u8) {
        let vi = v as usize;
        self.label[vi] = self.order.len() as u32;
        self.rot[vi] = match self.web.kinds[vi] {
            VertexKind::Tetravalent => slot,
            VertexKind::Trivalent => 0,
        };
        self.order.push(v);
    }

    fn emit(&mut self, e: End) {
        match e {
            End::B(i) => {
                self.code.push(BOUNDARY_TAG | i);
                self.code.push(0);
            }
            End::V(w, t) => {
                if self.label[w as usize] == UNSEEN {
                    self.enter(w, t);
                }
                let d = self.web.degree(w) as u8;
                let rel = (t + d - self.rot[w as usize]) % d;
                self.code.push(self.label[w as usize]);
                self.code.push(rel as u32);
            }
        }
    }

    /// Process the queue from position `from`; stops early once the code
    /// exceeds `bound`.
    fn run(&mut self, from: usize, bound: Option<&[u32]>) -> bool {
        let mut head = from;
        while head < self.order.len() {
            let v = self.order[head];
            let vi = v as usize;
            let kind = self.web.kinds[vi];
            self.code.push(match kind {
                VertexKind::Trivalent => 3,
                VertexKind::Tetravalent => 4,
            });
            let d = kind.degree() as u8;
            for c in 0..d {
                let s = (self.rot[vi] + c) % d;
                let e = self.web.adj[vi][s as usize];
                self.emit(e);
            }
            if let Some(b) = bound {
                let n = self.code.len().min(b.len());
                match self.code[..n].cmp(&b[..n]) {
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Less => {}
                    std::cmp::Ordering::Equal => {}
                }
            }
            head += 1;
        }
        true
    }

    fn remap(&self, e: End) -> End {
        match e {
            End::B(i) => End::B(i),
            End::V(w, t) => {
                let d = self.web.degree(w) as u8;
                End::V(self.label[w as usize], (t + d - self.rot[w as usize]) % d)
            }
        }
    }

    /// Rebuild the vertices in label order.
    fn build_vertices(&self) -> (Vec<VertexKind>, Vec<Vec<End>>) {
        let mut kinds = Vec::with_capacity(self.order.len());
        let mut adj = Vec::with_capacity(self.order.len());
        for &v in &self.order {
            let vi = v as usize;
            let k = self.web.kinds[vi];
            let d = k.degree() as u8;
            kinds.push(k);
            adj.push(
                (0..d)
                    .map(|c| self.remap(self.web.adj[vi][((self.rot[vi] + c) % d) as usize]))
                    .collect(),
            );
        }
        (kinds, adj)
    }
}

/// Canonical code and labeled copy of a connected closed web.
fn canonical_component(web: &Web) -> (Vec<u32>, Web) {
    debug_assert!(web.bnd.is_empty());
    let mut best: Option<Labeling> = None;
    for v in 0..web.kinds.len() as u32 {
        let starts: &[u8] = match web.kinds[v as usize] {
            VertexKind::Tetravalent => &[0, 1, 2, 3],
            VertexKind::Trivalent => &[0],
        };
        for &s in starts {
            let mut lab = Labeling::new(web);
            lab.enter(v, s);
            let bound = best.as_ref().map(|b| b.code.as_slice());
            if !lab.run(0, bound) {
                continue;
            }
            if best.as_ref().is_none_or(|b| lab.code < b.code) {
                best = Some(lab);
            }
        }
    }
    let best = best.expect("component has a vertex");
    let (kinds, adj) = best.build_vertices();
    let code = best.code.clone();
    (
        code,
        Web {
            kinds,
            adj,
            ..Web::default()
        },
    )
}

fn append(dst: &mut Web, part: &Web) {
    let off = dst.kinds.len() as u32;
    dst.kinds.extend_from_slice(&part.kinds);
    for row in &part.adj {
        dst.adj.push(
            row.iter()
                .map(|e| match *e {
                    End::V(w, t) => End::V(w + off, t),
                    End::B(i) => End::B(i),
                })
                .collect(),
        );
    }
}

/// Canonical form. Isomorphic embedded webs (with the same labeled
/// boundary) map to structurally equal values.
pub fn canonicalize(web: &Web) -> Web {
    let (open, closed, loops) = web.split();
    let mut closed: Vec<(Vec<u32>, Web)> = closed.iter().map(canonical_component).collect();
    closed.sort_by(|a, b| a.0.cmp(&b.0));

    let mut out = match open {
        Some(o) => {
            let mut lab = Labeling::new(&o);
            for i in 0..o.bnd.len() {
                lab.emit(o.bnd[i]);
            }
            lab.run(0, None);
            let (kinds, adj) = lab.build_vertices();
            let bnd = o.bnd.iter().map(|e| lab.remap(*e)).collect();
            Web {
                kinds,
                adj,
                boundary: o.boundary.clone(),
                bnd,
                loops: [0, 0],
            }
        }
        None => Web::default(),
    };
    for (_, c) in &closed {
        append(&mut out, c);
    }
    out.loops = loops;
    out
}

/// Canonical form of a connected closed web, with its code.
pub(crate) fn canonical_connected(web: &Web) -> Web {
    canonical_component(web).1
}
