use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::WebError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strand {
    Single,
    Double,
}

/// Vertex types. A trivalent vertex has counter-clockwise slots
/// `[single, single, double]`; a tetravalent vertex has four single slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Trivalent,
    Tetravalent,
}

impl VertexKind {
    pub fn degree(self) -> usize {
        match self {
            VertexKind::Trivalent => 3,
            VertexKind::Tetravalent => 4,
        }
    }

    pub fn slot_type(self, slot: usize) -> Strand {
        match (self, slot) {
            (VertexKind::Trivalent, 2) => Strand::Double,
            _ => Strand::Single,
        }
    }
}

/// One end of an edge: a vertex slot or a boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    V(u32, u8),
    B(u32),
}

/// A planar web in a disk (or on the sphere when there is no boundary).
///
/// `adj[v][s]` is the partner of slot `s` of vertex `v`, slots running
/// counter-clockwise. `bnd[i]` is the partner of boundary point `i`; boundary
/// points run counter-clockwise around the disk. Free loops carry no vertex
/// and are only counted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Web {
    pub(crate) kinds: Vec<VertexKind>,
    pub(crate) adj: Vec<Vec<End>>,
    pub(crate) boundary: Vec<Strand>,
    pub(crate) bnd: Vec<End>,
    pub(crate) loops: [u32; 2],
}

pub(crate) fn strand_index(s: Strand) -> usize {
    match s {
        Strand::Single => 0,
        Strand::Double => 1,
    }
}

impl Web {
    pub fn empty() -> Self {
        Web::default()
    }

    /// A closed web made of free loops only.
    pub fn free_loops(single: u32, double: u32) -> Self {
        Web {
            loops: [single, double],
            ..Web::default()
        }
    }

    /// Build from raw parts and validate.
    pub fn from_parts(
        kinds: Vec<VertexKind>,
        adj: Vec<Vec<End>>,
        boundary: Vec<Strand>,
        bnd: Vec<End>,
        loops: [u32; 2],
    ) -> Result<Self, WebError> {
        let w = Web {
            kinds,
            adj,
            boundary,
            bnd,
            loops,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn boundary(&self) -> &[Strand] {
        &self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn loop_counts(&self) -> (u32, u32) {
        (self.loops[0], self.loops[1])
    }

    /// Number of edges, not counting free loops.
    pub fn edge_count(&self) -> usize {
        let darts: usize = self.adj.iter().map(Vec::len).sum::<usize>() + self.bnd.len();
        darts / 2
    }

    pub(crate) fn partner(&self, e: End) -> End {
        match e {
            End::V(v, s) => self.adj[v as usize][s as usize],
            End::B(i) => self.bnd[i as usize],
        }
    }

    pub(crate) fn end_type(&self, e: End) -> Strand {
        match e {
            End::V(v, s) => self.kinds[v as usize].slot_type(s as usize),
            End::B(i) => self.boundary[i as usize],
        }
    }

    pub(crate) fn degree(&self, v: u32) -> usize {
        self.kinds[v as usize].degree()
    }

    /// Counter-clockwise successor of an end around its node. The boundary,
    /// seen as a node at infinity, turns the other way.
    pub(crate) fn rot(&self, e: End) -> End {
        match e {
            End::V(v, s) => End::V(v, ((s as usize + 1) % self.degree(v)) as u8),
            End::B(i) => {
                let n = self.bnd.len() as u32;
                End::B((i + n - 1) % n)
            }
        }
    }

    /// Face successor: cross the edge, then turn.
    pub(crate) fn phi(&self, e: End) -> End {
        self.rot(self.partner(e))
    }

    pub(crate) fn all_ends(&self) -> impl Iterator<Item = End> + '_ {
        let verts = self
            .kinds
            .iter()
            .enumerate()
            .flat_map(|(v, k)| (0..k.degree()).map(move |s| End::V(v as u32, s as u8)));
        verts.chain((0..self.bnd.len() as u32).map(End::B))
    }

    /// All faces as orbits of [`Web::phi`].
    pub fn faces(&self) -> Vec<Vec<End>> {
        let mut seen: HashMap<End, ()> = HashMap::new();
        let mut out = Vec::new();
        for e in self.all_ends() {
            if seen.contains_key(&e) {
                continue;
            }
            let mut orbit = vec![e];
            seen.insert(e, ());
            let mut x = self.phi(e);
            while x != e {
                seen.insert(x, ());
                orbit.push(x);
                x = self.phi(x);
            }
            out.push(orbit);
        }
        out
    }

    /// Connected components as vertex lists; the component touching the
    /// boundary (if any) comes first and is flagged.
    pub(crate) fn components(&self) -> Vec<(bool, Vec<u32>)> {
        let n = self.kinds.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<(bool, Vec<u32>)> = Vec::new();
        if !self.bnd.is_empty() {
            let mut verts = Vec::new();
            let mut stack: Vec<u32> = self
                .bnd
                .iter()
                .filter_map(|e| match e {
                    End::V(v, _) => Some(*v),
                    End::B(_) => None,
                })
                .collect();
            while let Some(v) = stack.pop() {
                if comp[v as usize] != usize::MAX {
                    continue;
                }
                comp[v as usize] = 0;
                verts.push(v);
                for e in &self.adj[v as usize] {
                    if let End::V(w, _) = e {
                        stack.push(*w);
                    }
                }
            }
            verts.sort_unstable();
            out.push((true, verts));
        }
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = Vec::new();
            let mut stack = vec![start as u32];
            while let Some(v) = stack.pop() {
                if comp[v as usize] != usize::MAX {
                    continue;
                }
                comp[v as usize] = id;
                verts.push(v);
                for e in &self.adj[v as usize] {
                    if let End::V(w, _) = e {
                        stack.push(*w);
                    }
                }
            }
            verts.sort_unstable();
            out.push((false, verts));
        }
        out
    }

    /// Sub-web induced on a closed vertex set (no edges may leave it).
    pub(crate) fn induced_closed(&self, verts: &[u32]) -> Web {
        let mut index = HashMap::new();
        for (i, v) in verts.iter().enumerate() {
            index.insert(*v, i as u32);
        }
        let kinds = verts.iter().map(|v| self.kinds[*v as usize]).collect();
        let adj = verts
            .iter()
            .map(|v| {
                self.adj[*v as usize]
                    .iter()
                    .map(|e| match e {
                        End::V(w, s) => End::V(index[w], *s),
                        End::B(_) => unreachable!("closed component touches the boundary"),
                    })
                    .collect()
            })
            .collect();
        Web {
            kinds,
            adj,
            ..Web::default()
        }
    }

    /// Sub-web on the boundary component (drops closed components and loops).
    pub(crate) fn induced_open(&self, verts: &[u32]) -> Web {
        let mut index = HashMap::new();
        for (i, v) in verts.iter().enumerate() {
            index.insert(*v, i as u32);
        }
        let map = |e: &End| match e {
            End::V(w, s) => End::V(index[w], *s),
            End::B(i) => End::B(*i),
        };
        Web {
            kinds: verts.iter().map(|v| self.kinds[*v as usize]).collect(),
            adj: verts
                .iter()
                .map(|v| self.adj[*v as usize].iter().map(map).collect())
                .collect(),
            boundary: self.boundary.clone(),
            bnd: self.bnd.iter().map(map).collect(),
            loops: [0, 0],
        }
    }

    /// Split into the boundary-touching part (if there is a boundary) and the
    /// closed components. Free loops are returned separately.
    pub(crate) fn split(&self) -> (Option<Web>, Vec<Web>, [u32; 2]) {
        let comps = self.components();
        let mut open = None;
        let mut closed = Vec::new();
        for (touches, verts) in comps {
            if touches {
                open = Some(self.induced_open(&verts));
            } else {
                closed.push(self.induced_closed(&verts));
            }
        }
        if open.is_none() && !self.bnd.is_empty() {
            unreachable!("boundary without component");
        }
        if self.bnd.is_empty() {
            open = None;
        }
        (open, closed, self.loops)
    }

    /// `(faces, vertices, edges)`, with faces counted as `E - V + C + 1` over
    /// the vertex-bearing components on the sphere (boundary as one vertex).
    pub fn measure(&self) -> (i64, i64, i64) {
        let comps = self.components().len() as i64;
        let has_b = !self.bnd.is_empty();
        let v = self.kinds.len() as i64 + has_b as i64;
        let e = self.edge_count() as i64;
        let c = comps;
        let f = if v == 0 { 0 } else { e - v + c + 1 };
        (f, self.kinds.len() as i64, e)
    }

    pub fn validate(&self) -> Result<(), WebError> {
        if self.adj.len() != self.kinds.len() {
            return Err(WebError::Malformed(
                "vertex and adjacency counts differ".into(),
            ));
        }
        if self.bnd.len() != self.boundary.len() {
            return Err(WebError::Malformed(
                "boundary and partner counts differ".into(),
            ));
        }
        for (v, k) in self.kinds.iter().enumerate() {
            if self.adj[v].len() != k.degree() {
                return Err(WebError::Malformed(format!("vertex {v} has wrong degree")));
            }
        }
        let in_range = |e: End| match e {
            End::V(w, s) => {
                (w as usize) < self.kinds.len() && (s as usize) < self.kinds[w as usize].degree()
            }
            End::B(i) => (i as usize) < self.bnd.len(),
        };
        for e in self.all_ends() {
            let p = self.partner(e);
            if !in_range(p) {
                return Err(WebError::Malformed(format!("{e:?} points out of range")));
            }
            if p == e {
                return Err(WebError::Malformed(format!("{e:?} is paired with itself")));
            }
            if self.partner(p) != e {
                return Err(WebError::Malformed(format!(
                    "pairing of {e:?} is not symmetric"
                )));
            }
            if self.end_type(p) != self.end_type(e) {
                return Err(WebError::Malformed(format!(
                    "strand types differ across {e:?}"
                )));
            }
        }
        // Euler check on the sphere, the boundary acting as one extra vertex.
        let comps = self.components().len() as i64;
        if self.kinds.is_empty() && self.bnd.is_empty() {
            return Ok(());
        }
        let v = self.kinds.len() as i64 + (!self.bnd.is_empty()) as i64;
        let e = self.edge_count() as i64;
        let f = self.faces().len() as i64;
        if v - e + f != 2 * comps {
            return Err(WebError::NotPlanar { v, e, f });
        }
        Ok(())
    }
}

/// Boundary point `b` of part `p`.
pub type PortRef = (usize, usize);

/// Glue webs along boundary points.
///
/// Every boundary point of every part appears exactly once, either in a
/// join or in `outer`, which lists the new boundary counter-clockwise.
/// Strands running between boundary points are followed through, and closed
/// cycles of them become free loops.
pub fn glue(
    parts: &[&Web],
    joins: &[(PortRef, PortRef)],
    outer: &[PortRef],
) -> Result<Web, WebError> {
    #[derive(Clone, Copy)]
    enum Role {
        Unset,
        Outer(u32),
        Join(PortRef),
    }
    let mut role: Vec<Vec<Role>> = parts
        .iter()
        .map(|w| vec![Role::Unset; w.bnd.len()])
        .collect();
    let set = |r: PortRef, val: Role, role: &mut Vec<Vec<Role>>| -> Result<(), WebError> {
        let slot = role
            .get_mut(r.0)
            .and_then(|v| v.get_mut(r.1))
            .ok_or_else(|| WebError::Glue(format!("port {r:?} does not exist")))?;
        if !matches!(slot, Role::Unset) {
            return Err(WebError::Glue(format!("port {r:?} used twice")));
        }
        *slot = val;
        Ok(())
    };
    for &(a, b) in joins {
        set(a, Role::Join(b), &mut role)?;
        set(b, Role::Join(a), &mut role)?;
        if parts[a.0].boundary[a.1] != parts[b.0].boundary[b.1] {
            return Err(WebError::Glue(format!(
                "strand types differ across {a:?} - {b:?}"
            )));
        }
    }
    for (k, &r) in outer.iter().enumerate() {
        set(r, Role::Outer(k as u32), &mut role)?;
    }
    if role.iter().flatten().any(|r| matches!(r, Role::Unset)) {
        return Err(WebError::Glue("unassigned boundary point".into()));
    }

    let mut offset = Vec::with_capacity(parts.len());
    let mut total = 0u32;
    for w in parts {
        offset.push(total);
        total += w.kinds.len() as u32;
    }
    let mut visited: Vec<Vec<bool>> = parts.iter().map(|w| vec![false; w.bnd.len()]).collect();

    // Leave part `p` through boundary point `b`.
    let cross = |mut p: usize, mut b: usize, visited: &mut Vec<Vec<bool>>| -> End {
        loop {
            visited[p][b] = true;
            match role[p][b] {
                Role::Outer(k) => return End::B(k),
                Role::Join((p2, b2)) => {
                    visited[p2][b2] = true;
                    match parts[p2].bnd[b2] {
                        End::V(w, s) => return End::V(offset[p2] + w, s),
                        End::B(b3) => {
                            p = p2;
                            b = b3 as usize;
                        }
                    }
                }
                Role::Unset => unreachable!(),
            }
        }
    };

    let mut kinds = Vec::with_capacity(total as usize);
    let mut adj = Vec::with_capacity(total as usize);
    for (p, w) in parts.iter().enumerate() {
        for (v, k) in w.kinds.iter().enumerate() {
            kinds.push(*k);
            let row = w.adj[v]
                .iter()
                .map(|e| match *e {
                    End::V(x, s) => End::V(offset[p] + x, s),
                    End::B(b) => cross(p, b as usize, &mut visited),
                })
                .collect();
            adj.push(row);
        }
    }
    let mut boundary = Vec::with_capacity(outer.len());
    let mut bnd = Vec::with_capacity(outer.len());
    for &(p, b) in outer {
        boundary.push(parts[p].boundary[b]);
        visited[p][b] = true;
        let e = match parts[p].bnd[b] {
            End::V(w, s) => End::V(offset[p] + w, s),
            End::B(b2) => cross(p, b2 as usize, &mut visited),
        };
        bnd.push(e);
    }
    let mut loops = [0u32; 2];
    for w in parts {
        loops[0] += w.loops[0];
        loops[1] += w.loops[1];
    }
    for p in 0..parts.len() {
        for b in 0..parts[p].bnd.len() {
            if visited[p][b] {
                continue;
            }
            let t = strand_index(parts[p].boundary[b]);
            // Walk the cycle: inside link, then across the join.
            let (mut cp, mut cb) = (p, b);
            loop {
                visited[cp][cb] = true;
                let End::B(b2) = parts[cp].bnd[cb] else {
                    unreachable!("unvisited port leads into a vertex")
                };
                visited[cp][b2 as usize] = true;
                let Role::Join((p3, b3)) = role[cp][b2 as usize] else {
                    unreachable!("unvisited port leads outside")
                };
                cp = p3;
                cb = b3;
                if visited[cp][cb] {
                    break;
                }
            }
            loops[t] += 1;
        }
    }
    Ok(Web {
        kinds,
        adj,
        boundary,
        bnd,
        loops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strand() -> Web {
        Web {
            boundary: vec![Strand::Single; 2],
            bnd: vec![End::B(1), End::B(0)],
            ..Web::default()
        }
    }

    fn x_web() -> Web {
        Web {
            kinds: vec![VertexKind::Tetravalent],
            adj: vec![vec![End::B(0), End::B(1), End::B(2), End::B(3)]],
            boundary: vec![Strand::Single; 4],
            bnd: vec![End::V(0, 0), End::V(0, 1), End::V(0, 2), End::V(0, 3)],
            loops: [0, 0],
        }
    }

    #[test]
    fn closing_a_strand_makes_a_loop() {
        let s = strand();
        let w = glue(&[&s], &[((0, 0), (0, 1))], &[]).unwrap();
        assert_eq!(w.loop_counts(), (1, 0));
        assert!(w.kinds.is_empty());
    }

    #[test]
    fn strands_through_two_parts() {
        let s = strand();
        let w = glue(&[&s, &s], &[((0, 1), (1, 0))], &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(w.bnd, vec![End::B(1), End::B(0)]);
        let closed = glue(&[&s, &s], &[((0, 1), (1, 0)), ((1, 1), (0, 0))], &[]).unwrap();
        assert_eq!(closed.loop_counts(), (1, 0));
    }

    #[test]
    fn x_faces_and_euler() {
        let x = x_web();
        x.validate().unwrap();
        assert_eq!(x.faces().len(), 4);
        // monogon closure of two adjacent legs
        let cap = Web {
            boundary: vec![Strand::Single; 2],
            bnd: vec![End::B(1), End::B(0)],
            ..Web::default()
        };
        let w = glue(
            &[&x, &cap],
            &[((0, 0), (1, 1)), ((0, 1), (1, 0))],
            &[(0, 2), (0, 3)],
        )
        .unwrap();
        w.validate().unwrap();
        assert_eq!(w.adj[0][0], End::V(0, 1));
    }

    #[test]
    fn rejects_bad_pairing() {
        let mut x = x_web();
        x.adj[0][0] = End::B(1);
        assert!(x.validate().is_err());
    }
}
