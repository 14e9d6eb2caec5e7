//! Local rewrites, applied by cutting out a small disk and gluing in the
//! replacement.
//!
//! All rules are stated on the ports of the cut-out disk, listed
//! counter-clockwise. Write `X(a,b,c,d)` for a tetravalent vertex on those
//! legs, `(a-b)` for a strand joining two of them, `[2]` etc. for quantum
//! integers and `d1` for the single loop.
//!
//! * double edge between trivalent `v` and `w`:
//!   `H = X(v0, v1, w0, w1) + (v0-v1)(w0-w1)`.
//!   The tadpole relation forces this sign: a tadpole on one side must
//!   give `-d1 + d1 = 0`.
//! * monogon on `X` with outer legs `(a, b)`: `-d1 (a-b)`.
//! * bigon between `X`s with outer legs `(a, b)` and `(c, d)`:
//!   `-[2]^2 X(a,b,c,d) - [2][4] (a-b)(c-d)`.
//! * triangle with outer pairs `o1, o2, o3`:
//!   `[2]^2 (X(o1,o2)(o3) + X(o1,o3)(o2) + X(o2,o3)(o1))
//!    + (2[2]^2 + [2][4]) (o1)(o2)(o3)`.
//!
//! The monogon and bigon rules follow from expanding `X` into `H` and a
//! pairing and applying the loop, tadpole and double-digon relations. The
//! triangle rule follows from the square relation in the same way.

use std::sync::OnceLock;

use super::web::{glue, End, Strand, VertexKind, Web};
use super::WebError;
use crate::netforms::delta1;
use crate::qscalar::{qint, QScalar};

pub(crate) struct RuleCoeffs {
    pub monogon: QScalar,
    pub bigon_x: QScalar,
    pub bigon_pair: QScalar,
    pub tri_x: QScalar,
    pub tri_caps: QScalar,
}

pub(crate) fn coeffs() -> &'static RuleCoeffs {
    static C: OnceLock<RuleCoeffs> = OnceLock::new();
    C.get_or_init(|| {
        let two = QScalar::from(qint(2));
        let four = QScalar::from(qint(4));
        let two_sq = &two * &two;
        let two_four = &two * &four;
        RuleCoeffs {
            monogon: -delta1(),
            bigon_x: -&two_sq,
            bigon_pair: -&two_four,
            tri_x: two_sq.clone(),
            tri_caps: QScalar::from_int(2) * &two_sq + two_four,
        }
    })
}

/// A place where a rule applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Site {
    /// Double edge between two trivalent vertices.
    DoubleEdge(u32, u32),
    /// Face of length 1..=3 bounded by distinct tetravalent vertices, as
    /// its dart orbit.
    Face(Vec<End>),
}

/// All sites away from the boundary.
pub(crate) fn sites(web: &Web) -> Vec<Site> {
    let mut out = Vec::new();
    for (v, k) in web.kinds.iter().enumerate() {
        if *k == VertexKind::Trivalent {
            if let End::V(w, 2) = web.adj[v][2] {
                if (v as u32) < w {
                    out.push(Site::DoubleEdge(v as u32, w));
                }
            }
        }
    }
    for f in small_faces(web) {
        out.push(Site::Face(f));
    }
    out
}

/// Faces with fewer than four sides whose darts are all on distinct
/// tetravalent vertices.
pub(crate) fn small_faces(web: &Web) -> Vec<Vec<End>> {
    web.faces()
        .into_iter()
        .filter(|f| {
            if f.len() > 3 {
                return false;
            }
            let mut vs = Vec::with_capacity(3);
            for e in f {
                match e {
                    End::V(v, _) if web.kinds[*v as usize] == VertexKind::Tetravalent => {
                        if vs.contains(v) {
                            return false;
                        }
                        vs.push(*v);
                    }
                    _ => return false,
                }
            }
            true
        })
        .collect()
}

/// Deterministic choice: double edges first, then the shortest face.
pub(crate) fn first_site(web: &Web) -> Option<Site> {
    for (v, k) in web.kinds.iter().enumerate() {
        if *k == VertexKind::Trivalent {
            if let End::V(w, 2) = web.adj[v][2] {
                return Some(Site::DoubleEdge(v as u32, w));
            }
        }
    }
    small_faces(web)
        .into_iter()
        .min_by_key(Vec::len)
        .map(Site::Face)
}

/// A replacement disk: `r` ports, tetravalent vertices on port quadruples,
/// and strands joining port pairs.
fn template(types: &[Strand], xs: &[[usize; 4]], pairs: &[(usize, usize)]) -> Web {
    let mut bnd = vec![End::B(u32::MAX); types.len()];
    let mut adj = Vec::with_capacity(xs.len());
    for (v, legs) in xs.iter().enumerate() {
        let mut row = Vec::with_capacity(4);
        for (s, &p) in legs.iter().enumerate() {
            row.push(End::B(p as u32));
            bnd[p] = End::V(v as u32, s as u8);
        }
        adj.push(row);
    }
    for &(a, b) in pairs {
        bnd[a] = End::B(b as u32);
        bnd[b] = End::B(a as u32);
    }
    debug_assert!(bnd.iter().all(|e| *e != End::B(u32::MAX)));
    Web {
        kinds: vec![VertexKind::Tetravalent; xs.len()],
        adj,
        boundary: types.to_vec(),
        bnd,
        loops: [0, 0],
    }
}

/// Cut out `verts`; the ports become new boundary points after the old ones.
fn excise(web: &Web, verts: &[u32], ports: &[End]) -> Result<Web, WebError> {
    let n = web.kinds.len();
    let mut inside = vec![false; n];
    for v in verts {
        inside[*v as usize] = true;
    }
    let mut index = vec![u32::MAX; n];
    let mut next = 0u32;
    for v in 0..n {
        if !inside[v] {
            index[v] = next;
            next += 1;
        }
    }
    let nb = web.bnd.len() as u32;
    let port_index = |e: End| ports.iter().position(|p| *p == e).map(|i| nb + i as u32);
    let map =
        |e: End| -> Result<End, WebError> {
            Ok(match e {
                End::B(i) => End::B(i),
                End::V(w, _) if inside[w as usize] => End::B(port_index(e).ok_or_else(|| {
                    WebError::Malformed(format!("{e:?} leaks out of the rule disk"))
                })?),
                End::V(w, t) => End::V(index[w as usize], t),
            })
        };
    let mut kinds = Vec::with_capacity(n - verts.len());
    let mut adj = Vec::with_capacity(n - verts.len());
    for (v, _) in inside.iter().enumerate().filter(|(_, i)| !**i) {
        kinds.push(web.kinds[v]);
        adj.push(
            web.adj[v]
                .iter()
                .map(|e| map(*e))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let mut boundary = web.boundary.clone();
    let mut bnd = web
        .bnd
        .iter()
        .map(|e| map(*e))
        .collect::<Result<Vec<_>, _>>()?;
    for p in ports {
        boundary.push(web.end_type(*p));
        bnd.push(map(web.partner(*p))?);
    }
    Ok(Web {
        kinds,
        adj,
        boundary,
        bnd,
        loops: web.loops,
    })
}

fn splice(
    web: &Web,
    verts: &[u32],
    ports: &[End],
    replacements: &[(QScalar, Web)],
) -> Result<Vec<(QScalar, Web)>, WebError> {
    let rest = excise(web, verts, ports)?;
    let nb = web.bnd.len();
    let outer: Vec<(usize, usize)> = (0..nb).map(|i| (0, i)).collect();
    let joins: Vec<((usize, usize), (usize, usize))> =
        (0..ports.len()).map(|i| ((0, nb + i), (1, i))).collect();
    replacements
        .iter()
        .map(|(c, t)| Ok((c.clone(), glue(&[&rest, t], &joins, &outer)?)))
        .collect()
}

fn outer_legs(web: &Web, d: End) -> [End; 2] {
    let End::V(v, s) = d else { unreachable!() };
    let deg = web.degree(v) as u8;
    [End::V(v, (s + 1) % deg), End::V(v, (s + 2) % deg)]
}

/// Apply the rule at `site`.
pub(crate) fn apply(web: &Web, site: &Site) -> Result<Vec<(QScalar, Web)>, WebError> {
    let c = coeffs();
    match site {
        Site::DoubleEdge(v, w) => {
            let ports = [End::V(*v, 0), End::V(*v, 1), End::V(*w, 0), End::V(*w, 1)];
            let ty = [Strand::Single; 4];
            splice(
                web,
                &[*v, *w],
                &ports,
                &[
                    (QScalar::one(), template(&ty, &[[0, 1, 2, 3]], &[])),
                    (QScalar::one(), template(&ty, &[], &[(0, 1), (2, 3)])),
                ],
            )
        }
        Site::Face(f) => {
            let verts: Vec<u32> = f
                .iter()
                .map(|e| match e {
                    End::V(v, _) => *v,
                    End::B(_) => unreachable!(),
                })
                .collect();
            // counter-clockwise: d1, dk, ..., d2
            let mut ports = Vec::with_capacity(2 * f.len());
            ports.extend(outer_legs(web, f[0]));
            for d in f[1..].iter().rev() {
                ports.extend(outer_legs(web, *d));
            }
            match f.len() {
                1 => {
                    let ty = [Strand::Single; 2];
                    splice(
                        web,
                        &verts,
                        &ports,
                        &[(c.monogon.clone(), template(&ty, &[], &[(0, 1)]))],
                    )
                }
                2 => {
                    let ty = [Strand::Single; 4];
                    splice(
                        web,
                        &verts,
                        &ports,
                        &[
                            (c.bigon_x.clone(), template(&ty, &[[0, 1, 2, 3]], &[])),
                            (c.bigon_pair.clone(), template(&ty, &[], &[(0, 1), (2, 3)])),
                        ],
                    )
                }
                3 => {
                    let ty = [Strand::Single; 6];
                    splice(
                        web,
                        &verts,
                        &ports,
                        &[
                            (c.tri_x.clone(), template(&ty, &[[0, 1, 2, 3]], &[(4, 5)])),
                            (c.tri_x.clone(), template(&ty, &[[2, 3, 4, 5]], &[(0, 1)])),
                            (c.tri_x.clone(), template(&ty, &[[4, 5, 0, 1]], &[(2, 3)])),
                            (
                                c.tri_caps.clone(),
                                template(&ty, &[], &[(0, 1), (2, 3), (4, 5)]),
                            ),
                        ],
                    )
                }
                _ => unreachable!("only faces with fewer than four sides are rewritten"),
            }
        }
    }
}
