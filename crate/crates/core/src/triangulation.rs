//! Tetrahedral 3-manifold triangulations and standard matching equations.
//!
//! Face `j` of a tetrahedron is the face opposite vertex `j`. A gluing maps
//! the four vertices of the source tetrahedron onto the target by a
//! permutation, written in files as the four images of `0123`.
//!
//! Standard coordinates give each tetrahedron seven slots:
//! offsets `0..4` hold the triangle types (type `v` cuts off vertex `v`),
//! offsets `4, 5, 6` hold the quadrilaterals separating `01|23`, `02|13`
//! and `03|12`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::problem::EnumerationProblem;
use crate::zeroset::ConstraintGroup;

pub const COORDS_PER_TET: usize = 7;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return Err(Error::Triangulation(format!(
                    "{images:?} is not a permutation of 0123"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm4(images))
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4(inv)
    }

    fn parse(s: &str) -> Option<Perm4> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return None;
        }
        let mut images = [0u8; 4];
        for (slot, b) in images.iter_mut().zip(bytes) {
            *slot = b.checked_sub(b'0')?;
        }
        Perm4::new(images).ok()
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    // gluings[4 * tet + face]
    gluings: Vec<Option<Gluing>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub faces: usize,
    pub edges: usize,
    pub vertices: usize,
}

/// Vertex pairs of the six tetrahedron edges.
const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGES
        .iter()
        .position(|&e| e == (a, b))
        .expect("distinct vertices")
}

/// Quadrilateral slot (0, 1 or 2) of the quad separating `{a, b}` from the
/// other two vertices.
fn quad_type(a: usize, b: usize) -> usize {
    match (a.min(b), a.max(b)) {
        (0, 1) | (2, 3) => 0,
        (0, 2) | (1, 3) => 1,
        (0, 3) | (1, 2) => 2,
        _ => unreachable!("quad_type needs two distinct vertices"),
    }
}

impl Triangulation {
    /// Builds and validates a triangulation from per-face gluings.
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self> {
        let t = Triangulation {
            gluings: gluings.into_iter().flatten().collect(),
        };
        t.validate()?;
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.gluings.len() / 4
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[4 * tet + face]
    }

    pub fn boundary_faces(&self) -> usize {
        self.gluings.iter().filter(|g| g.is_none()).count()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_faces() == 0
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        for tet in 0..n {
            for face in 0..4 {
                let Some(g) = self.gluing(tet, face) else {
                    continue;
                };
                if g.tet >= n {
                    return Err(Error::Triangulation(format!(
                        "tetrahedron {tet} face {face} glued to tetrahedron {} of {n}",
                        g.tet
                    )));
                }
                let target_face = g.perm.apply(face);
                if g.tet == tet && target_face == face {
                    return Err(Error::Triangulation(format!(
                        "tetrahedron {tet} face {face} glued to itself"
                    )));
                }
                let back = self.gluing(g.tet, target_face);
                if back
                    != Some(Gluing {
                        tet,
                        perm: g.perm.inverse(),
                    })
                {
                    return Err(Error::Triangulation(format!(
                        "gluing of tetrahedron {tet} face {face} is not matched by its inverse on tetrahedron {} face {target_face}",
                        g.tet
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parses the text format: a tetrahedron count followed by one line per
    /// tetrahedron with four tokens, `-` or `tet:wxyz`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing tetrahedron count"))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad tetrahedron count {header:?}")))?;

        let mut gluings = Vec::with_capacity(n);
        for tet in 0..n {
            let (line_no, line) = lines.next().ok_or_else(|| {
                Error::parse(line_no, format!("missing line for tetrahedron {tet}"))
            })?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 {
                return Err(Error::parse(
                    line_no,
                    format!("expected 4 face tokens, found {}", tokens.len()),
                ));
            }
            let mut faces = [None; 4];
            for (slot, tok) in faces.iter_mut().zip(tokens) {
                *slot = parse_face_token(tok).map_err(|msg| Error::parse(line_no, msg))?;
            }
            gluings.push(faces);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(
                line_no,
                "trailing content after last tetrahedron",
            ));
        }
        Triangulation::new(gluings)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.size());
        for tet in 0..self.size() {
            let tokens: Vec<String> = (0..4)
                .map(|f| match self.gluing(tet, f) {
                    None => "-".to_string(),
                    Some(g) => format!("{}:{}", g.tet, g.perm),
                })
                .collect();
            out.push_str(&tokens.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn skeleton(&self) -> Skeleton {
        let n = self.size();
        let mut faces = UnionFind::<usize>::new(4 * n);
        let mut edges = UnionFind::<usize>::new(6 * n);
        let mut verts = UnionFind::<usize>::new(4 * n);
        for tet in 0..n {
            for face in 0..4 {
                let Some(g) = self.gluing(tet, face) else {
                    continue;
                };
                faces.union(4 * tet + face, 4 * g.tet + g.perm.apply(face));
                let on_face: Vec<usize> = (0..4).filter(|&v| v != face).collect();
                for &v in &on_face {
                    verts.union(4 * tet + v, 4 * g.tet + g.perm.apply(v));
                }
                for (i, &a) in on_face.iter().enumerate() {
                    for &b in &on_face[i + 1..] {
                        let there = edge_index(g.perm.apply(a), g.perm.apply(b));
                        edges.union(6 * tet + edge_index(a, b), 6 * g.tet + there);
                    }
                }
            }
        }
        let classes =
            |uf: UnionFind<usize>| uf.into_labeling().into_iter().collect::<HashSet<_>>().len();
        Skeleton {
            faces: classes(faces),
            edges: classes(edges),
            vertices: classes(verts),
        }
    }

    /// One equation per (internal face, edge of that face); each glued face
    /// pair is visited once, from its lexicographically smaller side.
    pub fn standard_matching_equations(&self) -> EnumerationProblem {
        let n = self.size();
        let dim = COORDS_PER_TET * n;
        let mut rows = Vec::new();
        for tet in 0..n {
            for face in 0..4 {
                let Some(g) = self.gluing(tet, face) else {
                    continue;
                };
                let far_face = g.perm.apply(face);
                if (g.tet, far_face) < (tet, face) {
                    continue;
                }
                let on_face: Vec<usize> = (0..4).filter(|&v| v != face).collect();
                for (i, &a) in on_face.iter().enumerate() {
                    for &b in &on_face[i + 1..] {
                        let c = on_face
                            .iter()
                            .copied()
                            .find(|&v| v != a && v != b)
                            .expect("third vertex");
                        let mut row = vec![BigInt::zero(); dim];
                        let base = COORDS_PER_TET * tet;
                        row[base + c] += 1;
                        row[base + 4 + quad_type(c, face)] += 1;
                        let (pc, pf) = (g.perm.apply(c), far_face);
                        let base = COORDS_PER_TET * g.tet;
                        row[base + pc] -= 1;
                        row[base + 4 + quad_type(pc, pf)] -= 1;
                        rows.push(row);
                    }
                }
            }
        }
        let groups = (0..n)
            .map(|t| {
                let b = COORDS_PER_TET * t;
                ConstraintGroup::new(vec![b + 4, b + 5, b + 6]).expect("increasing indices")
            })
            .collect();
        EnumerationProblem::new(dim, rows, groups).expect("well-formed standard coordinate system")
    }

    /// The `n`-tetrahedron layered loop; the twisted variant triangulates
    /// `S^3 / Q_{4n}`.
    pub fn layered_loop(n: usize, twisted: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Triangulation(
                "a layered loop needs at least one tetrahedron".into(),
            ));
        }
        let p = |images| Perm4::new(images).expect("static permutation");
        let mut gluings = vec![[None; 4]; n];
        let mut join = |a: usize, face: usize, b: usize, perm: Perm4| {
            gluings[a][face] = Some(Gluing { tet: b, perm });
            gluings[b][perm.apply(face)] = Some(Gluing {
                tet: a,
                perm: perm.inverse(),
            });
        };
        for i in 0..n - 1 {
            join(i, 0, i + 1, p([1, 0, 2, 3]));
            join(i, 3, i + 1, p([0, 1, 3, 2]));
        }
        if twisted {
            join(n - 1, 0, 0, p([2, 3, 1, 0]));
            join(n - 1, 3, 0, p([3, 2, 0, 1]));
        } else {
            join(n - 1, 0, 0, p([1, 0, 2, 3]));
            join(n - 1, 3, 0, p([0, 1, 3, 2]));
        }
        Triangulation::new(gluings)
    }
}

fn parse_face_token(tok: &str) -> std::result::Result<Option<Gluing>, String> {
    if tok == "-" {
        return Ok(None);
    }
    let (tet, perm) = tok
        .split_once(':')
        .ok_or_else(|| format!("bad face token {tok:?}"))?;
    let tet = tet
        .parse()
        .map_err(|_| format!("bad tetrahedron index in {tok:?}"))?;
    let perm = Perm4::parse(perm).ok_or_else(|| format!("bad permutation in {tok:?}"))?;
    Ok(Some(Gluing { tet, perm }))
}
