//! Triangle meshes with topology statistics.
//!
//! A mesh is a plain vertex/triangle soup plus optional per-face labels.
//! Topological health (closedness, orientation, components, Euler
//! characteristic) is computed on demand and reported rather than enforced;
//! operations that require a closed oriented surface check the stats and
//! fail with a descriptive error.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

use crate::geom::{triangle_area, Aabb, Vec3};

/// Per-triangle role assigned by the analysis passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceLabel {
    Surface,
    Mouth,
    InteriorWall,
    Thin,
    Contact,
}

impl FaceLabel {
    /// Display color convention: mouth red, tunnel/pocket interior yellow,
    /// contact green, thin blue.
    pub fn color(self) -> [u8; 3] {
        match self {
            FaceLabel::Surface => [180, 180, 180],
            FaceLabel::Mouth => [220, 30, 30],
            FaceLabel::InteriorWall => [230, 210, 40],
            FaceLabel::Thin => [40, 80, 220],
            FaceLabel::Contact => [40, 200, 80],
        }
    }

    pub fn from_color(rgb: [u8; 3]) -> Option<FaceLabel> {
        [
            FaceLabel::Surface,
            FaceLabel::Mouth,
            FaceLabel::InteriorWall,
            FaceLabel::Thin,
            FaceLabel::Contact,
        ]
        .into_iter()
        .find(|l| l.color() == rgb)
    }
}

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("triangle {triangle} references vertex {vertex} but the mesh has {count} vertices")]
    IndexOutOfRange {
        triangle: usize,
        vertex: u32,
        count: usize,
    },
    #[error("triangle {0} is degenerate (zero area)")]
    DegenerateTriangle(usize),
    #[error("non-manifold edge ({0}, {1}) shared by {2} triangles")]
    NonManifoldEdge(u32, u32, usize),
    #[error("mesh is not closed: edge ({0}, {1}) has a single incident triangle")]
    OpenEdge(u32, u32),
    #[error("mesh is not consistently oriented at edge ({0}, {1})")]
    Misoriented(u32, u32),
    #[error("mesh has no triangles")]
    Empty,
}

/// How much validation `TriangleMesh::new` and the file loaders perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationMode {
    /// Reject degenerate triangles and out-of-range indices.
    #[default]
    Normal,
    /// Additionally reject non-manifold edges, naming the first offender.
    Strict,
    /// Accept anything with in-range indices.
    Permissive,
}

/// Topology summary of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshStats {
    pub components: usize,
    pub euler_char: i64,
    /// Present only for closed, oriented meshes.
    pub genus: Option<i64>,
    pub closed: bool,
    pub oriented: bool,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
}

/// A triangulated surface. Vertices are positions in angstroms; triangles
/// are index triples with counterclockwise winding seen from outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
    pub labels: Option<Vec<FaceLabel>>,
}

impl TriangleMesh {
    pub fn new(
        vertices: Vec<Vec3>,
        triangles: Vec<[u32; 3]>,
        mode: ValidationMode,
    ) -> Result<TriangleMesh, MeshError> {
        let mesh = TriangleMesh {
            vertices,
            triangles,
            labels: None,
        };
        mesh.validate(mode)?;
        Ok(mesh)
    }

    pub fn validate(&self, mode: ValidationMode) -> Result<(), MeshError> {
        let n = self.vertices.len();
        for (t, tri) in self.triangles.iter().enumerate() {
            for &v in tri {
                if v as usize >= n {
                    return Err(MeshError::IndexOutOfRange {
                        triangle: t,
                        vertex: v,
                        count: n,
                    });
                }
            }
        }
        if mode == ValidationMode::Permissive {
            return Ok(());
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            let [a, b, c] = self.triangle_points(t);
            if tri[0] == tri[1]
                || tri[1] == tri[2]
                || tri[0] == tri[2]
                || triangle_area(a, b, c) == 0.0
            {
                return Err(MeshError::DegenerateTriangle(t));
            }
        }
        if mode == ValidationMode::Strict {
            let mut counts: HashMap<(u32, u32), usize> = HashMap::new();
            for tri in &self.triangles {
                for e in 0..3 {
                    let (u, v) = (tri[e], tri[(e + 1) % 3]);
                    let key = (u.min(v), u.max(v));
                    *counts.entry(key).or_insert(0) += 1;
                }
            }
            let mut bad: Vec<((u32, u32), usize)> =
                counts.into_iter().filter(|&(_, c)| c > 2).collect();
            bad.sort_unstable();
            if let Some(&((u, v), c)) = bad.first() {
                return Err(MeshError::NonManifoldEdge(u, v, c));
            }
        }
        Ok(())
    }

    pub fn triangle_points(&self, t: usize) -> [Vec3; 3] {
        let [a, b, c] = self.triangles[t];
        [
            self.vertices[a as usize],
            self.vertices[b as usize],
            self.vertices[c as usize],
        ]
    }

    pub fn triangle_centroid(&self, t: usize) -> Vec3 {
        let [a, b, c] = self.triangle_points(t);
        (a + b + c) / 3.0
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangle_points(t);
        triangle_area(a, b, c)
    }

    /// Area-weighted outward normal (not normalized).
    pub fn triangle_normal(&self, t: usize) -> Vec3 {
        let [a, b, c] = self.triangle_points(t);
        (b - a).cross(c - a) * 0.5
    }

    pub fn bounds(&self) -> Aabb {
        Aabb::from_points(self.vertices.iter().copied())
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    /// Topology statistics. Components are counted over triangles connected
    /// through shared edges; V counts referenced vertices only. Genus uses
    /// g = (2c - chi) / 2 and is reported only for closed oriented meshes.
    pub fn stats(&self) -> MeshStats {
        let f = self.triangles.len();
        // (count, orientation balance) per undirected edge
        let mut edge_info: HashMap<(u32, u32), (usize, i32)> = HashMap::new();
        for tri in &self.triangles {
            for e in 0..3 {
                let (u, v) = (tri[e], tri[(e + 1) % 3]);
                let key = (u.min(v), u.max(v));
                let dir = if u < v { 1 } else { -1 };
                let entry = edge_info.entry(key).or_insert((0, 0));
                entry.0 += 1;
                entry.1 += dir;
            }
        }
        let e = edge_info.len();
        let mut referenced = std::collections::HashSet::new();
        for tri in &self.triangles {
            referenced.extend(tri.iter().copied());
        }
        let v = referenced.len();

        let closed = f > 0 && edge_info.values().all(|&(c, _)| c == 2);
        // Opposite directions cancel: a consistently oriented manifold has
        // balance 0 on every interior edge.
        let oriented = edge_info
            .values()
            .all(|&(c, bal)| (c == 2 && bal == 0) || c == 1);

        // connected components over triangles via shared edges
        let mut dsu = Dsu::new(f);
        let mut edge_first: HashMap<(u32, u32), usize> = HashMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for e in 0..3 {
                let (u, v) = (tri[e], tri[(e + 1) % 3]);
                let key = (u.min(v), u.max(v));
                match edge_first.entry(key) {
                    std::collections::hash_map::Entry::Occupied(o) => dsu.union(*o.get(), t),
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(t);
                    }
                }
            }
        }
        let components = if f == 0 { 0 } else { dsu.count_roots() };

        let euler_char = v as i64 - e as i64 + f as i64;
        let genus = if closed && oriented {
            Some((2 * components as i64 - euler_char) / 2)
        } else {
            None
        };
        MeshStats {
            components,
            euler_char,
            genus,
            closed,
            oriented,
            vertices: v,
            edges: e,
            triangles: f,
        }
    }

    /// First edge not shared by exactly two triangles, if any (diagnostics
    /// for closedness failures).
    pub fn first_open_edge(&self) -> Option<((u32, u32), usize)> {
        let mut counts: HashMap<(u32, u32), usize> = HashMap::new();
        for tri in &self.triangles {
            for e in 0..3 {
                let (u, v) = (tri[e], tri[(e + 1) % 3]);
                let key = (u.min(v), u.max(v));
                *counts.entry(key).or_insert(0) += 1;
            }
        }
        let mut open: Vec<((u32, u32), usize)> =
            counts.into_iter().filter(|&(_, c)| c != 2).collect();
        open.sort_unstable();
        open.first().copied()
    }

    /// Error unless the mesh is closed and consistently oriented.
    pub fn require_closed_oriented(&self) -> Result<MeshStats, MeshError> {
        if self.triangles.is_empty() {
            return Err(MeshError::Empty);
        }
        let stats = self.stats();
        if !stats.closed {
            let ((u, v), c) = self.first_open_edge().unwrap_or(((0, 0), 0));
            return Err(if c > 2 {
                MeshError::NonManifoldEdge(u, v, c)
            } else {
                MeshError::OpenEdge(u, v)
            });
        }
        if !stats.oriented {
            let mut balances: HashMap<(u32, u32), i32> = HashMap::new();
            for tri in &self.triangles {
                for e in 0..3 {
                    let (a, b) = (tri[e], tri[(e + 1) % 3]);
                    let key = (a.min(b), a.max(b));
                    *balances.entry(key).or_insert(0) += if a < b { 1 } else { -1 };
                }
            }
            let mut bad: Vec<(u32, u32)> = balances
                .into_iter()
                .filter(|&(_, b)| b != 0)
                .map(|(k, _)| k)
                .collect();
            bad.sort_unstable();
            let (u, v) = bad.first().copied().unwrap_or((0, 0));
            return Err(MeshError::Misoriented(u, v));
        }
        Ok(stats)
    }

    /// Subdivide every triangle into four by edge midpoints. Labels carry
    /// over to the children.
    pub fn refined(&self) -> TriangleMesh {
        let mut vertices = self.vertices.clone();
        let mut midpoint: HashMap<(u32, u32), u32> = HashMap::new();
        let mut mid = |u: u32, v: u32, vertices: &mut Vec<Vec3>| -> u32 {
            let key = (u.min(v), u.max(v));
            *midpoint.entry(key).or_insert_with(|| {
                let p = (vertices[u as usize] + vertices[v as usize]) * 0.5;
                vertices.push(p);
                (vertices.len() - 1) as u32
            })
        };
        let mut triangles = Vec::with_capacity(self.triangles.len() * 4);
        let mut labels = self.labels.as_ref().map(|_| Vec::new());
        for (t, &[a, b, c]) in self.triangles.iter().enumerate() {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            triangles.extend_from_slice(&[[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
            if let (Some(out), Some(src)) = (labels.as_mut(), self.labels.as_ref()) {
                out.extend(std::iter::repeat(src[t]).take(4));
            }
        }
        TriangleMesh {
            vertices,
            triangles,
            labels,
        }
    }

    /// Translate every vertex by `offset`.
    pub fn translated(&self, offset: Vec3) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.iter().map(|&v| v + offset).collect(),
            triangles: self.triangles.clone(),
            labels: self.labels.clone(),
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn count_roots(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::vec3;
    use crate::shapes;

    #[test]
    fn cube_is_a_sphere() {
        let m = shapes::cube(1.0);
        let s = m.stats();
        assert_eq!(s.vertices, 8);
        assert_eq!(s.triangles, 12);
        assert_eq!(s.euler_char, 2);
        assert!(s.closed && s.oriented);
        assert_eq!(s.genus, Some(0));
        // E = 3F/2 for closed triangle meshes
        assert_eq!(s.edges * 2, 3 * s.triangles);
    }

    #[test]
    fn torus_genus_one() {
        let m = shapes::torus(2.0, 0.6, 48, 24);
        let s = m.stats();
        assert_eq!(s.components, 1);
        assert_eq!(s.euler_char, 0);
        assert_eq!(s.genus, Some(1));
    }

    #[test]
    fn double_torus_genus_two() {
        let m = shapes::double_torus_slab();
        let s = m.stats();
        assert_eq!(s.components, 1);
        assert_eq!(s.euler_char, -2, "chi of genus-2 surface");
        assert_eq!(s.genus, Some(2));
        assert!(s.closed && s.oriented);
    }

    #[test]
    fn disjoint_spheres_additive_chi() {
        let a = shapes::icosphere(1.0, 1);
        let b = shapes::icosphere(1.0, 1).translated(vec3(5.0, 0.0, 0.0));
        let offset = a.vertices.len() as u32;
        let mut vertices = a.vertices.clone();
        vertices.extend(b.vertices.iter().copied());
        let mut triangles = a.triangles.clone();
        triangles.extend(b.triangles.iter().map(|t| t.map(|i| i + offset)));
        let m = TriangleMesh::new(vertices, triangles, ValidationMode::Normal).unwrap();
        let s = m.stats();
        assert_eq!(s.components, 2);
        assert_eq!(s.euler_char, 4);
        assert_eq!(s.genus, Some(0));
    }

    #[test]
    fn index_out_of_range_rejected() {
        let err = TriangleMesh::new(
            vec![vec3(0.0, 0.0, 0.0); 10],
            vec![[0, 1, 999]],
            ValidationMode::Permissive,
        )
        .unwrap_err();
        assert!(matches!(err, MeshError::IndexOutOfRange { vertex: 999, .. }));
    }

    #[test]
    fn strict_mode_names_nonmanifold_edge() {
        // three triangles sharing edge (0, 1)
        let m = TriangleMesh::new(
            vec![
                vec3(0.0, 0.0, 0.0),
                vec3(1.0, 0.0, 0.0),
                vec3(0.0, 1.0, 0.0),
                vec3(0.0, 0.0, 1.0),
                vec3(0.0, -1.0, 0.0),
            ],
            vec![[0, 1, 2], [0, 1, 3], [0, 1, 4]],
            ValidationMode::Strict,
        );
        match m {
            Err(MeshError::NonManifoldEdge(0, 1, 3)) => {}
            other => panic!("expected non-manifold error, got {other:?}"),
        }
    }

    #[test]
    fn refinement_preserves_area_and_topology() {
        let m = shapes::icosphere(1.0, 1);
        let r = m.refined();
        assert!((m.total_area() - r.total_area()).abs() < 1e-12 * m.total_area());
        let s = r.stats();
        assert_eq!(s.euler_char, 2);
        assert!(s.closed && s.oriented);
    }
}
