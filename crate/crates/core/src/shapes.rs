//! Procedural test geometry.
//!
//! Closed, consistently oriented meshes used by the test suites and handy as
//! CLI inputs: spheres, tori, and blocks with drilled bores, throats and
//! dimples. Ring-based surfaces stagger alternate rings so that convex bands
//! triangulate like an antiprism; this keeps the convex hull of the vertex
//! set aligned with the surface triangles, which the complementary-space
//! pipeline relies on for clean mouth patches.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::geom::{vec3, Vec3};
use crate::mesh::TriangleMesh;

/// Welds exactly coincident vertices while building a mesh.
#[derive(Default)]
struct MeshBuilder {
    vertices: Vec<Vec3>,
    triangles: Vec<[u32; 3]>,
    index: HashMap<[u64; 3], u32>,
}

impl MeshBuilder {
    fn vertex(&mut self, p: Vec3) -> u32 {
        let key = [p.x.to_bits(), p.y.to_bits(), p.z.to_bits()];
        *self.index.entry(key).or_insert_with(|| {
            self.vertices.push(p);
            (self.vertices.len() - 1) as u32
        })
    }

    fn tri(&mut self, a: u32, b: u32, c: u32) {
        if a != b && b != c && a != c {
            self.triangles.push([a, b, c]);
        }
    }

    fn quad(&mut self, a: u32, b: u32, c: u32, d: u32) {
        self.tri(a, b, c);
        self.tri(a, c, d);
    }

    fn finish(self) -> TriangleMesh {
        let mut mesh = TriangleMesh {
            vertices: self.vertices,
            triangles: self.triangles,
            labels: None,
        };
        // Border points are generated independently by the face builders and
        // may differ in the last ulps; weld them before orienting.
        weld_close_vertices(&mut mesh, 1e-9);
        orient_outward(&mut mesh);
        mesh
    }
}

/// Merge vertices closer than `tol` and drop triangles that collapse.
pub fn weld_close_vertices(mesh: &mut TriangleMesh, tol: f64) {
    let n = mesh.vertices.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&i, &j| mesh.vertices[i as usize].lex_cmp(mesh.vertices[j as usize]));
    let mut canon: Vec<u32> = (0..n as u32).collect();
    fn find(canon: &mut [u32], mut x: u32) -> u32 {
        while canon[x as usize] != x {
            let p = canon[x as usize];
            canon[x as usize] = canon[p as usize];
            x = p;
        }
        x
    }
    for w in 0..n {
        let i = order[w] as usize;
        for &jv in order[w + 1..].iter() {
            let j = jv as usize;
            if mesh.vertices[j].x - mesh.vertices[i].x > tol {
                break;
            }
            if mesh.vertices[i].dist(mesh.vertices[j]) <= tol {
                let (ra, rb) = (find(&mut canon, i as u32), find(&mut canon, j as u32));
                if ra != rb {
                    canon[ra.max(rb) as usize] = ra.min(rb);
                }
            }
        }
    }
    for i in 0..n as u32 {
        find(&mut canon, i);
        canon[i as usize] = find(&mut canon, canon[i as usize]);
    }
    let mut remap = vec![u32::MAX; n];
    let mut vertices = Vec::new();
    for i in 0..n {
        let r = canon[i] as usize;
        if remap[r] == u32::MAX {
            remap[r] = vertices.len() as u32;
            vertices.push(mesh.vertices[r]);
        }
        remap[i] = remap[r];
    }
    let triangles = mesh
        .triangles
        .iter()
        .map(|t| t.map(|v| remap[v as usize]))
        .filter(|&[a, b, c]| a != b && b != c && a != c)
        .collect();
    mesh.vertices = vertices;
    mesh.triangles = triangles;
}

/// Makes the winding consistent across shared edges (BFS propagation) and
/// then flips everything if the enclosed volume comes out negative. Assumes
/// a single closed component.
pub fn orient_outward(mesh: &mut TriangleMesh) {
    let f = mesh.triangles.len();
    if f == 0 {
        return;
    }
    let mut edge_tris: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    for (t, tri) in mesh.triangles.iter().enumerate() {
        for e in 0..3 {
            let (u, v) = (tri[e], tri[(e + 1) % 3]);
            edge_tris.entry((u.min(v), u.max(v))).or_default().push(t);
        }
    }
    let mut visited = vec![false; f];
    let mut stack = Vec::new();
    for start in 0..f {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        stack.push(start);
        while let Some(t) = stack.pop() {
            let tri = mesh.triangles[t];
            for e in 0..3 {
                let (u, v) = (tri[e], tri[(e + 1) % 3]);
                for &other in &edge_tris[&(u.min(v), u.max(v))] {
                    if other == t || visited[other] {
                        continue;
                    }
                    let o = mesh.triangles[other];
                    // the neighbor must traverse (u, v) in the opposite order
                    let same_dir = (0..3).any(|k| o[k] == u && o[(k + 1) % 3] == v);
                    if same_dir {
                        mesh.triangles[other].swap(1, 2);
                    }
                    visited[other] = true;
                    stack.push(other);
                }
            }
        }
    }
    let volume: f64 = mesh
        .triangles
        .iter()
        .map(|&[a, b, c]| {
            let (a, b, c) = (
                mesh.vertices[a as usize],
                mesh.vertices[b as usize],
                mesh.vertices[c as usize],
            );
            a.cross(b).dot(c) / 6.0
        })
        .sum();
    if volume < 0.0 {
        for tri in &mut mesh.triangles {
            tri.swap(1, 2);
        }
    }
}

/// Axis-aligned box with half-extents, 12 triangles.
pub fn box_mesh(hx: f64, hy: f64, hz: f64) -> TriangleMesh {
    let mut b = MeshBuilder::default();
    let v: Vec<u32> = (0..8)
        .map(|i| {
            let p = vec3(
                if i & 1 == 0 { -hx } else { hx },
                if i & 2 == 0 { -hy } else { hy },
                if i & 4 == 0 { -hz } else { hz },
            );
            b.vertex(p)
        })
        .collect();
    // -z, +z, -y, +y, -x, +x
    b.quad(v[0], v[2], v[3], v[1]);
    b.quad(v[4], v[5], v[7], v[6]);
    b.quad(v[0], v[1], v[5], v[4]);
    b.quad(v[2], v[6], v[7], v[3]);
    b.quad(v[0], v[4], v[6], v[2]);
    b.quad(v[1], v[3], v[7], v[5]);
    b.finish()
}

/// Cube with the given half-extent.
pub fn cube(half: f64) -> TriangleMesh {
    box_mesh(half, half, half)
}

/// Icosphere: subdivided icosahedron projected to the given radius.
pub fn icosphere(radius: f64, subdivisions: u32) -> TriangleMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts = vec![
        vec3(-1.0, t, 0.0),
        vec3(1.0, t, 0.0),
        vec3(-1.0, -t, 0.0),
        vec3(1.0, -t, 0.0),
        vec3(0.0, -1.0, t),
        vec3(0.0, 1.0, t),
        vec3(0.0, -1.0, -t),
        vec3(0.0, 1.0, -t),
        vec3(t, 0.0, -1.0),
        vec3(t, 0.0, 1.0),
        vec3(-t, 0.0, -1.0),
        vec3(-t, 0.0, 1.0),
    ];
    let mut faces: Vec<[u32; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut midcache: HashMap<(u32, u32), u32> = HashMap::new();
        let mut mid = |a: u32, b: u32, verts: &mut Vec<Vec3>| -> u32 {
            let key = (a.min(b), a.max(b));
            *midcache.entry(key).or_insert_with(|| {
                let p = (verts[a as usize] + verts[b as usize]) * 0.5;
                verts.push(p);
                (verts.len() - 1) as u32
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend_from_slice(&[[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        faces = next;
    }
    for v in &mut verts {
        *v = v.normalized() * radius;
    }
    let mut mesh = TriangleMesh {
        vertices: verts,
        triangles: faces,
        labels: None,
    };
    orient_outward(&mut mesh);
    mesh
}

/// Torus with major radius `big_r` and tube radius `small_r`, lying in the
/// xy-plane. `nu` points around the main circle, `nv` rings around the tube;
/// alternate tube rings are staggered by half a step.
pub fn torus(big_r: f64, small_r: f64, nu: usize, nv: usize) -> TriangleMesh {
    let mut b = MeshBuilder::default();
    let point = |i: usize, j: usize| -> Vec3 {
        let stagger = if j % 2 == 1 { 0.5 } else { 0.0 };
        let theta = 2.0 * PI * (i as f64 + stagger) / nu as f64;
        let phi = 2.0 * PI * j as f64 / nv as f64;
        let rho = big_r + small_r * phi.cos();
        vec3(rho * theta.cos(), rho * theta.sin(), small_r * phi.sin())
    };
    let mut ids = vec![vec![0u32; nu]; nv];
    for (j, row) in ids.iter_mut().enumerate() {
        for (i, slot) in row.iter_mut().enumerate() {
            *slot = b.vertex(point(i, j));
        }
    }
    for j in 0..nv {
        let j1 = (j + 1) % nv;
        for i in 0..nu {
            let i1 = (i + 1) % nu;
            let (a, c) = (ids[j][i], ids[j][i1]);
            let (d, e) = (ids[j1][i], ids[j1][i1]);
            if j % 2 == 0 {
                // ring j1 staggered forward
                b.tri(a, c, d);
                b.tri(c, e, d);
            } else {
                b.tri(a, c, e);
                b.tri(a, e, d);
            }
        }
    }
    b.finish()
}

/// Uniform points along a convex loop (used to stitch a face ring to a drill
/// rim). The loop is given by corner points in order; output has `per_side[k]`
/// segments along side k and includes every corner.
fn loop_points(corners: &[Vec3], per_side: &[usize]) -> Vec<Vec3> {
    let mut pts = Vec::new();
    for (k, &c) in corners.iter().enumerate() {
        let next = corners[(k + 1) % corners.len()];
        let n = per_side[k];
        for s in 0..n {
            let t = s as f64 / n as f64;
            pts.push(c + (next - c) * t);
        }
    }
    pts
}

/// Triangulated annulus between a circular rim and an outer convex loop, at
/// constant z. Both rings need the same point count; intermediate rings blend
/// linearly. Returns the rim vertex ids in order (for stitching a wall).
#[allow(clippy::too_many_arguments)]
fn annulus_face(
    b: &mut MeshBuilder,
    center: Vec3,
    radius: f64,
    phase: f64,
    outer: &[Vec3],
    rings: usize,
    up: bool,
) -> Vec<u32> {
    let n = outer.len();
    let rim: Vec<Vec3> = (0..n)
        .map(|i| {
            let a = 2.0 * PI * (i as f64 + phase) / n as f64;
            center + vec3(radius * a.cos(), radius * a.sin(), 0.0)
        })
        .collect();
    // align the outer walk with the rim angles to avoid spiral quads
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for off in 0..n {
        let d = (outer[off] - rim[0]).norm_sq();
        if d < best_d {
            best_d = d;
            best = off;
        }
    }
    let mut ring_ids: Vec<Vec<u32>> = Vec::with_capacity(rings + 1);
    for k in 0..=rings {
        let t = k as f64 / rings as f64;
        let ids: Vec<u32> = (0..n)
            .map(|i| {
                let o = outer[(i + best) % n];
                b.vertex(rim[i] + (o - rim[i]) * t)
            })
            .collect();
        ring_ids.push(ids);
    }
    for k in 0..rings {
        for i in 0..n {
            let i1 = (i + 1) % n;
            let (a0, a1) = (ring_ids[k][i], ring_ids[k][i1]);
            let (b0, b1) = (ring_ids[k + 1][i], ring_ids[k + 1][i1]);
            if up {
                b.quad(a0, a1, b1, b0);
            } else {
                b.quad(a0, b0, b1, a1);
            }
        }
    }
    ring_ids[0].clone()
}

/// Plain rectangular grid face spanning `corners` (a quad), subdivided
/// `nu` x `nv`.
fn grid_face(b: &mut MeshBuilder, corners: [Vec3; 4], nu: usize, nv: usize) {
    let ids: Vec<Vec<u32>> = (0..=nv)
        .map(|j| {
            (0..=nu)
                .map(|i| {
                    let u = i as f64 / nu as f64;
                    let v = j as f64 / nv as f64;
                    let p = corners[0] * ((1.0 - u) * (1.0 - v))
                        + corners[1] * (u * (1.0 - v))
                        + corners[2] * (u * v)
                        + corners[3] * ((1.0 - u) * v);
                    b.vertex(p)
                })
                .collect()
        })
        .collect();
    for j in 0..nv {
        for i in 0..nu {
            b.quad(ids[j][i], ids[j][i + 1], ids[j + 1][i + 1], ids[j + 1][i]);
        }
    }
}

/// Revolved side wall between consecutive rings of a profile. `profile` is a
/// list of (radius, z); each entry becomes one ring of `n` points around the
/// z-axis through `center_xy`. Rings alternate a half-step stagger starting
/// from `phase0`. Returns ids of first and last rings.
fn revolve_wall(
    b: &mut MeshBuilder,
    center_xy: Vec3,
    profile: &[(f64, f64)],
    n: usize,
) -> (Vec<u32>, Vec<u32>) {
    let ring = |b: &mut MeshBuilder, k: usize| -> Vec<u32> {
        let (radius, z) = profile[k];
        let stagger = if k % 2 == 1 { 0.5 } else { 0.0 };
        (0..n)
            .map(|i| {
                let a = 2.0 * PI * (i as f64 + stagger) / n as f64;
                b.vertex(center_xy + vec3(radius * a.cos(), radius * a.sin(), z))
            })
            .collect()
    };
    let rings: Vec<Vec<u32>> = (0..profile.len()).map(|k| ring(b, k)).collect();
    for k in 0..profile.len() - 1 {
        for i in 0..n {
            let i1 = (i + 1) % n;
            let (a0, a1) = (rings[k][i], rings[k][i1]);
            let (b0, b1) = (rings[k + 1][i], rings[k + 1][i1]);
            if k % 2 == 0 {
                b.tri(a0, a1, b0);
                b.tri(a1, b1, b0);
            } else {
                b.tri(a0, a1, b1);
                b.tri(a0, b1, b0);
            }
        }
    }
    (rings[0].clone(), rings.last().unwrap().clone())
}

/// Disk cap sealing a ring at `z` (fan through concentric rings).
fn disk_cap(b: &mut MeshBuilder, center: Vec3, radius: f64, phase: f64, n: usize, rings: usize) {
    let ring_pts = |b: &mut MeshBuilder, k: usize| -> Vec<u32> {
        let r = radius * (rings - k) as f64 / rings as f64;
        let stagger = phase + if k % 2 == 1 { 0.5 } else { 0.0 };
        (0..n)
            .map(|i| {
                let a = 2.0 * PI * (i as f64 + stagger) / n as f64;
                b.vertex(center + vec3(r * a.cos(), r * a.sin(), 0.0))
            })
            .collect()
    };
    let rid: Vec<Vec<u32>> = (0..rings).map(|k| ring_pts(b, k)).collect();
    let apex = b.vertex(center);
    for k in 0..rings - 1 {
        for i in 0..n {
            let i1 = (i + 1) % n;
            let (a0, a1) = (rid[k][i], rid[k][i1]);
            let (b0, b1) = (rid[k + 1][i], rid[k + 1][i1]);
            if k % 2 == 0 {
                b.tri(a0, a1, b0);
                b.tri(a1, b1, b0);
            } else {
                b.tri(a0, a1, b1);
                b.tri(a0, b1, b0);
            }
        }
    }
    for i in 0..n {
        let i1 = (i + 1) % n;
        b.tri(rid[rings - 1][i], rid[rings - 1][i1], apex);
    }
}

/// Box of half-extents (hx, hy, hz) with vertical drill holes. Each hole is
/// (center_x, center_y, radius, depth): depth >= 2*hz drills through,
/// otherwise a blind bore from the top face. Faces are subdivided so the
/// vertex sample is roughly uniform.
pub fn drilled_box(
    hx: f64,
    hy: f64,
    hz: f64,
    holes: &[(f64, f64, f64, f64)],
    n_circle: usize,
    face_div: usize,
) -> TriangleMesh {
    assert!(!holes.is_empty());
    let mut b = MeshBuilder::default();
    let nd = face_div;

    // Partition the top face into vertical strips, one hole per strip.
    let mut xs = vec![-hx];
    for w in 1..holes.len() {
        let mid = (holes[w - 1].0 + holes[w].0) / 2.0;
        xs.push(mid);
    }
    xs.push(hx);

    let wall_rings = |depth: f64, r: f64| -> Vec<(f64, f64)> {
        let target = (2.0 * PI * r / n_circle as f64) * 2.0;
        let n = ((depth / target).ceil() as usize).max(2);
        (0..=n)
            .map(|k| (r, hz - depth * k as f64 / n as f64))
            .collect()
    };

    for (h, &(cx, cy, r, depth)) in holes.iter().enumerate() {
        let (x0, x1) = (xs[h], xs[h + 1]);
        let strip_w = x1 - x0;
        let nu = ((strip_w / (2.0 * hx)) * 4.0 * nd as f64).round().max(4.0) as usize;
        let corners = [
            vec3(x0, -hy, hz),
            vec3(x1, -hy, hz),
            vec3(x1, hy, hz),
            vec3(x0, hy, hz),
        ];
        let outer = loop_points(&corners, &[nu, nd, nu, nd]);
        let rim_top = annulus_face(
            &mut b,
            vec3(cx, cy, hz),
            r,
            0.0,
            &outer,
            (nd / 3).max(3),
            true,
        );
        let through = depth >= 2.0 * hz;
        let bore_depth = if through { 2.0 * hz } else { depth };
        let profile = wall_rings(bore_depth, r);
        let (first, last) = revolve_wall(&mut b, vec3(cx, cy, 0.0), &profile, n_circle);
        debug_assert_eq!(first, rim_top);
        let n_rings = profile.len();
        let bottom_phase = if (n_rings - 1) % 2 == 1 { 0.5 } else { 0.0 };
        if through {
            // annulus on the bottom face
            let corners = [
                vec3(x0, -hy, -hz),
                vec3(x1, -hy, -hz),
                vec3(x1, hy, -hz),
                vec3(x0, hy, -hz),
            ];
            let outer = loop_points(&corners, &[nu, nd, nu, nd]);
            let rim_bottom = annulus_face(
                &mut b,
                vec3(cx, cy, -hz),
                r,
                bottom_phase,
                &outer,
                (nd / 3).max(3),
                false,
            );
            debug_assert_eq!(rim_bottom, last);
        } else {
            disk_cap(
                &mut b,
                vec3(cx, cy, hz - depth),
                r,
                bottom_phase,
                n_circle,
                (n_circle / 12).max(3),
            );
            // flat bottom face strip (no hole)
            let corners = [
                vec3(x0, -hy, -hz),
                vec3(x1, -hy, -hz),
                vec3(x1, hy, -hz),
                vec3(x0, hy, -hz),
            ];
            grid_face(&mut b, corners, nu, nd);
        }
    }

    // side faces; x-side edges must match the strip divisions along x
    let mut x_edge = Vec::new();
    for h in 0..holes.len() {
        let (x0, x1) = (xs[h], xs[h + 1]);
        let strip_w = x1 - x0;
        let nu = ((strip_w / (2.0 * hx)) * 4.0 * nd as f64).round().max(4.0) as usize;
        for s in 0..nu {
            x_edge.push(x0 + strip_w * s as f64 / nu as f64);
        }
    }
    x_edge.push(hx);
    let nz = ((2.0 * hz / (2.0 * hx)) * 4.0 * nd as f64).round().max(2.0) as usize;
    // y = -hy and y = +hy faces: grids matching x_edge positions
    for &(y, flip) in &[(-hy, false), (hy, true)] {
        let ids: Vec<Vec<u32>> = (0..=nz)
            .map(|j| {
                let z = hz - 2.0 * hz * j as f64 / nz as f64;
                x_edge.iter().map(|&x| b.vertex(vec3(x, y, z))).collect()
            })
            .collect();
        for j in 0..nz {
            for i in 0..x_edge.len() - 1 {
                if flip {
                    b.quad(ids[j][i], ids[j][i + 1], ids[j + 1][i + 1], ids[j + 1][i]);
                } else {
                    b.quad(ids[j][i], ids[j + 1][i], ids[j + 1][i + 1], ids[j][i + 1]);
                }
            }
        }
    }
    // x = -hx and x = +hx faces
    for &x in &[-hx, hx] {
        grid_face(
            &mut b,
            [
                vec3(x, -hy, -hz),
                vec3(x, hy, -hz),
                vec3(x, hy, hz),
                vec3(x, -hy, hz),
            ],
            nd,
            nz,
        );
    }
    b.finish()
}

/// Cube with one blind cylindrical bore from the top face: the standard
/// pocket fixture (bore radius `r`, depth `d`).
pub fn drilled_cube(half: f64, r: f64, d: f64) -> TriangleMesh {
    drilled_box(half, half, half, &[(0.0, 0.0, r, d)], 96, 24)
}

/// Slab with two parallel through-holes: a genus-2 surface whose tunnels are
/// cleanly separated by solid material.
pub fn double_torus_slab() -> TriangleMesh {
    drilled_box(2.2, 1.2, 0.6, &[(-1.0, 0.0, 0.55, 10.0), (1.0, 0.0, 0.55, 10.0)], 64, 16)
}

/// Slab with a single through-hole of radius `r` (a pulsating-bore fixture).
pub fn through_bore_slab(r: f64, half_thickness: f64) -> TriangleMesh {
    drilled_box(2.0, 2.0, half_thickness, &[(0.0, 0.0, r, 10.0 * half_thickness)], 72, 18)
}

/// Pocket with a throat: cylinder of radius `r_top`, tapering to `r_min`,
/// then flaring into a chamber of radius `r_chamber`. The minimum passage
/// diameter to the chamber is exactly 2*r_min.
pub fn throat_pocket(half: f64, r_top: f64, r_min: f64, r_chamber: f64) -> TriangleMesh {
    let mut b = MeshBuilder::default();
    let n = 72;
    let nd = 20;
    let hz = half;
    let corners = [
        vec3(-half, -half, hz),
        vec3(half, -half, hz),
        vec3(half, half, hz),
        vec3(-half, half, hz),
    ];
    let outer = loop_points(&corners, &[nd, nd, nd, nd]);
    let rim = annulus_face(&mut b, vec3(0.0, 0.0, hz), r_top, 0.0, &outer, 6, true);
    // profile: straight section, taper to throat, flare to chamber, floor
    let mut profile: Vec<(f64, f64)> = Vec::new();
    let seg = |profile: &mut Vec<(f64, f64)>, r0: f64, z0: f64, r1: f64, z1: f64, steps: usize| {
        for k in 0..steps {
            let t = k as f64 / steps as f64;
            profile.push((r0 + (r1 - r0) * t, z0 + (z1 - z0) * t));
        }
    };
    let z_top = hz;
    let z_throat = hz - 1.6;
    let z_chamber = hz - 2.4;
    let z_floor = hz - 3.4;
    seg(&mut profile, r_top, z_top, r_top, hz - 0.8, 8);
    seg(&mut profile, r_top, hz - 0.8, r_min, z_throat, 10);
    seg(&mut profile, r_min, z_throat, r_chamber, z_chamber, 10);
    seg(&mut profile, r_chamber, z_chamber, r_chamber, z_floor, 10);
    profile.push((r_chamber, z_floor));
    let (first, last) = revolve_wall(&mut b, Vec3::ZERO, &profile, n);
    debug_assert_eq!(first, rim);
    let _ = last;
    let n_rings = profile.len();
    let phase = if (n_rings - 1) % 2 == 1 { 0.5 } else { 0.0 };
    disk_cap(&mut b, vec3(0.0, 0.0, z_floor), r_chamber, phase, n, 8);
    // remaining cube faces
    grid_face(
        &mut b,
        [
            vec3(-half, -half, -hz),
            vec3(half, -half, -hz),
            vec3(half, half, -hz),
            vec3(-half, half, -hz),
        ],
        nd,
        nd,
    );
    for &(y, _) in &[(-half, false), (half, true)] {
        grid_face(
            &mut b,
            [
                vec3(-half, y, -hz),
                vec3(half, y, -hz),
                vec3(half, y, hz),
                vec3(-half, y, hz),
            ],
            nd,
            nd,
        );
    }
    for &x in &[-half, half] {
        grid_face(
            &mut b,
            [
                vec3(x, -half, -hz),
                vec3(x, half, -hz),
                vec3(x, half, hz),
                vec3(x, -half, hz),
            ],
            nd,
            nd,
        );
    }
    b.finish()
}

/// Cube with a hemispherical dimple of radius `r` in the top face (the
/// shallow-depression fixture for the level-set method).
pub fn dimpled_cube(half: f64, r: f64) -> TriangleMesh {
    let mut b = MeshBuilder::default();
    let n = 64;
    let nd = 16;
    let hz = half;
    let corners = [
        vec3(-half, -half, hz),
        vec3(half, -half, hz),
        vec3(half, half, hz),
        vec3(-half, half, hz),
    ];
    let outer = loop_points(&corners, &[nd, nd, nd, nd]);
    let rim = annulus_face(&mut b, vec3(0.0, 0.0, hz), r, 0.0, &outer, 5, true);
    // hemisphere rings: polar angle from equator (at z = hz) to the pole
    let n_lat = 10;
    let profile: Vec<(f64, f64)> = (0..n_lat)
        .map(|k| {
            let ang = (PI / 2.0) * k as f64 / n_lat as f64;
            (r * ang.cos(), hz - r * ang.sin())
        })
        .collect();
    let (first, _) = revolve_wall(&mut b, Vec3::ZERO, &profile, n);
    debug_assert_eq!(first, rim);
    let phase = if (n_lat - 1) % 2 == 1 { 0.5 } else { 0.0 };
    disk_cap(
        &mut b,
        vec3(0.0, 0.0, hz - r * ((PI / 2.0) * (n_lat as f64 - 1.0) / n_lat as f64).sin()),
        r * ((PI / 2.0) * (n_lat as f64 - 1.0) / n_lat as f64).cos(),
        phase,
        n,
        4,
    );
    grid_face(
        &mut b,
        [
            vec3(-half, -half, -hz),
            vec3(half, -half, -hz),
            vec3(half, half, -hz),
            vec3(-half, half, -hz),
        ],
        nd,
        nd,
    );
    for &y in &[-half, half] {
        grid_face(
            &mut b,
            [
                vec3(-half, y, -hz),
                vec3(half, y, -hz),
                vec3(half, y, hz),
                vec3(-half, y, hz),
            ],
            nd,
            nd,
        );
    }
    for &x in &[-half, half] {
        grid_face(
            &mut b,
            [
                vec3(x, -half, -hz),
                vec3(x, half, -hz),
                vec3(x, half, hz),
                vec3(x, -half, hz),
            ],
            nd,
            nd,
        );
    }
    b.finish()
}

/// Hollow shell: outer sphere plus an inner sphere bounding a cavity. The
/// inner component is wound toward the cavity, as the boundary of the solid
/// between the two spheres.
pub fn hollow_shell(outer_r: f64, inner_r: f64, subdivisions: u32) -> TriangleMesh {
    let outer = icosphere(outer_r, subdivisions);
    let mut inner = icosphere(inner_r, subdivisions);
    for t in &mut inner.triangles {
        t.swap(1, 2);
    }
    let offset = outer.vertices.len() as u32;
    let mut vertices = outer.vertices;
    vertices.extend(inner.vertices);
    let mut triangles = outer.triangles;
    triangles.extend(inner.triangles.iter().map(|t| t.map(|i| i + offset)));
    TriangleMesh {
        vertices,
        triangles,
        labels: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enclosed_volume(m: &TriangleMesh) -> f64 {
        m.triangles
            .iter()
            .map(|&[a, b, c]| {
                let (a, b, c) = (
                    m.vertices[a as usize],
                    m.vertices[b as usize],
                    m.vertices[c as usize],
                );
                a.cross(b).dot(c) / 6.0
            })
            .sum()
    }

    #[test]
    fn icosphere_volume_approaches_analytic() {
        let m = icosphere(1.0, 3);
        let s = m.stats();
        assert!(s.closed && s.oriented);
        assert_eq!(s.genus, Some(0));
        let v = enclosed_volume(&m);
        let exact = 4.0 / 3.0 * PI;
        assert!((v - exact).abs() / exact < 0.01, "v = {v}");
    }

    #[test]
    fn torus_is_closed_and_oriented() {
        let m = torus(2.0, 0.6, 64, 24);
        let s = m.stats();
        assert!(s.closed && s.oriented, "{s:?}");
        assert_eq!(s.genus, Some(1));
        let v = enclosed_volume(&m);
        let exact = 2.0 * PI * PI * 2.0 * 0.6 * 0.6;
        assert!((v - exact).abs() / exact < 0.02, "v = {v}, exact = {exact}");
    }

    #[test]
    fn drilled_cube_volume() {
        let m = drilled_cube(3.0, 1.0, 4.0);
        let s = m.stats();
        assert!(s.closed && s.oriented, "{s:?}");
        assert_eq!(s.genus, Some(0));
        let v = enclosed_volume(&m);
        let exact = 6.0f64.powi(3) - PI * 4.0;
        assert!((v - exact).abs() / exact < 0.01, "v = {v}, exact = {exact}");
    }

    #[test]
    fn double_torus_slab_genus() {
        let m = double_torus_slab();
        let s = m.stats();
        assert!(s.closed && s.oriented, "{s:?}");
        assert_eq!(s.genus, Some(2));
    }

    #[test]
    fn through_bore_closed() {
        let m = through_bore_slab(1.0, 1.0);
        let s = m.stats();
        assert!(s.closed && s.oriented, "{s:?}");
        assert_eq!(s.genus, Some(1));
        let v = enclosed_volume(&m);
        let exact = 4.0 * 4.0 * 2.0 - PI * 2.0;
        assert!((v - exact).abs() / exact < 0.01, "v = {v}, exact = {exact}");
    }

    #[test]
    fn throat_pocket_closed() {
        let m = throat_pocket(2.5, 1.0, 0.5, 0.75);
        let s = m.stats();
        assert!(s.closed && s.oriented, "{s:?}");
        assert_eq!(s.genus, Some(0));
    }

    #[test]
    fn dimpled_cube_closed() {
        let m = dimpled_cube(1.2, 0.5);
        let s = m.stats();
        assert!(s.closed && s.oriented, "{s:?}");
        assert_eq!(s.genus, Some(0));
    }

    #[test]
    fn hollow_shell_two_components() {
        let m = hollow_shell(2.0, 1.0, 2);
        let s = m.stats();
        assert!(s.closed && s.oriented, "{s:?}");
        assert_eq!(s.components, 2);
        let v = enclosed_volume(&m);
        let exact = 4.0 / 3.0 * PI * (8.0 - 1.0);
        assert!((v - exact).abs() / exact < 0.02, "v = {v}");
    }
}
