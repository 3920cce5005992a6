//! Exact geometric predicates with a floating-point filter.
//!
//! Every combinatorial decision (orientation, in-sphere, Gabriel tests) is
//! first evaluated in f64 with a running forward error bound. When the bound
//! cannot certify the sign, the predicate is re-evaluated in exact rational
//! arithmetic (f64 inputs convert to rationals losslessly), so the returned
//! sign is always the true sign of the expression.
//!
//! Cospherical and equidistant ties are resolved by symbolic perturbation of
//! the point weights: point `i` carries an infinitesimal weight eps(rank(i)),
//! where eps grows as rank decreases and ranks come from a seeded
//! permutation. This keeps degenerate inputs (grids, cube corners) on a
//! deterministic, globally consistent branch.

use num::{BigRational, FromPrimitive, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::Vec3;

/// f64 value with a conservative absolute error bound.
#[derive(Debug, Clone, Copy)]
struct Approx {
    val: f64,
    err: f64,
}

const EPS: f64 = f64::EPSILON; // one ulp at 1.0; used conservatively per op

impl Approx {
    fn exact(v: f64) -> Approx {
        Approx { val: v, err: 0.0 }
    }

    fn add(self, o: Approx) -> Approx {
        let val = self.val + o.val;
        Approx {
            val,
            err: self.err + o.err + val.abs() * EPS,
        }
    }

    fn sub(self, o: Approx) -> Approx {
        let val = self.val - o.val;
        Approx {
            val,
            err: self.err + o.err + val.abs() * EPS,
        }
    }

    fn mul(self, o: Approx) -> Approx {
        let val = self.val * o.val;
        Approx {
            val,
            err: self.val.abs() * o.err + o.val.abs() * self.err + self.err * o.err
                + val.abs() * EPS,
        }
    }

    /// Certified sign, or None when the error bound straddles zero.
    fn sign(self) -> Option<i8> {
        if !self.val.is_finite() {
            return None;
        }
        // Safety factor absorbs the slack in the per-op bounds.
        if self.val.abs() > self.err * 4.0 + f64::MIN_POSITIVE {
            Some(if self.val > 0.0 { 1 } else { -1 })
        } else if self.err == 0.0 {
            Some(0)
        } else {
            None
        }
    }
}

type Rat = BigRational;

fn rat(x: f64) -> Rat {
    BigRational::from_f64(x).expect("finite coordinate")
}

fn rvec(p: Vec3) -> [Rat; 3] {
    [rat(p.x), rat(p.y), rat(p.z)]
}

fn rsub(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn rdot(a: &[Rat; 3], b: &[Rat; 3]) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn rdet3(r0: &[Rat; 3], r1: &[Rat; 3], r2: &[Rat; 3]) -> Rat {
    &r0[0] * (&r1[1] * &r2[2] - &r1[2] * &r2[1])
        - &r0[1] * (&r1[0] * &r2[2] - &r1[2] * &r2[0])
        + &r0[2] * (&r1[0] * &r2[1] - &r1[1] * &r2[0])
}

fn rat_sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn adet3(r0: [Approx; 3], r1: [Approx; 3], r2: [Approx; 3]) -> Approx {
    let m0 = r1[1].mul(r2[2]).sub(r1[2].mul(r2[1]));
    let m1 = r1[0].mul(r2[2]).sub(r1[2].mul(r2[0]));
    let m2 = r1[0].mul(r2[1]).sub(r1[1].mul(r2[0]));
    r0[0].mul(m0).sub(r0[1].mul(m1)).add(r0[2].mul(m2))
}

fn avec_sub(a: Vec3, b: Vec3) -> [Approx; 3] {
    [
        Approx::exact(a.x).sub(Approx::exact(b.x)),
        Approx::exact(a.y).sub(Approx::exact(b.y)),
        Approx::exact(a.z).sub(Approx::exact(b.z)),
    ]
}

fn adot(a: [Approx; 3], b: [Approx; 3]) -> Approx {
    a[0].mul(b[0]).add(a[1].mul(b[1])).add(a[2].mul(b[2]))
}

/// Sign of (d-a) . ((b-a) x (c-a)): positive when `d` lies on the side of
/// plane (a, b, c) that its counterclockwise normal points to. A tetrahedron
/// listed as (a, b, c, d) with positive sign is "positively oriented".
pub fn orient3d(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> i8 {
    let det = adet3(avec_sub(b, a), avec_sub(c, a), avec_sub(d, a));
    if let Some(s) = det.sign() {
        return s;
    }
    orient3d_exact(a, b, c, d)
}

fn orient3d_exact(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> i8 {
    let (a, b, c, d) = (rvec(a), rvec(b), rvec(c), rvec(d));
    rat_sign(&rdet3(&rsub(&b, &a), &rsub(&c, &a), &rsub(&d, &a)))
}

fn insphere_det_approx(a: Vec3, b: Vec3, c: Vec3, d: Vec3, e: Vec3) -> Approx {
    let rows: Vec<([Approx; 3], Approx)> = [a, b, c, d]
        .iter()
        .map(|&p| {
            let v = avec_sub(p, e);
            (v, adot(v, v))
        })
        .collect();
    // Expand along the lifted column; the sum below is the NEGATED raw
    // determinant, so that the result is positive when `e` lies strictly
    // inside the circumsphere of a POSITIVELY oriented (a, b, c, d).
    let mut det = Approx::exact(0.0);
    for i in 0..4 {
        let others: Vec<[Approx; 3]> = (0..4).filter(|&j| j != i).map(|j| rows[j].0).collect();
        let minor = adet3(others[0], others[1], others[2]);
        let term = rows[i].1.mul(minor);
        det = if i % 2 == 0 {
            det.add(term)
        } else {
            det.sub(term)
        };
    }
    det
}

fn insphere_det_exact(a: Vec3, b: Vec3, c: Vec3, d: Vec3, e: Vec3) -> Rat {
    let er = rvec(e);
    let rows: Vec<([Rat; 3], Rat)> = [a, b, c, d]
        .iter()
        .map(|&p| {
            let v = rsub(&rvec(p), &er);
            let n = rdot(&v, &v);
            (v, n)
        })
        .collect();
    let mut det = Rat::zero();
    for i in 0..4 {
        let others: Vec<&[Rat; 3]> = (0..4).filter(|&j| j != i).map(|j| &rows[j].0).collect();
        let minor = rdet3(others[0], others[1], others[2]);
        let term = &rows[i].1 * &minor;
        if i % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Unperturbed in-sphere test: sign of the standard 4x4 lifted determinant.
/// For a positively oriented tetrahedron (a,b,c,d), positive means `e` lies
/// strictly inside the circumsphere.
pub fn insphere(a: Vec3, b: Vec3, c: Vec3, d: Vec3, e: Vec3) -> i8 {
    if let Some(s) = insphere_det_approx(a, b, c, d, e).sign() {
        return s;
    }
    rat_sign(&insphere_det_exact(a, b, c, d, e))
}

/// Seeded symbolic weights used to break cospherical and equidistant ties.
///
/// `rank[i]` is the position of point `i` in a seeded permutation: lower rank
/// means an infinitely larger perturbation weight.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub seed: u64,
    rank: Vec<u32>,
}

impl Perturbation {
    pub fn new(seed: u64, n_points: usize) -> Perturbation {
        let mut order: Vec<u32> = (0..n_points as u32).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        let mut rank = vec![0u32; n_points];
        for (pos, &id) in order.iter().enumerate() {
            rank[id as usize] = pos as u32;
        }
        Perturbation { seed, rank }
    }

    pub fn rank(&self, id: usize) -> u32 {
        self.rank[id]
    }

    /// True when the weight of `p` symbolically exceeds the weight of `q`.
    pub fn dominates(&self, p: usize, q: usize) -> bool {
        self.rank[p] < self.rank[q]
    }
}

/// Perturbed in-sphere test. Inputs carry the global point ids so ties can be
/// broken by the symbolic weights; never returns 0 for a non-degenerate
/// tetrahedron.
///
/// Semantics: test point `e` against the power sphere of (a,b,c,d) after each
/// point `i` is lifted by an infinitesimal weight eps(rank(i)).
pub fn insphere_perturbed(
    pts: [Vec3; 5],
    ids: [usize; 5],
    perturbation: &Perturbation,
) -> i8 {
    let [a, b, c, d, e] = pts;
    let s = insphere(a, b, c, d, e);
    if s != 0 {
        return s;
    }
    // Degenerate: expand det(D0 + eps terms). The coefficient of eps_i for a
    // row point i is the cofactor of entry (i, 3); for the query point e it
    // is -orient3d(a,b,c,d). Evaluate in rank order; first nonzero wins.
    let mut order: Vec<usize> = (0..5).collect();
    order.sort_by_key(|&k| perturbation.rank(ids[k]));
    for k in order {
        let sign = if k < 4 {
            let others: Vec<Vec3> = (0..4).filter(|&j| j != k).map(|j| pts[j]).collect();
            let minor = rat_sign(&det3_exact_sub(others[0], others[1], others[2], e));
            if k % 2 == 0 {
                minor
            } else {
                -minor
            }
        } else {
            -orient3d_exact(a, b, c, d)
        };
        if sign != 0 {
            return sign;
        }
    }
    // Unreachable for a tetrahedron with nonzero volume.
    0
}

fn det3_exact_sub(p0: Vec3, p1: Vec3, p2: Vec3, origin: Vec3) -> Rat {
    let o = rvec(origin);
    rdet3(
        &rsub(&rvec(p0), &o),
        &rsub(&rvec(p1), &o),
        &rsub(&rvec(p2), &o),
    )
}

/// Sign of det [a-c; b-c] in the plane spanned by dropping `axis`.
fn orient2d_exact(a: Vec3, b: Vec3, c: Vec3, axis: usize) -> i8 {
    let (u, v) = other_axes(axis);
    let a = rvec(a);
    let b = rvec(b);
    let c = rvec(c);
    let det = (&a[u] - &c[u]) * (&b[v] - &c[v]) - (&a[v] - &c[v]) * (&b[u] - &c[u]);
    rat_sign(&det)
}

fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    }
}

/// Perturbed "p strictly inside the circumcircle of (a,b,c)" for four points
/// known to be coplanar. Used for conflicts with hull facets when the query
/// point lies exactly in the facet plane.
pub fn in_circumcircle_coplanar_perturbed(
    pts: [Vec3; 4],
    ids: [usize; 4],
    perturbation: &Perturbation,
) -> i8 {
    let [a, b, c, p] = pts;
    // project out the dominant normal axis
    let n = (b - a).cross(c - a);
    let abs = n.abs();
    let axis = if abs.x >= abs.y && abs.x >= abs.z {
        0
    } else if abs.y >= abs.z {
        1
    } else {
        2
    };
    let orient = orient2d_exact(a, b, c, axis);
    if orient == 0 {
        return -1; // degenerate facet; treat as no conflict
    }
    let (u, v) = other_axes(axis);
    let proj =
        |q: Vec3| -> [Rat; 2] { [rat(q.as_array()[u]), rat(q.as_array()[v])] };
    let pp = proj(p);
    let rows: Vec<([Rat; 2], Rat)> = [a, b, c]
        .iter()
        .map(|&q| {
            let d = proj(q);
            let d = [&d[0] - &pp[0], &d[1] - &pp[1]];
            let nsq = &d[0] * &d[0] + &d[1] * &d[1];
            (d, nsq)
        })
        .collect();
    let det3 = |skip: usize| -> Rat {
        let o: Vec<&([Rat; 2], Rat)> = (0..3).filter(|&j| j != skip).map(|j| &rows[j]).collect();
        &o[0].0[0] * &o[1].0[1] - &o[0].0[1] * &o[1].0[0]
    };
    // incircle det, expanded along the lifted column
    let mut det = Rat::zero();
    for (i, row) in rows.iter().enumerate() {
        let minor = det3(i);
        let term = &row.1 * &minor;
        if i % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    let s = rat_sign(&det) * orient;
    if s != 0 {
        return s;
    }
    // weight perturbation, same scheme as insphere_perturbed
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by_key(|&k| perturbation.rank(ids[k]));
    for k in order {
        let sign = if k < 3 {
            let minor = rat_sign(&det3(k));
            if k % 2 == 0 {
                minor
            } else {
                -minor
            }
        } else {
            // coefficient of eps_p is minus the sum of the row cofactors,
            // which equals -orient2d(a,b,c)
            -orient2d_exact(a, b, c, axis)
        };
        let s = sign * orient;
        if s != 0 {
            return s;
        }
    }
    0
}

/// Perturbed Gabriel test term for an edge (a, b) against a witness `q`:
/// returns +1 when `q` lies strictly outside the diametral sphere of the
/// edge (perturbed), -1 when strictly inside.
pub fn edge_gabriel_witness(
    a: Vec3,
    b: Vec3,
    q: Vec3,
    ids: (usize, usize, usize),
    perturbation: &Perturbation,
) -> i8 {
    // Compare |2m - 2q|^2 vs |a - b|^2 where m is the midpoint: avoids the
    // division by two.
    let t = avec_sub(a, q);
    let u = avec_sub(b, q);
    let sum = [t[0].add(u[0]), t[1].add(u[1]), t[2].add(u[2])];
    let diff = avec_sub(a, b);
    let det = adot(sum, sum).sub(adot(diff, diff));
    let s = match det.sign() {
        Some(s) => s,
        None => {
            let (a, b, q) = (rvec(a), rvec(b), rvec(q));
            let sum = [
                &a[0] + &b[0] - &q[0] - &q[0],
                &a[1] + &b[1] - &q[1] - &q[1],
                &a[2] + &b[2] - &q[2] - &q[2],
            ];
            let diff = rsub(&a, &b);
            rat_sign(&(rdot(&sum, &sum) - rdot(&diff, &diff)))
        }
    };
    if s != 0 {
        return s;
    }
    // |m-q| == |m-a| exactly: q is perturbed-outside iff its weight
    // dominates is false ... larger eps means smaller power distance, so q
    // stays outside iff eps_q > eps_a fails; outside <=> rank(q) > rank(a).
    if perturbation.dominates(ids.2, ids.0) {
        -1
    } else {
        1
    }
}

/// Exact rational circumcenter of triangle (a, b, c) as (numerator, scale):
/// center = numerator / scale. `scale` is positive for non-degenerate input.
/// Barycentric weights: alpha = |b-c|^2 (a-b).(a-c) and cyclic shifts.
fn triangle_circumcenter_exact(a: Vec3, b: Vec3, c: Vec3) -> Option<([Rat; 3], Rat)> {
    let (ra, rb, rc) = (rvec(a), rvec(b), rvec(c));
    let weight = |p: &[Rat; 3], q: &[Rat; 3], r: &[Rat; 3]| -> Rat {
        let qr = rsub(q, r);
        rdot(&qr, &qr) * rdot(&rsub(p, q), &rsub(p, r))
    };
    let alpha = weight(&ra, &rb, &rc);
    let beta = weight(&rb, &rc, &ra);
    let gamma = weight(&rc, &ra, &rb);
    let scale = &alpha + &beta + &gamma;
    if scale.is_zero() {
        return None;
    }
    let num = [
        &alpha * &ra[0] + &beta * &rb[0] + &gamma * &rc[0],
        &alpha * &ra[1] + &beta * &rb[1] + &gamma * &rc[1],
        &alpha * &ra[2] + &beta * &rb[2] + &gamma * &rc[2],
    ];
    Some((num, scale))
}

/// Signs of the circumcenter's barycentric coordinates in triangle (a, b, c):
/// (sign wrt a, wrt b, wrt c). All nonnegative means the circumcenter lies in
/// the closed triangle.
pub fn triangle_circumcenter_barycentric_signs(a: Vec3, b: Vec3, c: Vec3) -> Option<(i8, i8, i8)> {
    // alpha = |b-c|^2 (a-b).(a-c), etc. Filter in f64 first.
    let term = |p: Vec3, q: Vec3, r: Vec3| -> Approx {
        let qr = avec_sub(q, r);
        adot(qr, qr).mul(adot(avec_sub(p, q), avec_sub(p, r)))
    };
    let fa = term(a, b, c).sign();
    let fb = term(b, c, a).sign();
    let fc = term(c, a, b).sign();
    if let (Some(sa), Some(sb), Some(sc)) = (fa, fb, fc) {
        if sa != 0 || sb != 0 || sc != 0 {
            return Some((sa, sb, sc));
        }
    }
    let exact_term = |p: Vec3, q: Vec3, r: Vec3| -> i8 {
        let (p, q, r) = (rvec(p), rvec(q), rvec(r));
        let qr = rsub(&q, &r);
        rat_sign(&(rdot(&qr, &qr) * rdot(&rsub(&p, &q), &rsub(&p, &r))))
    };
    let sa = exact_term(a, b, c);
    let sb = exact_term(b, c, a);
    let sc = exact_term(c, a, b);
    if sa == 0 && sb == 0 && sc == 0 {
        None // degenerate triangle
    } else {
        Some((sa, sb, sc))
    }
}

/// Perturbed test "apex `d` lies strictly outside the diametral sphere of
/// triangle (a, b, c)": +1 outside, -1 inside. The diametral sphere is the
/// smallest sphere through the triangle's vertices.
pub fn apex_outside_diametral(
    a: Vec3,
    b: Vec3,
    c: Vec3,
    d: Vec3,
    ids: (usize, usize, usize, usize),
    perturbation: &Perturbation,
) -> i8 {
    // sign of |cc-d|^2 - |cc-a|^2 with cc the triangle circumcenter.
    // |cc-d|^2 - |cc-a|^2 = |d|^2 - |a|^2 - 2 cc.(d-a); with cc = N/s this is
    // (s(|d|^2-|a|^2) - 2 N.(d-a)) / s.
    let filtered = || -> Option<i8> {
        let term = |p: Vec3, q: Vec3, r: Vec3| -> Approx {
            let qr = avec_sub(q, r);
            adot(qr, qr).mul(adot(avec_sub(p, q), avec_sub(p, r)))
        };
        let alpha = term(a, b, c);
        let beta = term(b, c, a);
        let gamma = term(c, a, b);
        let scale = alpha.add(beta).add(gamma);
        let n = |i: usize| -> Approx {
            let (pa, pb, pc) = (
                Approx::exact(a.as_array()[i]),
                Approx::exact(b.as_array()[i]),
                Approx::exact(c.as_array()[i]),
            );
            alpha.mul(pa).add(beta.mul(pb)).add(gamma.mul(pc))
        };
        let da = avec_sub(d, a);
        let dot2 = n(0).mul(da[0]).add(n(1).mul(da[1])).add(n(2).mul(da[2]));
        let dsq = adot(avec_sub(d, Vec3::ZERO), avec_sub(d, Vec3::ZERO));
        let asq = adot(avec_sub(a, Vec3::ZERO), avec_sub(a, Vec3::ZERO));
        let expr = scale.mul(dsq.sub(asq)).sub(dot2.add(dot2));
        let es = expr.sign()?;
        let ss = scale.sign()?;
        if ss == 0 {
            return None;
        }
        Some(es * ss)
    };
    let s = match filtered() {
        Some(s) => s,
        None => {
            let Some((num, scale)) = triangle_circumcenter_exact(a, b, c) else {
                return -1;
            };
            let (ra, rd) = (rvec(a), rvec(d));
            let da = rsub(&rd, &ra);
            let dot2 = &num[0] * &da[0] + &num[1] * &da[1] + &num[2] * &da[2];
            let dsq = rdot(&rd, &rd);
            let asq = rdot(&ra, &ra);
            let expr = &scale * (dsq - asq) - (&dot2 + &dot2);
            rat_sign(&expr) * rat_sign(&scale)
        }
    };
    if s != 0 {
        return s;
    }
    // tie: d exactly on the diametral sphere; outside iff its eps is smaller
    // than the triangle vertices' dominant eps
    if perturbation.dominates(ids.3, ids.0) {
        -1
    } else {
        1
    }
}

/// Signs of the barycentric coordinates of the circumcenter of tetrahedron
/// (a, b, c, d) with respect to its four vertices; `None` for flat input.
/// All nonnegative means the circumcenter lies in the closed tetrahedron.
pub fn tet_circumcenter_barycentric_signs(
    a: Vec3,
    b: Vec3,
    c: Vec3,
    d: Vec3,
) -> Option<[i8; 4]> {
    // Solve (p_i - a) . y = |p_i - a|^2 / 2 by Cramer's rule, then take
    // sign(vol(x, subset)) / sign(vol(a,b,c,d)) per vertex.
    let pts = [a, b, c, d];
    let filtered = || -> Option<[i8; 4]> {
        // Solve (p_i - a) . y = |p_i - a|^2 / 2 for y, the circumcenter's
        // offset from vertex a.
        let rows: Vec<[Approx; 3]> = (1..4).map(|i| avec_sub(pts[i], a)).collect();
        let rhs: Vec<Approx> = (1..4)
            .map(|i| {
                let v = avec_sub(pts[i], a);
                adot(v, v).mul(Approx::exact(0.5))
            })
            .collect();
        let det = adet3(rows[0], rows[1], rows[2]);
        let dsign = det.sign()?;
        if dsign == 0 {
            return None;
        }
        // Cramer: x_k = det(rows with column k replaced by rhs), so the
        // circumcenter is a + x/det. Barycentric signs are evaluated on
        // det-scaled rows to stay division-free for the error bound.
        let repl = |k: usize| -> Approx {
            let sub = |r: [Approx; 3], rv: Approx| -> [Approx; 3] {
                let mut r = r;
                r[k] = rv;
                r
            };
            adet3(sub(rows[0], rhs[0]), sub(rows[1], rhs[1]), sub(rows[2], rhs[2]))
        };
        let x = [repl(0), repl(1), repl(2)];
        // Replaced volumes use the V(p0,p1,p2,p3) = det[p0-p3; p1-p3; p2-p3]
        // convention, whose sign is the negation of det[b-a; c-a; d-a].
        let total = -dsign;
        let center_row = |base: Vec3| -> [Approx; 3] {
            // (center - base) * det = (a - base) * det + x
            let ab = avec_sub(a, base);
            [
                ab[0].mul(det).add(x[0]),
                ab[1].mul(det).add(x[1]),
                ab[2].mul(det).add(x[2]),
            ]
        };
        let mut out = [0i8; 4];
        for i in 0..4 {
            // Volume of the tetrahedron with vertex i replaced by the center.
            // All three rows are scaled by det, so the result carries an
            // extra factor det^3 whose sign is dsign.
            let s = if i == 3 {
                // rows (p_j - center) * det = (p_j - a) * det - x
                let row = |q: Vec3| -> [Approx; 3] {
                    let v = avec_sub(q, a);
                    [
                        v[0].mul(det).sub(x[0]),
                        v[1].mul(det).sub(x[1]),
                        v[2].mul(det).sub(x[2]),
                    ]
                };
                adet3(row(pts[0]), row(pts[1]), row(pts[2])).sign()? * dsign
            } else {
                let mut rows3: Vec<[Approx; 3]> = Vec::with_capacity(3);
                for j in 0..3 {
                    if j == i {
                        rows3.push(center_row(pts[3]));
                    } else {
                        let v = avec_sub(pts[j], pts[3]);
                        rows3.push([v[0].mul(det), v[1].mul(det), v[2].mul(det)]);
                    }
                }
                adet3(rows3[0], rows3[1], rows3[2]).sign()? * dsign
            };
            out[i] = s * total;
        }
        Some(out)
    };
    if let Some(signs) = filtered() {
        return Some(signs);
    }
    // exact path
    let (ra, rb, rc, rd) = (rvec(a), rvec(b), rvec(c), rvec(d));
    let rp = [ra.clone(), rb.clone(), rc.clone(), rd.clone()];
    let rows: Vec<[Rat; 3]> = (1..4).map(|i| rsub(&rp[i], &ra)).collect();
    let rhs: Vec<Rat> = (1..4)
        .map(|i| {
            let v = rsub(&rp[i], &ra);
            let half: Rat = Rat::from_f64(0.5).unwrap();
            rdot(&v, &v) * half
        })
        .collect();
    let det = rdet3(&rows[0], &rows[1], &rows[2]);
    if det.is_zero() {
        return None;
    }
    let repl = |k: usize| -> Rat {
        let sub = |r: &[Rat; 3], rv: &Rat| -> [Rat; 3] {
            let mut r = r.clone();
            r[k] = rv.clone();
            r
        };
        rdet3(
            &sub(&rows[0], &rhs[0]),
            &sub(&rows[1], &rhs[1]),
            &sub(&rows[2], &rhs[2]),
        )
    };
    // center = a + x where x = (repl(k)/det)
    let center: [Rat; 3] = [
        &ra[0] + repl(0) / &det,
        &ra[1] + repl(1) / &det,
        &ra[2] + repl(2) / &det,
    ];
    let rvol = |p0: &[Rat; 3], p1: &[Rat; 3], p2: &[Rat; 3], p3: &[Rat; 3]| -> Rat {
        rdet3(&rsub(p0, p3), &rsub(p1, p3), &rsub(p2, p3))
    };
    let total = rat_sign(&rvol(&ra, &rb, &rc, &rd));
    let mut out = [0i8; 4];
    for i in 0..4 {
        let mut q: Vec<&[Rat; 3]> = vec![&ra, &rb, &rc, &rd];
        q[i] = &center;
        out[i] = rat_sign(&rvol(q[0], q[1], q[2], q[3])) * total;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::vec3;

    #[test]
    fn orient3d_basic() {
        let a = vec3(0.0, 0.0, 0.0);
        let b = vec3(1.0, 0.0, 0.0);
        let c = vec3(0.0, 1.0, 0.0);
        assert_eq!(orient3d(a, b, c, vec3(0.0, 0.0, 1.0)), 1);
        assert_eq!(orient3d(a, b, c, vec3(0.0, 0.0, -1.0)), -1);
        assert_eq!(orient3d(a, b, c, vec3(0.3, 0.3, 0.0)), 0);
    }

    #[test]
    fn orient3d_near_degenerate_is_exact() {
        let a = vec3(0.0, 0.0, 0.0);
        let b = vec3(1.0, 0.0, 0.0);
        let c = vec3(0.0, 1.0, 0.0);
        // exactly representable tiny height
        let d = vec3(0.3, 0.3, 1e-300);
        assert_eq!(orient3d(a, b, c, d), 1);
        let d = vec3(0.3, 0.3, -1e-300);
        assert_eq!(orient3d(a, b, c, d), -1);
    }

    #[test]
    fn insphere_basic() {
        let a = vec3(1.0, 0.0, 0.0);
        let b = vec3(-1.0, 0.0, 0.0);
        let c = vec3(0.0, 1.0, 0.0);
        let d = vec3(0.0, 0.0, 1.0);
        assert_eq!(orient3d(a, b, c, d) > 0, false);
        // orient is negative for this ordering; swap to make it positive
        let (a, b) = (b, a);
        assert!(orient3d(a, b, c, d) > 0);
        assert_eq!(insphere(a, b, c, d, vec3(0.0, 0.0, 0.0)), 1);
        assert_eq!(insphere(a, b, c, d, vec3(5.0, 5.0, 5.0)), -1);
        assert_eq!(insphere(a, b, c, d, vec3(0.0, -1.0, 0.0)), 0);
    }

    #[test]
    fn insphere_perturbed_breaks_ties_consistently() {
        let a = vec3(1.0, 0.0, 0.0);
        let b = vec3(-1.0, 0.0, 0.0);
        let c = vec3(0.0, 1.0, 0.0);
        let d = vec3(0.0, 0.0, 1.0);
        let e = vec3(0.0, -1.0, 0.0); // exactly cospherical
        let (a, b) = (b, a);
        let pert = Perturbation::new(7, 5);
        let s1 = insphere_perturbed([a, b, c, d, e], [0, 1, 2, 3, 4], &pert);
        let s2 = insphere_perturbed([a, b, c, d, e], [0, 1, 2, 3, 4], &pert);
        assert_ne!(s1, 0);
        assert_eq!(s1, s2);
    }

    #[test]
    fn gabriel_witness() {
        let a = vec3(0.0, 0.0, 0.0);
        let b = vec3(2.0, 0.0, 0.0);
        let pert = Perturbation::new(1, 3);
        // far witness: outside diametral ball
        assert_eq!(
            edge_gabriel_witness(a, b, vec3(1.0, 5.0, 0.0), (0, 1, 2), &pert),
            1
        );
        // near witness: inside
        assert_eq!(
            edge_gabriel_witness(a, b, vec3(1.0, 0.5, 0.0), (0, 1, 2), &pert),
            -1
        );
        // exactly on the sphere: deterministic nonzero
        let s = edge_gabriel_witness(a, b, vec3(1.0, 1.0, 0.0), (0, 1, 2), &pert);
        assert_ne!(s, 0);
    }

    #[test]
    fn circumcenter_in_triangle_signs() {
        // acute triangle: circumcenter inside
        let s = triangle_circumcenter_barycentric_signs(
            vec3(0.0, 0.0, 0.0),
            vec3(1.0, 0.0, 0.0),
            vec3(0.5, 0.8, 0.0),
        )
        .unwrap();
        assert_eq!(s, (1, 1, 1));
        // obtuse triangle: circumcenter outside across the long edge
        let s = triangle_circumcenter_barycentric_signs(
            vec3(0.0, 0.0, 0.0),
            vec3(4.0, 0.0, 0.0),
            vec3(2.0, 0.2, 0.0),
        )
        .unwrap();
        assert!(s.0 < 0 || s.1 < 0 || s.2 < 0);
    }

    #[test]
    fn diametral_apex_test() {
        let a = vec3(0.0, 0.0, 0.0);
        let b = vec3(1.0, 0.0, 0.0);
        let c = vec3(0.5, 0.8, 0.0);
        let pert = Perturbation::new(3, 4);
        assert_eq!(
            apex_outside_diametral(a, b, c, vec3(0.5, 0.3, 5.0), (0, 1, 2, 3), &pert),
            1
        );
        assert_eq!(
            apex_outside_diametral(a, b, c, vec3(0.5, 0.3, 0.05), (0, 1, 2, 3), &pert),
            -1
        );
    }

    #[test]
    fn tet_circumcenter_barycentric() {
        // regular-ish tetrahedron: circumcenter inside
        let s = tet_circumcenter_barycentric_signs(
            vec3(1.0, 1.0, 1.0),
            vec3(1.0, -1.0, -1.0),
            vec3(-1.0, 1.0, -1.0),
            vec3(-1.0, -1.0, 1.0),
        )
        .unwrap();
        assert_eq!(s, [1, 1, 1, 1]);
        // right-corner tetrahedron: circumcenter (0.5, 0.5, 0.5) lies outside,
        // beyond the hypotenuse face opposite the corner vertex
        let s = tet_circumcenter_barycentric_signs(
            vec3(0.0, 0.0, 0.0),
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(0.0, 0.0, 1.0),
        )
        .unwrap();
        assert_eq!(s, [-1, 1, 1, 1]);
        // flat tet
        assert!(tet_circumcenter_barycentric_signs(
            vec3(0.0, 0.0, 0.0),
            vec3(1.0, 0.0, 0.0),
            vec3(0.0, 1.0, 0.0),
            vec3(1.0, 1.0, 0.0),
        )
        .is_none());
    }
}
