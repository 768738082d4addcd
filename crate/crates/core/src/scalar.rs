//! Variance of complex random variables and the planar geometry behind it:
//! smallest enclosing circles, maximal-variance distributions and the
//! two-largest-moduli characterisation of the radius.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::linalg::random::seeded;
use crate::linalg::C64;
use crate::optimize::{minimize, NelderMeadOptions};

/// A finite multiset of points in the complex plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet(Vec<C64>);

impl PointSet {
    pub fn new(points: Vec<C64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if let Some(i) = points.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite { row: i, col: 0 });
        }
        Ok(Self(points))
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn points(&self) -> &[C64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest modulus, used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Result<Self> {
        Self::new(self.0.iter().map(|&z| f(z)).collect())
    }
}

/// Probabilities `p_i ≥ 0` summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    /// Entries in `[-1e-12, 0)` are clamped to zero.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidProbabilities("empty".into()));
        }
        let mut probs = probs;
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -1e-12 {
                return Err(Error::InvalidProbabilities(format!("p[{i}] = {p}")));
            }
            *p = p.max(0.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidProbabilities(format!("sum = {sum}")));
        }
        Ok(Self(probs))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn point_mass(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidProbabilities(format!("index {i} out of {n}")));
        }
        let mut p = vec![0.0; n];
        p[i] = 1.0;
        Self::new(p)
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: C64,
    pub radius: f64,
}

impl Circle {
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        (z - self.center).norm() <= self.radius + tol
    }
}

fn check_lengths(points: &PointSet, probs: &ProbVector) -> Result<()> {
    if points.len() != probs.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            got: probs.len(),
        });
    }
    Ok(())
}

pub fn mean(points: &PointSet, probs: &ProbVector) -> Result<C64> {
    check_lengths(points, probs)?;
    Ok(points.0.iter().zip(&probs.0).map(|(x, p)| x * p).sum())
}

/// `Σ p_i |x_i − μ|²` with `μ = Σ p_i x_i`.
pub fn variance(points: &PointSet, probs: &ProbVector) -> Result<f64> {
    let mu = mean(points, probs)?;
    let v: f64 = points
        .0
        .iter()
        .zip(&probs.0)
        .map(|(x, p)| p * (x - mu).norm_sqr())
        .sum();
    Ok(v.max(0.0))
}

/// `(M − m)²/4`, the largest variance of a variable with values in `[m, M]`.
pub fn murthy_sethi_bound(m: f64, big_m: f64) -> Result<f64> {
    if !(m <= big_m) {
        return Err(Error::InvalidArgument(format!("need m <= M, got m={m}, M={big_m}")));
    }
    Ok((big_m - m).powi(2) / 4.0)
}

/// Smallest enclosing circle with the indices of the points that define it.
#[derive(Clone, Debug, PartialEq)]
pub struct EnclosingCircle {
    pub circle: Circle,
    /// Two or three points on the circle (one when all points coincide).
    pub support: Vec<usize>,
}

fn diametral(a: C64, b: C64) -> Circle {
    Circle {
        center: (a + b) * 0.5,
        radius: (a - b).norm() * 0.5,
    }
}

fn circumcircle(a: C64, b: C64, c: C64) -> Option<Circle> {
    let (b1, c1) = (b - a, c - a);
    let det = 2.0 * (b1.re * c1.im - b1.im * c1.re);
    if det.abs() <= 1e-14 * b1.norm() * c1.norm() {
        return None;
    }
    let (bb, cc) = (b1.norm_sqr(), c1.norm_sqr());
    let center = a + C64::new((c1.im * bb - b1.im * cc) / det, (b1.re * cc - c1.re * bb) / det);
    let radius = [a, b, c].iter().map(|p| (p - center).norm()).fold(0.0, f64::max);
    Some(Circle { center, radius })
}

fn farthest_pair(pts: [(usize, C64); 3]) -> (Circle, Vec<usize>) {
    let mut best = (diametral(pts[0].1, pts[1].1), vec![pts[0].0, pts[1].0]);
    for (u, v) in [(0, 2), (1, 2)] {
        let c = diametral(pts[u].1, pts[v].1);
        if c.radius > best.0.radius {
            best = (c, vec![pts[u].0, pts[v].0]);
        }
    }
    best
}

/// Welzl's algorithm in its iterative form over a fixed pseudo-random order.
/// The reported radius is the largest distance from the final center, so
/// every point is contained exactly.
pub fn enclosing_circle_with_support(points: &PointSet) -> EnclosingCircle {
    let pts = points.points();
    let eps = 1e-13 * (1.0 + points.scale());
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.shuffle(&mut seeded(0x00C1_4C1E));
    let outside = |c: &Circle, z: C64| (z - c.center).norm() > c.radius + eps;

    let mut circle = Circle {
        center: pts[order[0]],
        radius: 0.0,
    };
    let mut support = vec![order[0]];
    for a in 1..order.len() {
        let i = order[a];
        if !outside(&circle, pts[i]) {
            continue;
        }
        circle = Circle {
            center: pts[i],
            radius: 0.0,
        };
        support = vec![i];
        for &j in &order[..a] {
            if !outside(&circle, pts[j]) {
                continue;
            }
            circle = diametral(pts[i], pts[j]);
            support = vec![i, j];
            for &k in &order[..a] {
                if k == j {
                    break;
                }
                if !outside(&circle, pts[k]) {
                    continue;
                }
                match circumcircle(pts[i], pts[j], pts[k]) {
                    Some(c) => {
                        circle = c;
                        support = vec![i, j, k];
                    }
                    None => {
                        (circle, support) = farthest_pair([(i, pts[i]), (j, pts[j]), (k, pts[k])]);
                    }
                }
            }
        }
    }
    circle.radius = pts.iter().map(|z| (z - circle.center).norm()).fold(0.0, f64::max);
    support.sort_unstable();
    EnclosingCircle { circle, support }
}

pub fn enclosing_circle(points: &PointSet) -> Circle {
    enclosing_circle_with_support(points).circle
}

/// `r(𝒳)`, the radius of the smallest enclosing circle.
pub fn radius(points: &PointSet) -> f64 {
    enclosing_circle(points).radius
}

/// Indices of the points within `tol` of the circle.
pub fn boundary_points(points: &PointSet, circle: &Circle, tol: f64) -> Vec<usize> {
    points
        .points()
        .iter()
        .enumerate()
        .filter(|(_, z)| (*z - circle.center).norm() >= circle.radius - tol)
        .map(|(i, _)| i)
        .collect()
}

/// Barycentric coordinates of `z` in the triangle `(a, b, c)`.
fn barycentric(z: C64, a: C64, b: C64, c: C64) -> Option<[f64; 3]> {
    let cross = |u: C64, v: C64| u.re * v.im - u.im * v.re;
    let area = cross(b - a, c - a);
    if area.abs() <= 1e-14 * (b - a).norm() * (c - a).norm() {
        return None;
    }
    let wa = cross(b - z, c - z) / area;
    let wb = cross(c - z, a - z) / area;
    Some([wa, wb, 1.0 - wa - wb])
}

/// Weights on a pair or triangle of boundary points whose mean is `center`.
fn weights_for_center(pts: &[C64], candidates: &[usize], center: C64, tol: f64) -> Option<Vec<(usize, f64)>> {
    let residual = |w: &[(usize, f64)]| (w.iter().map(|&(i, p)| pts[i] * p).sum::<C64>() - center).norm();
    let accept = |w: Vec<(usize, f64)>| {
        if w.iter().all(|&(_, p)| p >= -1e-9) {
            let clamped: Vec<(usize, f64)> = w.iter().map(|&(i, p)| (i, p.max(0.0))).collect();
            let s: f64 = clamped.iter().map(|&(_, p)| p).sum();
            let w: Vec<(usize, f64)> = clamped.into_iter().map(|(i, p)| (i, p / s)).collect();
            (residual(&w) <= tol).then_some(w)
        } else {
            None
        }
    };
    match candidates {
        [i] => accept(vec![(*i, 1.0)]),
        [i, j] => accept(vec![(*i, 0.5), (*j, 0.5)]),
        [i, j, k] => match barycentric(center, pts[*i], pts[*j], pts[*k]) {
            Some(b) => accept(vec![(*i, b[0]), (*j, b[1]), (*k, b[2])]),
            None => None,
        },
        _ => None,
    }
}

/// A distribution attaining `max_p Var = r(𝒳)²`, supported on points of the
/// smallest enclosing circle, together with its variance.
pub fn max_variance_distribution(points: &PointSet) -> Result<(ProbVector, f64)> {
    let pts = points.points();
    let n = pts.len();
    let ec = enclosing_circle_with_support(points);
    let scale = 1.0 + points.scale();
    let tol = 1e-9 * scale;
    // duplicates resolve to their first index
    let first = |i: usize| pts.iter().position(|z| *z == pts[i]).unwrap_or(i);
    let support: Vec<usize> = ec.support.iter().map(|&i| first(i)).collect();

    let weights = if ec.circle.radius == 0.0 {
        Some(vec![(0, 1.0)])
    } else {
        weights_for_center(pts, &support, ec.circle.center, tol)
    };
    let weights = match weights {
        Some(w) => w,
        None => {
            let boundary = boundary_points(points, &ec.circle, 1e-7 * scale);
            let mut found = None;
            'outer: for (a, &i) in boundary.iter().enumerate() {
                for (b, &j) in boundary.iter().enumerate().skip(a + 1) {
                    if let Some(w) = weights_for_center(pts, &[i, j], ec.circle.center, tol) {
                        found = Some(w);
                        break 'outer;
                    }
                    for &k in &boundary[b + 1..] {
                        if let Some(w) = weights_for_center(pts, &[i, j, k], ec.circle.center, tol) {
                            found = Some(w);
                            break 'outer;
                        }
                    }
                }
            }
            found.ok_or_else(|| {
                Error::InvalidArgument("no boundary simplex contains the enclosing-circle center".into())
            })?
        }
    };
    let mut probs = vec![0.0; n];
    for (i, p) in weights {
        probs[i] += p;
    }
    let probs = ProbVector::new(probs)?;
    let value = variance(points, &probs)?;
    Ok((probs, value))
}

/// `((a₁^p + a₂^p)/2)^{1/p}` with `a₁ ≥ a₂` the two largest `|x_i − z|`.
pub fn two_largest_objective(points: &PointSet, z: C64, p: f64) -> f64 {
    let (mut a1, mut a2) = (0.0f64, 0.0f64);
    for x in points.points() {
        let d = (x - z).norm();
        if d > a1 {
            a2 = a1;
            a1 = d;
        } else if d > a2 {
            a2 = d;
        }
    }
    if p.is_infinite() || a1 == 0.0 {
        return a1;
    }
    a1 * ((1.0 + (a2 / a1).powf(p)) / 2.0).powf(1.0 / p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoLargest {
    pub z_star: C64,
    pub value: f64,
    /// `min` over a ring of probes around `z_star` of objective minus value.
    pub ring_margin: f64,
}

/// Objective at `n` probes on the circle of radius `eps` around `z`, minus the objective at `z`.
pub fn ring_probe_margin(points: &PointSet, z: C64, p: f64, eps: f64, n: usize) -> f64 {
    let f0 = two_largest_objective(points, z, p);
    (0..n)
        .map(|k| {
            let probe = z + C64::from_polar(eps, std::f64::consts::TAU * k as f64 / n as f64);
            two_largest_objective(points, probe, p) - f0
        })
        .fold(f64::INFINITY, f64::min)
}

/// `min_z ((|𝒳−z|^{↓,1})^p + (|𝒳−z|^{↓,2})^p)/2)^{1/p}`, which equals `r(𝒳)`.
pub fn two_largest_radius(points: &PointSet, p: f64) -> Result<TwoLargest> {
    if points.len() < 2 {
        return Err(Error::InvalidDimension(points.len()));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidNorm(format!("p = {p} must be >= 1")));
    }
    let circle = enclosing_circle(points);
    let n = points.len() as f64;
    let centroid = points.points().iter().sum::<C64>() / n;
    let scale = 1.0 + points.scale();
    let opts = NelderMeadOptions {
        step: 0.25 * scale,
        x_tol: 1e-10 * scale,
        f_tol: 1e-15,
        ..Default::default()
    };
    let f = |v: &[f64]| Ok(two_largest_objective(points, C64::new(v[0], v[1]), p));
    let mut best: Option<(C64, f64)> = None;
    for start in [circle.center, centroid] {
        let m = minimize(f, &[start.re, start.im], &opts)?;
        if best.is_none_or(|(_, v)| m.value < v) {
            best = Some((C64::new(m.x[0], m.x[1]), m.value));
        }
    }
    let (mut z_star, mut value) = best.expect("two starts");
    // on ties within rounding, the circle center is the canonical minimiser
    let at_center = two_largest_objective(points, circle.center, p);
    if at_center <= value + 1e-13 * scale {
        z_star = circle.center;
        value = at_center;
    }
    let ring_margin = ring_probe_margin(points, z_star, p, 1e-4 * scale, 32);
    Ok(TwoLargest {
        z_star,
        value,
        ring_margin,
    })
}

/// Vertices sorted counter-clockwise around their centroid.
pub fn sort_ccw(vertices: &[C64]) -> Vec<C64> {
    let c = vertices.iter().sum::<C64>() / vertices.len().max(1) as f64;
    let mut v = vertices.to_vec();
    v.sort_by(|a, b| (a - c).arg().total_cmp(&(b - c).arg()));
    v
}

/// The polygon whose vertices are the midpoints of the edges of the convex
/// polygon with the given vertices.
pub fn midpoint_polygon(vertices: &[C64]) -> Vec<C64> {
    let v = sort_ccw(vertices);
    let n = v.len();
    (0..n).map(|i| (v[i] + v[(i + 1) % n]) * 0.5).collect()
}

fn segment_distance(z: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Signed distance from `z` to the boundary of a convex polygon: positive
/// inside, negative outside. Degenerate polygons are treated as segments.
pub fn convex_polygon_margin(vertices: &[C64], z: C64) -> f64 {
    let v = sort_ccw(vertices);
    let n = v.len();
    let cross = |u: C64, w: C64| u.re * w.im - u.im * w.re;
    let area: f64 = (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum::<f64>() / 2.0;
    let diam = v.iter().flat_map(|a| v.iter().map(move |b| (a - b).norm())).fold(0.0, f64::max);
    if n < 3 || area.abs() <= 1e-12 * diam * diam {
        let mut best = (v[0], v[0], 0.0);
        for a in &v {
            for b in &v {
                let d = (a - b).norm();
                if d > best.2 {
                    best = (*a, *b, d);
                }
            }
        }
        return -segment_distance(z, best.0, best.1);
    }
    let mut margin = f64::INFINITY;
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let edge = b - a;
        let len = edge.norm();
        if len == 0.0 {
            continue;
        }
        margin = margin.min(cross(edge, z - a) / len);
    }
    if margin < 0.0 {
        let outside = (0..n)
            .map(|i| segment_distance(z, v[i], v[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min);
        return -outside;
    }
    margin
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn set(v: &[C64]) -> PointSet {
        PointSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn variance_examples() {
        let pts = PointSet::from_real(&[0.0, 2.0]).unwrap();
        assert_eq!(variance(&pts, &ProbVector::uniform(2).unwrap()).unwrap(), 1.0);
        assert_eq!(variance(&pts, &ProbVector::point_mass(2, 1).unwrap()).unwrap(), 0.0);
        let square = set(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]);
        assert_eq!(variance(&square, &ProbVector::uniform(4).unwrap()).unwrap(), 1.0);
        assert!(variance(&square, &ProbVector::uniform(3).unwrap()).is_err());
    }

    #[test]
    fn prob_vector_validation() {
        assert_eq!(ProbVector::new(vec![-1e-13, 1.0]).unwrap().probs(), &[0.0, 1.0]);
        assert!(ProbVector::new(vec![-1e-6, 1.0 + 1e-6]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.4]).is_err());
        assert!(PointSet::new(vec![]).is_err());
        assert!(PointSet::new(vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn murthy_sethi_examples() {
        assert_eq!(murthy_sethi_bound(0.0, 2.0).unwrap(), 1.0);
        assert_eq!(murthy_sethi_bound(3.5, 3.5).unwrap(), 0.0);
        assert_eq!(murthy_sethi_bound(-1.0, 1.0).unwrap(), 1.0);
        assert!(murthy_sethi_bound(1.0, 0.0).is_err());
    }

    #[test]
    fn enclosing_circle_examples() {
        let c01 = enclosing_circle(&PointSet::from_real(&[0.0, 1.0]).unwrap());
        assert_eq!(c01.center, c(0.5, 0.0));
        assert_eq!(c01.radius, 0.5);
        let cz = enclosing_circle(&PointSet::from_real(&[1.0, -1.0]).unwrap());
        assert_eq!((cz.center, cz.radius), (c(0.0, 0.0), 1.0));
        let sq = enclosing_circle(&set(&[c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]));
        assert!(sq.center.norm() < 1e-15);
        assert!((sq.radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_points_use_the_extreme_pair() {
        let pts = PointSet::from_real(&[0.0, 1.0, 2.0, 3.0, 0.5]).unwrap();
        let ec = enclosing_circle_with_support(&pts);
        assert_eq!(ec.circle.center, c(1.5, 0.0));
        assert_eq!(ec.circle.radius, 1.5);
        assert_eq!(ec.support, vec![0, 3]);
    }

    #[test]
    fn max_variance_on_two_points() {
        let (p, v) = max_variance_distribution(&PointSet::from_real(&[0.0, 2.0]).unwrap()).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.5]);
        assert_eq!(v, 1.0);
        let (p, v) = max_variance_distribution(&set(&[c(3.0, 4.0)])).unwrap();
        assert_eq!(p.probs(), &[1.0]);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn duplicates_prefer_first_index() {
        let pts = PointSet::from_real(&[1.0, 1.0, 0.0, 0.0, 0.5]).unwrap();
        let (p, v) = max_variance_distribution(&pts).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.0, 0.5, 0.0, 0.0]);
        assert_eq!(v, 0.25);
    }

    #[test]
    fn two_largest_on_symmetric_pair() {
        let pts = PointSet::from_real(&[0.0, 1.0]).unwrap();
        let t = two_largest_radius(&pts, 2.0).unwrap();
        assert!((t.z_star - c(0.5, 0.0)).norm() < 1e-9);
        assert!((t.value - 0.5).abs() < 1e-12);
        assert!(t.ring_margin >= 0.0);
        assert!(two_largest_radius(&set(&[c(1.0, 1.0)]), 2.0).is_err());
    }

    #[test]
    fn objective_at_origin_bounds_radius() {
        let pts = set(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        // moduli (1, 1, 0): (1 + 1)/2 = 1 ≥ r = 1/√2
        assert_eq!(two_largest_objective(&pts, c(0.0, 0.0), 1.0), 1.0);
        assert!(radius(&pts) <= 1.0);
    }

    #[test]
    fn midpoint_triangle_contains_circumcenter() {
        let tri = [c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.5)];
        let mid = midpoint_polygon(&tri);
        let center = enclosing_circle(&set(&tri)).center;
        assert!(convex_polygon_margin(&mid, center) > 0.0);
        assert!(convex_polygon_margin(&mid, c(5.0, 5.0)) < 0.0);
        assert!((convex_polygon_margin(&[c(0.0, 0.0), c(2.0, 0.0)], c(1.0, 1.0)) + 1.0).abs() < 1e-15);
    }
}
