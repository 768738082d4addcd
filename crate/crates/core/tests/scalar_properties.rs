use proptest::prelude::*;
use rand::Rng;
use varbound::linalg::random::{self, seeded};
use varbound::linalg::C64;
use varbound::norms::{vector_norm, NormSpec};
use varbound::optimize::{minimize, NelderMeadOptions};
use varbound::scalar::{
    boundary_points, convex_polygon_margin, enclosing_circle, enclosing_circle_with_support, max_variance_distribution,
    mean, midpoint_polygon, murthy_sethi_bound, radius, two_largest_objective, two_largest_radius, variance, PointSet,
    ProbVector,
};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Smallest circle through every pair (diametral) and triple (circumscribed)
/// that contains all points. O(n⁴), independent of Welzl.
fn brute_force_radius(pts: &[C64]) -> f64 {
    let contains_all = |center: C64, r: f64| pts.iter().all(|z| (z - center).norm() <= r * (1.0 + 1e-12) + 1e-12);
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let center = (pts[i] + pts[j]) / 2.0;
            let r = (pts[i] - center).norm();
            if contains_all(center, r) {
                best = best.min(r);
            }
            for k in j + 1..pts.len() {
                // circumcenter from the perpendicular-bisector linear system
                let (a, b, cc) = (pts[i], pts[j], pts[k]);
                let m = [[2.0 * (b.re - a.re), 2.0 * (b.im - a.im)], [2.0 * (cc.re - a.re), 2.0 * (cc.im - a.im)]];
                let rhs = [b.norm_sqr() - a.norm_sqr(), cc.norm_sqr() - a.norm_sqr()];
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let center = c(
                    (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det,
                    (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det,
                );
                let r = (a - center).norm();
                if contains_all(center, r) {
                    best = best.min(r);
                }
            }
        }
    }
    if pts.len() == 1 {
        0.0
    } else {
        best
    }
}

#[test]
fn welzl_matches_brute_force() {
    let mut rng = seeded(101);
    for trial in 0..300 {
        let n = 1 + trial % 12;
        let pts = random::point_set(&mut rng, n);
        let r = radius(&PointSet::new(pts.clone()).unwrap());
        let oracle = brute_force_radius(&pts);
        assert!((r - oracle).abs() <= 1e-10, "trial {trial}: {r} vs {oracle}");
    }
}

#[test]
fn square_center_matches_grid_oracle() {
    let pts = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
    let mut best = (f64::INFINITY, c(0.0, 0.0));
    for a in -100..=100 {
        for b in -100..=100 {
            let y = c(a as f64 * 0.01, b as f64 * 0.01);
            let m = pts.iter().map(|z| (z - y).norm()).fold(0.0, f64::max);
            if m < best.0 {
                best = (m, y);
            }
        }
    }
    let circle = enclosing_circle(&PointSet::new(pts.to_vec()).unwrap());
    assert!((circle.radius - best.0).abs() < 1e-9);
    assert!((circle.center - best.1).norm() < 1e-9);
}

#[test]
fn max_variance_matches_simplex_grid_for_unit_triangle() {
    let pts = PointSet::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
    let mut brute: f64 = 0.0;
    for a in 0..=100 {
        for b in 0..=(100 - a) {
            let p = [a as f64 / 100.0, b as f64 / 100.0, (100 - a - b) as f64 / 100.0];
            let probs = ProbVector::new(p.to_vec()).unwrap();
            brute = brute.max(variance(&pts, &probs).unwrap());
        }
    }
    let (probs, value) = max_variance_distribution(&pts).unwrap();
    let r = radius(&pts);
    assert!((value - r * r).abs() < 1e-12);
    assert!((value - brute).abs() < 1e-3, "{value} vs {brute}");
    // right angle at 0: the circumcenter is the hypotenuse midpoint
    assert!((probs.probs()[1] - 0.5).abs() < 1e-12 && (probs.probs()[2] - 0.5).abs() < 1e-12);
}

#[test]
fn murthy_sethi_never_exceeded_on_simplex_grids() {
    let mut rng = seeded(55);
    let steps = 50;
    for trial in 0..40 {
        let d = 2 + trial % 3;
        let xs: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
        let (m, big_m) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        let bound = murthy_sethi_bound(m, big_m).unwrap();
        let pts = PointSet::from_real(&xs).unwrap();
        let mut grid = vec![0usize; d];
        loop {
            let used: usize = grid[..d - 1].iter().sum();
            if used <= steps {
                grid[d - 1] = steps - used;
                let p: Vec<f64> = grid.iter().map(|&g| g as f64 / steps as f64).collect();
                let v = variance(&pts, &ProbVector::new(p).unwrap()).unwrap();
                assert!(v <= bound + 1e-6);
            }
            // odometer over the first d-1 coordinates
            let mut i = 0;
            while i < d - 1 {
                grid[i] += 1;
                if grid[i] <= steps {
                    break;
                }
                grid[i] = 0;
                i += 1;
            }
            if i == d - 1 {
                break;
            }
        }
    }
}

#[test]
fn variance_bound_chain_over_norm_grid() {
    let mut rng = seeded(8);
    let sqrt_f = |spec: &NormSpec, d: usize| {
        let mut f = vec![C64::new(0.0, 0.0); d.max(2)];
        f[0] = C64::new(1.0, 0.0);
        f[1] = C64::new(1.0, 0.0);
        vector_norm(&f, spec).unwrap()
    };
    for trial in 0..500 {
        let d = 2 + trial % 9;
        let pts = PointSet::new(random::point_set(&mut rng, d)).unwrap();
        let r = radius(&pts);
        let kf2 = vector_norm(pts.points(), &NormSpec::KyFan(2)).unwrap() / 2.0;
        let mut specs: Vec<NormSpec> = [1.0, 1.5, 2.0, 3.0, f64::INFINITY].into_iter().map(NormSpec::Schatten).collect();
        specs.extend((1..=d).map(NormSpec::KyFan));
        specs.push(NormSpec::WeightedGauge(random::prob_vector(&mut rng, d)));
        for _ in 0..200 {
            let probs = ProbVector::new(random::prob_vector(&mut rng, d)).unwrap();
            let sd = variance(&pts, &probs).unwrap().sqrt();
            assert!(sd <= r + 1e-9, "trial {trial}");
        }
        assert!(r <= kf2 + 1e-9);
        for spec in &specs {
            let ratio = vector_norm(pts.points(), spec).unwrap() / sqrt_f(spec, d);
            assert!(kf2 <= ratio + 1e-9, "trial {trial} {spec}");
        }
    }
}

#[test]
fn two_largest_radius_matches_welzl() {
    let mut rng = seeded(77);
    let opts = NelderMeadOptions::default();
    for trial in 0..300 {
        let d = 2 + trial % 11;
        let pts = PointSet::new(random::point_set(&mut rng, d)).unwrap();
        let circle = enclosing_circle(&pts);
        for p in [1.0, 2.0, 4.0] {
            let t = two_largest_radius(&pts, p).unwrap();
            assert!((t.value - circle.radius).abs() <= 1e-7, "trial {trial} p={p}");
            assert!(t.ring_margin >= -1e-12, "trial {trial} p={p}: margin {}", t.ring_margin);
            if p > 1.0 {
                assert!((t.z_star - circle.center).norm() <= 1e-6);
            }
            // independent run from the origin, away from the Welzl center
            let m = minimize(|v| Ok(two_largest_objective(&pts, c(v[0], v[1]), p)), &[0.0, 0.0], &opts).unwrap();
            assert!(m.value >= circle.radius - 1e-9, "trial {trial} p={p}");
            assert!(m.value <= circle.radius + 1e-6, "trial {trial} p={p}: {} vs {}", m.value, circle.radius);
            // the z = 0 case
            assert!(two_largest_objective(&pts, c(0.0, 0.0), p) >= circle.radius - 1e-12);
        }
    }
}

#[test]
fn example_triangle_two_largest_p1() {
    let pts = PointSet::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
    let t = two_largest_radius(&pts, 1.0).unwrap();
    assert!((t.value - radius(&pts)).abs() < 1e-12);
}

#[test]
fn circumcenter_lies_in_midpoint_polygon() {
    let mut rng = seeded(9);
    for trial in 0..300 {
        let n = 3 + trial % 8;
        // vertices on a random ellipse-like curve are in convex position
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let (a, b) = (rng.random_range(0.5..2.0), rng.random_range(0.5..2.0));
        let verts: Vec<C64> = angles.iter().map(|t| c(a * t.cos(), b * t.sin())).collect();
        let pts = PointSet::new(verts.clone()).unwrap();
        let circle = enclosing_circle(&pts);
        let mid = midpoint_polygon(&verts);
        assert!(convex_polygon_margin(&mid, circle.center) >= -1e-9, "trial {trial}");
        // the same holds for the polygon spanned by the support set
        let support: Vec<C64> = boundary_points(&pts, &circle, 1e-9).into_iter().map(|i| verts[i]).collect();
        if support.len() >= 2 {
            assert!(convex_polygon_margin(&midpoint_polygon(&support), circle.center) >= -1e-9, "trial {trial}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn enclosing_circle_contract(seed in any::<u64>(), n in 1usize..16) {
        let mut rng = seeded(seed);
        let pts = PointSet::new(random::point_set(&mut rng, n)).unwrap();
        let ec = enclosing_circle_with_support(&pts);
        let scale = 1.0 + pts.scale();
        for z in pts.points() {
            prop_assert!(ec.circle.contains(*z, 1e-12 * scale));
        }
        let boundary = boundary_points(&pts, &ec.circle, 1e-9);
        if n >= 2 {
            prop_assert!(boundary.len() >= 2);
            let hull: Vec<C64> = boundary.iter().map(|&i| pts.points()[i]).collect();
            prop_assert!(convex_polygon_margin(&hull, ec.circle.center) >= -1e-9);
        }
    }

    #[test]
    fn radius_invariances(seed in any::<u64>(), n in 1usize..12, theta in 0.0..6.3f64, t in -4.0..4.0f64) {
        let mut rng = seeded(seed);
        let pts = PointSet::new(random::point_set(&mut rng, n)).unwrap();
        let w = random::complex_gaussian(&mut rng) * 5.0;
        let r = radius(&pts);
        let rot = C64::from_polar(1.0, theta);
        prop_assert!((radius(&pts.map(|z| z + w).unwrap()) - r).abs() <= 1e-10 * (1.0 + w.norm()));
        prop_assert!((radius(&pts.map(|z| z * rot).unwrap()) - r).abs() <= 1e-10);
        prop_assert!((radius(&pts.map(|z| z * t).unwrap()) - t.abs() * r).abs() <= 1e-10);
    }

    #[test]
    fn max_variance_distribution_contract(seed in any::<u64>(), n in 1usize..14) {
        let mut rng = seeded(seed);
        let pts = PointSet::new(random::point_set(&mut rng, n)).unwrap();
        let circle = enclosing_circle(&pts);
        let (probs, value) = max_variance_distribution(&pts).unwrap();
        prop_assert!((value - circle.radius * circle.radius).abs() <= 1e-9);
        prop_assert!((mean(&pts, &probs).unwrap() - circle.center).norm() <= 1e-9);
        prop_assert!((variance(&pts, &probs).unwrap() - value).abs() <= 1e-9);
        let boundary = boundary_points(&pts, &circle, 1e-7);
        for (i, p) in probs.probs().iter().enumerate() {
            prop_assert!(*p == 0.0 || boundary.contains(&i));
        }
    }

    #[test]
    fn mean_minimises_weighted_square_distance(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = seeded(seed);
        let pts = PointSet::new(random::point_set(&mut rng, n)).unwrap();
        let p = ProbVector::new(random::prob_vector(&mut rng, n)).unwrap();
        let q = ProbVector::new(random::prob_vector(&mut rng, n)).unwrap();
        let mu_q = mean(&pts, &q).unwrap();
        let spread_q: f64 = pts.points().iter().zip(p.probs()).map(|(x, w)| w * (x - mu_q).norm_sqr()).sum();
        prop_assert!(spread_q >= variance(&pts, &p).unwrap() - 1e-12);
    }
}

#[test]
fn cocircular_points_give_a_valid_witness() {
    let pts = PointSet::new((0..8).map(|k| C64::from_polar(2.0, k as f64 * std::f64::consts::FRAC_PI_4)).collect()).unwrap();
    let (probs, value) = max_variance_distribution(&pts).unwrap();
    assert!((value - 4.0).abs() < 1e-12);
    assert!(mean(&pts, &probs).unwrap().norm() < 1e-12);
}
