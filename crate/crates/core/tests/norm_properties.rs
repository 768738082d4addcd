use proptest::prelude::*;
use varbound::linalg::random::{self, seeded, SeededRng};
use varbound::linalg::{modulus, ComplexMatrix, ModulusKind, C64};
use varbound::norms::{f_ratio_bounds, ky_fan, ky_fan_pk, norm, schatten, NormSpec};

const INF: f64 = f64::INFINITY;

fn spec_grid(d: usize, rng: &mut SeededRng, gauges: usize) -> Vec<NormSpec> {
    let mut specs: Vec<NormSpec> = [1.0, 1.5, 2.0, 3.0, INF].into_iter().map(NormSpec::Schatten).collect();
    specs.extend((1..=d).map(NormSpec::KyFan));
    specs.extend((1..=d).map(|k| NormSpec::KyFanPK { p: 2.5, k }));
    for _ in 0..gauges {
        specs.push(NormSpec::WeightedGauge(random::prob_vector(rng, d)));
    }
    specs
}

#[test]
fn random_six_by_six_seed_11_sandwich() {
    let mut rng = seeded(11);
    let x = random::ginibre(&mut rng, 6, 6);
    let r = f_ratio_bounds(&x, &NormSpec::Schatten(3.0)).unwrap();
    assert!(r.ratio - r.lower >= 1e-10, "{r:?}");
    assert!(r.upper - r.ratio >= 1e-10, "{r:?}");
}

#[test]
fn ky_fan_sandwich_over_norm_grid() {
    let mut rng = seeded(404);
    for trial in 0..300 {
        let d = 2 + trial % 11;
        let x = random::ginibre(&mut rng, d, d);
        let x = if trial % 3 == 0 { random::normal_matrix(&mut rng, d) } else { x };
        for spec in spec_grid(d, &mut rng, 50) {
            let r = f_ratio_bounds(&x, &spec).unwrap();
            assert!(r.lower - 1e-9 <= r.ratio && r.ratio <= r.upper + 1e-9, "trial {trial} {spec}: {r:?}");
        }
        // the Ky Fan 2-norm attains the lower bound
        let r = f_ratio_bounds(&x, &NormSpec::KyFan(2)).unwrap();
        assert!((r.ratio - r.lower).abs() <= 1e-12 * (1.0 + r.lower));
    }
}

#[test]
fn ky_fan_two_norm_bounds_schatten_ratio() {
    let mut rng = seeded(77);
    for trial in 0..200 {
        let d = 2 + trial % 9;
        let x = random::ginibre(&mut rng, d, d);
        let lower = ky_fan_pk(&x, 2.0, 2) / 2f64.sqrt();
        let upper = (schatten(&x, 2.0) / 2f64.sqrt()).max(schatten(&x, INF));
        for p in [2.0, 2.5, 3.0, 6.0, INF] {
            let ratio = schatten(&x, p) / 2f64.powf(1.0 / p);
            assert!(lower <= ratio + 1e-9 && ratio <= upper + 1e-9, "p={p}: {lower} {ratio} {upper}");
        }
    }
}

fn arb_pair() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitary_invariance((seed, d) in arb_pair()) {
        let mut rng = seeded(seed);
        let x = random::ginibre(&mut rng, d, d);
        let u = random::unitary(&mut rng, d);
        let v = random::unitary(&mut rng, d);
        let uxv = &(&u * &x) * &v;
        for spec in spec_grid(d, &mut rng, 3) {
            let a = norm(&x, &spec).unwrap();
            let b = norm(&uxv, &spec).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a), "{spec}: {a} vs {b}");
        }
    }

    #[test]
    fn triangle_inequality_and_homogeneity((seed, d) in arb_pair()) {
        let mut rng = seeded(seed);
        let x = random::ginibre(&mut rng, d, d);
        let y = random::ginibre(&mut rng, d, d);
        let t = random::complex_gaussian(&mut rng) * 3.0;
        for spec in spec_grid(d, &mut rng, 3) {
            let nx = norm(&x, &spec).unwrap();
            let ny = norm(&y, &spec).unwrap();
            prop_assert!(norm(&(&x + &y), &spec).unwrap() <= nx + ny + 1e-9);
            let scaled = norm(&x.scale(t), &spec).unwrap();
            prop_assert!((scaled - t.norm() * nx).abs() <= 1e-9 * (1.0 + scaled));
        }
    }

    #[test]
    fn ky_fan_monotone_in_k((seed, d) in arb_pair()) {
        let mut rng = seeded(seed);
        let x = random::ginibre(&mut rng, d, d);
        let s = varbound::linalg::singular_values(&x);
        for k in 1..=d {
            if k > 1 {
                prop_assert!(ky_fan(&x, k) >= ky_fan(&x, k - 1));
            }
            let direct = s.values()[..k].iter().map(|v| v.powf(3.0)).sum::<f64>().cbrt();
            prop_assert!((ky_fan_pk(&x, 3.0, k) - direct).abs() <= 1e-12 * (1.0 + direct));
        }
    }

    #[test]
    fn bhatia_kittaneh_and_cartesian_ky_fan((seed, d) in arb_pair()) {
        let mut rng = seeded(seed);
        let x = random::ginibre(&mut rng, d, d);
        let c = modulus(&x, ModulusKind::C).unwrap().into_matrix();
        for p in [1.0, 1.25, 1.5, 2.0, 3.0, 5.0, INF] {
            let nx = schatten(&x, p);
            let nc = schatten(&c, p);
            let factor = 2f64.powf(0.5 - 1.0 / p);
            if p >= 2.0 {
                prop_assert!(nc <= nx + 1e-9 && nx <= factor * nc + 1e-9, "p={p}");
            } else {
                prop_assert!(nx <= nc + 1e-9 && nc <= nx / factor + 1e-9, "p={p}");
            }
        }
        for k in 1..=d {
            prop_assert!(ky_fan_pk(&c, 2.0, k) <= ky_fan_pk(&x, 2.0, k) + 1e-9);
        }
    }
}

#[test]
fn gauge_with_sorted_weights_is_order_independent() {
    let x = ComplexMatrix::from_diag(&[C64::new(3.0, 0.0), C64::new(0.0, 2.0), C64::new(1.0, 0.0)]);
    let a = norm(&x, &NormSpec::WeightedGauge(vec![0.1, 1.0, 0.5])).unwrap();
    let b = norm(&x, &NormSpec::WeightedGauge(vec![1.0, 0.5, 0.1])).unwrap();
    assert_eq!(a, b);
    assert!((a - (3.0 + 1.0 + 0.1)).abs() < 1e-14);
}
