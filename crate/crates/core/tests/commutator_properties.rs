use proptest::prelude::*;
use std::f64::consts::SQRT_2;
use varbound::commutator::{
    cauchy_schwarz_slack, commutator, conjectured_constant, evaluate_bounds, inverse, proof_identity_residual, ratio,
    rho_from_x, search_constant, witness_families, CHAIN, NORMAL_CHAIN,
};
use varbound::linalg::constants::{basis_matrix, pauli_x, pauli_z};
use varbound::linalg::random::{ginibre, normal_matrix, seeded};
use varbound::linalg::{ComplexMatrix, C64};
use varbound::norms::schatten;

fn pair(seed: u64, d: usize) -> (ComplexMatrix, ComplexMatrix) {
    let mut rng = seeded(seed);
    (ginibre(&mut rng, d, d), ginibre(&mut rng, d, d))
}

/// `Tr[A B]` summed entry by entry.
fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let d = a.rows();
    let mut t = C64::new(0.0, 0.0);
    for i in 0..d {
        for k in 0..d {
            t += a[(i, k)] * b[(k, i)];
        }
    }
    t
}

#[test]
fn pauli_pair_norms() {
    let c = commutator(&pauli_x(), &pauli_z()).unwrap();
    assert!((schatten(&c, 2.0) - 2.0 * SQRT_2).abs() <= 1e-12);
    assert!((schatten(&pauli_x(), 2.0) - SQRT_2).abs() <= 1e-12);
    assert!((schatten(&pauli_z(), 2.0) - SQRT_2).abs() <= 1e-12);
    let r = ratio(&pauli_x(), &pauli_z(), 2.0, 2.0, 2.0).unwrap().unwrap();
    assert!((r - SQRT_2).abs() <= 1e-12);
}

#[test]
fn identity_residual_for_seed_13() {
    let (x, y) = pair(13, 6);
    assert!(proof_identity_residual(&x, &y).unwrap() <= 1e-9);
    assert!(proof_identity_residual(&x, &x).unwrap() <= 1e-9);
}

#[test]
fn rho_matches_entrywise_construction() {
    let (x, _) = pair(21, 5);
    let rho = rho_from_x(&x).unwrap();
    let xh = x.adjoint();
    let n2: f64 = (0..5).flat_map(|i| (0..5).map(move |j| (i, j))).map(|(i, j)| x[(i, j)].norm_sqr()).sum();
    for i in 0..5 {
        for j in 0..5 {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..5 {
                s += xh[(i, k)] * x[(k, j)] + x[(i, k)] * xh[(k, j)];
            }
            assert!((rho.matrix()[(i, j)] - s / (2.0 * n2)).norm() <= 1e-14);
        }
    }
}

#[test]
fn seed_17_chain_holds() {
    let (x, y) = pair(17, 4);
    let rep = evaluate_bounds(&x, &y, 2.0, 2.0, 4.0).unwrap();
    for name in CHAIN {
        let b = rep.get(name).unwrap();
        assert!(b.holds && b.slack >= 0.0, "{name}: {b:?}");
    }
    assert!(rep.get("bottcher_wenzel").is_none());
    assert!(rep.get("holder").is_none());
}

#[test]
fn bottcher_wenzel_on_random_pairs() {
    let mut worst: f64 = 0.0;
    for t in 0..2000u64 {
        let d = 1 + (t % 12) as usize;
        let (x, y) = pair(1000 + t, d);
        let c = commutator(&x, &y).unwrap();
        let bound = SQRT_2 * schatten(&x, 2.0) * schatten(&y, 2.0);
        assert!(schatten(&c, 2.0) <= bound + 1e-9);
        if let Some(r) = ratio(&x, &y, 2.0, 2.0, 2.0).unwrap() {
            worst = worst.max(r);
        }
    }
    for f in witness_families(2.0, 2.0, 2.0).unwrap() {
        worst = worst.max(ratio(&f.x, &f.y, 2.0, 2.0, 2.0).unwrap().unwrap());
    }
    assert!((SQRT_2 - 1e-9..=SQRT_2 + 1e-12).contains(&worst));
}

#[test]
fn chains_are_ordered_and_hold() {
    for t in 0..40u64 {
        let d = 2 + (t % 5) as usize;
        let mut rng = seeded(5000 + t);
        let x = ginibre(&mut rng, d, d);
        let y = if t % 2 == 0 { ginibre(&mut rng, d, d) } else { normal_matrix(&mut rng, d) };
        for r in [1.0, 2.0, 3.0, f64::INFINITY] {
            let rep = evaluate_bounds(&x, &y, 2.0, 2.0, r).unwrap();
            assert!(rep.all_hold(), "{rep:?}");
            let chain: Vec<f64> = CHAIN.iter().map(|n| rep.get(n).unwrap().value).collect();
            for w in chain.windows(2) {
                assert!(w[1] >= w[0] - 1e-8, "{chain:?}");
            }
            if t % 2 == 1 {
                let normal: Vec<f64> = NORMAL_CHAIN.iter().map(|n| rep.get(n).unwrap().value).collect();
                for w in normal.windows(2) {
                    assert!(w[1] >= w[0] - 1e-8, "{normal:?}");
                }
            } else {
                assert!(rep.get(NORMAL_CHAIN[0]).is_none());
            }
        }
    }
}

#[test]
fn holder_bound_on_schatten_grid() {
    let mut t = 0u64;
    for p in [1.0, 1.5, 2.0, 3.0] {
        for q in [1.0, 1.5, 2.0, 3.0, 4.0, 6.0, f64::INFINITY] {
            let ir = inverse(p) - inverse(q);
            if ir < 0.0 {
                continue;
            }
            let r = if ir == 0.0 { f64::INFINITY } else { 1.0 / ir };
            for _ in 0..10 {
                t += 1;
                let (x, y) = pair(7000 + t, 2 + (t % 6) as usize);
                let c = commutator(&x, &y).unwrap();
                assert!(schatten(&c, p) <= 2.0 * schatten(&x, q) * schatten(&y, r) + 1e-9);
                let rep = evaluate_bounds(&x, &y, p, q, r).unwrap();
                assert!(rep.get("holder").unwrap().holds);
            }
        }
    }
}

#[test]
fn witness_ratios_match_closed_forms() {
    let exps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    for p in exps {
        for q in exps {
            for r in exps {
                for f in witness_families(p, q, r).unwrap() {
                    let got = ratio(&f.x, &f.y, p, q, r).unwrap().unwrap();
                    assert!((got - f.exact_ratio).abs() <= 1e-10, "{} at ({p},{q},{r}): {got}", f.name);
                }
            }
        }
    }
}

#[test]
fn tensor_inflation_scales_ratio() {
    let fams = witness_families(1.0, 2.0, 2.0).unwrap();
    let (x, y) = pair(31, 3);
    let mut pairs: Vec<(ComplexMatrix, ComplexMatrix)> = fams.into_iter().map(|f| (f.x, f.y)).collect();
    pairs.push((x, y));
    for (p, q, r) in [(1.0, 2.0, 2.0), (2.0, 2.0, 2.0), (1.5, 3.0, 2.0), (2.0, 1.0, 4.0), (f64::INFINITY, 2.0, 3.0)] {
        for (x, y) in &pairs {
            let base = ratio(x, y, p, q, r).unwrap().unwrap();
            for dd in [2usize, 3] {
                let big = ratio(&x.kron_identity(dd), &y.kron_identity(dd), p, q, r).unwrap().unwrap();
                let scale = (dd as f64).powf(inverse(p) - inverse(q) - inverse(r));
                assert!((big - base * scale).abs() <= 1e-9 * (1.0 + big), "{big} vs {}", base * scale);
            }
        }
    }
}

#[test]
fn search_is_deterministic() {
    let a = search_constant(1.5, 1.5, 3.0, &[2, 3], 60, 99).unwrap();
    let b = search_constant(1.5, 1.5, 3.0, &[2, 3], 60, 99).unwrap();
    assert_eq!(a.best_ratio.to_bits(), b.best_ratio.to_bits());
    assert_eq!(a.witness_x, b.witness_x);
    assert_eq!(a.witness_y, b.witness_y);
    assert_eq!(a.witness_source, b.witness_source);
    assert_eq!(a.dims_tried, b.dims_tried);
    assert_eq!(a.conjectured, Some(conjectured_constant(1.5, 3.0)));
    assert!(!a.exceeds_conjecture, "{} > {:?}", a.best_ratio, a.conjectured);
}

#[test]
fn search_respects_conjecture_on_sample_exponents() {
    for (p, r) in [(1.0, 1.0), (1.0, 2.0), (2.0, 2.0), (3.0, 1.5), (4.0, 4.0), (f64::INFINITY, f64::INFINITY)] {
        let s = search_constant(p, p, r, &[2, 3, 4], 200, 4).unwrap();
        let conj = conjectured_constant(p, r);
        assert!(s.best_ratio <= conj + 1e-6, "({p},{r}): {} > {conj}", s.best_ratio);
        assert!(s.best_ratio >= conj - 1e-12, "witnesses attain the conjectured value at ({p},{r})");
    }
}

#[test]
fn basis_pair_attains_holder_equality_at_p_infinity() {
    let x = basis_matrix(0, 1, 2).unwrap();
    let y = basis_matrix(1, 0, 2).unwrap();
    let inf = f64::INFINITY;
    assert_eq!(ratio(&x, &y, inf, inf, inf).unwrap(), Some(1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_residual_is_small(seed in any::<u64>(), d in 1usize..8, s in 0.1f64..10.0) {
        let (x, y) = pair(seed, d);
        let x = x.scale_real(s);
        let bound = 1e-9 * (1.0 + schatten(&x, 2.0).powi(2) * schatten(&y, 2.0).powi(2));
        prop_assert!(proof_identity_residual(&x, &y).unwrap() <= bound);
    }

    #[test]
    fn cauchy_schwarz_step(seed in any::<u64>(), d in 1usize..8) {
        let (x, y) = pair(seed, d);
        prop_assert!(cauchy_schwarz_slack(&x, &y).unwrap() >= -1e-10);
        let xh = x.adjoint();
        let s = &(&xh * &x) + &(&x * &xh);
        let anti = &(&y * &xh) + &(&xh * &y);
        let lhs = trace_of_product(&y, &s);
        let rhs = trace_of_product(&anti, &x);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
    }

    #[test]
    fn variance_bound_from_rho(seed in any::<u64>(), d in 2usize..6) {
        let (x, y) = pair(seed, d);
        let rep = evaluate_bounds(&x, &y, 2.0, 2.0, 2.0).unwrap();
        let v = rep.get("cartesian_variance").unwrap();
        prop_assert!(v.holds, "{:?}", v);
        prop_assert!(rep.get("bottcher_wenzel").unwrap().holds);
    }
}
