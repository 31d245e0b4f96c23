mod common;

use std::f64::consts::PI;

use common::*;
use heegaard::bounds::*;
use heegaard::error::BoundsError;
use heegaard::presentation::{intersection_stats, IntersectionStats};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn stats(k: &[usize]) -> IntersectionStats {
    IntersectionStats {
        g: k.len() as u32,
        k_per_alpha: k.to_vec(),
        k_per_beta: k.to_vec(),
        k: k.iter().sum(),
        k_min: *k.iter().min().unwrap(),
        o_alpha: 0,
        o_beta: 0,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn entropy_examples() {
    let l3 = 3f64.ln();
    let r = entropy_bounds(&stats(&[3, 3]), 0, 3, None).unwrap();
    assert!(rel(r.bound_fine.unwrap(), l3) < 1e-12);
    assert!(rel(r.bound_log3.unwrap(), l3) < 1e-12);
    assert!(rel(r.bound_with_b.unwrap(), 9f64.ln() - 2f64.ln()) < 1e-12);
    assert!(r.bound_genus2.is_none());
    assert!(rel(r.best.unwrap(), l3) < 1e-12);

    let r = entropy_bounds(&stats(&[3, 3]), 0, 2, None).unwrap();
    assert!(rel(r.bound_genus2.unwrap(), 2.0 * l3) < 1e-12);
    assert!(r.bound_fine.is_none() && r.bound_log3.is_none());

    let r = entropy_bounds(&stats(&[1, 1]), 0, 3, None).unwrap();
    assert_eq!(r.bound_fine, Some(0.0));
    assert!(r.bound_log3.is_none());
    assert!(!r.applicability.all_k_at_least_3);

    assert_eq!(entropy_bounds(&stats(&[0, 2]), 0, 3, None), Err(BoundsError::ZeroIntersections(1)));
    assert_eq!(entropy_bounds(&stats(&[2, 2]), 0, 1, None), Err(BoundsError::FiberGenus(1)));
}

#[test]
fn with_b_formula() {
    // log(k1 k2) + b log(1 + b 2^(b+1) k^2) - log 2 at k = (2, 5), b = 1
    let r = entropy_bounds(&stats(&[2, 5]), 1, 3, None).unwrap();
    let expect = 10f64.ln() + (1.0 + 4.0 * 49.0f64).ln() - 2f64.ln();
    assert!(rel(r.bound_with_b.unwrap(), expect) < 1e-12);
}

#[test]
fn cover_bound() {
    let r = entropy_bounds(&stats(&[3, 4]), 0, 3, Some(CoverLength { heegaard_length: 5, degree: 2 })).unwrap();
    assert!(rel(r.bound_cover.unwrap(), 2.0 * 4.0 * 3f64.ln()) < 1e-12);
}

#[test]
fn fixture_bounds() {
    let d = fixture("l31-l31.hd");
    let r = entropy_bounds(&intersection_stats(&d), 0, 3, None).unwrap();
    assert!(rel(r.bound_fine.unwrap(), 3f64.ln()) < 1e-12);
    assert!(rel(r.bound_log3.unwrap(), 3f64.ln()) < 1e-12);
}

#[test]
fn transform_examples() {
    assert!(rel(entropy_transform(3f64.ln(), 3, 1).unwrap(), 3f64.ln() / 3.0) < 1e-15);
    assert_eq!(entropy_transform(0.5, 1, 7).unwrap(), 0.5);
    assert_eq!(entropy_transform(0.0, 5, 2).unwrap(), 0.0);
    assert!(entropy_transform(1.0, 0, 1).is_err());
}

fn derivation_holds(k: &[usize]) -> bool {
    let g = k.len() as f64;
    let total: f64 = k.iter().map(|&x| x as f64).sum();
    let lhs = (total - 2.0 * g - 1.0) * 3f64.ln();
    let rhs: f64 = k.iter().map(|&x| (x as f64).ln()).sum::<f64>() - (*k.iter().min().unwrap() as f64).ln();
    lhs >= rhs - REL_TOL * rhs.abs()
}

#[test]
fn derivation_inequality_exhaustive() {
    let mut count = 0;
    for g in 1..=3usize {
        let mut k = vec![3usize; g];
        loop {
            assert!(derivation_holds(&k), "{:?}", k);
            count += 1;
            let mut i = 0;
            while i < g && k[i] == 15 {
                k[i] = 3;
                i += 1;
            }
            if i == g {
                break;
            }
            k[i] += 1;
        }
    }
    assert_eq!(count, 13 + 13 * 13 + 13 * 13 * 13);
}

#[test]
fn derivation_inequality_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10_000 {
        let g = rng.gen_range(1..=8);
        let k: Vec<usize> = (0..g).map(|_| rng.gen_range(3..=60)).collect();
        assert!(derivation_holds(&k), "{:?}", k);
    }
}

#[test]
fn f_of_x_bounded_by_log3() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let x: f64 = 1.0 - rng.gen::<f64>();
        assert!(f_of_x(x) <= 3f64.ln() * (1.0 + 1e-15));
    }
    assert!(rel(f_of_x(1.0), 3f64.ln()) < 1e-15);
}

#[test]
fn tube_examples() {
    let t = tube_metrics(&TubeInput { r: Some(1f64.asinh()), l: Some(2.0), ..Default::default() }).unwrap();
    assert!(rel(t.volume, 2.0 * PI) < 1e-12 && rel(t.wrist, 2.0 * PI) < 1e-12);
    assert!(rel(t.l * t.wrist * t.wrist, 4.0 * PI * t.volume) < 1e-12);

    let t = tube_metrics(&TubeInput { volume: Some(2.0 * PI), wrist: Some(2.0 * PI), ..Default::default() }).unwrap();
    assert!(rel(t.l, 2.0) < 1e-12);
    assert!(rel(t.r, 1f64.asinh()) < 1e-12);

    for (a, b) in [
        (TubeInput { r: Some(0.7), volume: Some(3.0), ..Default::default() }, "r volume"),
        (TubeInput { l: Some(0.4), wrist: Some(5.0), ..Default::default() }, "l wrist"),
        (TubeInput { l: Some(0.4), volume: Some(5.0), ..Default::default() }, "l volume"),
        (TubeInput { r: Some(0.4), wrist: Some(tube_wrist(0.4)), ..Default::default() }, "r wrist"),
    ] {
        let res = tube_metrics(&a);
        if b == "r wrist" {
            assert_eq!(res, Err(BoundsError::Underdetermined));
            continue;
        }
        let t = res.unwrap();
        assert!(rel(t.l * t.wrist * t.wrist, 4.0 * PI * t.volume) < 1e-12, "{}", b);
    }

    let bad = TubeInput { r: Some(1.0), l: Some(1.0), volume: Some(1.0), ..Default::default() };
    assert!(matches!(tube_metrics(&bad), Err(BoundsError::Inconsistent(_))));
    assert_eq!(tube_metrics(&TubeInput { r: Some(1.0), ..Default::default() }), Err(BoundsError::Underdetermined));
}

#[test]
fn tube_identity_grid() {
    for i in 1..=100 {
        for j in 1..=100 {
            let (r, l) = (5.0 * i as f64 / 100.0, 5.0 * j as f64 / 100.0);
            let t = tube_metrics(&TubeInput { r: Some(r), l: Some(l), ..Default::default() }).unwrap();
            assert!(rel(t.l * t.wrist * t.wrist, 4.0 * PI * t.volume) < 1e-12, "r={} l={}", r, l);
        }
    }
}

#[test]
fn ball_volume_small_radius() {
    let r = 0.01;
    assert!(rel(ball_volume(r), 4.0 * PI / 3.0 * r * r * r) < 0.01);
    assert!(rel(visibility_radius(2.0), 2.0 * (1.0 / 3f64.sqrt()).asinh()) < 1e-15);
}

fn profile() -> GeometricProfile {
    GeometricProfile {
        vol_w: 1.0,
        tube_wrists: vec![],
        tube_volumes: vec![],
        total_vol: 1.0,
        systole: 1.0,
        epsilon: 1.0,
        mu: 0.104,
        genus: None,
        dmu: None,
    }
}

#[test]
fn geometric_examples() {
    let r = geometric_entropy_bounds(&profile()).unwrap();
    assert!(rel(r.heegaard_length_cap, 1e22) < 1e-12);
    assert!(r.arithmetic_constant.is_none());

    let far = entropy_volume_systole(1.0, 1e12);
    assert!(rel(far, 1e20 * 3f64.ln()) < 1e-9);

    // tubes at the volume floor with short systole
    let mu: f64 = 0.104;
    let e = mu / 8.0;
    let v = 4.0 * PI / 3.0 * e.powi(3);
    let syst = mu / 4.0;
    let w = (4.0 * PI * v / syst).sqrt();
    let p = GeometricProfile {
        tube_wrists: vec![w; 3],
        tube_volumes: vec![v; 3],
        systole: syst,
        genus: Some(5),
        dmu: Some(2.0),
        ..profile()
    };
    let r = geometric_entropy_bounds(&p).unwrap();
    assert!(r.wrist_sum <= r.wrist_sum_cap.unwrap() * (1.0 + REL_TOL));
    assert!(rel(r.tube_volume_floor, v) < 1e-12);
    assert!(rel(r.short_systole, syst) < 1e-15);
    assert!(rel(r.bicollar_width, e) < 1e-15);
    let assembled = 2.0 * (30.0 * 2.0 + 60.0 * 3.0 + 3.0 * w.ln());
    assert!(rel(r.assembled_entropy.unwrap(), assembled) < 1e-12);
    assert!(rel(r.arithmetic_constant.unwrap(), 1e23 * (e.powi(-3) + 2.0 / e)) < 1e-12);
    assert!(rel(r.curve_caps.delta, 0.1) < 1e-15);
    assert!(rel(r.curve_caps.thick_curve, 1e9) < 1e-12);

    assert_eq!(arithmetic_constant(mu, None), Err(BoundsError::MissingDmu));
    assert!(geometric_entropy_bounds(&GeometricProfile { epsilon: 1.5, ..profile() }).is_err());
    assert!(geometric_entropy_bounds(&GeometricProfile { systole: 0.0, ..profile() }).is_err());
    assert!(matches!(assembled_entropy(1, 2, &[1.0, 1.0]), Err(BoundsError::TubeCount { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn caps_are_monotone(v in 0.01f64..100.0, dv in 0.0f64..10.0, w in 0.01f64..10.0, dw in 0.0f64..5.0,
                         eps in 0.01f64..1.0, s in 0.01f64..10.0, ds in 0.0f64..10.0) {
        let eps2 = eps + (1.0 - eps) / 2.0;
        prop_assert!(heegaard_length_cap(v, &[w], eps) <= heegaard_length_cap(v + dv, &[w], eps));
        prop_assert!(heegaard_length_cap(v, &[w], eps) <= heegaard_length_cap(v, &[w + dw], eps));
        prop_assert!(heegaard_length_cap(v, &[w], eps2) <= heegaard_length_cap(v, &[w], eps));
        prop_assert!(entropy_volume_systole(v, s) <= entropy_volume_systole(v + dv, s));
        prop_assert!(entropy_volume_systole(v, s + ds) <= entropy_volume_systole(v, s));
    }

    #[test]
    fn tube_identity_random(r in 1e-3f64..5.0, l in 1e-3f64..5.0) {
        let t = tube_metrics(&TubeInput { r: Some(r), l: Some(l), ..Default::default() }).unwrap();
        prop_assert!(rel(t.l * t.wrist * t.wrist, 4.0 * PI * t.volume) < 1e-12);
        let back = tube_metrics(&TubeInput { volume: Some(t.volume), wrist: Some(t.wrist), ..Default::default() }).unwrap();
        prop_assert!(rel(back.r, r) < 1e-9 && rel(back.l, l) < 1e-9);
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(l^2 - (n+2) l + 1)(l - 1)^(2g-2)`, leading coefficient first.
fn expected_char_poly(n: u64, g: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::one(), -BigInt::from(n + 2), BigInt::one()];
    for _ in 0..2 * g - 2 {
        p = poly_mul(&p, &[BigInt::one(), -BigInt::one()]);
    }
    p
}

#[test]
fn penner_char_poly_and_det() {
    for n in 0..=100u64 {
        for g in 2..=5u32 {
            let m = penner_matrix(n, g);
            assert_eq!(m.char_poly(), expected_char_poly(n, g), "n={} g={}", n, g);
            assert!(m.det().is_one());
            if g <= 3 {
                let rows: Vec<Vec<i64>> =
                    (0..m.rows()).map(|i| m.row(i).iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
                assert_eq!(naive_det(&rows), 1);
            }
        }
    }
}

#[test]
fn penner_examples() {
    let p = penner_family(1, 2, None).unwrap();
    assert_eq!(p.eigenvalues[0].to_string(), "(3+√5)/2");
    assert!((p.spectral_radius - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    assert!((p.entropy_floor - 0.962424).abs() < 1e-6);
    assert!((p.entropy_floor - 0.9624236501).abs() < 1e-10);

    let p = penner_family(0, 2, None).unwrap();
    assert_eq!(p.spectral_radius, 1.0);
    assert_eq!(p.entropy_floor, 0.0);
    assert_eq!(p.eigenvalues[0].value(), 1.0);
    assert_eq!(p.eigenvalues[1].value(), 1.0);

    for n in 1..=100u64 {
        let p = penner_family(n, 2, None).unwrap();
        assert!(p.entropy_floor > (n as f64).ln(), "n={}", n);
        let prod = p.eigenvalues[0].value() * p.eigenvalues[1].value();
        assert!((prod - 1.0).abs() < 1e-9);
    }

    let p = penner_family(4, 3, Some((2.0, 5.0))).unwrap();
    let a = p.asymptotics.unwrap();
    assert!(rel(a.wrist, 8.0) < 1e-15);
    assert!(rel(a.systole, 5.0 * 4.0 * PI / 4.0 / 16.0) < 1e-15);
    assert_eq!(penner_family(1, 1, None).unwrap_err(), BoundsError::Genus(1));
}
