use coorbit2d::numerics::{
    analyze, analyze_norm, calderon_constant, coorbit_norm, default_frequency_samples, default_wavelet,
    gen_test_signal, invert, relative_l2_error, AxisRange, Complex64, GroupSampling, SamplingPlan, TestSignal,
};
use coorbit2d::{ChartPoint, Family, GroupSpec, Mat2, Vec2};
use proptest::prelude::*;

fn small_plan(family: Family) -> SamplingPlan {
    match family {
        Family::Similitude => SamplingPlan::Similitude {
            log_scale: AxisRange::new(-1.5, 1.5, 12),
            angles: 12,
        },
        Family::Diagonal => SamplingPlan::Diagonal {
            log_scales: [AxisRange::new(-1.5, 1.5, 10); 2],
        },
        Family::Shearlet { .. } => SamplingPlan::Shearlet {
            log_scale: AxisRange::new(-1.5, 1.5, 10),
            shear: AxisRange::new(-4.0, 4.0, 24),
        },
    }
}

fn specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::similitude(),
        GroupSpec::new(Family::Diagonal, Mat2::new(1.0, 0.2, -0.1, 0.8)).unwrap(),
        GroupSpec::shearlet(0.5).unwrap(),
    ]
}

fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

/// `W_ψ ψ(0, I) = ‖ψ‖²`, computed against a spectral quadrature.
#[test]
fn psi_atom_peak_is_its_energy() {
    let (n, extent) = (64, 16.0);
    for spec in specs() {
        let psi = default_wavelet(&spec);
        let (f, _) = gen_test_signal(&TestSignal::psi_atom(psi), n, extent).unwrap();
        let at_id = GroupSampling::from_points(&spec, &[(ChartPoint::identity(spec.family()), 1.0)]).unwrap();
        let slab = analyze(&f, &spec, &at_id, &psi).unwrap();
        let plane = slab.plane(0);
        let origin = plane[(n / 2) * n + n / 2];
        let energy: f64 = (0..n * n)
            .map(|idx| psi.eval(f.frequency(idx / n, idx % n)).powi(2))
            .sum::<f64>()
            / (extent * extent);
        assert!((origin.re - energy).abs() <= 1e-6 * energy, "{origin} vs {energy}");
        assert!(origin.im.abs() <= 1e-9 * energy);
        assert!((slab.max_modulus() - origin.norm()).abs() <= 1e-12 * energy);
    }
}

#[test]
fn refinement_changes_norm_little() {
    let spec = GroupSpec::similitude();
    let psi = default_wavelet(&spec);
    let (f, _) = gen_test_signal(&TestSignal::gaussian(Vec2::new(0.8, -0.6), 0.15), 64, 16.0).unwrap();
    let plan = SamplingPlan::default_for(Family::Similitude);
    let coarse = GroupSampling::uniform(&spec, &plan).unwrap();
    let fine = GroupSampling::uniform(&spec, &plan.refined(2)).unwrap();
    for p in [1.0, 2.0, f64::INFINITY] {
        let a = analyze_norm(&f, &spec, &coarse, &psi, p).unwrap();
        let b = analyze_norm(&f, &spec, &fine, &psi, p).unwrap();
        assert!((a - b).abs() <= 1e-2 * b, "p={p}: {a} vs {b}");
    }
}

#[test]
fn streaming_norm_matches_slab_norm() {
    for spec in specs() {
        let psi = default_wavelet(&spec);
        let s = GroupSampling::uniform(&spec, &small_plan(spec.family())).unwrap();
        let (f, _) = gen_test_signal(&TestSignal::random_mixture(5, 4, 0.7, 1.3, 0.12), 32, 8.0).unwrap();
        let slab = analyze(&f, &spec, &s, &psi).unwrap();
        for p in [0.5, 1.0, 2.0, 3.5, f64::INFINITY] {
            let a = coorbit_norm(&slab, p).unwrap();
            let b = analyze_norm(&f, &spec, &s, &psi, p).unwrap();
            assert!((a - b).abs() <= 1e-12 * a, "p={p}: {a} vs {b}");
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    for spec in specs() {
        let psi = default_wavelet(&spec);
        let s = GroupSampling::uniform(&spec, &small_plan(spec.family())).unwrap();
        let (f, _) = gen_test_signal(&TestSignal::random_mixture(9, 3, 0.8, 1.2, 0.15), 32, 8.0).unwrap();
        let c = calderon_constant(&spec, &psi, &default_frequency_samples(&spec), &s).unwrap().mean;
        let run = || {
            let slab = analyze(&f, &spec, &s, &psi).unwrap();
            let norm = coorbit_norm(&slab, 1.0).unwrap();
            let rec = invert(&slab, &spec, &s, &psi, c).unwrap();
            (norm, rec.into_data())
        };
        let one = in_pool(1, run);
        let four = in_pool(4, run);
        assert_eq!(one.0.to_bits(), four.0.to_bits());
        assert!(one.1.iter().zip(&four.1).all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }
}

#[test]
fn reconstruction_of_zero_is_zero() {
    let spec = GroupSpec::shearlet(1.0).unwrap();
    let psi = default_wavelet(&spec);
    let s = GroupSampling::uniform(&spec, &small_plan(spec.family())).unwrap();
    let (f, _) = gen_test_signal(&TestSignal::Zero, 16, 4.0).unwrap();
    let slab = analyze(&f, &spec, &s, &psi).unwrap();
    assert_eq!(coorbit_norm(&slab, 2.0).unwrap(), 0.0);
    let rec = invert(&slab, &spec, &s, &psi, 1.0).unwrap();
    assert!(rec.data().iter().all(|z| *z == Complex64::default()));
    assert!(relative_l2_error(&rec, &f).is_err() || rec.l2_norm() == 0.0);
}

#[test]
fn rejects_bad_inputs() {
    let spec = GroupSpec::similitude();
    let psi = default_wavelet(&spec);
    let s = GroupSampling::uniform(&spec, &small_plan(Family::Similitude)).unwrap();
    let other = GroupSampling::uniform(&GroupSpec::diagonal(), &small_plan(Family::Diagonal)).unwrap();
    let (f, _) = gen_test_signal(&TestSignal::gaussian(Vec2::new(1.0, 0.0), 0.2), 16, 4.0).unwrap();
    assert!(analyze(&f, &spec, &other, &psi).is_err());
    assert!(analyze_norm(&f, &spec, &s, &psi, 0.0).is_err());
    assert!(analyze_norm(&f, &spec, &s, &psi, f64::NAN).is_err());
    let slab = analyze(&f, &spec, &s, &psi).unwrap();
    assert!(invert(&slab, &spec, &s, &psi, 0.0).is_err());
    assert!(invert(&slab, &spec, &s, &psi, f64::INFINITY).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn norm_is_homogeneous(re in -3.0..3.0f64, im in -3.0..3.0f64, p in 1.0..4.0f64, which in 0usize..3) {
        let spec = specs().swap_remove(which);
        let psi = default_wavelet(&spec);
        let s = GroupSampling::uniform(&spec, &small_plan(spec.family())).unwrap();
        let (f, _) = gen_test_signal(&TestSignal::gaussian(Vec2::new(0.9, 0.5), 0.15), 16, 4.0).unwrap();
        let alpha = Complex64::new(re, im);
        let base = analyze_norm(&f, &spec, &s, &psi, p).unwrap();
        let scaled = analyze_norm(&f.scaled(alpha), &spec, &s, &psi, p).unwrap();
        prop_assert!((scaled - alpha.norm() * base).abs() <= 1e-10 * (alpha.norm() * base).max(1e-300));
    }

    #[test]
    fn norm_is_translation_invariant(s1 in -6i32..6, s2 in -6i32..6, p in 0.5..4.0f64) {
        let spec = GroupSpec::similitude();
        let psi = default_wavelet(&spec);
        let s = GroupSampling::uniform(&spec, &small_plan(spec.family())).unwrap();
        let (n, extent) = (32, 8.0);
        let base = TestSignal::gaussian(Vec2::new(0.7, 0.7), 0.15);
        let dx = extent / n as f64;
        let moved = match base.clone() {
            TestSignal::GaussianBump { center, sigma, amplitude, .. } => TestSignal::GaussianBump {
                center,
                sigma,
                amplitude,
                offset: Vec2::new(s1 as f64 * dx, s2 as f64 * dx),
            },
            _ => unreachable!(),
        };
        let a = analyze_norm(&gen_test_signal(&base, n, extent).unwrap().0, &spec, &s, &psi, p).unwrap();
        let b = analyze_norm(&gen_test_signal(&moved, n, extent).unwrap().0, &spec, &s, &psi, p).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a);
    }
}
