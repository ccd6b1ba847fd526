use proptest::prelude::*;
use x1scatter::scattering::{
    asymptotic_residual, match_coefficients, off_spectrum_probes, phase_shift, phase_sweep,
    pole_map, rational_factor, s_matrix, s_matrix_at, s_matrix_from_asymptotics, s_matrix_gpt,
    s_matrix_printed, scattering_wavefunction, smatrix_sweep, PoleClass, K_MIN,
};
use x1scatter::{ComplexValue as C, Error, Execution, PotentialKind, PotentialParams};

const FIXTURES: [(f64, f64); 3] = [(2.5, 4.0), (0.5, 2.0), (1.2, 3.7)];
const KS: [f64; 6] = [0.1, 0.3, 1.0, 1.7, 3.0, 5.0];

fn params(a: f64, b: f64) -> PotentialParams {
    PotentialParams::new(a, b).unwrap()
}

#[test]
fn reference_value() {
    // extended S at A = 2.5, B = 4, k = 1.7, 40 digits
    let s = s_matrix(&params(2.5, 4.0), 1.7).unwrap();
    let expect = C::new(-0.700_083_334_887_371_6, 0.714_061_148_791_177_6);
    assert!((s - expect).norm() < 1e-13);
}

#[test]
fn matching_coefficients_reproduce_closed_form() {
    for (a, b) in FIXTURES {
        let p = params(a, b);
        for k in KS {
            let closed = s_matrix(&p, k).unwrap();
            let matched = s_matrix_from_asymptotics(&p, k).unwrap();
            assert!((closed - matched).norm() < 1e-10, "({a}, {b}) k = {k}");
        }
    }
    for (a, b, k) in [(0.5, 2.0, 0.3), (1.2, 3.7, 4.0), (2.5, 4.0, 1.0)] {
        let p = params(a, b);
        assert!(
            (s_matrix(&p, k).unwrap() - s_matrix_from_asymptotics(&p, k).unwrap()).norm() < 1e-10
        );
    }
}

#[test]
fn sign_dropped_form_is_the_negative() {
    for (a, b) in FIXTURES {
        let p = params(a, b);
        for k in KS {
            let ratio = s_matrix_printed(&p, k).unwrap() / s_matrix(&p, k).unwrap();
            assert!((ratio + 1.0).norm() < 1e-12);
        }
    }
}

#[test]
fn factorization() {
    for (a, b) in FIXTURES {
        let p = params(a, b);
        for k in KS {
            let ratio = s_matrix(&p, k).unwrap() / s_matrix_gpt(&p, k).unwrap();
            assert!((ratio - rational_factor(&p, C::new(k, 0.0))).norm() < 1e-12);
        }
    }
}

#[test]
fn coefficient_a_is_conjugate_of_b() {
    let m = match_coefficients(&params(1.2, 3.7), 0.9).unwrap();
    assert!((m.coef_a.conj() - m.coef_b).norm() < 1e-14 * m.coef_b.norm());
    let ratio = m.coef_p / m.coef_q;
    assert!((ratio - C::new(3.2, 0.9) / C::new(1.2, 0.9)).norm() < 1e-13);
}

#[test]
fn threshold_guard() {
    let p = params(2.5, 4.0);
    assert!(matches!(
        s_matrix(&p, K_MIN),
        Err(Error::BelowThreshold { .. })
    ));
    assert!(matches!(
        phase_shift(&p, 1e-4),
        Err(Error::BelowThreshold { .. })
    ));
    assert!(s_matrix(&p, 0.01).is_ok());
}

#[test]
fn poles_at_bound_states() {
    let p = params(2.5, 4.0);
    let poles = pole_map(&p).unwrap();
    let expect = [(2.5, 0.0), (1.5, 4.0), (0.5, 6.0)];
    assert_eq!(poles.len(), 3);
    for (pole, (im, e)) in poles.iter().zip(expect) {
        assert_eq!(pole.k_pole, C::new(0.0, im));
        assert_eq!(pole.energy, e);
        assert!(pole.confirmed(), "{pole:?}");
    }
    for (a, b) in FIXTURES {
        assert!(pole_map(&params(a, b))
            .unwrap()
            .iter()
            .all(|pl| pl.confirmed()));
    }
}

#[test]
fn gamma_poles_beyond_nu_max_leave_the_physical_sheet() {
    for (a, b) in FIXTURES {
        let probes = off_spectrum_probes(&params(a, b)).unwrap();
        let (rational, extra) = probes.split_last().unwrap();
        for (label, pr) in extra {
            assert!(pr.k0.im < 0.0, "({a}, {b}) {label}");
            // half-integer A: the numerator pole is cancelled by Γ(-A+ik)
            if (a - 0.5).fract() == 0.0 && (pr.k0 - rational.1.k0).norm() > 1e-12 {
                assert_ne!(pr.class, PoleClass::Pole, "({a}, {b}) {label}: {pr:?}");
            }
        }
        assert_eq!(
            rational.1.class,
            PoleClass::Pole,
            "({a}, {b}): {:?}",
            rational.1
        );
    }
    // A = 1.2: a genuine pole at k = -0.8i, below the real axis
    let probes = off_spectrum_probes(&params(1.2, 3.7)).unwrap();
    assert_eq!(probes[0].1.class, PoleClass::Pole);
}

#[test]
fn wavefunction_regular_at_origin() {
    let p = params(2.5, 4.0);
    let r = 1e-4;
    let ratio = scattering_wavefunction(&p, 1.3, 2.0 * r).unwrap()
        / scattering_wavefunction(&p, 1.3, r).unwrap();
    assert!((ratio - C::new(2f64.powf(1.5), 0.0)).norm() < 1e-6);
}

#[test]
fn asymptotic_form() {
    let p = params(2.5, 4.0);
    assert!(asymptotic_residual(&p, 1.0, 20.0).unwrap() < 1e-5);
    assert!(asymptotic_residual(&params(0.5, 2.0), 2.0, 18.0).unwrap() < 1e-5);
    let trend: Vec<f64> = [15.0, 20.0, 25.0]
        .iter()
        .map(|&r| asymptotic_residual(&p, 1.0, r).unwrap())
        .collect();
    assert!(trend[0] > trend[1] && trend[1] > trend[2], "{trend:?}");
}

#[test]
fn sweeps_are_bitwise_identical_across_execution_modes() {
    let p = params(1.2, 3.7);
    let ks: Vec<f64> = (0..257).map(|i| 0.02 + 0.037 * i as f64).collect();
    for kind in PotentialKind::ALL {
        let seq = smatrix_sweep(kind, &p, &ks, Execution::Sequential).unwrap();
        let par = smatrix_sweep(kind, &p, &ks, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}

#[test]
fn unwrapped_sweep_is_continuous() {
    let p = params(2.5, 4.0);
    let ks: Vec<f64> = (0..400).map(|i| 0.1 + 4.9 * i as f64 / 399.0).collect();
    for kind in PotentialKind::ALL {
        let delta = phase_sweep(kind, &p, &ks, Execution::Parallel).unwrap();
        assert!(delta.windows(2).all(|w| (w[1] - w[0]).abs() < 0.2));
    }
}

fn valid_params() -> impl Strategy<Value = PotentialParams> {
    (0.05f64..6.0, 1.001f64..8.0).prop_map(|(a, gap)| params(a, a + gap))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unitarity(p in valid_params(), k in 0.01f64..10.0) {
        prop_assert!((s_matrix(&p, k).unwrap().norm() - 1.0).abs() < 1e-10);
        prop_assert!((s_matrix_gpt(&p, k).unwrap().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reciprocity(p in valid_params(), k in 0.01f64..10.0) {
        let forward = s_matrix_at(&p, C::new(k, 0.0)).unwrap();
        let backward = s_matrix_at(&p, C::new(-k, 0.0)).unwrap();
        prop_assert!((forward * backward - 1.0).norm() < 1e-10);
    }

    #[test]
    fn phase_in_principal_range(p in valid_params(), k in 0.01f64..10.0) {
        let d = phase_shift(&p, k).unwrap();
        prop_assert!(d > -std::f64::consts::FRAC_PI_2 && d <= std::f64::consts::FRAC_PI_2);
    }
}
