use approx::assert_relative_eq;
use proptest::prelude::*;
use x1scatter::spectrum::{
    bound_states, default_quadrature_grid, eigenfunction, energy, node_count, norm_const,
    normalization_audit, nu_max, orthonormality_matrix, quadrature_norm, schrodinger_residual,
    RESIDUAL_INNER_RADIUS,
};
use x1scatter::{Error, Execution, PotentialParams, RadialGrid};

const FIXTURES: [(f64, f64); 3] = [(2.5, 4.0), (0.5, 2.0), (1.2, 3.7)];

fn params(a: f64, b: f64) -> PotentialParams {
    PotentialParams::new(a, b).unwrap()
}

#[test]
fn energies_for_a_two_and_a_half() {
    let p = params(2.5, 4.0);
    assert_eq!(energy(&p, 0).unwrap(), 0.0);
    assert_eq!(energy(&p, 1).unwrap(), 4.0);
    assert_eq!(energy(&p, 2).unwrap(), 6.0);
    assert!(matches!(
        energy(&p, 3),
        Err(Error::IndexOutOfRange { nu: 3, nu_max: 2 })
    ));
    let states = bound_states(&p).unwrap();
    assert_eq!(states.len(), 3);
    assert!(states
        .iter()
        .all(|s| s.norm_const.is_finite() && s.norm_const != 0.0));
}

#[test]
fn nu_max_for_integer_and_fractional_a() {
    assert_eq!(nu_max(&params(2.5, 4.0)), 2);
    assert_eq!(nu_max(&params(3.0, 5.0)), 2);
    assert_eq!(nu_max(&params(0.5, 2.0)), 0);
    assert_eq!(nu_max(&params(1.0, 2.5)), 0);
}

#[test]
fn schrodinger_residuals() {
    let grid = RadialGrid::new(RESIDUAL_INNER_RADIUS, 20.0, 1951).unwrap();
    for (a, b) in FIXTURES {
        let p = params(a, b);
        for nu in 0..=nu_max(&p) {
            let res = schrodinger_residual(&p, nu, &grid).unwrap();
            assert!(res < 1e-5, "({a}, {b}) nu = {nu}: {res}");
        }
    }
}

#[test]
fn eigenfunctions_are_orthonormal() {
    for (a, b) in FIXTURES {
        let p = params(a, b);
        let grid = default_quadrature_grid(&p).unwrap();
        let report = orthonormality_matrix(&p, &grid, Execution::Parallel).unwrap();
        assert_eq!(report.matrix.len(), nu_max(&p) + 1);
        assert!(
            report.max_deviation < 1e-8,
            "({a}, {b}): {}",
            report.max_deviation
        );
        assert!(!report.resolution_warning);
    }
}

#[test]
fn coarse_grid_triggers_resolution_warning() {
    let p = params(2.5, 4.0);
    let grid = RadialGrid::new(1e-4, 80.0, 401).unwrap();
    let report = orthonormality_matrix(&p, &grid, Execution::Sequential).unwrap();
    assert!(report.resolution_warning);
}

#[test]
fn closed_form_normalization_differs_only_in_sign() {
    for (a, b) in FIXTURES {
        let p = params(a, b);
        let grid = default_quadrature_grid(&p).unwrap();
        for audit in normalization_audit(&p, &grid, Execution::Parallel).unwrap() {
            assert_relative_eq!(audit.ratio, -1.0, max_relative = 1e-8);
            assert!(((audit.ratio - audit.refined_ratio) / audit.ratio).abs() < 1e-8);
        }
    }
}

#[test]
fn normalized_flag_uses_quadrature() {
    let p = params(1.2, 3.7);
    let n = quadrature_norm(&p, 1, &default_quadrature_grid(&p).unwrap()).unwrap();
    let raw = eigenfunction(&p, 1, 2.0, false).unwrap();
    assert_relative_eq!(
        eigenfunction(&p, 1, 2.0, true).unwrap(),
        n * raw,
        max_relative = 1e-14
    );
    assert_relative_eq!(
        n.abs(),
        norm_const(&p, 1).unwrap().abs(),
        max_relative = 1e-8
    );
}

#[test]
fn node_counts() {
    let grid = RadialGrid::new(1e-3, 40.0, 8000).unwrap();
    for (a, b) in FIXTURES {
        let p = params(a, b);
        for nu in 0..=nu_max(&p) {
            assert_eq!(node_count(&p, nu, &grid).unwrap(), nu);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn spectrum_is_monotone_below_threshold(a in 0.05f64..7.0, gap in 1.001f64..6.0) {
        let p = params(a, a + gap);
        let states = bound_states(&p).unwrap();
        prop_assert_eq!(states.len(), nu_max(&p) + 1);
        prop_assert!((nu_max(&p) as f64) < a && nu_max(&p) as f64 >= a - 1.0);
        prop_assert_eq!(states[0].energy, 0.0);
        for w in states.windows(2) {
            prop_assert!(w[1].energy > w[0].energy);
        }
        prop_assert!(states.iter().all(|s| s.energy >= 0.0 && s.energy < p.threshold()));
    }

    #[test]
    fn node_count_equals_index(a in 0.3f64..4.5, gap in 1.05f64..5.0) {
        let p = params(a, a + gap);
        let kappa = a - nu_max(&p) as f64;
        let grid = RadialGrid::new(1e-3, 30.0 / kappa.max(0.05) + 10.0, 20_000).unwrap();
        for nu in 0..=nu_max(&p) {
            prop_assert_eq!(node_count(&p, nu, &grid).unwrap(), nu);
        }
    }
}
