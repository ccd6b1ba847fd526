//! Bound states of the extended potential.
//!
//! `E_ν = A² - (A - ν)²` for `ν = 0..=ν_max`, with eigenfunctions
//! `ψ_ν(r) = (cosh r - 1)^{(B-A)/2} (cosh r + 1)^{-(B+A)/2} / (2B cosh r - 2A - 1) · P̂_{ν+1}(cosh r)`
//! where `P̂` is the X₁ Jacobi polynomial with `α = B - A - 1/2`, `β = -B - A - 1/2`.
//!
//! Everything is evaluated in log space: the envelope decays like
//! `e^{-(A+1) r}` while `P̂_{ν+1}(cosh r)` grows like `e^{(ν+1) r}`, and
//! the two are only combined after the exponents are added.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::grid::RadialGrid;
use crate::potential::{v_from_w, PotentialKind, PotentialParams};
use crate::specfun::{gamma_ratio, x1_jacobi_scaled, ComplexValue};

/// Step of the five-point stencil used by [`schrodinger_residual`].
pub const STENCIL_STEP: f64 = 1e-3;
/// Residual points closer to the origin than this are skipped: the
/// stencil's truncation error grows like `r^{B-A-6}` against the
/// `r^{B-A}` branch point at `r = 0`.
pub const RESIDUAL_INNER_RADIUS: f64 = 0.05;
/// Integrals closer to the origin than this are dropped; the integrand is
/// `O(r^{2(B-A)})` with `B - A > 1`, i.e. below `1e-12` there.
pub const QUADRATURE_INNER_RADIUS: f64 = 1e-4;
const QUADRATURE_STEP: f64 = 2e-3;
const RESOLUTION_WARNING: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub nu: usize,
    pub energy: f64,
    /// Closed-form normalization constant, including its overall sign.
    pub norm_const: f64,
}

/// The unique integer in `[A - 1, A)`.
pub fn nu_max(p: &PotentialParams) -> usize {
    (p.a().ceil() - 1.0) as usize
}

fn check_nu(p: &PotentialParams, nu: usize) -> Result<()> {
    let top = nu_max(p);
    if nu > top {
        Err(Error::IndexOutOfRange { nu, nu_max: top })
    } else {
        Ok(())
    }
}

/// `E_ν = A² - (A - ν)²`.
pub fn energy(p: &PotentialParams, nu: usize) -> Result<f64> {
    check_nu(p, nu)?;
    Ok(energy_formula(p.a(), nu))
}

pub(crate) fn energy_formula(a: f64, nu: usize) -> f64 {
    let kappa = a - nu as f64;
    a * a - kappa * kappa
}

/// Closed-form normalization
/// `N_ν = -2^{A+2} B [ν! (2A-2ν)(B+A-ν+1/2) Γ(B+A-ν-1/2) / ((B-A+ν+1/2) Γ(B-A+ν-1/2) Γ(2A-ν+1))]^{1/2}`.
pub fn norm_const(p: &PotentialParams, nu: usize) -> Result<f64> {
    check_nu(p, nu)?;
    let (a, b) = (p.a(), p.b());
    let n = nu as f64;
    let re = |x: f64| ComplexValue::new(x, 0.0);
    let gammas = gamma_ratio(
        &[re(n + 1.0), re(b + a - n - 0.5)],
        &[re(b - a + n - 0.5), re(2.0 * a - n + 1.0)],
    )?
    .re;
    let inner = gammas * (2.0 * a - 2.0 * n) * (b + a - n + 0.5) / (b - a + n + 0.5);
    Ok(-(2f64).powf(a + 2.0) * b * inner.sqrt())
}

pub fn bound_states(p: &PotentialParams) -> Result<Vec<BoundState>> {
    (0..=nu_max(p))
        .map(|nu| {
            Ok(BoundState {
                nu,
                energy: energy(p, nu)?,
                norm_const: norm_const(p, nu)?,
            })
        })
        .collect()
}

pub(crate) fn ln_cosh(x: f64) -> f64 {
    let x = x.abs();
    x + (-2.0 * x).exp().ln_1p() - std::f64::consts::LN_2
}

fn ln_sinh(x: f64) -> f64 {
    if x > 1.0 {
        x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
    } else {
        x.sinh().ln()
    }
}

/// `ln[(cosh r - 1)^{(B-A)/2} (cosh r + 1)^{-(B+A)/2} / (2B cosh r - 2A - 1)]`.
pub(crate) fn log_envelope(p: &PotentialParams, r: f64) -> f64 {
    let (a, b) = (p.a(), p.b());
    let ln2 = std::f64::consts::LN_2;
    let ln_cm1 = ln2 + 2.0 * ln_sinh(0.5 * r);
    let ln_cp1 = ln2 + 2.0 * ln_cosh(0.5 * r);
    let sech = 1.0 / r.cosh();
    let ln_den = ln_cosh(r) + (2.0 * b - (2.0 * a + 1.0) * sech).ln();
    0.5 * (b - a) * ln_cm1 - 0.5 * (b + a) * ln_cp1 - ln_den
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "radius (need r > 0)",
            value: r,
        })
    }
}

fn unnormalized(p: &PotentialParams, nu: usize, r: f64) -> Result<f64> {
    let jp = p.jacobi_params();
    let sech = 1.0 / r.cosh();
    let poly = x1_jacobi_scaled(nu + 1, &jp, sech)?;
    let log_mag = log_envelope(p, r) + (nu as f64 + 1.0) * ln_cosh(r);
    Ok(poly * log_mag.exp())
}

/// `ψ_ν(r)`. With `normalized` set the function is scaled by the quadrature
/// normalization on [`default_quadrature_grid`]; callers evaluating many
/// points should compute [`quadrature_norm`] once instead.
pub fn eigenfunction(p: &PotentialParams, nu: usize, r: f64, normalized: bool) -> Result<f64> {
    check_nu(p, nu)?;
    check_r(r)?;
    let psi = unnormalized(p, nu, r)?;
    if normalized {
        Ok(psi * quadrature_norm(p, nu, &default_quadrature_grid(p)?)?)
    } else {
        Ok(psi)
    }
}

/// `[1e-4, 40/(A - ν_max)]` with step `2e-3`.
pub fn default_quadrature_grid(p: &PotentialParams) -> Result<RadialGrid> {
    let kappa_min = p.a() - nu_max(p) as f64;
    RadialGrid::with_step(QUADRATURE_INNER_RADIUS, 40.0 / kappa_min, QUADRATURE_STEP)
}

fn sample(p: &PotentialParams, nu: usize, grid: &RadialGrid) -> Result<Vec<f64>> {
    grid.points()
        .into_iter()
        .map(|r| unnormalized(p, nu, r))
        .collect()
}

/// `1/√(∫ ψ̃_ν² dr)` by composite Simpson on `grid`, `ψ̃` unnormalized.
pub fn quadrature_norm(p: &PotentialParams, nu: usize, grid: &RadialGrid) -> Result<f64> {
    check_nu(p, nu)?;
    let values: Vec<f64> = sample(p, nu, grid)?.iter().map(|v| v * v).collect();
    Ok(1.0 / grid.simpson(&values).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalityReport {
    /// `G[μ][ν] = ∫ ψ_μ ψ_ν dr` with quadrature-normalized states.
    pub matrix: Vec<Vec<f64>>,
    /// `max |G - I|`.
    pub max_deviation: f64,
    /// Largest change in `G` when the step is doubled.
    pub resolution_estimate: f64,
    pub resolution_warning: bool,
}

fn gram(samples: &[Vec<f64>], stride: usize, h: f64) -> Vec<Vec<f64>> {
    let thin: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| s.iter().step_by(stride).copied().collect())
        .collect();
    let dot = |x: &[f64], y: &[f64]| {
        let prod: Vec<f64> = x.iter().zip(y).map(|(u, v)| u * v).collect();
        crate::grid::simpson_uniform(&prod, h * stride as f64)
    };
    let norms: Vec<f64> = thin.iter().map(|s| dot(s, s).sqrt()).collect();
    (0..thin.len())
        .map(|i| {
            (0..thin.len())
                .map(|j| dot(&thin[i], &thin[j]) / (norms[i] * norms[j]))
                .collect()
        })
        .collect()
}

pub fn orthonormality_matrix(
    p: &PotentialParams,
    grid: &RadialGrid,
    exec: Execution,
) -> Result<OrthonormalityReport> {
    let states: Vec<usize> = (0..=nu_max(p)).collect();
    let samples = exec::try_map(exec, &states, |&nu| sample(p, nu, grid))?;
    let matrix = gram(&samples, 1, grid.step());
    let coarse = gram(&samples, 2, grid.step());
    let mut max_deviation: f64 = 0.0;
    let mut resolution_estimate: f64 = 0.0;
    for (i, row) in matrix.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            max_deviation = max_deviation.max((g - target).abs());
            resolution_estimate = resolution_estimate.max((g - coarse[i][j]).abs());
        }
    }
    Ok(OrthonormalityReport {
        matrix,
        max_deviation,
        resolution_estimate,
        resolution_warning: resolution_estimate > RESOLUTION_WARNING,
    })
}

/// `max |−ψ'' + V_ext ψ − E_ν ψ| / max |ψ|` over grid points with
/// `r ≥ RESIDUAL_INNER_RADIUS`, `ψ''` from the five-point stencil with step
/// [`STENCIL_STEP`].
pub fn schrodinger_residual(p: &PotentialParams, nu: usize, grid: &RadialGrid) -> Result<f64> {
    let e = energy(p, nu)?;
    let h = STENCIL_STEP;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for r in grid.points() {
        if r < RESIDUAL_INNER_RADIUS.max(2.0 * h) {
            continue;
        }
        let f = |x: f64| unnormalized(p, nu, x);
        let psi = f(r)?;
        let d2 = (-f(r + 2.0 * h)? + 16.0 * f(r + h)? - 30.0 * psi + 16.0 * f(r - h)?
            - f(r - 2.0 * h)?)
            / (12.0 * h * h);
        let v = v_from_w(PotentialKind::Extended, p, r)?;
        worst = worst.max((-d2 + (v - e) * psi).abs());
        scale = scale.max(psi.abs());
    }
    if scale == 0.0 {
        return Err(Error::InvalidGrid(
            "no grid points beyond the residual inner radius".into(),
        ));
    }
    Ok(worst / scale)
}

/// Sign changes of `ψ_ν` across the grid; exact zeros are skipped.
pub fn node_count(p: &PotentialParams, nu: usize, grid: &RadialGrid) -> Result<usize> {
    check_nu(p, nu)?;
    Ok(count_sign_changes(&sample(p, nu, grid)?))
}

pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut changes = 0;
    for &v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationAudit {
    pub nu: usize,
    pub analytic: f64,
    pub quadrature: f64,
    /// `analytic / quadrature` on the given grid.
    pub ratio: f64,
    /// The same ratio on the grid with the step halved.
    pub refined_ratio: f64,
}

/// Closed-form `N_ν` against quadrature, on `grid` and on `grid.refined()`.
pub fn normalization_audit(
    p: &PotentialParams,
    grid: &RadialGrid,
    exec: Execution,
) -> Result<Vec<NormalizationAudit>> {
    let states: Vec<usize> = (0..=nu_max(p)).collect();
    let fine = grid.refined();
    exec::try_map(exec, &states, |&nu| {
        let analytic = norm_const(p, nu)?;
        let quadrature = quadrature_norm(p, nu, grid)?;
        let refined = quadrature_norm(p, nu, &fine)?;
        Ok(NormalizationAudit {
            nu,
            analytic,
            quadrature,
            ratio: analytic / quadrature,
            refined_ratio: analytic / refined,
        })
    })
}
