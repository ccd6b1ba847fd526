//! End-to-end self-check of one parameter set: every closed form against
//! its independent oracle.

use std::fmt;

use crate::error::Result;
use crate::exec::{self, Execution};
use crate::grid::RadialGrid;
use crate::oracle::{self, connection_formula_check};
use crate::potential::{
    printed_form_residual, susy_residual, CschReading, PotentialKind, PotentialParams,
};
use crate::scattering::{self, principal_phase, POLE_MAGNITUDE};
use crate::specfun::ComplexValue;
use crate::spectrum;

/// `(A, B)` sets checked when no parameters are given.
pub const FIXTURES: [(f64, f64); 3] = [(2.5, 4.0), (0.5, 2.0), (1.2, 3.7)];
/// Wavenumbers at which closed-form and Numerov phase shifts are compared.
pub const REFERENCE_WAVENUMBERS: [f64; 6] = [0.1, 0.3, 1.0, 1.7, 3.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl CheckLine {
    pub fn at_most(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Self {
            name,
            measured,
            tolerance,
            bound: Bound::AtMost,
            passed: measured <= tolerance,
        }
    }

    pub fn at_least(name: &'static str, measured: f64, tolerance: f64) -> Self {
        Self {
            name,
            measured,
            tolerance,
            bound: Bound::AtLeast,
            passed: measured >= tolerance,
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        write!(
            f,
            "{status} {:<28} {:.3e} {op} {:.1e}",
            self.name, self.measured, self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub params: PotentialParams,
    pub checks: Vec<CheckLine>,
    /// Observations that are reported but not pass/fail.
    pub findings: Vec<String>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.params)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        for note in &self.findings {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// Phase difference reduced modulo `π`, since `S` fixes `δ` only up to that.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::PI);
    d.min(std::f64::consts::PI - d)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        if v.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(v)
        }
    })
}

pub fn verify(p: &PotentialParams, exec: Execution) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let mut findings = Vec::new();

    let v_grid = RadialGrid::new(0.1, 20.0, 2000)?;
    let mut squared = 0.0f64;
    let mut literal = 0.0f64;
    for kind in PotentialKind::ALL {
        squared = squared.max(printed_form_residual(
            kind,
            p,
            &v_grid,
            CschReading::Squared,
        )?);
        literal = literal.max(printed_form_residual(
            kind,
            p,
            &v_grid,
            CschReading::Literal,
        )?);
    }
    checks.push(CheckLine::at_most("potential = W^2 - W'", squared, 1e-10));
    findings.push(format!(
        "single-csch reading of the GPT strength term is off by up to {literal:.3e}"
    ));

    let fd_grid = RadialGrid::with_step(0.5, 20.0, 1e-4)?;
    let fd = max_of(
        PotentialKind::ALL
            .iter()
            .map(|&kind| susy_residual(kind, p, &fd_grid))
            .collect::<Result<Vec<_>>>()?,
    );
    checks.push(CheckLine::at_most("finite-difference W'", fd, 1e-6));

    let states = spectrum::bound_states(p)?;
    let top = states.last().map_or(0.0, |s| s.energy);
    let e_max = 0.5 * (top + p.threshold());
    let mut iso = 0.0f64;
    for kind in PotentialKind::ALL {
        let shot = oracle::shoot_spectrum(kind, p, e_max, exec)?;
        if shot.len() != states.len() {
            iso = f64::INFINITY;
            continue;
        }
        for (e, s) in shot.iter().zip(&states) {
            iso = iso.max((e - s.energy).abs());
        }
    }
    checks.push(CheckLine::at_most("shooting spectrum", iso, 1e-6));

    let ks = REFERENCE_WAVENUMBERS;
    let mut phase_err = 0.0f64;
    for kind in PotentialKind::ALL {
        let numeric = oracle::numerov_s_sweep(kind, p, &ks, exec)?;
        for (&k, s_num) in ks.iter().zip(numeric) {
            let s = scattering::s_matrix_for(kind, p, k)?;
            phase_err = phase_err.max(phase_distance(principal_phase(s), principal_phase(s_num)));
        }
    }
    checks.push(CheckLine::at_most(
        "phase shift vs Numerov",
        phase_err,
        1e-4,
    ));

    let mut unitarity = 0.0f64;
    let mut asym = 0.0f64;
    for &k in &ks {
        let s = scattering::s_matrix(p, k)?;
        unitarity = unitarity
            .max((s.norm() - 1.0).abs())
            .max((scattering::s_matrix_gpt(p, k)?.norm() - 1.0).abs());
        let from_asym = scattering::s_matrix_from_asymptotics(p, k)?;
        asym = asym.max((from_asym - s).norm() / s.norm());
    }
    checks.push(CheckLine::at_most("|S| = 1", unitarity, 1e-10));
    checks.push(CheckLine::at_most(
        "S from matching coefficients",
        asym,
        1e-10,
    ));
    let sign = scattering::s_matrix_printed(p, 1.0)? / scattering::s_matrix(p, 1.0)?;
    findings.push(format!(
        "sign-dropped gamma form / matched S at k = 1: {:.12} {:+.1e}i",
        sign.re, sign.im
    ));

    let jp = p.jacobi_params();
    let mut connection = 0.0f64;
    for &k in &[0.3, 1.7] {
        let nu = ComplexValue::new(p.a(), k);
        let a = nu + jp.alpha() + jp.beta() + 1.0;
        let b = -nu;
        let c = ComplexValue::new(1.0 + jp.alpha(), 0.0);
        for r in [0.5, 2.0, 5.0, 10.0, 20.0] {
            let z = -(0.5f64 * r).sinh().powi(2);
            connection = connection.max(connection_formula_check(a, b, c, z)?);
        }
    }
    checks.push(CheckLine::at_most(
        "hypergeometric connection",
        connection,
        1e-8,
    ));

    let fits = exec::try_map(exec, &[1.0, 1.7, 3.0], |&k| {
        scattering::asymptotic_residual(p, k, 20.0)
    })?;
    checks.push(CheckLine::at_most(
        "asymptotic form at r = 20",
        max_of(fits),
        1e-5,
    ));

    let poles = scattering::pole_map(p)?;
    let weakest = poles
        .iter()
        .map(|pl| {
            if pl.confirmed() {
                pl.probe_magnitude
            } else {
                0.0
            }
        })
        .fold(f64::INFINITY, f64::min);
    checks.push(CheckLine::at_least(
        "bound-state poles |S|",
        weakest,
        POLE_MAGNITUDE,
    ));
    let pole_energy = max_of(
        poles
            .iter()
            .zip(&states)
            .map(|(pl, s)| (pl.energy - s.energy).abs()),
    );
    checks.push(CheckLine::at_most("pole energies", pole_energy, 0.0));

    let residual_grid = RadialGrid::new(spectrum::RESIDUAL_INNER_RADIUS, 20.0, 2000)?;
    let residual = max_of(
        (0..=spectrum::nu_max(p))
            .map(|nu| spectrum::schrodinger_residual(p, nu, &residual_grid))
            .collect::<Result<Vec<_>>>()?,
    );
    checks.push(CheckLine::at_most("eigenfunction residual", residual, 1e-5));

    let quad_grid = spectrum::default_quadrature_grid(p)?;
    let ortho = spectrum::orthonormality_matrix(p, &quad_grid, exec)?;
    checks.push(CheckLine::at_most(
        "orthonormality",
        ortho.max_deviation,
        1e-8,
    ));

    let audit = spectrum::normalization_audit(p, &quad_grid, exec)?;
    let drift = max_of(
        audit
            .iter()
            .map(|a| ((a.ratio - a.refined_ratio) / a.ratio).abs()),
    );
    checks.push(CheckLine::at_most("normalization ratio drift", drift, 1e-8));
    for a in &audit {
        findings.push(format!(
            "closed-form / quadrature normalization, nu = {}: {:.10}",
            a.nu, a.ratio
        ));
    }

    Ok(VerificationReport {
        params: *p,
        checks,
        findings,
    })
}
