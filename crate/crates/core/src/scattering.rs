//! Continuum states and the l = 0 S-matrix of the extended potential.
//!
//! Scattering states come from the bound-state construction with the degree
//! continued to `ν = A + ik`, so `E = A² + k²`. Only the hypergeometric
//! branch regular at the origin is kept, with `C₁ = N_k = 1`.
//!
//! As `r → ∞`, `ψ_k ∝ S e^{ikr} - e^{-ikr}` with
//!
//! ```text
//! S = b P (1 - 2ik) 2^{-4ik} / (a P (2ik - 1) + Q c)
//!   = -Γ(2ik) Γ(-A-ik) Γ(B-ik+1/2) 2^{-4ik} / [Γ(-A+ik) Γ(-2ik) Γ(B+ik+1/2)]
//!     · [B² - (ik-1/2)²] / [B² - (ik+1/2)²]
//! ```
//!
//! where `P, Q, a, b, c` are the gamma expressions in [`MatchCoefficients`].
//! The overall minus sign in the gamma form is easy to lose; the
//! reduction `Qc = aP (1-2ik)(2ik)/[B² - (ik-1/2)²]` makes it explicit.
//! [`s_matrix_printed`] keeps the sign-dropped variant so the discrepancy
//! can be measured.

use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::potential::{PotentialKind, PotentialParams};
use crate::specfun::{gamma_ratio, hyp2f1, ComplexValue};
use crate::spectrum::{self, log_envelope};

type C = ComplexValue;

/// Smallest wavenumber accepted by the closed forms; `Γ(±2ik)` has a pole at `k = 0`.
pub const K_MIN: f64 = 1e-3;
/// Offset from `k = i(A - ν)` at which pole probes evaluate `|S|`.
pub const POLE_PROBE_OFFSET: f64 = 1e-7;
/// `|S|` above this at the probe point counts as a bound-state pole.
pub const POLE_MAGNITUDE: f64 = 1e6;
/// Smallest `r_probe` accepted by [`asymptotic_residual`].
pub const ASYMPTOTIC_MIN_RADIUS: f64 = 15.0;
const FIT_SAMPLES: usize = 64;

fn i() -> C {
    C::new(0.0, 1.0)
}

fn re(x: f64) -> C {
    C::new(x, 0.0)
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k > K_MIN {
        Ok(())
    } else {
        Err(Error::BelowThreshold { k, k_min: K_MIN })
    }
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

/// Jacobi function of complex degree `ν = A + ik + degree_shift`,
/// `Γ(ν+α+1)/(Γ(ν+1) Γ(1+α)) · F(ν+α+β+1, -ν; 1+α; (1 - cosh r)/2)`.
///
/// `degree_shift` must be `0` or `-1`; `k` may be any real number.
pub fn complexified_jacobi(p: &PotentialParams, k: f64, degree_shift: i32, r: f64) -> Result<C> {
    if degree_shift != 0 && degree_shift != -1 {
        return Err(Error::Domain {
            what: "degree shift (need 0 or -1)",
            value: degree_shift as f64,
        });
    }
    check_r(r)?;
    let jp = p.jacobi_params();
    let (alpha, beta) = (jp.alpha(), jp.beta());
    let nu = C::new(p.a() + degree_shift as f64, k);
    let prefactor = gamma_ratio(&[nu + alpha + 1.0], &[nu + 1.0, re(1.0 + alpha)])?;
    let z = -(0.5 * r).sinh().powi(2);
    Ok(prefactor * hyp2f1(nu + alpha + beta + 1.0, -nu, re(1.0 + alpha), z)?)
}

/// Regular scattering solution at `E = A² + k²`: the eigenfunction envelope
/// times the X₁ combination
/// `[((b - x)(α+β+2ν) + 2b) P_ν(x) - 2 P_{ν-1}(x)] / (2(α+β+2ν))`,
/// `x = cosh r`, `ν = A + ik`, `α+β+2ν = 2ik - 1`, `b = (2A+1)/(2B)`.
pub fn scattering_wavefunction(p: &PotentialParams, k: f64, r: f64) -> Result<C> {
    check_k(k)?;
    check_r(r)?;
    let jb = p.jacobi_params().jacobi_b();
    let x = r.cosh();
    let s = C::new(-1.0, 2.0 * k);
    let p_nu = complexified_jacobi(p, k, 0, r)?;
    let p_prev = complexified_jacobi(p, k, -1, r)?;
    let x1 = (((jb - x) * s + 2.0 * jb) * p_nu - 2.0 * p_prev) / (2.0 * s);
    let psi = x1 * log_envelope(p, r).exp();
    if !(psi.re.is_finite() && psi.im.is_finite()) {
        return Err(Error::Overflow("scattering wavefunction exceeds f64 range"));
    }
    Ok(psi)
}

/// Gamma-function coefficients of the large-`r` expansion. `coef_b` has
/// nothing to do with [`crate::specfun::JacobiParams::jacobi_b`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchCoefficients {
    pub coef_p: C,
    pub coef_q: C,
    pub coef_a: C,
    pub coef_b: C,
    pub coef_c: C,
    /// Multiplies the subleading `(x/2)^{A-1+ik}` term; unused by `S`.
    pub coef_d: C,
}

pub fn match_coefficients(p: &PotentialParams, k: f64) -> Result<MatchCoefficients> {
    check_k(k)?;
    let (a, b) = (p.a(), p.b());
    let ik = C::new(0.0, k);
    let c0 = re(b - a + 0.5);
    Ok(MatchCoefficients {
        coef_p: gamma_ratio(&[b + ik + 0.5], &[a + ik + 1.0, c0])?,
        coef_q: gamma_ratio(&[b + ik - 0.5], &[a + ik, c0])?,
        coef_a: gamma_ratio(&[c0, -2.0 * ik], &[-a - ik, b - ik + 0.5])?,
        coef_b: gamma_ratio(&[c0, 2.0 * ik], &[-a + ik, b + ik + 0.5])?,
        coef_c: gamma_ratio(&[c0, 2.0 - 2.0 * ik], &[1.0 - a - ik, b - ik + 1.5])?,
        coef_d: gamma_ratio(&[c0, 2.0 * ik - 2.0], &[-a + ik - 1.0, b + ik - 0.5])?,
    })
}

/// `Γ(2ik) Γ(-A-ik) Γ(B-ik+1/2) 2^{-4ik} / [Γ(-A+ik) Γ(-2ik) Γ(B+ik+1/2)]`
/// for complex `k`, without the leading minus sign.
fn gamma_factor(p: &PotentialParams, k: C) -> Result<C> {
    let (a, b) = (p.a(), p.b());
    let ik = i() * k;
    let ratio = gamma_ratio(
        &[2.0 * ik, -a - ik, b - ik + 0.5],
        &[-a + ik, -2.0 * ik, b + ik + 0.5],
    )?;
    Ok(ratio * (-4.0 * ik * LN_2).exp())
}

/// `[B² - (ik - 1/2)²] / [B² - (ik + 1/2)²]`, the extension's extra factor.
pub fn rational_factor(p: &PotentialParams, k: C) -> C {
    let b2 = p.b() * p.b();
    let ik = i() * k;
    let num = b2 - (ik - 0.5) * (ik - 0.5);
    let den = b2 - (ik + 0.5) * (ik + 0.5);
    num / den
}

/// Closed-form S-matrix continued to complex `k` (no threshold guard).
pub fn s_matrix_at(p: &PotentialParams, k: C) -> Result<C> {
    Ok(-gamma_factor(p, k)? * rational_factor(p, k))
}

/// GPT S-matrix continued to complex `k`.
pub fn s_matrix_gpt_at(p: &PotentialParams, k: C) -> Result<C> {
    Ok(-gamma_factor(p, k)?)
}

/// l = 0 S-matrix of the extended potential.
pub fn s_matrix(p: &PotentialParams, k: f64) -> Result<C> {
    check_k(k)?;
    s_matrix_at(p, re(k))
}

/// l = 0 S-matrix of the GPT potential; `s_matrix = s_matrix_gpt · rational_factor`.
pub fn s_matrix_gpt(p: &PotentialParams, k: f64) -> Result<C> {
    check_k(k)?;
    s_matrix_gpt_at(p, re(k))
}

pub fn s_matrix_for(kind: PotentialKind, p: &PotentialParams, k: f64) -> Result<C> {
    match kind {
        PotentialKind::Gpt => s_matrix_gpt(p, k),
        PotentialKind::Extended => s_matrix(p, k),
    }
}

/// The closed form with the overall sign dropped; equals `-s_matrix`.
pub fn s_matrix_printed(p: &PotentialParams, k: f64) -> Result<C> {
    check_k(k)?;
    Ok(gamma_factor(p, re(k))? * rational_factor(p, re(k)))
}

/// `S = b P (1 - 2ik) 2^{-4ik} / (a P (2ik - 1) + Q c)` from the matching coefficients.
pub fn s_matrix_from_asymptotics(p: &PotentialParams, k: f64) -> Result<C> {
    let m = match_coefficients(p, k)?;
    let two_ik = C::new(0.0, 2.0 * k);
    let phase = (-2.0 * two_ik * LN_2).exp();
    let num = m.coef_b * m.coef_p * (1.0 - two_ik) * phase;
    let den = m.coef_a * m.coef_p * (two_ik - 1.0) + m.coef_q * m.coef_c;
    Ok(num / den)
}

/// `δ = arg(S)/2` reduced to `(-π/2, π/2]`.
pub fn principal_phase(s: C) -> f64 {
    let delta = 0.5 * s.arg();
    if delta <= -0.5 * PI {
        delta + PI
    } else {
        delta
    }
}

pub fn phase_shift(p: &PotentialParams, k: f64) -> Result<f64> {
    Ok(principal_phase(s_matrix(p, k)?))
}

/// Continuous branch through a sequence of principal phases: each value is
/// moved by a multiple of `π` to the branch nearest its predecessor.
pub fn unwrap_phases(principal: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(principal.len());
    let mut prev: Option<f64> = None;
    for &d in principal {
        let v = match prev {
            None => d,
            Some(last) => d + ((last - d) / PI).round() * PI,
        };
        out.push(v);
        prev = Some(v);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPoint {
    pub k: f64,
    pub s_value: C,
    /// Principal value in `(-π/2, π/2]`.
    pub phase_shift: f64,
    /// `A² + k²`.
    pub energy: f64,
}

pub fn scattering_point(
    kind: PotentialKind,
    p: &PotentialParams,
    k: f64,
) -> Result<ScatteringPoint> {
    let s_value = s_matrix_for(kind, p, k)?;
    Ok(ScatteringPoint {
        k,
        s_value,
        phase_shift: principal_phase(s_value),
        energy: p.threshold() + k * k,
    })
}

pub fn smatrix_sweep(
    kind: PotentialKind,
    p: &PotentialParams,
    ks: &[f64],
    exec: Execution,
) -> Result<Vec<ScatteringPoint>> {
    exec::try_map(exec, ks, |&k| scattering_point(kind, p, k))
}

/// Unwrapped phase shifts along `ks` (taken in the given order).
pub fn phase_sweep(
    kind: PotentialKind,
    p: &PotentialParams,
    ks: &[f64],
    exec: Execution,
) -> Result<Vec<f64>> {
    let points = smatrix_sweep(kind, p, ks, exec)?;
    let principal: Vec<f64> = points.iter().map(|pt| pt.phase_shift).collect();
    Ok(unwrap_phases(&principal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleClass {
    Pole,
    Zero,
    Regular,
}

/// `|S|` at `k₀ + ε` and at `k₀ + ε/10`; a simple pole raises the
/// magnitude tenfold, a simple zero lowers it tenfold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleProbe {
    pub k0: C,
    pub magnitude: f64,
    pub growth: f64,
    pub class: PoleClass,
}

pub fn probe(p: &PotentialParams, k0: C) -> Result<PoleProbe> {
    let near = s_matrix_at(p, k0 + POLE_PROBE_OFFSET)?.norm();
    let nearer = s_matrix_at(p, k0 + 0.1 * POLE_PROBE_OFFSET)?.norm();
    let growth = nearer / near;
    let class = if growth > 3.0 {
        PoleClass::Pole
    } else if growth < 1.0 / 3.0 {
        PoleClass::Zero
    } else {
        PoleClass::Regular
    };
    Ok(PoleProbe {
        k0,
        magnitude: near,
        growth,
        class,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundStatePole {
    pub nu: usize,
    /// `i(A - ν)`.
    pub k_pole: C,
    /// `A² + k_pole²`.
    pub energy: f64,
    /// `|S(k_pole + POLE_PROBE_OFFSET)|`.
    pub probe_magnitude: f64,
    pub class: PoleClass,
}

impl BoundStatePole {
    pub fn confirmed(&self) -> bool {
        self.probe_magnitude > POLE_MAGNITUDE && self.class == PoleClass::Pole
    }
}

/// Poles of `S` on the positive imaginary axis from `Γ(-A-ik)`, one per bound state.
pub fn pole_map(p: &PotentialParams) -> Result<Vec<BoundStatePole>> {
    (0..=spectrum::nu_max(p))
        .map(|nu| {
            let k_pole = C::new(0.0, p.a() - nu as f64);
            let pr = probe(p, k_pole)?;
            Ok(BoundStatePole {
                nu,
                k_pole,
                energy: p.threshold() + (k_pole * k_pole).re,
                probe_magnitude: pr.magnitude,
                class: pr.class,
            })
        })
        .collect()
}

/// Probes at `k = i(A - ν)` for the first two `ν > ν_max` and at the zero of
/// the rational factor's denominator, `ik = B - 1/2`.
pub fn off_spectrum_probes(p: &PotentialParams) -> Result<Vec<(String, PoleProbe)>> {
    let top = spectrum::nu_max(p);
    let mut out = Vec::new();
    for nu in top + 1..=top + 2 {
        let k0 = C::new(0.0, p.a() - nu as f64);
        out.push((format!("k = i(A - {nu})"), probe(p, k0)?));
    }
    out.push((
        "k = -i(B - 1/2)".to_string(),
        probe(p, C::new(0.0, -(p.b() - 0.5)))?,
    ));
    Ok(out)
}

/// Relative least-squares residual of fitting `ψ_k` on
/// `[r_probe, r_probe + 2π/k]` to `c [S e^{ikr} - e^{-ikr}]`.
pub fn asymptotic_residual(p: &PotentialParams, k: f64, r_probe: f64) -> Result<f64> {
    asymptotic_residual_with(p, k, r_probe, FIT_SAMPLES)
}

pub fn asymptotic_residual_with(
    p: &PotentialParams,
    k: f64,
    r_probe: f64,
    samples: usize,
) -> Result<f64> {
    if !(r_probe >= ASYMPTOTIC_MIN_RADIUS) {
        return Err(Error::Domain {
            what: "asymptotic probe radius (need r >= 15)",
            value: r_probe,
        });
    }
    if samples < 8 {
        return Err(Error::IllConditionedFit { samples });
    }
    let s = s_matrix(p, k)?;
    let width = 2.0 * PI / k;
    let mut psi = Vec::with_capacity(samples);
    let mut basis = Vec::with_capacity(samples);
    for j in 0..samples {
        let r = r_probe + width * j as f64 / (samples - 1) as f64;
        psi.push(scattering_wavefunction(p, k, r)?);
        basis.push(s * (i() * k * r).exp() - (-i() * k * r).exp());
    }
    let num: C = basis.iter().zip(&psi).map(|(u, v)| u.conj() * v).sum();
    let den: f64 = basis.iter().map(|u| u.norm_sqr()).sum();
    let scale = num / den;
    let err: f64 = basis
        .iter()
        .zip(&psi)
        .map(|(u, v)| (v - scale * u).norm_sqr())
        .sum();
    let total: f64 = psi.iter().map(|v| v.norm_sqr()).sum();
    Ok((err / total).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64) -> PotentialParams {
        PotentialParams::new(a, b).unwrap()
    }

    fn close(x: C, re: f64, im: f64, tol: f64) -> bool {
        (x - C::new(re, im)).norm() <= tol * (1.0 + C::new(re, im).norm())
    }

    #[test]
    fn threshold_guard() {
        let p = params(2.5, 4.0);
        assert!(matches!(
            s_matrix(&p, 1e-3),
            Err(Error::BelowThreshold { .. })
        ));
        assert!(s_matrix(&p, 0.0).is_err());
        assert!(s_matrix(&p, f64::NAN).is_err());
        assert!(s_matrix(&p, 2e-3).is_ok());
    }

    #[test]
    fn coefficient_reference_values() {
        // 40-digit evaluations of the gamma expressions at A = 2.5, B = 4, k = 1
        let m = match_coefficients(&params(2.5, 4.0), 1.0).unwrap();
        assert!(close(m.coef_p, 3.5, 1.0, 1e-13));
        assert!(close(m.coef_q, 2.5, 1.0, 1e-13));
        assert!(close(
            m.coef_a,
            0.053_017_032_581_643_14,
            0.056_723_137_104_197_59,
            1e-13
        ));
        assert!(close(
            m.coef_b,
            0.053_017_032_581_643_14,
            -0.056_723_137_104_197_59,
            1e-13
        ));
        assert!(close(
            m.coef_c,
            0.012_163_706_058_306_378,
            0.025_191_771_548_037_867,
            1e-13
        ));
        assert!(close(
            m.coef_d,
            -0.077_613_450_909_254_12,
            -0.142_950_430_587_546_64,
            1e-13
        ));
    }

    #[test]
    fn p_over_q_recurrence() {
        let p = params(1.2, 3.7);
        let k = 0.8;
        let m = match_coefficients(&p, k).unwrap();
        let expect = C::new(3.7 - 0.5, k) / C::new(1.2, k);
        assert!((m.coef_p / m.coef_q - expect).norm() < 1e-13);
    }

    #[test]
    fn complexified_jacobi_reference_values() {
        let p = params(2.5, 4.0);
        let v0 = complexified_jacobi(&p, 1.0, 0, 2.0).unwrap();
        let v1 = complexified_jacobi(&p, 1.0, -1, 2.0).unwrap();
        assert!(close(
            v0,
            -2.657_051_440_447_964,
            -0.759_157_554_413_704,
            1e-12
        ));
        assert!(close(
            v1,
            -3.841_859_034_059_466_5,
            0.826_898_887_134_580_4,
            1e-12
        ));
        assert!(complexified_jacobi(&p, 1.0, 1, 2.0).is_err());
    }

    #[test]
    fn complexified_jacobi_near_origin_is_prefactor() {
        let p = params(2.5, 4.0);
        let k = 0.7;
        let near = complexified_jacobi(&p, k, 0, 1e-7).unwrap();
        let pref = gamma_ratio(&[C::new(4.5, k)], &[C::new(3.5, k), re(2.0)]).unwrap();
        assert!((near - pref).norm() < 1e-12 * pref.norm());
        // real at k = 0
        let at_zero = complexified_jacobi(&p, 0.0, 0, 1.3).unwrap();
        assert!(at_zero.im.abs() < 1e-14 * at_zero.re.abs());
    }

    #[test]
    fn gpt_reference_value() {
        // sign-dropped closed form at A = 2.5, B = 4, k = 1, 40 digits
        let printed = -s_matrix_gpt(&params(2.5, 4.0), 1.0).unwrap();
        assert!(close(
            printed,
            -0.296_939_824_897_091_2,
            0.954_896_193_515_339_6,
            1e-13
        ));
    }

    #[test]
    fn printed_form_is_negated() {
        let p = params(2.5, 4.0);
        for k in [0.2, 1.0, 3.3] {
            let ratio = s_matrix_printed(&p, k).unwrap() / s_matrix(&p, k).unwrap();
            assert!((ratio + 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn phase_conventions() {
        assert_eq!(principal_phase(C::new(1.0, 0.0)), 0.0);
        assert!((principal_phase(C::new(-1.0, 0.0)) - PI / 2.0).abs() < 1e-15);
        assert!((principal_phase(C::new(-1.0, -0.0)) - PI / 2.0).abs() < 1e-15);
        let unwrapped = unwrap_phases(&[1.4, 1.55, -1.5, -1.3, 1.5]);
        let expect = [1.4, 1.55, PI - 1.5, PI - 1.3, 1.5 + 0.0];
        for (u, e) in unwrapped.iter().zip(expect) {
            assert!((u - e).abs() < 1e-12, "{unwrapped:?}");
        }
    }

    #[test]
    fn fit_needs_samples_and_asymptotic_radius() {
        let p = params(2.5, 4.0);
        assert!(matches!(
            asymptotic_residual_with(&p, 1.0, 20.0, 7),
            Err(Error::IllConditionedFit { samples: 7 })
        ));
        assert!(asymptotic_residual(&p, 1.0, 10.0).is_err());
    }
}
