//! Superpotentials and potentials on the half-line, `ħ = 2m = 1`.
//!
//! The generalized Pöschl-Teller superpotential is `W = A coth r - B csch r`.
//! The rational extension adds
//! `Δ(r) = 2B sinh r/(2B cosh r - 2A - 1) - 2B sinh r/(2B cosh r - 2A + 1)`,
//! which combines to `4B sinh r / (D₊ D₋)` with `D± = 2B cosh r - 2A ∓ 1`.
//! Both potentials are *defined* as `W² - W'` with the derivative taken in
//! closed form. The hand-simplified expressions are kept in
//! [`v_printed`] only to be audited against that definition.
//!
//! Hyperbolic functions are written through `tanh`, `sech` and `csch` so
//! nothing overflows for large `r`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::specfun::JacobiParams;

/// The pair `(A, B)` with `B > A + 1 > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    a: f64,
    b: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || !(a + 1.0 > 1.0) || !(b > a + 1.0) {
            return Err(Error::InvalidParams { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `α = B - A - 1/2`, `β = -B - A - 1/2`.
    pub fn jacobi_params(&self) -> JacobiParams {
        JacobiParams::new(self.b - self.a - 0.5, -self.b - self.a - 0.5)
            .expect("beta - alpha = -2B is never zero for valid params")
    }

    /// Asymptotic value of both potentials (the continuum threshold).
    pub fn threshold(&self) -> f64 {
        self.a * self.a
    }

    /// `lim_{r→0} r² V(r) = (B - A)(B - A - 1)` for both kinds.
    pub fn core_strength(&self) -> f64 {
        (self.b - self.a) * (self.b - self.a - 1.0)
    }
}

impl fmt::Display for PotentialParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A = {}, B = {}", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    Gpt,
    Extended,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 2] = [PotentialKind::Gpt, PotentialKind::Extended];

    pub fn name(self) -> &'static str {
        match self {
            PotentialKind::Gpt => "gpt",
            PotentialKind::Extended => "extended",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PotentialKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gpt" => Ok(PotentialKind::Gpt),
            "extended" | "ext" | "x1" => Ok(PotentialKind::Extended),
            other => Err(format!(
                "unknown potential kind '{other}' (expected gpt or extended)"
            )),
        }
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

#[derive(Clone, Copy)]
struct Hyperbolic {
    tanh: f64,
    sech: f64,
    csch: f64,
    coth: f64,
}

impl Hyperbolic {
    fn at(r: f64) -> Self {
        let tanh = r.tanh();
        let e = (-r).exp();
        let sech = 2.0 * e / (1.0 + e * e);
        let csch = 2.0 * e / (-(-2.0 * r).exp_m1());
        Self {
            tanh,
            sech,
            csch,
            coth: 1.0 / tanh,
        }
    }
}

/// `D± / cosh r = 2B - (2A ± 1) sech r`.
fn scaled_denominators(p: &PotentialParams, h: Hyperbolic) -> (f64, f64) {
    let two_b = 2.0 * p.b;
    (
        two_b - (2.0 * p.a + 1.0) * h.sech,
        two_b - (2.0 * p.a - 1.0) * h.sech,
    )
}

fn gpt_w(p: &PotentialParams, h: Hyperbolic) -> (f64, f64) {
    let w = p.a * h.coth - p.b * h.csch;
    let wp = -p.a * h.csch * h.csch + p.b * h.csch * h.coth;
    (w, wp)
}

fn delta_w(p: &PotentialParams, h: Hyperbolic) -> (f64, f64) {
    let (d_plus, d_minus) = scaled_denominators(p, h);
    let prod = d_plus * d_minus;
    let b = p.b;
    let delta = 4.0 * b * h.tanh * h.sech / prod;
    let delta_p = 4.0 * b * h.sech / prod
        - 32.0 * b * b * h.tanh * h.tanh * h.sech * (b - p.a * h.sech) / (prod * prod);
    (delta, delta_p)
}

/// `W_GPT(r) = A coth r - B csch r`.
pub fn w_gpt(p: &PotentialParams, r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(gpt_w(p, Hyperbolic::at(r)).0)
}

/// Extended superpotential `W_GPT + Δ`.
pub fn w_ext(p: &PotentialParams, r: f64) -> Result<f64> {
    check_r(r)?;
    let h = Hyperbolic::at(r);
    Ok(gpt_w(p, h).0 + delta_w(p, h).0)
}

pub fn w(kind: PotentialKind, p: &PotentialParams, r: f64) -> Result<f64> {
    match kind {
        PotentialKind::Gpt => w_gpt(p, r),
        PotentialKind::Extended => w_ext(p, r),
    }
}

/// `(W, W')` with the derivative in closed form.
pub fn w_and_derivative(kind: PotentialKind, p: &PotentialParams, r: f64) -> Result<(f64, f64)> {
    check_r(r)?;
    let h = Hyperbolic::at(r);
    let (w, wp) = gpt_w(p, h);
    Ok(match kind {
        PotentialKind::Gpt => (w, wp),
        PotentialKind::Extended => {
            let (d, dp) = delta_w(p, h);
            (w + d, wp + dp)
        }
    })
}

/// `V = W² - W'`.
pub fn v_from_w(kind: PotentialKind, p: &PotentialParams, r: f64) -> Result<f64> {
    let (w, wp) = w_and_derivative(kind, p, r)?;
    Ok(w * w - wp)
}

/// `V_ext - V_GPT = 2 W_GPT Δ + Δ² - Δ'`, evaluated without subtracting the
/// two potentials, so it keeps full relative precision where the
/// difference is exponentially small.
pub fn extension_term(p: &PotentialParams, r: f64) -> Result<f64> {
    check_r(r)?;
    let h = Hyperbolic::at(r);
    let (w, _) = gpt_w(p, h);
    let (d, dp) = delta_w(p, h);
    Ok(2.0 * w * d + d * d - dp)
}

/// The rational correction written as `2(2A+1)/D₊ - 2[4B² - (2A+1)²]/D₊²`.
pub fn extension_term_printed(p: &PotentialParams, r: f64) -> Result<f64> {
    check_r(r)?;
    let h = Hyperbolic::at(r);
    let (d_plus, _) = scaled_denominators(p, h);
    let q = 2.0 * p.a + 1.0;
    let inv = h.sech / d_plus;
    Ok(2.0 * q * inv - 2.0 * (4.0 * p.b * p.b - q * q) * inv * inv)
}

/// How the `[B² + A(A+1)]` term of the printed GPT potential is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CschReading {
    /// `[B² + A(A+1)] csch² r`, what `W² - W'` produces.
    Squared,
    /// `[B² + A(A+1)] csch r`, the typeset form.
    Literal,
}

/// Hand-simplified potential:
/// `A² + [B² + A(A+1)] csch² r - B(2A+1) csch r coth r`, plus
/// [`extension_term_printed`] for the extended kind.
pub fn v_printed(
    kind: PotentialKind,
    p: &PotentialParams,
    r: f64,
    reading: CschReading,
) -> Result<f64> {
    check_r(r)?;
    let h = Hyperbolic::at(r);
    let (a, b) = (p.a, p.b);
    let strength = b * b + a * (a + 1.0);
    let csch_term = match reading {
        CschReading::Squared => h.csch * h.csch,
        CschReading::Literal => h.csch,
    };
    let gpt = a * a + strength * csch_term - b * (2.0 * a + 1.0) * h.csch * h.coth;
    Ok(match kind {
        PotentialKind::Gpt => gpt,
        PotentialKind::Extended => gpt + extension_term_printed(p, r)?,
    })
}

/// `max_r |v_printed(r) - (W² - W')(r)|` over the grid.
pub fn printed_form_residual(
    kind: PotentialKind,
    p: &PotentialParams,
    grid: &RadialGrid,
    reading: CschReading,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for r in grid.points() {
        worst = worst.max((v_printed(kind, p, r, reading)? - v_from_w(kind, p, r)?).abs());
    }
    Ok(worst)
}

/// Finite-difference audit of `V = W² - W'`: the sup over the grid of
/// `|V(r) - [W(r)² - (W(r+h) - W(r-h))/(2h)]|` with `h` the grid step.
pub fn susy_residual(kind: PotentialKind, p: &PotentialParams, grid: &RadialGrid) -> Result<f64> {
    let h = grid.step();
    let mut worst: f64 = 0.0;
    for r in grid.points() {
        let wr = w(kind, p, r)?;
        let numeric = (w(kind, p, r + h)? - w(kind, p, r - h)?) / (2.0 * h);
        worst = worst.max((v_from_w(kind, p, r)? - (wr * wr - numeric)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64) -> PotentialParams {
        PotentialParams::new(a, b).unwrap()
    }

    #[test]
    fn parameter_constraint() {
        assert!(PotentialParams::new(2.5, 4.0).is_ok());
        assert!(PotentialParams::new(2.5, 3.5).is_err());
        assert!(PotentialParams::new(0.0, 3.0).is_err());
        assert!(PotentialParams::new(-0.5, 3.0).is_err());
        assert!(PotentialParams::new(f64::NAN, 3.0).is_err());
    }

    #[test]
    fn superpotential_values() {
        let p = params(2.5, 4.0);
        let expect = 2.5 / 1f64.tanh() - 4.0 / 1f64.sinh();
        assert!((w_gpt(&p, 1.0).unwrap() - expect).abs() < 1e-14);
        assert!((w_gpt(&p, 60.0).unwrap() - 2.5).abs() < 1e-14);
        assert!((w_ext(&p, 60.0).unwrap() - 2.5).abs() < 1e-14);
        let q = params(1.2, 3.7);
        let r = 0.01;
        assert!((w_gpt(&q, r).unwrap() * r - (1.2 - 3.7)).abs() < 1e-3);
        assert!(w_gpt(&p, 0.0).is_err());
        assert!(w_ext(&p, -1.0).is_err());
    }

    #[test]
    fn extended_superpotential_direct_form() {
        for (a, b, r) in [(2.5, 4.0, 1.0), (0.5, 2.0, 0.5)] {
            let p = params(a, b);
            let (s, c) = (f64::sinh(r), f64::cosh(r));
            let expect = a / r.tanh() - b / s + 2.0 * b * s / (2.0 * b * c - 2.0 * a - 1.0)
                - 2.0 * b * s / (2.0 * b * c - 2.0 * a + 1.0);
            assert!((w_ext(&p, r).unwrap() - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn gpt_potential_matches_squared_reading() {
        let p = params(2.5, 4.0);
        let r: f64 = 1.0;
        let csch = 1.0 / r.sinh();
        let expect = 6.25 + (16.0 + 2.5 * 3.5) * csch * csch - 4.0 * 6.0 * csch / r.tanh();
        assert!((v_from_w(PotentialKind::Gpt, &p, r).unwrap() - expect).abs() < 1e-13);
        assert!((v_from_w(PotentialKind::Gpt, &p, 80.0).unwrap() - 6.25).abs() < 1e-13);
    }

    #[test]
    fn extension_term_agrees_with_subtraction_at_moderate_r() {
        let p = params(2.5, 4.0);
        for r in [0.3, 1.0, 3.0] {
            let diff = v_from_w(PotentialKind::Extended, &p, r).unwrap()
                - v_from_w(PotentialKind::Gpt, &p, r).unwrap();
            assert!((diff - extension_term(&p, r).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn literal_reading_is_far_off() {
        let p = params(2.5, 4.0);
        let g = RadialGrid::new(0.1, 20.0, 200).unwrap();
        let lit = printed_form_residual(PotentialKind::Gpt, &p, &g, CschReading::Literal).unwrap();
        assert!(lit > 1.0);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("GPT".parse::<PotentialKind>().unwrap(), PotentialKind::Gpt);
        assert_eq!(
            "extended".parse::<PotentialKind>().unwrap(),
            PotentialKind::Extended
        );
        assert!("morse".parse::<PotentialKind>().is_err());
    }
}
