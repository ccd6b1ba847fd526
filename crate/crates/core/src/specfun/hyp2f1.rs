//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z ≤ 0`.
//!
//! Region map:
//! * `a` or `b` a non-positive integer: the terminating sum, any `z`.
//! * `-1/2 ≤ z ≤ 0`: the power series directly.
//! * `-2 ≤ z < -1/2`: Pfaff, `(1-z)^{-a} F(a, c-b; c; z/(z-1))`, argument in `(1/3, 2/3]`.
//! * `z < -2`: the `1/z` connection formula, argument in `[-1/2, 0)`.
//!
//! The `1/z` formula degenerates when `a - b` is an integer; close to that
//! case the Pfaff series is summed instead, which converges only for
//! moderate `|z|`.

use num_complex::Complex64;

use super::gamma::{gamma_ratio_with, pole_index, PolePolicy};
use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 10_000;
const TERM_TOLERANCE: f64 = 1e-16;
const SETTLED_TERMS: usize = 3;
const DEGENERATE_GAP: f64 = 1e-5;

type C = Complex64;

pub fn hyp2f1(a: C, b: C, c: C, z: f64) -> Result<C> {
    if !z.is_finite() || z > 0.0 {
        return Err(Error::Domain {
            what: "hyp2f1 argument (need z <= 0)",
            value: z,
        });
    }
    if pole_index(c).is_some() {
        return Err(Error::ParameterPole { re: c.re, im: c.im });
    }
    if z == 0.0 {
        return Ok(C::new(1.0, 0.0));
    }
    if let Some(n) = pole_index(a).or_else(|| pole_index(b)) {
        return Ok(terminating_sum(a, b, c, z, n));
    }
    if z >= -0.5 {
        power_series(a, b, c, z)
    } else if z >= -2.0 || near_integer(a - b) {
        pfaff(a, b, c, z)
    } else {
        inverse_argument(a, b, c, z)
    }
}

/// Plain Maclaurin series in `z`, valid for `|z| < 1` (real `z` of either sign).
pub fn hyp2f1_power_series(a: C, b: C, c: C, z: f64) -> Result<C> {
    if !(z.abs() < 1.0) {
        return Err(Error::Domain {
            what: "power series argument (need |z| < 1)",
            value: z,
        });
    }
    if pole_index(c).is_some() {
        return Err(Error::ParameterPole { re: c.re, im: c.im });
    }
    power_series(a, b, c, z)
}

fn near_integer(x: C) -> bool {
    x.im.abs() < DEGENERATE_GAP && (x.re - x.re.round()).abs() < DEGENERATE_GAP
}

fn terminating_sum(a: C, b: C, c: C, z: f64, n: u64) -> C {
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    for j in 0..n {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * z;
        sum += term;
    }
    sum
}

fn power_series(a: C, b: C, c: C, z: f64) -> Result<C> {
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    let mut settled = 0;
    for j in 0..MAX_TERMS {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * z;
        if term == C::new(0.0, 0.0) {
            return Ok(sum);
        }
        sum += term;
        if term.norm() <= TERM_TOLERANCE * sum.norm() {
            settled += 1;
            if settled == SETTLED_TERMS {
                return Ok(sum);
            }
        } else {
            settled = 0;
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_TERMS,
    })
}

fn pfaff(a: C, b: C, c: C, z: f64) -> Result<C> {
    let w = z / (z - 1.0);
    let prefactor = (-a * (1.0 - z).ln()).exp();
    Ok(prefactor * power_series(a, c - b, c, w)?)
}

fn inverse_argument(a: C, b: C, c: C, z: f64) -> Result<C> {
    let log_mz = (-z).ln();
    let t = 1.0 / z;
    let one = C::new(1.0, 0.0);
    let mut total = C::new(0.0, 0.0);
    for (p, q) in [(a, b), (b, a)] {
        let coeff = gamma_ratio_with(&[c, q - p], &[q, c - p], PolePolicy::Cancel)?;
        if coeff == C::new(0.0, 0.0) {
            continue;
        }
        let series = power_series(p, p - c + one, p - q + one, t)?;
        total += coeff * (-p * log_mz).exp() * series;
    }
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(Error::Overflow("hyp2f1 value exceeds f64 range"));
    }
    Ok(total)
}
