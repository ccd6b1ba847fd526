//! Complex log-gamma by Stirling's series with upward argument shifting.
//!
//! For `Re z < SHIFT_TARGET` the identity
//! `ln Γ(z) = ln Γ(z + n) - Σ_{j<n} Log(z + j)` moves the argument into the
//! asymptotic region. Every `Log` is principal and continuous off the cut
//! `(-∞, -j]`, so the sum reproduces the principal branch of `ln Γ` on
//! `C \ (-∞, 0]`. It also resolves arguments a hair away from a pole
//! exactly, because the small factor `z + j` enters through its own
//! logarithm instead of through `sin(πz)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Arguments within this distance of `0, -1, -2, ...` are treated as poles.
pub const POLE_TOLERANCE: f64 = 1e-12;

const SHIFT_TARGET: f64 = 15.0;
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

// B_{2n} / (2n (2n - 1)), n = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// How [`gamma_ratio_with`] treats arguments sitting on a pole of Γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolePolicy {
    /// Any pole is an error.
    #[default]
    Reject,
    /// Poles are resolved as the common limit `z_i = -n_i + ε`, `ε → 0`:
    /// equal pole counts cancel to the ratio of residues, surplus
    /// denominator poles give exactly zero, surplus numerator poles are
    /// still an error.
    Cancel,
}

/// Returns `Some(n)` when `z` lies within [`POLE_TOLERANCE`] of `-n`.
pub fn pole_index(z: Complex64) -> Option<u64> {
    if z.im.abs() >= POLE_TOLERANCE || z.re > 0.5 {
        return None;
    }
    let n = z.re.round();
    if (z.re - n).abs() < POLE_TOLERANCE && n <= 0.0 {
        Some((-n) as u64)
    } else {
        None
    }
}

/// Principal-branch `ln Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain {
            what: "log_gamma argument",
            value: z.re,
        });
    }
    if pole_index(z).is_some() {
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }
    Ok(log_gamma_unchecked(z))
}

fn log_gamma_unchecked(mut z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_TARGET {
        shift += z.ln();
        z += 1.0;
    }
    stirling(z) - shift
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

/// `Γ(z)` for arguments whose magnitude stays representable.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    gamma_ratio(&[z], &[])
}

/// `Π Γ(num) / Π Γ(den)` evaluated as one exponential of summed log-gammas,
/// so intermediate factors never overflow.
pub fn gamma_ratio(numerators: &[Complex64], denominators: &[Complex64]) -> Result<Complex64> {
    gamma_ratio_with(numerators, denominators, PolePolicy::Reject)
}

pub fn gamma_ratio_with(
    numerators: &[Complex64],
    denominators: &[Complex64],
    policy: PolePolicy,
) -> Result<Complex64> {
    let mut log_sum = Complex64::new(0.0, 0.0);
    let mut excess_poles: i64 = 0;
    for (args, sign) in [(numerators, 1.0), (denominators, -1.0)] {
        for &z in args {
            match pole_index(z) {
                None => log_sum += sign * log_gamma(z)?,
                Some(n) => {
                    if policy == PolePolicy::Reject {
                        return Err(Error::GammaPole { re: z.re, im: z.im });
                    }
                    // Γ(-n + ε) ≈ (-1)^n / (n! ε)
                    let residue = Complex64::new(
                        -log_gamma_unchecked(Complex64::new(n as f64 + 1.0, 0.0)).re,
                        if n % 2 == 1 {
                            std::f64::consts::PI
                        } else {
                            0.0
                        },
                    );
                    log_sum += sign * residue;
                    excess_poles += sign as i64;
                }
            }
        }
    }
    if excess_poles > 0 {
        let z = numerators
            .iter()
            .copied()
            .find(|z| pole_index(*z).is_some())
            .unwrap_or_default();
        return Err(Error::GammaPole { re: z.re, im: z.im });
    }
    if excess_poles < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if log_sum.re > f64::MAX.ln() {
        return Err(Error::Overflow("gamma ratio magnitude exceeds f64 range"));
    }
    Ok(log_sum.exp())
}
