//! Classical Jacobi polynomials and the X₁ exceptional Jacobi family.
//!
//! The parameters used by the potentials here have `β < -1`, outside the
//! classical orthogonality range. The three-term recurrence is still an
//! identity between the polynomials, but its leading coefficient
//! `2n(n+α+β)(2n+α+β-2)` can vanish; at such a degree the polynomial is
//! taken from the explicit terminating hypergeometric sum instead.

use crate::error::{Error, Result};

const DEGENERATE_COEFF: f64 = 1e-10;

/// Parameters of the X₁ Jacobi family together with the derived constant
/// `jacobi_b = (β + α)/(β - α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
    jacobi_b: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if beta == alpha {
            return Err(Error::EqualJacobiParams(alpha));
        }
        Ok(Self {
            alpha,
            beta,
            jacobi_b: (beta + alpha) / (beta - alpha),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn jacobi_b(&self) -> f64 {
        self.jacobi_b
    }
}

struct Recurrence {
    alpha: f64,
    beta: f64,
}

impl Recurrence {
    /// `(c1, c2, c3, c4)` with `c1 P_n = (c2 x + c3) P_{n-1} - c4 P_{n-2}`.
    fn coefficients(&self, n: usize) -> (f64, f64, f64, f64) {
        let (a, b) = (self.alpha, self.beta);
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let c1 = 2.0 * nf * (nf + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * s * (s - 2.0);
        let c3 = (s - 1.0) * (a * a - b * b);
        let c4 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * s;
        (c1, c2, c3, c4)
    }

    fn is_degenerate(&self, c1: f64, n: usize) -> bool {
        let scale = (n as f64 + self.alpha.abs() + self.beta.abs() + 1.0).powi(3);
        c1.abs() < DEGENERATE_COEFF * scale
    }
}

/// Explicit sum `Σ_j (-n)_j (n+α+β+1)_j / j! · (α+j+1)_{n-j} / n! · ((1-x)/2)^j`,
/// free of divisions by `(α+1)_j`.
fn explicit_sum(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let y = 0.5 * (1.0 - x);
    let mut total = 0.0;
    let mut head = 1.0; // (-n)_j (n+α+β+1)_j / j!
    let mut y_pow = 1.0;
    for j in 0..=n {
        let jf = j as f64;
        if j > 0 {
            head *= (jf - 1.0 - n as f64) * (n as f64 + alpha + beta + jf) / jf;
            y_pow *= y;
        }
        let mut tail = 1.0; // (α+j+1)_{n-j} / n!
        for m in 0..(n - j) {
            tail *= alpha + jf + 1.0 + m as f64;
        }
        for m in 1..=n {
            tail /= m as f64;
        }
        total += head * tail * y_pow;
    }
    total
}

/// `P_n^{(α,β)}(x)`.
pub fn jacobi_poly(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let rec = Recurrence { alpha, beta };
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 0.5 * (alpha + beta + 2.0) * x + 0.5 * (alpha - beta);
    for m in 2..=n {
        let (c1, c2, c3, c4) = rec.coefficients(m);
        let next = if rec.is_degenerate(c1, m) {
            explicit_sum(m, alpha, beta, x)
        } else {
            ((c2 * x + c3) * cur - c4 * prev) / c1
        };
        prev = cur;
        cur = next;
    }
    if !cur.is_finite() {
        return Err(Error::Overflow("Jacobi polynomial value exceeds f64 range"));
    }
    Ok(cur)
}

/// `P_n^{(α,β)}(x) / x^n` given `inv_x = 1/x`, for large arguments where
/// `x^n` itself would overflow. Returns `(P_n / x^n, P_{n-1} / x^{n-1})`.
pub(crate) fn jacobi_pair_scaled(n: usize, alpha: f64, beta: f64, inv_x: f64) -> (f64, f64) {
    let rec = Recurrence { alpha, beta };
    let u = inv_x;
    let mut prev = 1.0;
    if n == 0 {
        return (prev, 0.0);
    }
    let mut cur = 0.5 * (alpha + beta + 2.0) + 0.5 * (alpha - beta) * u;
    for m in 2..=n {
        let (c1, c2, c3, c4) = rec.coefficients(m);
        let next = if rec.is_degenerate(c1, m) {
            explicit_sum(m, alpha, beta, 1.0 / u) * u.powi(m as i32)
        } else {
            ((c2 + c3 * u) * cur - c4 * u * u * prev) / c1
        };
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

fn x1_denominator(n: usize, params: &JacobiParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain {
            what: "X1 Jacobi degree (need n >= 1)",
            value: 0.0,
        });
    }
    let denom = params.alpha + params.beta + 2.0 * (n as f64 - 1.0);
    if denom.abs() < 1e-12 {
        return Err(Error::DegenerateDenominator { n });
    }
    Ok(denom)
}

/// Degree-`n` X₁ Jacobi polynomial
/// `P̂_n(x) = -(x - b)/2 · P_{n-1}(x) + (b P_{n-1}(x) - P_{n-2}(x)) / (α + β + 2n - 2)`
/// with `b = jacobi_b` and `P_{-1} = 0`.
pub fn x1_jacobi(n: usize, params: &JacobiParams, x: f64) -> Result<f64> {
    let denom = x1_denominator(n, params)?;
    let (a, b, jb) = (params.alpha, params.beta, params.jacobi_b);
    let p1 = jacobi_poly(n - 1, a, b, x)?;
    let p2 = if n >= 2 {
        jacobi_poly(n - 2, a, b, x)?
    } else {
        0.0
    };
    let value = -0.5 * (x - jb) * p1 + (jb * p1 - p2) / denom;
    if !value.is_finite() {
        return Err(Error::Overflow("X1 Jacobi value exceeds f64 range"));
    }
    Ok(value)
}

/// `P̂_n(x) / x^n` given `inv_x = 1/x`.
pub(crate) fn x1_jacobi_scaled(n: usize, params: &JacobiParams, inv_x: f64) -> Result<f64> {
    let denom = x1_denominator(n, params)?;
    let (a, b, jb) = (params.alpha, params.beta, params.jacobi_b);
    let u = inv_x;
    let (p1, p2) = jacobi_pair_scaled(n - 1, a, b, u);
    let p2 = if n >= 2 { p2 } else { 0.0 };
    Ok(-0.5 * (1.0 - jb * u) * p1 + (jb * u * p1 - u * u * p2) / denom)
}
