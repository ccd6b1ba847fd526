//! Independent numerical checks that share no code path with the closed forms.
//!
//! * Numerov integration of the radial equation, used to extract `S(k)`
//!   by matching to free waves and to shoot for the bound spectrum.
//! * The `1/(1-z)` hypergeometric connection formula, compared against
//!   [`hyp2f1`], which uses a series, Pfaff or the `1/z` formula instead.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::grid::RadialGrid;
use crate::potential::{v_from_w, PotentialKind, PotentialParams};
use crate::specfun::{gamma_ratio, hyp2f1, hyp2f1_power_series, ComplexValue};

type C = ComplexValue;

/// Largest inner radius accepted by [`numerov_integrate`].
pub const MAX_INNER_RADIUS: f64 = 1e-3;
const RESCALE_ABOVE: f64 = 1e100;
/// `|V(r_max) - A²|` above this aborts S-matrix extraction.
pub const TAIL_TOLERANCE: f64 = 1e-8;
const TAIL_TARGET: f64 = 1e-12;
const MATCH_STEP: f64 = 1e-3;
const SCAN_START: f64 = -0.05;
const SCAN_STEP: f64 = 0.1;
const EIGEN_WIDTH: f64 = 1e-9;
const CONNECTION_GAP: f64 = 1e-8;

/// Numerov solution regular at the origin. Stored values are
/// `ψ(r_i) e^{-log_scale}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveSolution {
    pub grid: RadialGrid,
    pub values: Vec<f64>,
    pub log_scale: f64,
    pub energy: f64,
}

/// Integrates `ψ'' = (V(r) - E) ψ` outward from `ψ ≈ r^{seed_power}`.
pub fn numerov_with<F>(
    potential: F,
    energy: f64,
    grid: &RadialGrid,
    seed_power: f64,
) -> Result<WaveSolution>
where
    F: Fn(f64) -> Result<f64>,
{
    let seed = [
        grid.point(0).powf(seed_power),
        grid.point(1).powf(seed_power),
    ];
    numerov_seeded(potential, energy, grid, seed)
}

/// Integrates `ψ'' = (V(r) - E) ψ` outward from given values at the first
/// two grid points.
pub fn numerov_seeded<F>(
    potential: F,
    energy: f64,
    grid: &RadialGrid,
    seed: [f64; 2],
) -> Result<WaveSolution>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = grid.n_points();
    if n < 3 {
        return Err(Error::InvalidGrid(format!(
            "Numerov needs at least 3 points, got {n}"
        )));
    }
    let h2 = grid.step() * grid.step() / 12.0;
    let f = |r: f64| -> Result<f64> { Ok(1.0 - h2 * (potential(r)? - energy)) };

    let mut values = Vec::with_capacity(n);
    values.extend_from_slice(&seed);
    let mut log_scale = 0.0;
    let mut f_prev = f(grid.point(0))?;
    let mut f_cur = f(grid.point(1))?;
    for i in 1..n - 1 {
        let f_next = f(grid.point(i + 1))?;
        let next = ((12.0 - 10.0 * f_cur) * values[i] - f_prev * values[i - 1]) / f_next;
        values.push(next);
        if next.abs() > RESCALE_ABOVE {
            values.iter_mut().for_each(|v| *v /= RESCALE_ABOVE);
            log_scale += RESCALE_ABOVE.ln();
        }
        f_prev = f_cur;
        f_cur = f_next;
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow("Numerov solution left f64 range"));
    }
    Ok(WaveSolution {
        grid: *grid,
        values,
        log_scale,
        energy,
    })
}

/// Numerov solution of `-ψ'' + V ψ = E ψ` for either potential, seeded
/// with the `r^{B-A}` behaviour of the regular solution.
pub fn numerov_integrate(
    kind: PotentialKind,
    p: &PotentialParams,
    energy: f64,
    grid: &RadialGrid,
) -> Result<WaveSolution> {
    if grid.r_min() > MAX_INNER_RADIUS {
        return Err(Error::InvalidGrid(format!(
            "Numerov needs r_min <= {MAX_INNER_RADIUS}, got {}",
            grid.r_min()
        )));
    }
    numerov_with(|r| v_from_w(kind, p, r), energy, grid, p.b() - p.a())
}

/// Grid for S-matrix extraction: `r_max` covers several wavelengths and is
/// pushed out until `|V(r_max) - A²| < 1e-12`.
pub fn matching_grid(kind: PotentialKind, p: &PotentialParams, k: f64) -> Result<RadialGrid> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain {
            what: "wavenumber (need k > 0)",
            value: k,
        });
    }
    let mut r_max = f64::max(25.0, 12.0 + 5.0 / k.min(1.0));
    while (v_from_w(kind, p, r_max)? - p.threshold()).abs() > TAIL_TARGET && r_max < 200.0 {
        r_max += 5.0;
    }
    RadialGrid::with_step(MAX_INNER_RADIUS, r_max, MATCH_STEP.min(0.3 / k))
}

/// S-matrix from a Numerov solution at `E = A² + k²`. The solution is
/// matched to `c₁ sin kr + c₂ cos kr` at the last grid point and at the
/// point roughly a quarter wavelength inside it; then `δ = atan2(c₂, c₁)`.
pub fn extract_s_numeric(
    kind: PotentialKind,
    p: &PotentialParams,
    k: f64,
    grid: &RadialGrid,
) -> Result<C> {
    let tail = (v_from_w(kind, p, grid.r_max())? - p.threshold()).abs();
    if tail > TAIL_TOLERANCE {
        return Err(Error::TailNotNegligible {
            r_max: grid.r_max(),
            tail,
        });
    }
    let sol = numerov_integrate(kind, p, p.threshold() + k * k, grid)?;
    let n = grid.n_points();
    let offset = ((0.5 * PI / (k * grid.step())).round() as usize).max(1);
    if offset >= n {
        return Err(Error::InvalidGrid(
            "grid shorter than a quarter wavelength".into(),
        ));
    }
    let (i1, i2) = (n - 1 - offset, n - 1);
    let (r1, r2) = (grid.point(i1), grid.point(i2));
    let (u1, u2) = (sol.values[i1], sol.values[i2]);
    let det = (k * (r1 - r2)).sin();
    if det.abs() < 1e-8 {
        return Err(Error::MatchingDegeneracy(det));
    }
    let (s1, c1) = (k * r1).sin_cos();
    let (s2, c2) = (k * r2).sin_cos();
    let a_sin = (u1 * c2 - u2 * c1) / det;
    let a_cos = (u2 * s1 - u1 * s2) / det;
    let delta = a_cos.atan2(a_sin);
    Ok(C::from_polar(1.0, 2.0 * delta))
}

/// [`extract_s_numeric`] on [`matching_grid`].
pub fn numerov_s_matrix(kind: PotentialKind, p: &PotentialParams, k: f64) -> Result<C> {
    extract_s_numeric(kind, p, k, &matching_grid(kind, p, k)?)
}

pub fn numerov_s_sweep(
    kind: PotentialKind,
    p: &PotentialParams,
    ks: &[f64],
    exec: Execution,
) -> Result<Vec<C>> {
    exec::try_map(exec, ks, |&k| numerov_s_matrix(kind, p, k))
}

/// Precomputed `V` on a grid for repeated shooting at different energies.
struct Shooter {
    grid: RadialGrid,
    potential: Vec<f64>,
    seed: [f64; 2],
    h2: f64,
}

impl Shooter {
    fn new(kind: PotentialKind, p: &PotentialParams, grid: &RadialGrid) -> Result<Self> {
        let potential = grid
            .points()
            .iter()
            .map(|&r| v_from_w(kind, p, r))
            .collect::<Result<Vec<_>>>()?;
        let s = p.b() - p.a();
        Ok(Self {
            grid: *grid,
            potential,
            seed: [grid.point(0).powf(s), grid.point(1).powf(s)],
            h2: grid.step() * grid.step() / 12.0,
        })
    }

    fn f(&self, i: usize, energy: f64) -> f64 {
        1.0 - self.h2 * (self.potential[i] - energy)
    }

    fn step(&self, i: usize, energy: f64, cur: f64, prev: f64, forward: bool) -> f64 {
        let (next_i, prev_i) = if forward {
            (i + 1, i - 1)
        } else {
            (i - 1, i + 1)
        };
        ((12.0 - 10.0 * self.f(i, energy)) * cur - self.f(prev_i, energy) * prev)
            / self.f(next_i, energy)
    }

    /// Sign changes of the outward solution over the whole grid.
    fn nodes(&self, energy: f64) -> usize {
        let [mut prev, mut cur] = self.seed;
        let mut count = 0;
        for i in 1..self.potential.len() - 1 {
            let mut next = self.step(i, energy, cur, prev, true);
            if next.abs() > RESCALE_ABOVE {
                next /= RESCALE_ABOVE;
                cur /= RESCALE_ABOVE;
            }
            if next != 0.0 && (next < 0.0) != (cur < 0.0) {
                count += 1;
            }
            prev = cur;
            cur = next;
        }
        count
    }

    /// Normalized Wronskian `ψ_out' ψ_in - ψ_in' ψ_out` at the outer classical
    /// turning point. Both solutions start positive, so it is continuous in
    /// the energy and vanishes only at eigenvalues.
    fn mismatch(&self, energy: f64) -> f64 {
        let n = self.potential.len();
        let m =
            self.potential
                .iter()
                .rposition(|&v| v <= energy)
                .unwrap_or_else(|| {
                    let (idx, _) = self.potential.iter().enumerate().fold(
                        (0, f64::INFINITY),
                        |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc },
                    );
                    idx
                })
                .clamp(2, n - 3);

        let [mut prev, mut cur] = self.seed;
        let mut out = [0.0; 3];
        for i in 1..=m {
            let next = self.step(i, energy, cur, prev, true);
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE_ABOVE {
                cur /= RESCALE_ABOVE;
                prev /= RESCALE_ABOVE;
            }
        }
        // cur = ψ(m+1), prev = ψ(m); one step back is not stored, so redo it
        let psi_m1 = ((12.0 - 10.0 * self.f(m, energy)) * prev - self.f(m + 1, energy) * cur)
            / self.f(m - 1, energy);
        out[0] = psi_m1;
        out[1] = prev;
        out[2] = cur;

        let kappa = (self.potential[n - 1] - energy).max(0.0).sqrt();
        let h = self.grid.step();
        let mut later = 1.0;
        let mut here = (kappa * h).exp();
        let mut inward = [0.0; 3];
        for i in (m..n - 1).rev() {
            let next = self.step(i, energy, here, later, false);
            later = here;
            here = next;
            if here.abs() > RESCALE_ABOVE {
                here /= RESCALE_ABOVE;
                later /= RESCALE_ABOVE;
            }
        }
        // here = ψ(m-1), later = ψ(m)
        let psi_p1 = ((12.0 - 10.0 * self.f(m, energy)) * later - self.f(m - 1, energy) * here)
            / self.f(m + 1, energy);
        inward[0] = here;
        inward[1] = later;
        inward[2] = psi_p1;

        let d_out = (out[2] - out[0]) / (2.0 * h);
        let d_in = (inward[2] - inward[0]) / (2.0 * h);
        let norm_out = out[1].hypot(d_out);
        let norm_in = inward[1].hypot(d_in);
        (d_out * inward[1] - d_in * out[1]) / (norm_out * norm_in)
    }

    fn refine(&self, lo: f64, hi: f64, below: usize) -> f64 {
        let (mut lo, mut hi) = (lo, hi);
        let w_lo = self.mismatch(lo);
        let w_hi = self.mismatch(hi);
        if w_lo.signum() != w_hi.signum() {
            while hi - lo > EIGEN_WIDTH {
                let mid = 0.5 * (lo + hi);
                if self.mismatch(mid).signum() == w_lo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        } else {
            while hi - lo > EIGEN_WIDTH {
                let mid = 0.5 * (lo + hi);
                if self.nodes(mid) <= below {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
        }
        0.5 * (lo + hi)
    }

    /// Splits `(lo, hi]` until each bracket holds one eigenvalue.
    fn isolate(
        &self,
        lo: f64,
        n_lo: usize,
        hi: f64,
        n_hi: usize,
        out: &mut Vec<(f64, f64, usize)>,
    ) {
        if n_hi <= n_lo {
            return;
        }
        if n_hi == n_lo + 1 || hi - lo < EIGEN_WIDTH {
            for _ in n_lo..n_hi {
                out.push((lo, hi, n_lo));
            }
            return;
        }
        let mid = 0.5 * (lo + hi);
        let n_mid = self.nodes(mid);
        self.isolate(lo, n_lo, mid, n_mid, out);
        self.isolate(mid, n_mid, hi, n_hi, out);
    }
}

/// Grid for shooting up to `e_max`: long enough that a state with
/// `A² - E = A² - e_max` has decayed.
pub fn default_shooting_grid(p: &PotentialParams, e_max: f64) -> Result<RadialGrid> {
    let kappa = (p.threshold() - e_max).max(0.0).sqrt();
    let r_max = f64::max(30.0, 30.0 / kappa);
    if !r_max.is_finite() || r_max > 5_000.0 {
        return Err(Error::Domain {
            what: "shooting cutoff too close to threshold",
            value: e_max,
        });
    }
    RadialGrid::with_step(MAX_INNER_RADIUS, r_max, MATCH_STEP)
}

/// Eigenvalues in `[-0.05, e_max]`: node counting on an energy scan
/// brackets them, then bisection on the turning-point Wronskian refines
/// each to `1e-9`.
pub fn shoot_spectrum(
    kind: PotentialKind,
    p: &PotentialParams,
    e_max: f64,
    exec: Execution,
) -> Result<Vec<f64>> {
    shoot_spectrum_on(kind, p, e_max, &default_shooting_grid(p, e_max)?, exec)
}

pub fn shoot_spectrum_on(
    kind: PotentialKind,
    p: &PotentialParams,
    e_max: f64,
    grid: &RadialGrid,
    exec: Execution,
) -> Result<Vec<f64>> {
    if !(e_max < p.threshold()) {
        return Err(Error::Domain {
            what: "shooting cutoff (need e_max < A^2)",
            value: e_max,
        });
    }
    if grid.r_min() > MAX_INNER_RADIUS {
        return Err(Error::InvalidGrid(format!(
            "shooting needs r_min <= {MAX_INNER_RADIUS}"
        )));
    }
    let shooter = Shooter::new(kind, p, grid)?;
    let steps = ((e_max - SCAN_START) / SCAN_STEP).ceil().max(1.0) as usize;
    let energies: Vec<f64> = (0..=steps)
        .map(|j| (SCAN_START + j as f64 * SCAN_STEP).min(e_max))
        .collect();
    let counts = exec::map(exec, &energies, |&e| shooter.nodes(e));

    let mut brackets = Vec::new();
    for j in 0..steps {
        shooter.isolate(
            energies[j],
            counts[j],
            energies[j + 1],
            counts[j + 1],
            &mut brackets,
        );
    }
    Ok(exec::map(exec, &brackets, |&(lo, hi, below)| {
        shooter.refine(lo, hi, below)
    }))
}

/// Number of nodes of the regular solution at `energy`, which equals the
/// number of eigenvalues below it.
pub fn count_states_below(
    kind: PotentialKind,
    p: &PotentialParams,
    energy: f64,
    grid: &RadialGrid,
) -> Result<usize> {
    Ok(Shooter::new(kind, p, grid)?.nodes(energy))
}

fn near_integer(x: C, gap: f64) -> bool {
    x.im.abs() < gap && (x.re - x.re.round()).abs() < gap
}

/// Right side of the `1/(1-z)` connection formula,
/// ```text
/// F(a,b;c;z) = (1-z)^{-a} Γ(c)Γ(b-a)/(Γ(b)Γ(c-a)) F(a, c-b; a-b+1; 1/(1-z))
///            + (1-z)^{-b} Γ(c)Γ(a-b)/(Γ(a)Γ(c-b)) F(b, c-a; b-a+1; 1/(1-z))
/// ```
/// for `z < 0`.
pub fn connection_formula_rhs(a: C, b: C, c: C, z: f64) -> Result<C> {
    if !(z < 0.0 && z.is_finite()) {
        return Err(Error::Domain {
            what: "connection formula argument (need z < 0)",
            value: z,
        });
    }
    if near_integer(a - b, CONNECTION_GAP) {
        let d = a - b;
        return Err(Error::DegenerateConnection { re: d.re, im: d.im });
    }
    let w = 1.0 / (1.0 - z);
    let log_1mz = (1.0 - z).ln();
    let one = C::new(1.0, 0.0);
    let first = gamma_ratio(&[c, b - a], &[b, c - a])?
        * (-a * log_1mz).exp()
        * hyp2f1_power_series(a, c - b, a - b + one, w)?;
    let second = gamma_ratio(&[c, a - b], &[a, c - b])?
        * (-b * log_1mz).exp()
        * hyp2f1_power_series(b, c - a, b - a + one, w)?;
    Ok(first + second)
}

/// `|F - rhs| / |F|` with `F` from [`hyp2f1`].
pub fn connection_formula_check(a: C, b: C, c: C, z: f64) -> Result<f64> {
    let lhs = hyp2f1(a, b, c, z)?;
    let rhs = connection_formula_rhs(a, b, c, z)?;
    Ok((lhs - rhs).norm() / lhs.norm().max(f64::MIN_POSITIVE))
}
