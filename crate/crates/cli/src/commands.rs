use x1scatter::oracle::shoot_spectrum;
use x1scatter::potential::v_from_w;
use x1scatter::scattering::{phase_sweep, smatrix_sweep, K_MIN};
use x1scatter::spectrum::{
    bound_states, default_quadrature_grid, quadrature_norm, schrodinger_residual,
    RESIDUAL_INNER_RADIUS,
};
use x1scatter::verify::{verify, VerificationReport, FIXTURES};
use x1scatter::{Execution, PotentialKind, PotentialParams, RadialGrid};

use crate::table::{Cell, Table};
use crate::{Cli, Command, Format};

const DEFAULT_A: f64 = 2.5;
const DEFAULT_B: f64 = 4.0;
const EXEC: Execution = Execution::Parallel;

pub struct Outcome {
    pub text: String,
    /// False only when `verify` saw a FAIL.
    pub verified: bool,
}

type CmdResult<T> = std::result::Result<T, String>;

fn lib<T>(r: x1scatter::Result<T>) -> CmdResult<T> {
    r.map_err(|e| e.to_string())
}

fn params(a: f64, b: f64) -> CmdResult<PotentialParams> {
    PotentialParams::new(a, b)
        .map_err(|_| format!("invalid parameters A = {a}, B = {b}: require B > A + 1 > 1"))
}

fn explicit_params(cli: &Cli) -> CmdResult<Option<PotentialParams>> {
    match (cli.a, cli.b) {
        (Some(a), Some(b)) => params(a, b).map(Some),
        (None, None) => Ok(None),
        _ => Err("--A and --B must be given together".into()),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn k_range(cli: &Cli) -> CmdResult<Vec<f64>> {
    if !(cli.k_min > K_MIN) {
        return Err(format!("--k-min must exceed {K_MIN} (got {})", cli.k_min));
    }
    if !(cli.k_max > cli.k_min) || !cli.k_max.is_finite() {
        return Err(format!(
            "--k-max must be finite and greater than --k-min (got {} <= {})",
            cli.k_max, cli.k_min
        ));
    }
    if cli.k_steps < 2 {
        return Err(format!(
            "--k-steps must be at least 2 (got {})",
            cli.k_steps
        ));
    }
    Ok(linspace(cli.k_min, cli.k_max, cli.k_steps))
}

fn r_range(cli: &Cli) -> CmdResult<Vec<f64>> {
    if !(cli.r_min > 0.0) {
        return Err(format!("--r-min must be positive (got {})", cli.r_min));
    }
    if !(cli.r_max > cli.r_min) || !cli.r_max.is_finite() {
        return Err(format!(
            "--r-max must be finite and greater than --r-min (got {} <= {})",
            cli.r_max, cli.r_min
        ));
    }
    if cli.r_steps < 2 {
        return Err(format!(
            "--r-steps must be at least 2 (got {})",
            cli.r_steps
        ));
    }
    Ok(linspace(cli.r_min, cli.r_max, cli.r_steps))
}

fn with_params(t: Table, p: &PotentialParams) -> Table {
    t.param("A", p.a()).param("B", p.b())
}

fn potential(cli: &Cli, p: &PotentialParams) -> CmdResult<Table> {
    let rs = r_range(cli)?;
    let mut t = with_params(Table::new("potential", &["r", "v_gpt", "v_extended"]), p)
        .param("r_min", cli.r_min)
        .param("r_max", cli.r_max)
        .param("r_steps", cli.r_steps);
    for r in rs {
        let gpt = lib(v_from_w(PotentialKind::Gpt, p, r))?;
        let ext = lib(v_from_w(PotentialKind::Extended, p, r))?;
        t.push(vec![r.into(), gpt.into(), ext.into()]);
    }
    Ok(t)
}

fn bound_state_table(cli: &Cli, p: &PotentialParams) -> CmdResult<Table> {
    let kind = PotentialKind::from(cli.kind);
    let states = lib(bound_states(p))?;
    let quad_grid = lib(default_quadrature_grid(p))?;
    let residual_grid = lib(RadialGrid::new(RESIDUAL_INNER_RADIUS, 20.0, 1951))?;
    let e_max = 0.5 * (states.last().map_or(0.0, |s| s.energy) + p.threshold());
    let shot = lib(shoot_spectrum(kind, p, e_max, EXEC))?;
    let mut t = with_params(
        Table::new(
            "bound-states",
            &[
                "nu",
                "energy",
                "norm_analytic",
                "norm_quadrature",
                "schrodinger_residual",
                "energy_shooting",
            ],
        ),
        p,
    )
    .param("kind", kind.name());
    for s in &states {
        let shooting = shot.get(s.nu).copied().unwrap_or(f64::NAN);
        t.push(vec![
            s.nu.into(),
            s.energy.into(),
            s.norm_const.into(),
            lib(quadrature_norm(p, s.nu, &quad_grid))?.into(),
            lib(schrodinger_residual(p, s.nu, &residual_grid))?.into(),
            shooting.into(),
        ]);
    }
    Ok(t)
}

fn k_params(t: Table, cli: &Cli) -> Table {
    t.param("k_min", cli.k_min)
        .param("k_max", cli.k_max)
        .param("k_steps", cli.k_steps)
}

fn smatrix(cli: &Cli, p: &PotentialParams) -> CmdResult<Table> {
    let kind = PotentialKind::from(cli.kind);
    let ks = k_range(cli)?;
    let main = lib(smatrix_sweep(kind, p, &ks, EXEC))?;
    let gpt = lib(smatrix_sweep(PotentialKind::Gpt, p, &ks, EXEC))?;
    let t = with_params(
        Table::new(
            "smatrix",
            &[
                "k", "re_s", "im_s", "abs_s", "delta", "re_s_gpt", "im_s_gpt",
            ],
        ),
        p,
    )
    .param("kind", kind.name());
    let mut t = k_params(t, cli);
    for (m, g) in main.iter().zip(&gpt) {
        t.push(vec![
            m.k.into(),
            m.s_value.re.into(),
            m.s_value.im.into(),
            m.s_value.norm().into(),
            m.phase_shift.into(),
            g.s_value.re.into(),
            g.s_value.im.into(),
        ]);
    }
    Ok(t)
}

fn phase_shift(cli: &Cli, p: &PotentialParams) -> CmdResult<Table> {
    let ks = k_range(cli)?;
    let gpt = lib(phase_sweep(PotentialKind::Gpt, p, &ks, EXEC))?;
    let ext = lib(phase_sweep(PotentialKind::Extended, p, &ks, EXEC))?;
    let mut t = k_params(
        with_params(
            Table::new("phase-shift", &["k", "delta_gpt", "delta_extended"]),
            p,
        ),
        cli,
    );
    for ((k, g), e) in ks.iter().zip(gpt).zip(ext) {
        t.push(vec![(*k).into(), g.into(), e.into()]);
    }
    Ok(t)
}

fn verify_reports(cli: &Cli) -> CmdResult<Vec<VerificationReport>> {
    let sets = match explicit_params(cli)? {
        Some(p) => vec![p],
        None => FIXTURES
            .iter()
            .map(|&(a, b)| params(a, b))
            .collect::<CmdResult<_>>()?,
    };
    sets.iter().map(|p| lib(verify(p, EXEC))).collect()
}

fn verify_table(reports: &[VerificationReport]) -> Table {
    let fixtures: Vec<Cell> = reports
        .iter()
        .map(|r| Cell::List(vec![r.params.a().into(), r.params.b().into()]))
        .collect();
    let mut t = Table::new(
        "verify",
        &["a", "b", "check", "measured", "tolerance", "status"],
    )
    .param("fixtures", Cell::List(fixtures));
    for r in reports {
        for c in &r.checks {
            t.push(vec![
                r.params.a().into(),
                r.params.b().into(),
                c.name.into(),
                c.measured.into(),
                c.tolerance.into(),
                (if c.passed { "PASS" } else { "FAIL" }).into(),
            ]);
        }
    }
    t
}

fn render(t: &Table, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Csv) {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    }
}

pub fn run(cli: &Cli) -> CmdResult<Outcome> {
    if cli.command == Command::Verify {
        let reports = verify_reports(cli)?;
        let verified = reports.iter().all(VerificationReport::all_passed);
        let text = match cli.format {
            None => {
                let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
                s.push_str(if verified {
                    "PASS: all checks passed\n"
                } else {
                    "FAIL: some checks failed\n"
                });
                s
            }
            f => render(&verify_table(&reports), f),
        };
        return Ok(Outcome { text, verified });
    }
    let p = match explicit_params(cli)? {
        Some(p) => p,
        None => params(DEFAULT_A, DEFAULT_B)?,
    };
    let table = match cli.command {
        Command::Potential => potential(cli, &p)?,
        Command::BoundStates => bound_state_table(cli, &p)?,
        Command::Smatrix => smatrix(cli, &p)?,
        Command::PhaseShift => phase_shift(cli, &p)?,
        Command::Verify => unreachable!(),
    };
    Ok(Outcome {
        text: render(&table, cli.format),
        verified: true,
    })
}
