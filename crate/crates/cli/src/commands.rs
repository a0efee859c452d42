//! Subcommand implementations.

use std::f64::consts::PI;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use ymwave_core::constraints::{normalized_constraints, Violations};
use ymwave_core::observables::{energy_density_at_phase, find_nodes};
use ymwave_core::{
    bianchi_residual, classify, electric_field_analytic, energy_closed_form, field_strength,
    magnetic_field_analytic, max_residual_on_grid, nine_constraints, node_locations, AnsatzParams,
    Classification, ConstraintVector, Family, FamilySolution, Grid, Mode, SpacetimePoint,
};

use crate::args::{ClassifyArgs, EnergyArgs, FieldsArgs, ScanArgs, VerifyArgs};
use crate::params::{check_positive, parse_grid, resolve, CliError, CliResult, Resolved};
use crate::scan::{run_scan, tally, ScanConfig, ScanRow};

/// Allowance for truncation-limited quantities (numeric residual, Bianchi
/// norm) when it exceeds `tol`.
pub const TRUNCATION_ALLOWANCE: f64 = 1e-6;

/// Seventeen significant digits, locale independent.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn sink(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn describe(c: &Classification) -> String {
    match c {
        Classification::Solution(s) => match *s {
            FamilySolution::Linear { alpha4, .. } => format!("Family I (alpha4 = {alpha4})"),
            FamilySolution::SelfInteracting {
                alpha4, eta, xi, ..
            } => {
                format!("Family II (alpha4 = {alpha4}, eta = {eta}, xi = {xi})")
            }
            FamilySolution::PureGauge { alpha4, eta, .. } => {
                format!("Family III (alpha4 = {alpha4}, eta = {eta})")
            }
        },
        Classification::TrivialZeroField => "trivial (zero field)".into(),
        Classification::NotASolution(v) => format!("not a solution (violated: {v})"),
        Classification::UnmatchedSolution => "solution outside Families I-III".into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub params: AnsatzParams,
    pub constraints: ConstraintVector,
    pub normalized: ConstraintVector,
    pub violations: Violations,
    pub classification: Classification,
    pub analytic_max: f64,
    pub numeric_max: f64,
    pub bianchi_max: f64,
    /// Largest finite-difference `|F|` over the grid, for zero-field classes.
    pub field_strength_max: Option<f64>,
    pub h: f64,
    pub tol: f64,
    pub verified: bool,
}

pub fn verify_report(r: &Resolved, grid: &Grid, h: f64, tol: f64) -> CliResult<VerifyReport> {
    check_positive("h", h)?;
    check_positive("tol", tol)?;
    let p = r.params;
    let constraints = nine_constraints(&p);
    let normalized = normalized_constraints(&p);
    let violations = normalized.violations(tol);
    let classification = classify(&p, tol)?;
    let analytic_max = max_residual_on_grid(&p, grid, Mode::Analytic)?;
    let numeric_max = max_residual_on_grid(&p, grid, Mode::Numeric { h })?;
    let mut bianchi_max = 0.0_f64;
    for s in grid.points() {
        bianchi_max = bianchi_max.max(bianchi_residual(&p, &s, h)?);
    }
    let zero_field = matches!(
        classification,
        Classification::TrivialZeroField
            | Classification::Solution(FamilySolution::PureGauge { .. })
    );
    let field_strength_max = if zero_field {
        let mut m = 0.0_f64;
        for s in grid.points() {
            m = m.max(field_strength(&p, &s, h)?.norm());
        }
        Some(m)
    } else {
        None
    };
    let allowance = tol.max(TRUNCATION_ALLOWANCE);
    let verified = violations.is_empty()
        && classification.is_solution()
        && analytic_max < tol
        && numeric_max < allowance
        && bianchi_max < allowance;
    Ok(VerifyReport {
        params: p,
        constraints,
        normalized,
        violations,
        classification,
        analytic_max,
        numeric_max,
        bianchi_max,
        field_strength_max,
        h,
        tol,
        verified,
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "parameters: alpha = [{}, {}, {}, {}, {}], lambda = {}, k = {}, omega = {}, g = {}, c = {}",
            p.alpha1, p.alpha2, p.alpha3, p.alpha4, p.alpha5, p.lambda, p.k, p.omega, p.g, p.c
        )?;
        writeln!(f, "constraints (raw, normalized):")?;
        for n in 1..=9 {
            let flag = if self.violations.contains(n) {
                "  VIOLATED"
            } else {
                ""
            };
            writeln!(
                f,
                "  c{n} = {:>24}  {:>24}{flag}",
                sci(self.constraints.get(n)),
                sci(self.normalized.get(n))
            )?;
        }
        writeln!(f, "classification: {}", describe(&self.classification))?;
        writeln!(
            f,
            "max grid residual (analytic): {}",
            sci(self.analytic_max)
        )?;
        writeln!(
            f,
            "max grid residual (numeric, h = {}): {}",
            self.h,
            sci(self.numeric_max)
        )?;
        writeln!(
            f,
            "max Bianchi residual (h = {}): {}",
            self.h,
            sci(self.bianchi_max)
        )?;
        if let Some(fs) = self.field_strength_max {
            writeln!(f, "pure gauge: F ≈ 0 (max |F| = {})", sci(fs))?;
        }
        if self.verified {
            write!(f, "verdict: verified (tol = {})", self.tol)
        } else if !self.violations.is_empty() {
            write!(f, "verdict: constraint violation: {}", self.violations)
        } else {
            write!(f, "verdict: residuals above tolerance (tol = {})", self.tol)
        }
    }
}

/// Returns the process exit status (0 verified, 1 violation).
pub fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    let r = resolve(&a.params)?;
    let grid = parse_grid(&a.grid)?;
    let report = verify_report(&r, &grid, a.h, a.tol)?;
    println!("{report}");
    Ok(if report.verified { 0 } else { 1 })
}

pub fn cmd_classify(a: &ClassifyArgs) -> CliResult<i32> {
    check_positive("tol", a.tol)?;
    let r = resolve(&a.params)?;
    let c = classify(&r.params, a.tol)?;
    println!("{}", describe(&c));
    Ok(if c.is_solution() { 0 } else { 1 })
}

pub const FIELD_HEADER: [&str; 10] = [
    "t",
    "y",
    "z",
    "theta",
    "E_y_sigma_x",
    "E_y_sigma_y",
    "E_y_sigma_z",
    "B_x_sigma_x",
    "B_x_sigma_y",
    "B_x_sigma_z",
];

pub fn write_fields<W: Write>(w: W, p: &AnsatzParams, points: &[SpacetimePoint]) -> CliResult<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(FIELD_HEADER)?;
    for s in points {
        let e = electric_field_analytic(p, s).y.coeffs();
        let b = magnetic_field_analytic(p, s).x.coeffs();
        let row = [
            s.t,
            s.y,
            s.z,
            p.phase(s),
            e[0],
            e[1],
            e[2],
            b[0],
            b[1],
            b[2],
        ];
        csv.write_record(row.iter().map(|v| sci(*v)))?;
    }
    csv.flush()?;
    Ok(())
}

pub fn cmd_fields(a: &FieldsArgs) -> CliResult<i32> {
    let r = resolve(&a.params)?;
    let p = r.params;
    let points: Vec<SpacetimePoint> = match a.theta_samples {
        Some(n) => {
            if n == 0 {
                return Err(CliError::Usage("--theta-samples must be at least 1".into()));
            }
            (0..n)
                .map(|j| {
                    let theta = 2.0 * PI * j as f64 / n as f64;
                    p.point_at_phase(theta, 0.0).ok_or_else(|| {
                        CliError::Usage("phase grid needs k or omega non-zero".into())
                    })
                })
                .collect::<CliResult<_>>()?
        }
        None => parse_grid(&a.grid)?.points().collect(),
    };
    write_fields(sink(&a.out)?, &p, &points)?;
    Ok(0)
}

/// One row of an energy profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRow {
    pub theta: f64,
    pub density: f64,
    pub closed_form: f64,
    pub abs_diff: f64,
}

fn profile_family(r: &Resolved) -> CliResult<FamilySolution> {
    let sol = match r.family {
        Some(s) => s,
        None => match classify(&r.params, 1e-9)? {
            Classification::Solution(s) => s,
            other => {
                return Err(CliError::Usage(format!(
                    "energy-profile needs a Family I or II configuration, got {}",
                    describe(&other)
                )))
            }
        },
    };
    if sol.family() == Family::III {
        return Err(CliError::Usage(
            "energy-profile is undefined for Family III: the field strength vanishes".into(),
        ));
    }
    Ok(sol)
}

pub fn energy_rows(r: &Resolved, n: usize, kappa: f64) -> CliResult<Vec<EnergyRow>> {
    let sol = profile_family(r)?;
    check_positive("kappa", kappa)?;
    if n == 0 {
        return Err(CliError::Usage("--theta-samples must be at least 1".into()));
    }
    (0..n)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / n as f64;
            let density = energy_density_at_phase(&r.params, theta, kappa)?;
            let closed_form = energy_closed_form(&sol, theta)?;
            Ok(EnergyRow {
                theta,
                density,
                closed_form,
                abs_diff: (density - closed_form).abs(),
            })
        })
        .collect()
}

pub fn cmd_energy_profile(a: &EnergyArgs) -> CliResult<i32> {
    let r = resolve(&a.params)?;
    let rows = energy_rows(&r, a.theta_samples, a.kappa)?;
    let sol = profile_family(&r)?;
    {
        let mut csv = csv::Writer::from_writer(sink(&a.out)?);
        csv.write_record(["theta", "density", "closed_form", "abs_diff"])?;
        for row in &rows {
            csv.write_record([row.theta, row.density, row.closed_form, row.abs_diff].map(sci))?;
        }
        csv.flush()?;
    }
    let mean = rows.iter().map(|r| r.density).sum::<f64>() / rows.len() as f64;
    let worst = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    let found = find_nodes(&r.params, a.theta_samples.max(16), a.kappa, 1e-6)?;
    let expected = node_locations(&sol)?;
    let summary = format!(
        "family {}: mean density {}, max |density - closed form| {}, nodes {:?} (closed form {:?})",
        sol.family(),
        sci(mean),
        sci(worst),
        found,
        expected
    );
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}

pub const SCAN_HEADER: [&str; 18] = [
    "index",
    "alpha1",
    "alpha2",
    "alpha3",
    "alpha4",
    "alpha5",
    "lambda",
    "k",
    "omega",
    "g",
    "c",
    "max_constraint",
    "max_normalized",
    "iterations",
    "converged",
    "classification",
    "eta",
    "xi",
];

pub fn write_scan<W: Write>(w: W, rows: &[ScanRow]) -> CliResult<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(SCAN_HEADER)?;
    for row in rows {
        let p = &row.outcome.params;
        let (eta, xi) = match row.classification {
            Some(Classification::Solution(s)) => (
                s.eta().map(|v| v.to_string()).unwrap_or_default(),
                s.xi().map(|v| v.to_string()).unwrap_or_default(),
            ),
            _ => (String::new(), String::new()),
        };
        let mut rec: Vec<String> = vec![row.index.to_string()];
        rec.extend(
            [
                p.alpha1, p.alpha2, p.alpha3, p.alpha4, p.alpha5, p.lambda, p.k, p.omega, p.g, p.c,
            ]
            .map(sci),
        );
        rec.push(sci(row.outcome.max_constraint));
        rec.push(sci(row.normalized_max));
        rec.push(row.outcome.iterations.to_string());
        rec.push(row.outcome.converged.to_string());
        rec.push(row.label().to_string());
        rec.push(eta);
        rec.push(xi);
        csv.write_record(&rec)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn cmd_scan(a: &ScanArgs) -> CliResult<i32> {
    check_positive("tol", a.tol)?;
    if a.seeds == 0 {
        return Err(CliError::Usage("--seeds must be at least 1".into()));
    }
    let r = resolve(&a.params)?;
    let cfg = ScanConfig {
        base: r.params,
        seeds: a.seeds,
        seed: a.seed,
        tol: a.tol,
    };
    let rows = run_scan(&cfg);
    write_scan(sink(&a.out)?, &rows)?;
    let summary = tally(&rows)
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join(", ");
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}
