//! Turning flags into ansatz parameters and sampling grids.

use std::fmt;

use ymwave_core::{AnsatzParams, FamilySolution, Grid, Samples, Sign};

use crate::args::{FamilyArg, ParamArgs};

/// Failure of a command. Usage errors exit with status 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
    Csv(csv::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Csv(e) => write!(f, "csv error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

impl From<ymwave_core::Error> for CliError {
    fn from(e: ymwave_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parameters resolved from the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub params: AnsatzParams,
    /// The family constructor used, if any.
    pub family: Option<FamilySolution>,
}

fn sign(name: &str, v: f64) -> CliResult<Sign> {
    Sign::from_value(v).map_err(|_| CliError::Usage(format!("--{name} must be 1 or -1, got {v}")))
}

pub fn resolve(a: &ParamArgs) -> CliResult<Resolved> {
    let k = a.k.unwrap_or(1.0);
    let mut resolved = match a.family {
        Some(fam) => {
            let alpha4 = a.alpha4.unwrap_or(1.0);
            let sol = match fam {
                FamilyArg::I => FamilySolution::linear(k, alpha4, a.lambda, a.g, a.c)?,
                FamilyArg::II => FamilySolution::self_interacting(
                    k,
                    alpha4,
                    a.lambda,
                    a.g,
                    sign("eta", a.eta)?,
                    sign("xi", a.xi)?,
                    a.c,
                )?,
                FamilyArg::III => FamilySolution::pure_gauge(
                    k,
                    a.omega.unwrap_or(k * a.c),
                    alpha4,
                    a.lambda,
                    a.g,
                    sign("eta", a.eta)?,
                    a.c,
                )?,
            };
            Resolved {
                params: sol.params(),
                family: Some(sol),
            }
        }
        None => Resolved {
            params: AnsatzParams {
                alpha1: a.alpha1.unwrap_or(0.0),
                alpha2: a.alpha2.unwrap_or(0.0),
                alpha3: a.alpha3.unwrap_or(0.0),
                alpha4: a.alpha4.unwrap_or(0.0),
                alpha5: a.alpha5.unwrap_or(0.0),
                lambda: a.lambda,
                k,
                omega: k * a.c,
                g: a.g,
                c: a.c,
            },
            family: None,
        },
    };
    if let Some(w) = a.omega {
        resolved.params.omega = w;
    }
    if !resolved.params.is_finite() {
        return Err(CliError::Usage("parameters must be finite".into()));
    }
    Ok(resolved)
}

fn parse_axis(spec: &str, name: &str) -> CliResult<Samples> {
    let bad = || {
        CliError::Usage(format!(
            "bad {name} range {spec:?}: expected start:end:count"
        ))
    };
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].parse().map_err(|_| bad())?;
    let end: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(CliError::Usage(format!("{name} count must be at least 1")));
    }
    Ok(Samples::new(start, end, count)?)
}

/// Parse `"t0:t1:n,y0:y1:n,z0:z1:n"`.
pub fn parse_grid(spec: &str) -> CliResult<Grid> {
    let axes: Vec<&str> = spec.split(',').collect();
    if axes.len() != 3 {
        return Err(CliError::Usage(format!(
            "bad grid {spec:?}: expected \"t0:t1:n,y0:y1:n,z0:z1:n\""
        )));
    }
    Ok(Grid::new(
        parse_axis(axes[0], "t")?,
        parse_axis(axes[1], "y")?,
        parse_axis(axes[2], "z")?,
    ))
}

pub fn check_positive(name: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive, got {v}"
        )))
    }
}
