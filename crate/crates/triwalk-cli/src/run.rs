//! Flag resolution and the five report-producing commands.

use num_complex::Complex64;
use triwalk::limit::{self, LimitDistribution};
use triwalk::uniform::{self, UniformClass};
use triwalk::{CoinOperator, CoinParameters, ProbabilityDistribution, SpinVector, WalkState};

use crate::expr;
use crate::output::{Cell, Meta, Report};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values: exit code 2.
    Config(String),
    /// A library invariant broke mid-run (norm drift): exit code 3.
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn config_err<T>(message: impl Into<String>) -> Result<T> {
    Err(CliError::Config(message.into()))
}

pub struct CoinFlags<'a> {
    pub theta: Option<&'a str>,
    pub grover: bool,
    pub c_s: Option<&'a str>,
}

/// Resolves --theta / --grover / --c-s; `None` when nothing was given.
pub fn resolve_coin(flags: &CoinFlags) -> Result<Option<CoinParameters>> {
    if let Some(text) = flags.theta {
        let theta = expr::parse(text).map_err(|e| CliError::Config(format!("--theta: {e}")))?;
        return CoinParameters::from_theta(theta)
            .map(Some)
            .map_err(|e| CliError::Config(e.to_string()));
    }
    if flags.grover {
        return Ok(Some(CoinParameters::grover()));
    }
    if let Some(text) = flags.c_s {
        let values = expr::parse_list(text).map_err(|e| CliError::Config(format!("--c-s: {e}")))?;
        if values.len() != 2 {
            return config_err("--c-s takes exactly two comma-separated values");
        }
        let (c, s) = (values[0], values[1]);
        let radius = c.hypot(s);
        if (radius - 1.0).abs() > 1e-9 {
            return config_err(format!("--c-s ({c}, {s}) is not on the unit circle"));
        }
        return CoinParameters::from_cos_sin(c / radius, s / radius)
            .map(Some)
            .map_err(|e| CliError::Config(e.to_string()));
    }
    Ok(None)
}

pub fn require_coin(flags: &CoinFlags) -> Result<CoinParameters> {
    match resolve_coin(flags)? {
        Some(params) => Ok(params),
        None => config_err("give the coin as --theta EXPR, --grover, or --c-s C,S"),
    }
}

/// Parses --spin: 3 expressions for a real triple, 6 for (re, im) pairs.
/// The amplitudes must already be normalized to 1e-9; they are then snapped
/// to exact unit norm.
pub fn resolve_spin(text: &str) -> Result<SpinVector> {
    let values = expr::parse_list(text).map_err(|e| CliError::Config(format!("--spin: {e}")))?;
    let components: [Complex64; 3] = match values.len() {
        3 => [
            Complex64::new(values[0], 0.0),
            Complex64::new(values[1], 0.0),
            Complex64::new(values[2], 0.0),
        ],
        6 => [
            Complex64::new(values[0], values[1]),
            Complex64::new(values[2], values[3]),
            Complex64::new(values[4], values[5]),
        ],
        n => {
            return config_err(format!(
                "--spin takes 3 values (real) or 6 (re,im pairs), got {n}"
            ))
        }
    };
    let norm = components.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return config_err(format!("--spin has norm {norm}, expected 1 within 1e-9"));
    }
    SpinVector::normalized(components[0], components[1], components[2])
        .map_err(|e| CliError::Config(e.to_string()))
}

fn check_norm(dist: &ProbabilityDistribution) -> Result<()> {
    let drift = (dist.total() - 1.0).abs();
    if drift >= 1e-10 {
        return Err(CliError::Internal(format!(
            "norm drift {drift:e} beyond 1e-10 after evolution"
        )));
    }
    Ok(())
}

fn check_window(window: i64) -> Result<i64> {
    if window < 0 {
        return config_err("--window must be non-negative");
    }
    Ok(window)
}

fn base_metadata(command: &str, params: &CoinParameters, spin: &SpinVector) -> Vec<(String, Meta)> {
    vec![
        ("command".to_string(), Meta::Text(command.to_string())),
        ("theta".to_string(), Meta::Float(params.theta())),
        ("c".to_string(), Meta::Float(params.c())),
        ("s".to_string(), Meta::Float(params.s())),
        ("spin_alpha".to_string(), Meta::Complex(spin.alpha())),
        ("spin_beta".to_string(), Meta::Complex(spin.beta())),
        ("spin_gamma".to_string(), Meta::Complex(spin.gamma())),
    ]
}

fn limit_metadata(params: &CoinParameters, spin: &SpinVector) -> Vec<(String, Meta)> {
    let (a, b) = limit::ab_constants(params, spin);
    vec![
        ("nu".to_string(), Meta::Float(limit::nu(params))),
        ("a".to_string(), Meta::Complex(a)),
        ("b".to_string(), Meta::Complex(b)),
        (
            "delta".to_string(),
            Meta::Float(limit::localization_mass(params, spin)),
        ),
    ]
}

pub fn cmd_simulate(
    params: &CoinParameters,
    spin: &SpinVector,
    time: u32,
    window: Option<i64>,
) -> Result<Report> {
    let state = WalkState::localized(spin).evolve(&CoinOperator::build(params), time);
    let dist = state.position_distribution();
    check_norm(&dist)?;

    let half = check_window(window.unwrap_or(i64::from(time)))?;
    let rows = (-half..=half)
        .map(|x| {
            vec![
                Cell::Int(x),
                Cell::Float(dist.mass(x)),
                Cell::Float(state.component_probability(x, 0)),
                Cell::Float(state.component_probability(x, 1)),
                Cell::Float(state.component_probability(x, 2)),
            ]
        })
        .collect();

    let mut metadata = base_metadata("simulate", params, spin);
    metadata.push(("time".to_string(), Meta::Int(i64::from(time))));
    metadata.push(("window".to_string(), Meta::Int(half)));
    Ok(Report {
        metadata,
        columns: vec!["x", "p", "p0", "p1", "p2"],
        rows,
    })
}

pub fn cmd_limit(params: &CoinParameters, spin: &SpinVector, window: i64) -> Result<Report> {
    let half = check_window(window)?;
    let rows = (-half..=half)
        .map(|x| {
            vec![
                Cell::Int(x),
                Cell::Float(limit::limit_measure_origin(params, spin, x)),
            ]
        })
        .collect();

    let mut metadata = base_metadata("limit", params, spin);
    metadata.extend(limit_metadata(params, spin));
    metadata.push(("window".to_string(), Meta::Int(half)));
    Ok(Report {
        metadata,
        columns: vec!["x", "limit"],
        rows,
    })
}

pub fn cmd_compare(
    params: &CoinParameters,
    spin: &SpinVector,
    time: u32,
    window: i64,
) -> Result<Report> {
    if time < 1 {
        return config_err("--time must be at least 1 for compare");
    }
    let half = check_window(window)?;
    let coin = CoinOperator::build(params);
    let mut state = WalkState::localized(spin).evolve(&coin, time);
    let snapshot = state.position_distribution();
    check_norm(&snapshot)?;

    // Time average over [time, time + 100] to cancel the finite-t
    // oscillation around the limit.
    let cells = (2 * half + 1) as usize;
    let mut sums = vec![0.0f64; cells];
    for step in 0..=100 {
        let dist = state.position_distribution();
        for (i, slot) in sums.iter_mut().enumerate() {
            *slot += dist.mass(i as i64 - half);
        }
        if step < 100 {
            state = state.step(&coin);
        }
    }

    let mut max_error: f64 = 0.0;
    let mut averaged_error: f64 = 0.0;
    let mut rows = Vec::with_capacity(cells);
    for (i, &sum) in sums.iter().enumerate() {
        let x = i as i64 - half;
        let analytic = limit::limit_measure_origin(params, spin, x);
        let simulated = snapshot.mass(x);
        let error = (simulated - analytic).abs();
        max_error = max_error.max(error);
        averaged_error = averaged_error.max((sum / 101.0 - analytic).abs());
        rows.push(vec![
            Cell::Int(x),
            Cell::Float(simulated),
            Cell::Float(analytic),
            Cell::Float(error),
        ]);
    }

    let mut metadata = base_metadata("compare", params, spin);
    metadata.extend(limit_metadata(params, spin));
    metadata.push(("time".to_string(), Meta::Int(i64::from(time))));
    metadata.push(("window".to_string(), Meta::Int(half)));
    metadata.push(("max_error".to_string(), Meta::Float(max_error)));
    metadata.push((
        "time_avg_max_error".to_string(),
        Meta::Float(averaged_error),
    ));
    Ok(Report {
        metadata,
        columns: vec!["x", "simulated", "limit", "abs_error"],
        rows,
    })
}

pub fn cmd_rescaled(params: &CoinParameters, spin: &SpinVector, time: u32) -> Result<Report> {
    if time < 1 {
        return config_err("--time must be at least 1 for rescaled");
    }
    let dist = WalkState::localized(spin)
        .evolve(&CoinOperator::build(params), time)
        .position_distribution();
    check_norm(&dist)?;
    let limit_dist = LimitDistribution::new(params, spin);

    const GRID: usize = 400;
    let cumulative: Vec<(i64, f64)> = dist
        .iter()
        .scan(0.0, |acc, (x, mass)| {
            *acc += mass;
            Some((x, *acc))
        })
        .collect();
    let empirical = |y: f64| -> f64 {
        let cut = (y * f64::from(time)).floor() as i64;
        match cumulative.binary_search_by_key(&cut, |&(x, _)| x) {
            Ok(i) => cumulative[i].1,
            Err(0) => 0.0,
            Err(i) => cumulative[i - 1].1,
        }
    };
    let rows = (0..GRID)
        .map(|i| {
            let y = -1.0 + 2.0 * i as f64 / (GRID as f64 - 1.0);
            vec![
                Cell::Float(y),
                Cell::Float(empirical(y)),
                Cell::Float(limit_dist.cdf(y)),
            ]
        })
        .collect();

    let moment = |r: u32| -> f64 {
        dist.iter()
            .map(|(x, m)| (x as f64 / f64::from(time)).powi(r as i32) * m)
            .sum()
    };

    let mut metadata = base_metadata("rescaled", params, spin);
    metadata.extend(limit_metadata(params, spin));
    metadata.push(("time".to_string(), Meta::Int(i64::from(time))));
    metadata.push((
        "support_half_width".to_string(),
        Meta::Float(limit_dist.support_half_width()),
    ));
    metadata.push((
        "ks_distance".to_string(),
        Meta::Float(limit::rescaled_cdf_distance(&dist, time, &limit_dist, GRID)),
    ));
    metadata.push(("moment1_empirical".to_string(), Meta::Float(moment(1))));
    metadata.push((
        "moment1_limit".to_string(),
        Meta::Float(limit_dist.moment(1)),
    ));
    metadata.push(("moment2_empirical".to_string(), Meta::Float(moment(2))));
    metadata.push((
        "moment2_limit".to_string(),
        Meta::Float(limit_dist.moment(2)),
    ));
    Ok(Report {
        metadata,
        columns: vec!["x", "empirical_cdf", "limit_cdf"],
        rows,
    })
}

fn class_text(class: UniformClass) -> &'static str {
    match class {
        UniformClass::TwoNPoints => "2n-point-uniform",
        UniformClass::TwoNPlusOnePoints => "2n+1-point-uniform",
        UniformClass::NonUniform => "non-uniform",
    }
}

pub fn cmd_uniform(
    params: &CoinParameters,
    spin: &SpinVector,
    example: &str,
    n: u32,
    time: u32,
    window: Option<i64>,
) -> Result<Report> {
    if n < 1 {
        return config_err("--n must be at least 1");
    }
    let margin = check_window(window.unwrap_or(10))?;

    let envelope = uniform::comb_envelope(n, params);
    let start = uniform::delocalized_initial_state(&envelope, params, spin)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let report = uniform::plateau_report(n, params, spin);

    // Convergence trace at fixed checkpoints up to the requested time.
    let mut checkpoints: Vec<u32> = [100u32, 200, 500, 1000, 2000, 5000]
        .into_iter()
        .filter(|&c| c <= time)
        .collect();
    if checkpoints.last() != Some(&time) {
        checkpoints.push(time);
    }

    let coin = CoinOperator::build(params);
    let plateau_error = |dist: &ProbabilityDistribution| -> f64 {
        (report.support_lo..=report.support_hi)
            .map(|x| (dist.mass(x) - uniform::comb_limit_measure(n, params, spin, x)).abs())
            .fold(0.0f64, f64::max)
    };

    let mut trace = Vec::new();
    let mut state = start;
    let mut now = 0u32;
    for &checkpoint in &checkpoints {
        state = state.evolve(&coin, checkpoint - now);
        now = checkpoint;
        trace.push((checkpoint, plateau_error(&state.position_distribution())));
    }
    let final_dist = state.position_distribution();
    check_norm(&final_dist)?;

    let lo = report.support_lo.min(envelope.support_lo() - 1) - margin;
    let hi = report.support_hi.max(envelope.support_hi() + 1) + margin;
    let rows = (lo..=hi)
        .map(|x| {
            vec![
                Cell::Int(x),
                Cell::Float(final_dist.mass(x)),
                Cell::Float(uniform::comb_limit_measure(n, params, spin, x)),
            ]
        })
        .collect();

    let mut metadata = base_metadata("uniform", params, spin);
    metadata.extend(limit_metadata(params, spin));
    metadata.push(("example".to_string(), Meta::Text(example.to_string())));
    metadata.push(("n".to_string(), Meta::Int(i64::from(n))));
    metadata.push(("time".to_string(), Meta::Int(i64::from(time))));
    metadata.push((
        "classification".to_string(),
        Meta::Text(class_text(report.class).to_string()),
    ));
    metadata.push(("plateau".to_string(), Meta::Float(report.plateau)));
    metadata.push(("support_lo".to_string(), Meta::Int(report.support_lo)));
    metadata.push(("support_hi".to_string(), Meta::Int(report.support_hi)));
    metadata.push(("total_mass".to_string(), Meta::Float(report.total_mass)));
    for (checkpoint, error) in trace {
        metadata.push((
            format!("trace_t{checkpoint:05}_max_error"),
            Meta::Float(error),
        ));
    }
    Ok(Report {
        metadata,
        columns: vec!["x", "simulated", "limit"],
        rows,
    })
}
