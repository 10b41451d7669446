//! One function per subcommand: compute, build the run record and the CSV
//! table, write whichever was asked for.

use std::time::Instant;

use eqdist_core::integrals::default_points;
use eqdist_core::sampling::{moments, sample_tally};
use eqdist_core::signs::ORACLE_MAX_N;
use eqdist_core::{
    descartes_bounds, distribution_closed, poisson_approx, DistributionSpec, Family,
    IntegrationOptions, SignBias, SignChangeTable, SignMethod, GENERATOR, INTEGRATION_GENERATOR,
};

use crate::output::{display, full, open_output, opt_display, opt_full, Table};
use crate::record::{CompareRow, Parameters, Results, RunRecord, SCHEMA_VERSION};
use crate::{
    BoundsArgs, CliError, CompareArgs, ExactArgs, Format, OutputArgs, SampleArgs, SignMethodArg,
    SignsArgs,
};

pub const SAMPLE_HEADER: &[&str] = &[
    "d",
    "m",
    "method",
    "distribution",
    "p",
    "stderr",
    "p_full",
    "stderr_full",
];

pub const EXACT_HEADER: &[&str] = &[
    "d",
    "m",
    "k",
    "l",
    "quantity",
    "distribution",
    "p",
    "stderr",
    "p_full",
    "stderr_full",
];

pub const SIGNS_HEADER: &[&str] = &[
    "n",
    "k",
    "alpha",
    "symmetric",
    "recursive",
    "explicit",
    "oracle",
    "max_discrepancy",
    "symmetric_full",
    "recursive_full",
    "explicit_full",
    "oracle_full",
];

pub const COMPARE_HEADER: &[&str] = &[
    "d",
    "m",
    "method",
    "distribution",
    "value",
    "stderr",
    "value_full",
    "stderr_full",
];

pub const BOUNDS_HEADER: &[&str] = &[
    "d",
    "m",
    "alpha",
    "lower",
    "upper",
    "pinned",
    "lower_full",
    "upper_full",
];

/// Failed samples or discarded points above this fraction make the run a
/// numeric failure.
const FAILURE_RATE: f64 = 1e-3;

fn check_players(d: usize) -> Result<(), CliError> {
    if d < 2 {
        return Err(CliError::Usage(format!(
            "group size d must be at least 2, got {d}"
        )));
    }
    Ok(())
}

fn resolve_seed(seed: Option<u64>) -> (u64, &'static str) {
    match seed {
        Some(s) => (s, "flag"),
        None => {
            let s = rand::random::<u64>();
            log::warn!("no --seed given; using entropy seed {s}");
            (s, "entropy")
        }
    }
}

fn emit(out: &OutputArgs, record: &RunRecord, table: &Table) -> Result<(), CliError> {
    let mut w = open_output(out.out.as_deref())?;
    match out.format {
        Format::Csv => table.write(&mut w)?,
        Format::Json => record.write_json(&mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn record(command: &str, parameters: Parameters, results: Results, start: Instant) -> RunRecord {
    RunRecord {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        parameters,
        results,
        duration_secs: start.elapsed().as_secs_f64(),
    }
}

pub(crate) fn check_rate(what: &str, bad: u64, total: u64) -> Result<(), CliError> {
    if total > 0 && bad as f64 > FAILURE_RATE * total as f64 {
        return Err(CliError::Numeric(format!(
            "{bad} of {total} {what} could not be evaluated"
        )));
    }
    Ok(())
}

pub fn sample(a: &SampleArgs, threads: usize) -> Result<(), CliError> {
    let start = Instant::now();
    check_players(a.players)?;
    let family = Family::from(a.dist);
    let spec = DistributionSpec::new(family, a.scale)?;
    let (seed, source) = resolve_seed(a.seed);
    let tally = sample_tally(&spec, a.players, a.samples, seed)?;
    let dist = tally.to_distribution();
    let mut table = Table::new(SAMPLE_HEADER);
    for m in 0..dist.d {
        table.push(vec![
            dist.d.to_string(),
            m.to_string(),
            dist.method.to_string(),
            family.to_string(),
            display(dist.p[m]),
            display(dist.stderr[m]),
            full(dist.p[m]),
            full(dist.stderr[m]),
        ]);
    }
    let params = Parameters {
        players: Some(a.players),
        distribution: Some(family),
        scale: Some(a.scale),
        samples: Some(a.samples),
        seed: Some(seed),
        seed_source: Some(source.into()),
        generator: Some(GENERATOR.into()),
        threads,
        ..Default::default()
    };
    let results = Results::Sample {
        moments: moments(&dist),
        distribution: dist,
        n_fallback: tally.n_fallback,
        n_failed: tally.n_failed,
    };
    emit(&a.output, &record("sample", params, results, start), &table)?;
    check_rate("samples", tally.n_failed, tally.n_samples)
}

pub fn exact(a: &ExactArgs, threads: usize) -> Result<(), CliError> {
    let start = Instant::now();
    check_players(a.players)?;
    if a.players > a.max_players {
        return Err(CliError::Usage(format!(
            "d = {} exceeds the closed-form cap of {}: the integrals are (d-1)-dimensional and \
             the number of root configurations grows with d, so the cost rises steeply \
             (raise --max-players to override)",
            a.players, a.max_players
        )));
    }
    let family = Family::from(a.dist);
    let spec = DistributionSpec::new(family, a.scale)?;
    let (seed, source) = resolve_seed(a.seed);
    let points = a.points.unwrap_or_else(|| default_points(a.players));
    let opts = IntegrationOptions::new(points, seed).with_point_set(a.point_set.into());
    let cf = distribution_closed(a.players, &spec, &opts)?;
    let d = a.players;

    let mut table = Table::new(EXACT_HEADER);
    for m in 0..d {
        table.push(vec![
            d.to_string(),
            m.to_string(),
            String::new(),
            String::new(),
            "p_m".into(),
            family.to_string(),
            display(cf.distribution.p[m]),
            display(cf.distribution.stderr[m]),
            full(cf.distribution.p[m]),
            full(cf.distribution.stderr[m]),
        ]);
    }
    for t in &cf.terms {
        table.push(vec![
            d.to_string(),
            t.m.to_string(),
            t.k.to_string(),
            t.negatives.to_string(),
            "p_m_2k_l".into(),
            family.to_string(),
            display(t.estimate.value),
            display(t.estimate.stderr),
            full(t.estimate.value),
            full(t.estimate.stderr),
        ]);
    }
    let total = cf.total_probability();
    let params = Parameters {
        players: Some(d),
        distribution: Some(family),
        scale: Some(a.scale),
        points: Some(points),
        point_set: Some(a.point_set.into()),
        exact_max_players: Some(a.max_players),
        seed: Some(seed),
        seed_source: Some(source.into()),
        generator: Some(INTEGRATION_GENERATOR.into()),
        threads,
        ..Default::default()
    };
    emit(
        &a.output,
        &record("exact", params, Results::Exact { closed_form: cf }, start),
        &table,
    )?;
    check_rate("integration points", total.n_discarded, total.n_points)
}

pub fn signs(a: &SignsArgs, threads: usize) -> Result<(), CliError> {
    let start = Instant::now();
    let alpha = SignBias::new(a.alpha)?;
    let methods: Vec<SignMethod> = match a.method {
        SignMethodArg::Symmetric => vec![SignMethod::Symmetric],
        SignMethodArg::Recursive => vec![SignMethod::Recursive],
        SignMethodArg::Explicit => vec![SignMethod::Explicit],
        SignMethodArg::Oracle => vec![SignMethod::Oracle],
        SignMethodArg::All => {
            let mut m = Vec::new();
            if alpha.is_symmetric() {
                m.push(SignMethod::Symmetric);
            }
            m.extend([SignMethod::Recursive, SignMethod::Explicit]);
            if a.n <= ORACLE_MAX_N {
                m.push(SignMethod::Oracle);
            } else {
                log::warn!(
                    "n = {} is above the enumeration cap {ORACLE_MAX_N}; oracle column left empty",
                    a.n
                );
            }
            m
        }
    };
    let tables = methods
        .iter()
        .map(|&m| SignChangeTable::build(alpha, a.n, m))
        .collect::<eqdist_core::Result<Vec<_>>>()?;
    let column = |method: SignMethod| tables.iter().find(|t| t.method == method);
    let order = [
        SignMethod::Symmetric,
        SignMethod::Recursive,
        SignMethod::Explicit,
        SignMethod::Oracle,
    ];

    let mut table = Table::new(SIGNS_HEADER);
    let mut max_discrepancy: Option<f64> = None;
    for n in 0..=a.n {
        for k in 0..=n {
            let values: Vec<Option<f64>> = order
                .iter()
                .map(|&m| column(m).map(|t| t.get(k, n)))
                .collect();
            let present: Vec<f64> = values.iter().flatten().copied().collect();
            let spread = (present.len() > 1).then(|| {
                let hi = present.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lo = present.iter().copied().fold(f64::INFINITY, f64::min);
                hi - lo
            });
            if let Some(s) = spread {
                max_discrepancy = Some(max_discrepancy.map_or(s, |m| m.max(s)));
            }
            let mut row = vec![n.to_string(), k.to_string(), display(a.alpha)];
            row.extend(values.iter().map(|v| opt_display(*v)));
            row.push(spread.map(|s| format!("{s:.3e}")).unwrap_or_default());
            row.extend(values.iter().map(|v| opt_full(*v)));
            table.push(row);
        }
    }
    if let Some(m) = max_discrepancy {
        eprintln!("max discrepancy across methods: {m:.3e}");
    }
    let params = Parameters {
        n: Some(a.n),
        alpha: Some(a.alpha),
        sign_method: Some(format!("{:?}", a.method).to_lowercase()),
        threads,
        ..Default::default()
    };
    let results = Results::Signs {
        tables,
        max_discrepancy,
    };
    emit(&a.output, &record("signs", params, results, start), &table)
}

pub fn compare(a: &CompareArgs, threads: usize) -> Result<(), CliError> {
    let start = Instant::now();
    if a.players_max < 2 {
        return Err(CliError::Usage("--players-max must be at least 2".into()));
    }
    let family = Family::from(a.dist);
    let spec = DistributionSpec::new(family, a.scale)?;
    let (seed, source) = resolve_seed(a.seed);

    let mut rows = Vec::new();
    let mut sampling = Vec::new();
    let mut closed = Vec::new();
    let mut approximation = Vec::new();
    let (mut failed, mut drawn) = (0, 0);
    let (mut discarded, mut points_used) = (0, 0);
    for d in 2..=a.players_max {
        log::info!("d = {d}");
        let tally = sample_tally(&spec, d, a.samples, seed)?;
        failed += tally.n_failed;
        drawn += tally.n_samples;
        let s = tally.to_distribution();
        let cf = if d <= a.exact_max_players {
            let points = a.points.unwrap_or_else(|| default_points(d));
            let cf = distribution_closed(d, &spec, &IntegrationOptions::new(points, seed))?;
            let total = cf.total_probability();
            discarded += total.n_discarded;
            points_used += total.n_points;
            Some(cf.distribution)
        } else {
            None
        };
        let b = descartes_bounds(d, SignBias::new(spec.sign_probability())?)?;
        let (lower, upper) = (b.lower(), b.upper_tight());
        let approx = poisson_approx(d)?;
        for m in 0..d {
            let (c, cse) = match &cf {
                Some(c) => (Some(c.p[m]), Some(c.stderr[m])),
                None => (None, None),
            };
            rows.push(CompareRow {
                d,
                m,
                sampling: s.p[m],
                sampling_stderr: s.stderr[m],
                closed_form: c,
                closed_form_stderr: cse,
                descartes_lower: lower[m],
                descartes_upper: upper[m],
                poisson: approx.p_approx[m],
                gap: c.map(|c| (s.p[m] - c).abs()),
            });
        }
        sampling.push(s);
        closed.extend(cf);
        approximation.push(approx);
    }

    let mut table = Table::new(COMPARE_HEADER);
    for r in &rows {
        let mut push = |method: &str, value: Option<f64>, stderr: Option<f64>| {
            if let Some(v) = value {
                table.push(vec![
                    r.d.to_string(),
                    r.m.to_string(),
                    method.to_string(),
                    family.to_string(),
                    display(v),
                    opt_display(stderr),
                    full(v),
                    opt_full(stderr),
                ]);
            }
        };
        push("sampling", Some(r.sampling), Some(r.sampling_stderr));
        push("closed-form", r.closed_form, r.closed_form_stderr);
        push("descartes-lower", Some(r.descartes_lower), None);
        push("descartes-upper", Some(r.descartes_upper), None);
        push("poisson", Some(r.poisson), None);
        push("gap", r.gap, None);
    }
    let params = Parameters {
        players_max: Some(a.players_max),
        distribution: Some(family),
        scale: Some(a.scale),
        samples: Some(a.samples),
        points: a.points,
        exact_max_players: Some(a.exact_max_players),
        seed: Some(seed),
        seed_source: Some(source.into()),
        generator: Some(format!(
            "sampling: {GENERATOR}; integration: {INTEGRATION_GENERATOR}"
        )),
        threads,
        ..Default::default()
    };
    let results = Results::Compare {
        rows,
        sampling,
        closed_form: closed,
        approximation,
    };
    emit(
        &a.output,
        &record("compare", params, results, start),
        &table,
    )?;
    check_rate("samples", failed, drawn)?;
    check_rate("integration points", discarded, points_used)
}

pub fn bounds(a: &BoundsArgs, threads: usize) -> Result<(), CliError> {
    let start = Instant::now();
    let b = descartes_bounds(a.players, SignBias::new(a.alpha)?)?;
    let (lower, upper) = (b.lower(), b.upper_tight());
    let mut table = Table::new(BOUNDS_HEADER);
    for m in 0..b.d {
        table.push(vec![
            b.d.to_string(),
            m.to_string(),
            display(a.alpha),
            display(lower[m]),
            display(upper[m]),
            opt_display(b.pinned(m)),
            full(lower[m]),
            full(upper[m]),
        ]);
    }
    let params = Parameters {
        players: Some(a.players),
        alpha: Some(a.alpha),
        threads,
        ..Default::default()
    };
    emit(
        &a.output,
        &record("bounds", params, Results::Bounds { bounds: b }, start),
        &table,
    )
}
