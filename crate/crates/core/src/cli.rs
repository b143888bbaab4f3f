//! Command-line front end: configuration, the four subcommands, and output
//! files.
//!
//! Every command writes its files into the output directory and returns an
//! [`Outcome`]; the binary maps `Outcome::all_pass` to the exit status.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::Rng;

use crate::arith::{
    dirichlet_convolve, mangoldt_from_definition, mobius_recursive, verify_mangoldt_sum_scaled,
    verify_selberg_scaled, verify_unit_law, ArithTable, DenseArithFn,
};
use crate::error::{Error, Result};
use crate::estimates::{
    c_euler_maclaurin, compute_c, compute_gamma, divisor_series, elementary_series, erdos_karamata_series,
    gamma_integral_accelerated, mobius_series, u_series, ElementaryKind, MobiusKind,
};
use crate::numeric::{fmt_sig15, log_spaced};
use crate::report::{write_reports, write_series, OutputFormat, RemainderSeries, VerificationReport};
use crate::summatory::{
    divisor_summatory, divisor_summatory_direct, mertens_prefix, mertens_sublinear, prime_count, psi_prefix,
    psi_sublinear,
};
use crate::tauberian::{
    build_instance, check_condition_s1, corollary_e2_check, crossing_pairs, exp_transform, fixtures,
    isoperimetric_check, lemma_e1_dichotomy, measure_e_observed, optimize_s_bounds, prop_estim_checks,
    theorem1_report, theorem1_series, weighted_inversion_residual, EstimBands, InstanceLabel, WindowParams,
};
use crate::transforms::{inverse_mobius_transform, tatuzawa_iseki_residual, RealFn};

/// Environment variable naming a flat `key=value` config file.
pub const CONFIG_ENV: &str = "TLAB_CONFIG";

/// Largest x used by the quadratic-cost identity checks (recursive μ,
/// convolution laws, inversion round trips).
const SMALL_RANGE: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub limit: usize,
    pub samples: usize,
    pub min_x: f64,
    /// Defaults to `limit` when unset.
    pub max_x: Option<f64>,
    pub delta: f64,
    pub tol_scale: f64,
    pub format: OutputFormat,
    pub out: PathBuf,
    pub seed: u64,
    pub label: InstanceLabel,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            limit: 100_000,
            samples: 50,
            min_x: 100.0,
            max_x: None,
            delta: 1e-3,
            tol_scale: 1.0,
            format: OutputFormat::Csv,
            out: PathBuf::from("tlab-out"),
            seed: 20_240_601,
            label: InstanceLabel::Psi,
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Usage(format!("invalid value `{value}` for `{key}`")))
}

impl RunConfig {
    /// Set one key; names match the command-line flags (`min-x` or `min_x`).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('_', "-");
        match key.as_str() {
            "limit" => self.limit = parse_value(&key, value)?,
            "samples" => self.samples = parse_value(&key, value)?,
            "min-x" => self.min_x = parse_value(&key, value)?,
            "max-x" => self.max_x = Some(parse_value(&key, value)?),
            "delta" => self.delta = parse_value(&key, value)?,
            "tol-scale" => self.tol_scale = parse_value(&key, value)?,
            "format" => self.format = value.trim().parse().map_err(Error::Usage)?,
            "out" => self.out = PathBuf::from(value.trim()),
            "seed" => self.seed = parse_value(&key, value)?,
            "label" => self.label = value.trim().parse()?,
            _ => return Err(Error::Usage(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Apply a flat `key=value` file; blank lines and `#` comments are skipped.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("config line {}: expected key=value", no + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn apply_flags(&mut self, flags: &Flags) -> Result<()> {
        let pairs: [(&str, Option<String>); 10] = [
            ("limit", flags.limit.map(|v| v.to_string())),
            ("samples", flags.samples.map(|v| v.to_string())),
            ("min-x", flags.min_x.map(|v| v.to_string())),
            ("max-x", flags.max_x.map(|v| v.to_string())),
            ("delta", flags.delta.map(|v| v.to_string())),
            ("tol-scale", flags.tol_scale.map(|v| v.to_string())),
            ("format", flags.format.clone()),
            ("out", flags.out.as_ref().map(|p| p.display().to_string())),
            ("seed", flags.seed.map(|v| v.to_string())),
            ("label", flags.label.clone()),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                self.set(k, &v)?;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.limit < 1 {
            return Err(Error::Usage("limit must be at least 1".into()));
        }
        if !(self.min_x >= 2.0) {
            return Err(Error::Usage(format!("min-x must be at least 2, got {}", self.min_x)));
        }
        if self.samples < 1 {
            return Err(Error::Usage("samples must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta <= 1e-2) {
            return Err(Error::Usage(format!("delta must lie in (0, 0.01], got {}", self.delta)));
        }
        if !(self.tol_scale > 0.0 && self.tol_scale.is_finite()) {
            return Err(Error::Usage(format!("tol-scale must be positive, got {}", self.tol_scale)));
        }
        if let Some(m) = self.max_x {
            if !(m >= 1.0 && m.is_finite()) {
                return Err(Error::Usage(format!("max-x must be at least 1, got {m}")));
            }
        }
        Ok(())
    }

    /// Upper end of the sample range, never beyond the table.
    pub fn effective_max_x(&self) -> f64 {
        self.max_x.unwrap_or(self.limit as f64).min(self.limit as f64)
    }

    /// Log-spaced sample points in `[max(min-x, lo), min(max-x, hi)]`;
    /// empty when the range is empty.
    pub fn sample_points(&self, lo: f64, hi: f64) -> Vec<f64> {
        let (a, b) = (self.min_x.max(lo), self.effective_max_x().min(hi));
        if b < a {
            return Vec::new();
        }
        let mut xs = log_spaced(a, b, self.samples);
        xs.dedup();
        xs
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Sieve limit N.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// Number of log-spaced sample points.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long = "min-x", global = true)]
    pub min_x: Option<f64>,
    #[arg(long = "max-x", global = true)]
    pub max_x: Option<f64>,
    /// Grid step for the exponential substitution.
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Multiplier applied to every tolerance.
    #[arg(long = "tol-scale", global = true)]
    pub tol_scale: Option<f64>,
    /// csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// PSI, MERTENS_PLUS_FLOOR or CUSTOM.
    #[arg(long, global = true)]
    pub label: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "tlab", version, about = "Numerical checks for the elementary Tauberian route to the prime number theorem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Exact arithmetic identities up to N.
    Identities,
    /// Remainder series for the elementary and Möbius estimates.
    Estimates,
    /// The integral inequality and the exponential-substitution machinery.
    Tauberian,
    /// M(x), ψ(x), π(x) and D(x) at a single x, with timing.
    Summatory { x: u64 },
}

/// Files written and whether every report row passed.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub reports: Vec<VerificationReport>,
}

impl Outcome {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.passed())
    }
}

/// Resolve configuration: defaults, then the `TLAB_CONFIG` file, then flags.
pub fn resolve_config(flags: &Flags, config_file: Option<&Path>) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = config_file {
        cfg.apply_config_text(&fs::read_to_string(path)?)?;
    }
    cfg.apply_flags(flags)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(cli: &Cli, config_file: Option<&Path>) -> Result<Outcome> {
    let cfg = resolve_config(&cli.flags, config_file)?;
    match &cli.command {
        Command::Identities => cmd_identities(&cfg),
        Command::Estimates => cmd_estimates(&cfg),
        Command::Tauberian => cmd_tauberian(&cfg),
        Command::Summatory { x } => cmd_summatory(&cfg, *x, &mut std::io::stdout()),
    }
}

struct Writer<'a> {
    cfg: &'a RunConfig,
    outcome: Outcome,
}

impl<'a> Writer<'a> {
    fn new(cfg: &'a RunConfig) -> Result<Self> {
        fs::create_dir_all(&cfg.out)?;
        Ok(Self { cfg, outcome: Outcome::default() })
    }

    fn path(&self, stem: &str) -> PathBuf {
        self.cfg.out.join(format!("{stem}.{}", self.cfg.format.extension()))
    }

    fn series(&mut self, s: &RemainderSeries) -> Result<()> {
        let path = self.path(&s.name);
        let mut w = BufWriter::new(fs::File::create(&path)?);
        write_series(&mut w, s, self.cfg.format)?;
        w.flush()?;
        self.outcome.files.push(path);
        Ok(())
    }

    fn reports(mut self, stem: &str, reports: Vec<VerificationReport>) -> Result<Outcome> {
        let path = self.path(stem);
        let mut w = BufWriter::new(fs::File::create(&path)?);
        write_reports(&mut w, &reports, self.cfg.format)?;
        w.flush()?;
        self.outcome.files.push(path);
        self.outcome.reports = reports;
        Ok(self.outcome)
    }
}

fn range_text(lo: impl std::fmt::Display, hi: impl std::fmt::Display) -> String {
    format!("[{lo}, {hi}]")
}

pub fn cmd_identities(cfg: &RunConfig) -> Result<Outcome> {
    let writer = Writer::new(cfg)?;
    let n = cfg.limit;
    let scale = cfg.tol_scale;
    let table = ArithTable::build(n)?;
    let mut reports = vec![
        verify_unit_law(&table, n)?,
        verify_mangoldt_sum_scaled(&table, n, scale)?,
        verify_selberg_scaled(&table, n, scale)?,
    ];

    let def = mangoldt_from_definition(&table, n)?;
    let mut r = VerificationReport::new("mangoldt_definition_vs_sieve", range_text(1, n), 1e-9 * scale);
    for k in 1..=n {
        r.observe((def.get(k) - table.lambda(k)).abs() / (1.0 + (k as f64).ln()), format!("n={k}"));
    }
    reports.push(r);

    let small = n.min(SMALL_RANGE);
    let mut r = VerificationReport::new("mobius_sieve_vs_recursive", range_text(1, small), 0.0);
    for k in 1..=small {
        r.observe((mobius_recursive(k as u64)? - table.mu(k) as i64).abs() as f64, format!("n={k}"));
    }
    reports.push(r);

    let mut rng = fixtures::rng(cfg.seed);
    let mut r = VerificationReport::new("mobius_multiplicative", format!("coprime pairs with mn ≤ {n}"), 0.0);
    if n >= 6 {
        let mut tried = 0;
        while tried < 1000 {
            let a = rng.gen_range(2..=n / 2);
            let b = rng.gen_range(2..=(n / a).max(2));
            if a * b > n || gcd(a, b) != 1 {
                continue;
            }
            tried += 1;
            let v = (table.mu(a * b) as i64 - table.mu(a) as i64 * table.mu(b) as i64).abs();
            r.observe(v as f64, format!("m={a} n={b}"));
        }
    }
    reports.push(r);

    reports.extend(convolution_laws(&table, small, scale)?);
    reports.extend(inversion_checks(cfg, &table, small)?);
    writer.reports("identities", reports)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn convolution_laws(table: &ArithTable, n: usize, scale: f64) -> Result<Vec<VerificationReport>> {
    let mu = DenseArithFn::from_fn_exact(n, |k| table.mu(k) as i64);
    let one = DenseArithFn::one(n);
    let lam = DenseArithFn::from_fn_real(n, |k| table.lambda(k));
    let delta = DenseArithFn::delta(n);
    let range = range_text(1, n);

    let mut comm = VerificationReport::new("convolution_commutative", range.clone(), 1e-12 * scale);
    let (ab, ba) = (dirichlet_convolve(&mu, &lam)?, dirichlet_convolve(&lam, &mu)?);
    let mut unit = VerificationReport::new("convolution_unit", range.clone(), 0.0);
    let (ud, du) = (dirichlet_convolve(&mu, &delta)?, dirichlet_convolve(&delta, &mu)?);
    let mut assoc = VerificationReport::new("convolution_associative", range, 1e-9 * scale);
    let left = dirichlet_convolve(&dirichlet_convolve(&mu, &one)?, &lam)?;
    let right = dirichlet_convolve(&mu, &dirichlet_convolve(&one, &lam)?)?;
    for k in 1..=n {
        let loc = format!("n={k}");
        comm.observe((ab.get(k) - ba.get(k)).abs() / (1.0 + ab.get(k).abs()), &loc);
        unit.observe((ud.get(k) - mu.get(k)).abs().max((du.get(k) - mu.get(k)).abs()), &loc);
        assoc.observe((left.get(k) - right.get(k)).abs() / (1.0 + left.get(k).abs()), &loc);
    }
    Ok(vec![comm, unit, assoc])
}

/// Round trip f → F → f and the Tatuzawa–Iseki identity for 1, x, ψ and
/// M + ⌊·⌋ at sample points up to `hi`.
fn inversion_checks(cfg: &RunConfig, table: &ArithTable, hi: usize) -> Result<Vec<VerificationReport>> {
    let xs = cfg.sample_points(2.0, hi as f64);
    let range = match (xs.first(), xs.last()) {
        (Some(a), Some(b)) => range_text(fmt_sig15(*a), fmt_sig15(*b)),
        _ => "empty".into(),
    };
    let fns: [(&str, RealFn); 4] = [
        ("one", RealFn::ConstantOne),
        ("identity", RealFn::Identity),
        ("psi", RealFn::Step(build_instance(InstanceLabel::Psi, table).f)),
        ("mertens_plus_floor", RealFn::Step(build_instance(InstanceLabel::MertensPlusFloor, table).f)),
    ];
    let tol = 1e-7 * cfg.tol_scale;
    let mut out = Vec::new();
    for (name, f) in fns {
        let mut rt = VerificationReport::new(format!("inversion_round_trip_{name}"), range.clone(), tol);
        let mut ti = VerificationReport::new(format!("tatuzawa_iseki_{name}"), range.clone(), tol);
        let big_f = f.clone().mobius_transformed();
        for &x in &xs {
            let back = inverse_mobius_transform(&big_f, x, table)?;
            let want = f.eval(x);
            rt.observe((back - want).abs() / (1.0 + want.abs()), format!("x={}", fmt_sig15(x)));
            ti.observe(tatuzawa_iseki_residual(&f, x, table)?.relative_gap(), format!("x={}", fmt_sig15(x)));
        }
        out.push(rt);
        out.push(ti);
    }
    Ok(out)
}

/// Growth report for one series: violation is the top-decade max over the
/// max below the top decade, tolerance 2.
fn growth_report(s: &RemainderSeries, lo: f64, hi: f64, scale: f64) -> VerificationReport {
    let trend = s.trend(lo, hi);
    let mut r = VerificationReport::new(format!("{}_no_growth", s.name), range_text(fmt_sig15(lo), fmt_sig15(hi)), 2.0 * scale);
    let ratio = if trend.no_growth() { trend.growth_ratio() } else { f64::INFINITY };
    r.observe(ratio, format!("max |normalized| = {}", fmt_sig15(trend.full)));
    r
}

pub fn cmd_estimates(cfg: &RunConfig) -> Result<Outcome> {
    let mut writer = Writer::new(cfg)?;
    let table = ArithTable::build(cfg.limit)?;
    let xs = cfg.sample_points(2.0, f64::INFINITY);
    let (lo, hi) = (xs.first().copied().unwrap_or(cfg.min_x), xs.last().copied().unwrap_or(cfg.min_x));
    let mut series = Vec::new();
    for kind in ElementaryKind::ALL {
        series.push(elementary_series(kind, &xs)?);
    }
    for kind in [MobiusKind::Mu1, MobiusKind::Mu2, MobiusKind::Mu3] {
        series.push(mobius_series(kind, &xs, &table)?);
    }
    series.push(erdos_karamata_series(&xs, &table)?);
    series.push(u_series(&xs, &table)?);
    series.push(divisor_series(&xs)?);

    let mut reports = Vec::new();
    for s in &series {
        writer.series(s)?;
        reports.push(growth_report(s, lo, hi, cfg.tol_scale));
    }

    let mut r = VerificationReport::new("mobius_reciprocal_sum_bounded", range_text(1, cfg.limit), 1.0);
    let mut acc = 0.0;
    for k in 1..=cfg.limit {
        acc += table.mu(k) as f64 / k as f64;
        r.observe(acc.abs(), format!("x={k}"));
    }
    reports.push(r);

    let gamma = compute_gamma();
    let mut r = VerificationReport::new("gamma_two_routes", "N = 10^6", 1e-12 * cfg.tol_scale);
    r.observe((gamma - gamma_integral_accelerated(10_000)).abs(), "accelerated integral vs Euler-Maclaurin");
    reports.push(r.with_notes(format!("gamma = {}", fmt_sig15(gamma))));
    let c = compute_c();
    let mut r = VerificationReport::new("c_stable", "N = 10^6 vs 10^7", 1e-9 * cfg.tol_scale);
    r.observe((c - c_euler_maclaurin(1_000_000)).abs(), "N=10^6");
    reports.push(r.with_notes(format!("c = {}", fmt_sig15(c))));
    writer.reports("estimates_report", reports)
}

pub fn cmd_tauberian(cfg: &RunConfig) -> Result<Outcome> {
    let mut writer = Writer::new(cfg)?;
    let scale = cfg.tol_scale;
    let table = ArithTable::build(cfg.limit)?;
    let inst = build_instance(cfg.label, &table);
    let xs = cfg.sample_points(2.0, f64::INFINITY);
    let range = match (xs.first(), xs.last()) {
        (Some(a), Some(b)) => range_text(fmt_sig15(*a), fmt_sig15(*b)),
        _ => "empty".into(),
    };
    let mut reports = Vec::new();

    let rows = theorem1_report(&inst, &xs)?;
    writer.series(&theorem1_series(&inst, &rows))?;
    let mut r = VerificationReport::new(format!("theorem1_{}_gap", inst.label), range.clone(), 0.1 * scale);
    for row in &rows {
        r.observe((row.lhs - row.rhs).max(0.0), format!("x={}", fmt_sig15(row.x)));
    }
    reports.push(r);

    reports.extend(prop_estim_checks(&inst, &xs, EstimBands::default())?.reports);

    let wi = weighted_inversion_residual(&inst, &xs, &table)?;
    writer.series(&wi)?;
    let mut r = VerificationReport::new(format!("weighted_inversion_{}", inst.label), "x ≥ 10^4", 0.2 * scale);
    for rec in wi.records().iter().filter(|rec| rec.x >= 1e4) {
        r.observe(rec.normalized.abs(), format!("x={}", fmt_sig15(rec.x)));
    }
    reports.push(r);

    let t_max = cfg.effective_max_x().ln();
    if t_max >= 1.0 && inst.a > 0.0 {
        reports.extend(profile_checks(cfg, &inst, t_max)?);
    }
    reports.extend(fixture_checks(cfg.seed)?);
    writer.reports("tauberian_report", reports)
}

fn profile_checks(
    cfg: &RunConfig,
    inst: &crate::tauberian::TauberianInstance,
    t_max: f64,
) -> Result<Vec<VerificationReport>> {
    let delta = cfg.delta;
    let profile = exp_transform(inst, t_max, delta)?;
    let domain = format!("t in [0, {}], delta = {delta}", fmt_sig15(profile.domain_end()));
    let mut out = vec![check_condition_s1(&profile)];

    let opt = optimize_s_bounds(profile.m, profile.m_prime, 1e-2, 1e2, 400)?;
    let mut r = VerificationReport::new("s_bounds", domain.clone(), 1e-9);
    for i in 0..profile.len() {
        let (t, v) = (profile.t(i), profile.value(i));
        // the lower bound integrates over [t − h, t], so it applies from t = h on
        let below = if t >= opt.h_lower { opt.lower - v } else { 0.0 };
        r.observe((v - opt.upper).max(below).max(0.0), format!("t={}", fmt_sig15(t)));
    }
    out.push(r.with_notes(format!("lower {} upper {}", fmt_sig15(opt.lower), fmt_sig15(opt.upper))));

    let params = WindowParams::from_profile(&profile)?;
    let pairs = crossing_pairs(&profile, params.s1, params.s2);
    let mut r = VerificationReport::new("corollary_crossing_pairs", domain.clone(), 0.0);
    for &(t1, t2) in &pairs {
        let o = corollary_e2_check(&profile, t1, t2, params.s1, params.s2)?;
        r.observe((o.bound - 2.0 * delta - o.measure).max(0.0), format!("t1={} t2={}", fmt_sig15(t1), fmt_sig15(t2)));
    }
    out.push(r.with_notes(format!("{} pairs", pairs.len())));

    let mut r = VerificationReport::new("window_measure", domain, 0.0);
    for x in (0..20).map(|i| (i as f64 * profile.domain_end() / 20.0 / delta).floor() * delta) {
        let m = measure_e_observed(&profile, x, &params)?;
        r.observe((params.e - 2.0 * delta - m).max(0.0), format!("x={}", fmt_sig15(x)));
    }
    out.push(r.with_notes(format!("h = {}, e = {}", fmt_sig15(params.h), fmt_sig15(params.e))));
    Ok(out)
}

/// Seeded fixtures for the isoperimetric lemma and the window dichotomy;
/// violation counts failures.
pub fn fixture_checks(seed: u64) -> Result<Vec<VerificationReport>> {
    let mut rng = fixtures::rng(seed);
    let mut iso = VerificationReport::new("isoperimetric_fixtures", "500 random non-decreasing k", 0.0);
    let mut failures = 0usize;
    for i in 0..500 {
        let fx = fixtures::isoperimetric_fixture(&mut rng, 1e-3);
        let ok = isoperimetric_check(&fx.k, fx.c1, fx.c2).map(|o| o.pass).unwrap_or(false);
        if !ok {
            failures += 1;
            iso.location = format!("fixture {i}");
        }
    }
    iso.observe(failures as f64, "-");
    let mut dich = VerificationReport::new("dichotomy_fixtures", "500 random zero-mean profiles", 0.0);
    let mut failures = 0usize;
    for i in 0..500 {
        let fx = fixtures::dichotomy_fixture(&mut rng, 1e-2, 4000);
        if lemma_e1_dichotomy(&fx.profile, fx.x, &fx.params).is_err() {
            failures += 1;
            dich.location = format!("fixture {i}");
        }
    }
    dich.observe(failures as f64, "-");
    Ok(vec![iso, dich])
}

/// Prints M(x), ψ(x), π(x), D(x) with timings to `out` and writes a report
/// comparing the sublinear engines with sieve oracles.
pub fn cmd_summatory<W: Write>(cfg: &RunConfig, x: u64, out: &mut W) -> Result<Outcome> {
    if x < 1 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    let writer = Writer::new(cfg)?;
    let t = Instant::now();
    let m = mertens_sublinear(x)?;
    writeln!(out, "M({x}) = {m}  [{:.3?}]", t.elapsed())?;
    let t = Instant::now();
    let psi = psi_sublinear(x)?;
    writeln!(out, "psi({x}) = {}  [{:.3?}]", fmt_sig15(psi), t.elapsed())?;
    let t = Instant::now();
    let table = ArithTable::build(x as usize)?;
    let pi = if x >= 2 { prime_count(&table, x as f64)? } else { 0 };
    writeln!(out, "pi({x}) = {pi}  [{:.3?}]", t.elapsed())?;
    let t = Instant::now();
    let d = divisor_summatory(x);
    writeln!(out, "D({x}) = {d}  [{:.3?}]", t.elapsed())?;

    let range = format!("x = {x}");
    let mut reports = Vec::new();
    let mut r = VerificationReport::new("mertens_sublinear_vs_sieve", range.clone(), 0.0);
    r.observe((m - mertens_prefix(&table)[x as usize]).abs() as f64, format!("x={x}"));
    reports.push(r.with_notes(format!("M = {m}")));
    let mut r = VerificationReport::new("psi_sublinear_vs_sieve", range.clone(), 1e-9 * cfg.tol_scale);
    let sieve_psi = psi_prefix(&table)[x as usize];
    r.observe((psi - sieve_psi).abs() / (1.0 + sieve_psi), format!("x={x}"));
    reports.push(r.with_notes(format!("psi = {}", fmt_sig15(psi))));
    let mut r = VerificationReport::new("divisor_hyperbola_vs_direct", range, 0.0);
    r.observe(d.abs_diff(divisor_summatory_direct(x)) as f64, format!("x={x}"));
    reports.push(r.with_notes(format!("D = {d}, pi = {pi}")));
    writer.reports("summatory", reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_accept_both_spellings() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("min_x = 10\nmax-x=500\n# note\n\ntol_scale=2\nlabel=mertens_plus_floor").unwrap();
        assert_eq!((cfg.min_x, cfg.max_x, cfg.tol_scale), (10.0, Some(500.0), 2.0));
        assert_eq!(cfg.label, InstanceLabel::MertensPlusFloor);
        assert!(cfg.apply_config_text("limit").is_err());
        assert!(cfg.set("limit", "ten").is_err());
        assert!(cfg.set("format", "xml").is_err());
    }

    #[test]
    fn flags_override_config() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("samples=7\nseed=1").unwrap();
        cfg.apply_flags(&Flags { samples: Some(3), ..Flags::default() }).unwrap();
        assert_eq!((cfg.samples, cfg.seed), (3, 1));
    }

    #[test]
    fn validation_and_sampling() {
        let mut cfg = RunConfig { limit: 1, ..RunConfig::default() };
        cfg.validate().unwrap();
        assert!(cfg.sample_points(2.0, f64::INFINITY).is_empty());
        cfg.min_x = 1.0;
        assert!(cfg.validate().is_err());
        let cfg = RunConfig { limit: 1000, samples: 4, min_x: 10.0, ..RunConfig::default() };
        let xs = cfg.sample_points(2.0, f64::INFINITY);
        assert_eq!(xs.len(), 4);
        assert_eq!((xs[0], xs[3]), (10.0, 1000.0));
        assert!(RunConfig { delta: 0.5, ..RunConfig::default() }.validate().is_err());
    }
}
