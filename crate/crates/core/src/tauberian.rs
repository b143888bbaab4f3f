//! The Landau–Ingham harness.
//!
//! Builds g = f − Ax for the ψ and M + ⌊·⌋ instances, evaluates both sides of
//! the integral inequality |g(x)|/x ≤ (1/log x)∫_1^x |g(t)|/t² dt + o(1), and
//! checks the measure-theoretic machinery on the exponential substitution
//! s(t) = e^{−t} g(e^t): the monotonicity condition, the a-priori bounds on
//! s, the isoperimetric lemma, its corollary, and the window dichotomy.
//!
//! Lebesgue measure is replaced by grid measure: δ times the number of grid
//! points in a set. All measure comparisons carry a 2δ slack.

use std::fmt;
use std::str::FromStr;

use crate::arith::ArithTable;
use crate::error::{Error, Result};
use crate::estimates::compute_gamma;
use crate::numeric::CompensatedSum;
use crate::report::{RemainderSeries, Status, VerificationReport};
use crate::transforms::StepFunction;

pub mod fixtures;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceLabel {
    Psi,
    MertensPlusFloor,
    Custom,
}

impl fmt::Display for InstanceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceLabel::Psi => "PSI",
            InstanceLabel::MertensPlusFloor => "MERTENS_PLUS_FLOOR",
            InstanceLabel::Custom => "CUSTOM",
        })
    }
}

impl FromStr for InstanceLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PSI" => Ok(InstanceLabel::Psi),
            "MERTENS_PLUS_FLOOR" | "MERTENS" => Ok(InstanceLabel::MertensPlusFloor),
            "CUSTOM" => Ok(InstanceLabel::Custom),
            other => Err(Error::Usage(format!("unknown instance label `{other}`"))),
        }
    }
}

/// A non-negative non-decreasing f with F(x) = Ax log x + Bx + Cx/log x + o(x/log x).
///
/// `valid_up_to` is the largest argument at which `f` is known (the sieve
/// limit for the shipped instances).
#[derive(Debug, Clone)]
pub struct TauberianInstance {
    pub f: StepFunction,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub label: InstanceLabel,
    pub valid_up_to: f64,
}

impl TauberianInstance {
    pub fn custom(f: StepFunction, a: f64, b: f64, c: f64) -> Result<Self> {
        if !f.is_non_decreasing() {
            return Err(Error::Precondition("f must be non-decreasing".into()));
        }
        if f.offset() < 0.0 {
            return Err(Error::Precondition("f must be non-negative".into()));
        }
        if !(a >= 0.0) {
            return Err(Error::Precondition(format!("A must be ≥ 0, got {a}")));
        }
        Ok(Self { f, a, b, c, label: InstanceLabel::Custom, valid_up_to: f64::INFINITY })
    }

    /// g(x) = f(x) − Ax.
    pub fn g(&self, x: f64) -> f64 {
        self.f.value(x) - self.a * x
    }

    fn ensure_valid(&self, x: f64) -> Result<()> {
        if x > self.valid_up_to {
            Err(Error::Range { requested: x.ceil() as u64, limit: self.valid_up_to as u64 })
        } else {
            Ok(())
        }
    }
}

/// PSI: jumps Λ(n) at n, A = 1, B = −1.
/// MERTENS_PLUS_FLOOR: jumps μ(n) + 1 at n, A = 1, B = 2γ − 1.
/// CUSTOM: f ≡ 0 with A = 0.
pub fn build_instance(label: InstanceLabel, table: &ArithTable) -> TauberianInstance {
    let limit = table.limit() as f64;
    match label {
        InstanceLabel::Psi => {
            let f = StepFunction::integer_jumps(
                table
                    .lambda_slice()
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &l)| l > 0.0)
                    .map(|(n, &l)| (n as u64, l)),
            )
            .expect("integer jumps are increasing");
            TauberianInstance { f, a: 1.0, b: -1.0, c: 0.0, label, valid_up_to: limit }
        }
        InstanceLabel::MertensPlusFloor => {
            let f = StepFunction::integer_jumps(
                table.mu_slice().iter().enumerate().skip(1).map(|(n, &m)| (n as u64, m as f64 + 1.0)),
            )
            .expect("integer jumps are increasing");
            TauberianInstance { f, a: 1.0, b: 2.0 * compute_gamma() - 1.0, c: 0.0, label, valid_up_to: limit }
        }
        InstanceLabel::Custom => TauberianInstance {
            f: StepFunction::zero(),
            a: 0.0,
            b: 0.0,
            c: 0.0,
            label,
            valid_up_to: f64::INFINITY,
        },
    }
}

fn check_xs(xs: &[f64], inst: &TauberianInstance) -> Result<()> {
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("sample points must be strictly increasing".into()));
    }
    if let Some(&x) = xs.last() {
        inst.ensure_valid(x)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem1Row {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// lhs = |g(x)|/x and rhs = (1/log x)∫_1^x |g(t)|/t² dt at each x.
/// Points with x ≤ 1 + 1e-6 are skipped; x ≤ 1 is a domain error.
pub fn theorem1_report(inst: &TauberianInstance, xs: &[f64]) -> Result<Vec<Theorem1Row>> {
    if let Some(&x) = xs.iter().find(|&&x| !(x > 1.0)) {
        return Err(Error::Domain(format!("the integral inequality needs x > 1, got {x}")));
    }
    check_xs(xs, inst)?;
    let kept: Vec<f64> = xs.iter().copied().filter(|&x| x > 1.0 + 1e-6).collect();
    let integrals = inst.f.integrals_g_over_t2(inst.a, &kept, true);
    Ok(kept
        .iter()
        .zip(integrals)
        .map(|(&x, int)| Theorem1Row { x, lhs: inst.g(x).abs() / x, rhs: int / x.ln() })
        .collect())
}

/// Theorem-1 rows as a series: raw = lhs, main = rhs.
pub fn theorem1_series(inst: &TauberianInstance, rows: &[Theorem1Row]) -> RemainderSeries {
    let mut s = RemainderSeries::new(format!("theorem1_{}", inst.label.to_string().to_lowercase()), "1");
    for r in rows {
        s.push(r.x, r.lhs, r.rhs, 1.0);
    }
    s
}

/// Empirical bands for the three boundedness claims.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimBands {
    pub f_over_x: f64,
    pub stieltjes: f64,
    pub integral: f64,
}

impl Default for EstimBands {
    fn default() -> Self {
        Self { f_over_x: 1.2, stieltjes: 3.0, integral: 2.0 }
    }
}

/// Sup over xs of f(x)/x, |∫df/t − A log x| and |∫(f − At)/t²|, each as a
/// report against its band, plus a growth flag per quantity (top-decade max
/// above twice the full-range max).
#[derive(Debug, Clone)]
pub struct PropEstimSummary {
    pub reports: Vec<VerificationReport>,
    pub growth_flags: [bool; 3],
}

impl PropEstimSummary {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed()) && !self.growth_flags.iter().any(|&g| g)
    }
}

pub fn prop_estim_checks(inst: &TauberianInstance, xs: &[f64], bands: EstimBands) -> Result<PropEstimSummary> {
    check_xs(xs, inst)?;
    if let Some(&x) = xs.iter().find(|&&x| !(x >= 1.0)) {
        return Err(Error::Domain(format!("x must be ≥ 1, got {x}")));
    }
    let range = match (xs.first(), xs.last()) {
        (Some(a), Some(b)) => format!("x in [{a}, {b}]"),
        _ => "empty".into(),
    };
    let signed = inst.f.integrals_g_over_t2(inst.a, xs, false);
    let mut series: [RemainderSeries; 3] = [
        RemainderSeries::new("f_over_x", "1"),
        RemainderSeries::new("stieltjes_dev", "1"),
        RemainderSeries::new("signed_integral", "1"),
    ];
    for (&x, &int) in xs.iter().zip(&signed) {
        series[0].push(x, inst.f.value(x) / x, 0.0, 1.0);
        series[1].push(x, inst.f.stieltjes_over_t(x), inst.a * x.ln(), 1.0);
        series[2].push(x, int, 0.0, 1.0);
    }
    let names = ["sup_f_over_x", "sup_stieltjes_deviation", "sup_signed_integral"];
    let tols = [bands.f_over_x, bands.stieltjes, bands.integral];
    let (lo, hi) = (xs.first().copied().unwrap_or(1.0), xs.last().copied().unwrap_or(1.0));
    let mut reports = Vec::new();
    let mut growth_flags = [false; 3];
    for i in 0..3 {
        let mut r = VerificationReport::new(format!("{}_{}", inst.label, names[i]), range.clone(), tols[i]);
        for rec in series[i].records() {
            r.observe(rec.normalized.abs(), format!("x={}", rec.x));
        }
        let trend = series[i].trend(lo, hi);
        growth_flags[i] = !trend.no_growth();
        reports.push(r);
    }
    Ok(PropEstimSummary { reports, growth_flags })
}

/// g(x)log x + Σ_{n≤x} Λ(n) g(x/n) against 0, normalized by x log x.
pub fn weighted_inversion_residual(
    inst: &TauberianInstance,
    xs: &[f64],
    table: &ArithTable,
) -> Result<RemainderSeries> {
    check_xs(xs, inst)?;
    if let Some(&x) = xs.last() {
        table.ensure_covers(x.floor() as u64)?;
    }
    let lam = table.lambda_slice();
    let mut s = RemainderSeries::new(format!("weighted_inversion_{}", inst.label.to_string().to_lowercase()), "x log x");
    for &x in xs {
        if !(x >= 1.0) {
            return Err(Error::Domain(format!("x must be ≥ 1, got {x}")));
        }
        let mut acc = CompensatedSum::new();
        acc.add(inst.g(x) * x.ln());
        for (n, &l) in lam.iter().enumerate().take(x.floor() as usize + 1).skip(2) {
            if l > 0.0 {
                acc.add(l * inst.g(x / n as f64));
            }
        }
        s.push(x, acc.value(), 0.0, x * x.ln());
    }
    Ok(s)
}

/// A function sampled on the uniform grid t_i = t0 + iδ.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFn {
    pub t0: f64,
    pub delta: f64,
    pub values: Vec<f64>,
}

impl SampledFn {
    pub fn t(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.delta
    }

    pub fn t_end(&self) -> f64 {
        self.t(self.values.len().saturating_sub(1))
    }
}

/// s(t) = e^{−t} g(e^t) sampled on [0, T] with step δ, together with the
/// constants M (monotonicity) and M′ (bound on |∫_0^x s|).
#[derive(Debug, Clone, PartialEq)]
pub struct ExpProfile {
    pub s: SampledFn,
    pub m: f64,
    pub m_prime: f64,
}

impl ExpProfile {
    pub fn new(samples: Vec<f64>, delta: f64, m: f64, m_prime: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::Precondition(format!("grid step must be positive, got {delta}")));
        }
        if samples.is_empty() || samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("profile samples must be non-empty and finite".into()));
        }
        if !(m >= 0.0 && m_prime >= 0.0) {
            return Err(Error::Precondition("M and M′ must be non-negative".into()));
        }
        Ok(Self { s: SampledFn { t0: 0.0, delta, values: samples }, m, m_prime })
    }

    /// Treat the samples as constant on each cell [t_i, t_i + δ) and take
    /// M′ as the max of |∫_0^{t_j} s| over grid points, which makes the
    /// integral bound hold by construction.
    pub fn from_cells(samples: Vec<f64>, delta: f64, m: f64) -> Result<Self> {
        let m_prime = cell_integrals(&samples, delta).into_iter().fold(0.0f64, |a, v| a.max(v.abs()));
        Self::new(samples, delta, m, m_prime)
    }

    pub fn with_m(&self, m: f64) -> Self {
        Self { m, ..self.clone() }
    }

    pub fn delta(&self) -> f64 {
        self.s.delta
    }

    pub fn len(&self) -> usize {
        self.s.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.values.is_empty()
    }

    pub fn t(&self, i: usize) -> f64 {
        self.s.t(i)
    }

    pub fn value(&self, i: usize) -> f64 {
        self.s.values[i]
    }

    pub fn domain_end(&self) -> f64 {
        self.s.t_end()
    }

    /// k(t) = e^t (s(t) + M) on the grid.
    pub fn k(&self) -> SampledFn {
        SampledFn {
            t0: self.s.t0,
            delta: self.s.delta,
            values: self.s.values.iter().enumerate().map(|(i, &v)| self.t(i).exp() * (v + self.m)).collect(),
        }
    }

    /// Largest |s(t_{i+1}) − s(t_i)|.
    pub fn max_step(&self) -> f64 {
        self.s.values.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max)
    }

    /// Whether left-Riemann integrals |∫_0^{t_j} s| stay within M′.
    pub fn integral_bound_holds(&self) -> bool {
        let tol = 1e-9 * (1.0 + self.m_prime);
        cell_integrals(&self.s.values, self.s.delta).iter().all(|v| v.abs() <= self.m_prime + tol)
    }

    /// Grid indices in [lo, hi].
    fn index_range(&self, lo: f64, hi: f64) -> std::ops::RangeInclusive<usize> {
        let d = self.s.delta;
        let i_lo = ((lo - self.s.t0) / d - 1e-9).ceil().max(0.0) as usize;
        let i_hi = (((hi - self.s.t0) / d + 1e-9).floor() as usize).min(self.len() - 1);
        i_lo..=i_hi
    }

    fn index_of(&self, t: f64) -> Result<usize> {
        let i = ((t - self.s.t0) / self.s.delta).round();
        if i < 0.0 || i as usize >= self.len() {
            return Err(Error::Range { requested: t.ceil().max(0.0) as u64, limit: self.domain_end() as u64 });
        }
        Ok(i as usize)
    }
}

/// ∫_0^{t_j} of the cell-constant extension, for j = 0..len.
fn cell_integrals(samples: &[f64], delta: f64) -> Vec<f64> {
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(samples.len());
    out.push(0.0);
    for &v in &samples[..samples.len().saturating_sub(1)] {
        acc.add(v * delta);
        out.push(acc.value());
    }
    out
}

/// Sample s(t) = e^{−t}(f(e^t) − A e^t) on [0, T]; M = A and M′ is the max
/// over the grid of |∫_0^t s| = |∫_1^{e^t} g(u)/u² du|, integrated exactly.
pub fn exp_transform(inst: &TauberianInstance, t_max: f64, delta: f64) -> Result<ExpProfile> {
    if !(t_max > 0.0) {
        return Err(Error::Domain(format!("T must be positive, got {t_max}")));
    }
    if !(delta > 0.0 && delta <= 1e-2) {
        return Err(Error::Domain(format!("δ must lie in (0, 0.01], got {delta}")));
    }
    let n = (t_max / delta + 1e-9).floor() as usize;
    let us: Vec<f64> = (0..=n).map(|i| (i as f64 * delta).exp()).collect();
    inst.ensure_valid(*us.last().expect("non-empty grid"))?;
    let samples: Vec<f64> = us.iter().map(|&u| inst.g(u) / u).collect();
    let integrals = inst.f.integrals_g_over_t2(inst.a, &us, false);
    let m_prime = integrals.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()));
    ExpProfile::new(samples, delta, inst.a, m_prime)
}

/// k(t) = e^t(s(t) + M) must be non-decreasing between consecutive grid
/// points, within slack 1e-9·e^t. Location reports the first violation.
pub fn check_condition_s1(profile: &ExpProfile) -> VerificationReport {
    let k = profile.k();
    let mut report = VerificationReport::new(
        "condition_s1_k_non_decreasing",
        format!("t in [0, {}], M = {}", profile.domain_end(), profile.m),
        1e-9,
    );
    let mut first: Option<String> = None;
    let mut worst = 0.0f64;
    for i in 0..k.values.len().saturating_sub(1) {
        let scale = k.t(i + 1).exp();
        let drop = (k.values[i] - k.values[i + 1]) / scale;
        if drop > 1e-9 && first.is_none() {
            first = Some(format!("t in [{}, {}]", k.t(i), k.t(i + 1)));
        }
        worst = worst.max(drop);
    }
    report.max_violation = worst.max(0.0);
    report.location = first.unwrap_or_else(|| "-".into());
    report.status = if report.max_violation <= report.tolerance { Status::Pass } else { Status::Fail };
    report
}

/// Lower and upper a-priori bounds on s from the monotonicity and integral
/// conditions, for window length h. The upper bound holds for every t ≥ 0,
/// the lower one for t ≥ h.
pub fn s_bounds(m: f64, m_prime: f64, h: f64) -> Result<(f64, f64)> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("h must be positive, got {h}")));
    }
    if !(m >= 0.0 && m_prime >= 0.0) {
        return Err(Error::Domain("M and M′ must be non-negative".into()));
    }
    let upper = (2.0 * m_prime + m * ((-h).exp_m1() + h)) / -(-h).exp_m1();
    let lower = -(2.0 * m_prime + m * (h.exp_m1() - h)) / h.exp_m1();
    Ok((lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SBoundsOptimum {
    pub h_lower: f64,
    pub lower: f64,
    pub h_upper: f64,
    pub upper: f64,
}

/// Best bounds over `count` log-spaced h in [h_min, h_max]: the largest
/// lower bound and the smallest upper bound, each with its h.
pub fn optimize_s_bounds(m: f64, m_prime: f64, h_min: f64, h_max: f64, count: usize) -> Result<SBoundsOptimum> {
    if !(h_min > 0.0 && h_max >= h_min) || count == 0 {
        return Err(Error::Domain("need 0 < h_min ≤ h_max and count ≥ 1".into()));
    }
    let mut best = SBoundsOptimum { h_lower: h_min, lower: f64::NEG_INFINITY, h_upper: h_min, upper: f64::INFINITY };
    for h in crate::numeric::log_spaced(h_min, h_max, count) {
        let (lo, up) = s_bounds(m, m_prime, h)?;
        if lo > best.lower {
            best.lower = lo;
            best.h_lower = h;
        }
        if up < best.upper {
            best.upper = up;
            best.h_upper = h;
        }
    }
    Ok(best)
}

/// Window parameters 0 < S2 < S1 < S, e = log((S1+M)/(S2+M)) and h with
/// h ≥ 2(e + M′/S1 + M′/S2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowParams {
    pub s: f64,
    pub s1: f64,
    pub s2: f64,
    pub h: f64,
    pub e: f64,
}

/// Smallest h allowed for the given thresholds.
pub fn minimal_h(e: f64, s1: f64, s2: f64, m_prime: f64) -> f64 {
    2.0 * (e + m_prime / s1 + m_prime / s2)
}

impl WindowParams {
    pub fn new(s: f64, s1: f64, s2: f64, h: f64, m: f64, m_prime: f64) -> Result<Self> {
        if !(0.0 < s2 && s2 < s1 && s1 < s) {
            return Err(Error::Precondition(format!("need 0 < S2 < S1 < S, got S2={s2}, S1={s1}, S={s}")));
        }
        let e = ((s1 + m) / (s2 + m)).ln();
        let needed = minimal_h(e, s1, s2, m_prime);
        if !(h >= needed) {
            return Err(Error::Precondition(format!("window length h = {h} is below 2(e + M′/S1 + M′/S2) = {needed}")));
        }
        Ok(Self { s, s1, s2, h, e })
    }

    /// Empirical limsup proxy S = max |s| over the last quarter of the
    /// domain, S1 = `frac1`·S, S2 = `frac2`·S, and the smallest admissible
    /// h rounded up to the grid.
    pub fn from_profile_with(profile: &ExpProfile, frac1: f64, frac2: f64) -> Result<Self> {
        let n = profile.len();
        let s = profile.s.values[3 * n / 4..].iter().fold(0.0, |a: f64, v| a.max(v.abs()));
        if !(s > 0.0) {
            return Err(Error::Precondition("profile tail is identically zero".into()));
        }
        let (s1, s2) = (frac1 * s, frac2 * s);
        let e = ((s1 + profile.m) / (s2 + profile.m)).ln();
        let d = profile.delta();
        let h = (minimal_h(e, s1, s2, profile.m_prime) / d).ceil() * d;
        let h = if h < minimal_h(e, s1, s2, profile.m_prime) { h + d } else { h };
        Self::new(s, s1, s2, h, profile.m, profile.m_prime)
    }

    /// Defaults S1 = 0.8 S, S2 = 0.4 S.
    pub fn from_profile(profile: &ExpProfile) -> Result<Self> {
        Self::from_profile_with(profile, 0.8, 0.4)
    }
}

/// Grid measure of E = {t ∈ [x, x+h] : |s(t)| ≤ S1}. The window must lie
/// inside the profile domain.
pub fn measure_e(profile: &ExpProfile, x: f64, params: &WindowParams) -> Result<f64> {
    let end = profile.domain_end();
    if !(x >= 0.0) || x + params.h > end + 1e-9 * (1.0 + end) {
        return Err(Error::Range { requested: (x + params.h).ceil().max(0.0) as u64, limit: end as u64 });
    }
    Ok(grid_measure(profile, x, x + params.h, |v| v.abs() <= params.s1))
}

/// As [`measure_e`], but a window running past the end of the profile is
/// clipped to the sampled domain. The result is a lower bound for the
/// measure over the full window.
pub fn measure_e_observed(profile: &ExpProfile, x: f64, params: &WindowParams) -> Result<f64> {
    let end = profile.domain_end();
    if !(x >= 0.0 && x <= end) {
        return Err(Error::Range { requested: x.ceil().max(0.0) as u64, limit: end as u64 });
    }
    Ok(grid_measure(profile, x, (x + params.h).min(end), |v| v.abs() <= params.s1))
}

fn grid_measure(profile: &ExpProfile, lo: f64, hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    let count = profile.index_range(lo, hi).filter(|&i| pred(profile.value(i))).count();
    count as f64 * profile.delta()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoOutcome {
    pub measure: f64,
    pub bound: f64,
    pub pass: bool,
}

/// For non-decreasing k on [t1, t2] with k(t1) ≥ C1 e^{t1} and
/// k(t2) ≤ C2 e^{t2}, the set {C2 e^t ≤ k(t) ≤ C1 e^t} has measure at least
/// log(C1/C2). Passes when the grid measure is ≥ log(C1/C2) − 2δ.
pub fn isoperimetric_check(k: &SampledFn, c1: f64, c2: f64) -> Result<IsoOutcome> {
    if !(c1 > c2 && c2 > 0.0) {
        return Err(Error::Precondition(format!("need C1 > C2 > 0, got C1={c1}, C2={c2}")));
    }
    let n = k.values.len();
    if n < 2 {
        return Err(Error::Precondition("need at least two grid points".into()));
    }
    let slack = |t: f64| 1e-9 * t.exp();
    let (t1, t2) = (k.t(0), k.t(n - 1));
    if k.values[0] < c1 * t1.exp() - slack(t1) {
        return Err(Error::Precondition(format!("k(t1) = {} < C1·e^t1 = {}", k.values[0], c1 * t1.exp())));
    }
    if k.values[n - 1] > c2 * t2.exp() + slack(t2) {
        return Err(Error::Precondition(format!("k(t2) = {} > C2·e^t2 = {}", k.values[n - 1], c2 * t2.exp())));
    }
    if let Some(i) = (0..n - 1).find(|&i| k.values[i + 1] < k.values[i] - slack(k.t(i + 1))) {
        return Err(Error::Precondition(format!("k decreases between t = {} and t = {}", k.t(i), k.t(i + 1))));
    }
    let count = (0..n)
        .filter(|&i| {
            let (t, v) = (k.t(i), k.values[i]);
            let et = t.exp();
            v >= c2 * et - slack(t) && v <= c1 * et + slack(t)
        })
        .count();
    let measure = count as f64 * k.delta;
    let bound = (c1 / c2).ln();
    Ok(IsoOutcome { measure, bound, pass: measure >= bound - 2.0 * k.delta })
}

/// If s(t1) ≥ S1 ≥ S2 ≥ s(t2) with S2 + M > 0, then s spends measure at
/// least log((S1+M)/(S2+M)) in [S2, S1] between t1 and t2. Applied through
/// [`isoperimetric_check`] on k = e^t(s + M).
pub fn corollary_e2_check(profile: &ExpProfile, t1: f64, t2: f64, s1: f64, s2: f64) -> Result<IsoOutcome> {
    let (i1, i2) = (profile.index_of(t1)?, profile.index_of(t2)?);
    if i1 >= i2 {
        return Err(Error::Precondition(format!("need t1 < t2, got {t1} and {t2}")));
    }
    if !(s1 >= s2) {
        return Err(Error::Precondition(format!("need S1 ≥ S2, got {s1} and {s2}")));
    }
    if !(s2 + profile.m > 0.0) {
        return Err(Error::Precondition("need S2 + M > 0".into()));
    }
    if profile.value(i1) < s1 {
        return Err(Error::Precondition(format!("s(t1) = {} < S1 = {s1}", profile.value(i1))));
    }
    if profile.value(i2) > s2 {
        return Err(Error::Precondition(format!("s(t2) = {} > S2 = {s2}", profile.value(i2))));
    }
    let (c1, c2) = (s1 + profile.m, s2 + profile.m);
    if c1 == c2 {
        // degenerate bound log 1 = 0
        let measure = grid_measure(profile, profile.t(i1), profile.t(i2), |v| v >= s2 && v <= s1);
        return Ok(IsoOutcome { measure, bound: 0.0, pass: true });
    }
    let k = SampledFn {
        t0: profile.t(i1),
        delta: profile.delta(),
        values: (i1..=i2).map(|i| profile.t(i).exp() * (profile.value(i) + profile.m)).collect(),
    };
    isoperimetric_check(&k, c1, c2)
}

/// Tight crossing pairs (t1, t2): t2 is the first grid point with s ≤ S2
/// after some point with s ≥ S1, and t1 is the last point with s ≥ S1
/// before it.
pub fn crossing_pairs(profile: &ExpProfile, s1: f64, s2: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut last_high: Option<usize> = None;
    for i in 0..profile.len() {
        let v = profile.value(i);
        if v >= s1 {
            last_high = Some(i);
        } else if v <= s2 {
            if let Some(j) = last_high.take() {
                out.push((profile.t(j), profile.t(i)));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dichotomy {
    /// μ(E_{x,h,S1}) ≥ e.
    Measure { measure: f64 },
    /// x ≤ t1 < t2 ≤ x + h with s(t1) ≥ S1 and s(t2) ≤ S2.
    Crossing { t1: f64, t2: f64 },
}

/// Every window [x, x+h] with h admissible has E-measure ≥ e or contains a
/// downward crossing from S1 to S2. Thresholds are relaxed by
/// 2δ·max|Δs| for the grid.
pub fn lemma_e1_dichotomy(profile: &ExpProfile, x: f64, params: &WindowParams) -> Result<Dichotomy> {
    let needed = minimal_h(params.e, params.s1, params.s2, profile.m_prime);
    if params.h < needed {
        return Err(Error::Precondition(format!("h = {} is below the admissible minimum {needed}", params.h)));
    }
    let measure = measure_e(profile, x, params)?;
    if measure >= params.e {
        return Ok(Dichotomy::Measure { measure });
    }
    let tol = 2.0 * profile.delta() * profile.max_step();
    let idx: Vec<usize> = profile.index_range(x, x + params.h).collect();
    let t2 = idx.iter().rev().copied().find(|&i| profile.value(i) <= params.s2 + tol);
    if let Some(i2) = t2 {
        if let Some(i1) = idx.iter().copied().take_while(|&i| i < i2).find(|&i| profile.value(i) >= params.s1 - tol) {
            return Ok(Dichotomy::Crossing { t1: profile.t(i1), t2: profile.t(i2) });
        }
    }
    Err(Error::Counterexample { x, integral_bound_violated: !profile.integral_bound_holds() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi_instance(limit: usize) -> (ArithTable, TauberianInstance) {
        let t = ArithTable::build(limit).unwrap();
        let inst = build_instance(InstanceLabel::Psi, &t);
        (t, inst)
    }

    #[test]
    fn instances_at_ten() {
        let t = ArithTable::build(100).unwrap();
        let psi = build_instance(InstanceLabel::Psi, &t);
        assert!((psi.f.value(10.0) - 7.832).abs() < 1e-3);
        let mf = build_instance(InstanceLabel::MertensPlusFloor, &t);
        assert_eq!(mf.f.value(10.0), 9.0);
        assert!(mf.f.sizes().iter().all(|&s| (0.0..=2.0).contains(&s)));
        assert!(mf.f.is_non_decreasing());
        assert!("SIGMA".parse::<InstanceLabel>().is_err());
    }

    #[test]
    fn theorem1_at_two() {
        let (_, inst) = psi_instance(100);
        let rows = theorem1_report(&inst, &[2.0]).unwrap();
        assert!((rows[0].lhs - (2.0 - 2f64.ln()) / 2.0).abs() < 1e-15);
        assert!((rows[0].lhs - 0.6534).abs() < 1e-4);
        assert!((rows[0].rhs - 1.0).abs() < 1e-14);
        assert!(rows[0].lhs < rows[0].rhs);
        assert!(theorem1_report(&inst, &[1.0]).is_err());
        let zero = build_instance(InstanceLabel::Custom, &ArithTable::build(2).unwrap());
        let rows = theorem1_report(&zero, &[5.0]).unwrap();
        assert_eq!((rows[0].lhs, rows[0].rhs), (0.0, 0.0));
    }

    #[test]
    fn prop_estim_zero_instance() {
        let zero = build_instance(InstanceLabel::Custom, &ArithTable::build(2).unwrap());
        let s = prop_estim_checks(&zero, &[2.0, 10.0, 100.0], EstimBands::default()).unwrap();
        assert!(s.reports.iter().all(|r| r.max_violation == 0.0));
        assert!(s.passed());
    }

    #[test]
    fn weighted_inversion_at_one_is_zero() {
        let (t, inst) = psi_instance(100);
        let s = weighted_inversion_residual(&inst, &[1.0, 10.0], &t).unwrap();
        assert_eq!(s.records()[0].raw, 0.0);
    }

    #[test]
    fn exp_transform_examples() {
        let (_, inst) = psi_instance(100_000);
        let p = exp_transform(&inst, 5.0, 1e-3).unwrap();
        assert_eq!(p.value(0), -1.0);
        assert_eq!(p.m, 1.0);
        let k = p.k();
        assert!(k.values.windows(2).enumerate().all(|(i, w)| w[1] >= w[0] - 1e-9 * k.t(i + 1).exp()));
        let zero = build_instance(InstanceLabel::Custom, &ArithTable::build(2).unwrap());
        let z = exp_transform(&zero, 1.0, 1e-2).unwrap();
        assert!(z.s.values.iter().all(|&v| v == 0.0));
        assert!(exp_transform(&inst, 1.0, 0.1).is_err());
        assert!(exp_transform(&inst, 20.0, 1e-3).is_err());
    }

    #[test]
    fn condition_s1_psi() {
        let (_, inst) = psi_instance(100_000);
        let p = exp_transform(&inst, 11.0, 1e-3).unwrap();
        let r = check_condition_s1(&p);
        assert!(r.passed(), "{r}");
        let r0 = check_condition_s1(&p.with_m(0.0));
        assert!(!r0.passed());
        assert_eq!(r0.location, format!("t in [0, {}]", 1e-3));
        let z = ExpProfile::new(vec![0.0; 10], 0.1, 0.0, 0.0).unwrap();
        assert!(check_condition_s1(&z).passed());
    }

    #[test]
    fn s_bounds_examples() {
        let (lo, up) = s_bounds(1.0, 1.0, 1.0).unwrap();
        let e = std::f64::consts::E;
        assert!((up - (2.0 + 1.0 / e) / (1.0 - 1.0 / e)).abs() < 1e-14);
        assert!((up - 3.746).abs() < 1e-3);
        assert!((lo + e / (e - 1.0)).abs() < 1e-14);
        assert!((lo + 1.582).abs() < 1e-3);
        assert_eq!(s_bounds(0.0, 0.0, 3.0).unwrap(), (0.0, 0.0));
        assert!(s_bounds(1.0, 1.0, 0.0).is_err());
        let opt = optimize_s_bounds(1.0, 1.0, 0.01, 100.0, 400).unwrap();
        assert!(opt.upper <= up && opt.lower >= lo);
    }

    #[test]
    fn window_measure_trivial_cases() {
        let z = ExpProfile::new(vec![0.0; 1001], 0.01, 1.0, 0.5).unwrap();
        let params = WindowParams { s: 1.0, s1: 0.5, s2: 0.25, h: 3.0, e: (1.5f64 / 1.25).ln() };
        let m = measure_e(&z, 2.0, &params).unwrap();
        assert!((m - 3.0).abs() <= 0.01 + 1e-12);
        let hi = ExpProfile::new(vec![1.0; 1001], 0.01, 1.0, 0.5).unwrap();
        assert_eq!(measure_e(&hi, 2.0, &params).unwrap(), 0.0);
        assert!(measure_e(&z, 8.0, &params).is_err());
        assert!(measure_e_observed(&z, 8.0, &params).unwrap() > 1.9);
    }

    #[test]
    fn window_params_enforce_h() {
        assert!(WindowParams::new(1.0, 0.8, 0.4, 0.1, 1.0, 1.0).is_err());
        assert!(WindowParams::new(1.0, 0.4, 0.8, 100.0, 1.0, 1.0).is_err());
        let w = WindowParams::new(1.0, 0.8, 0.4, 100.0, 1.0, 1.0).unwrap();
        assert!((w.e - (1.8f64 / 1.4).ln()).abs() < 1e-15);
    }

    #[test]
    fn isoperimetric_closed_forms() {
        // k ≡ 2 on [0, 2], C1 = 2, C2 = 1: qualifying set [0, log 2]
        let delta = 1e-3;
        let k = SampledFn { t0: 0.0, delta, values: vec![2.0; 2001] };
        let out = isoperimetric_check(&k, 2.0, 1.0).unwrap();
        assert!((out.bound - 2f64.ln()).abs() < 1e-15);
        assert!((out.measure - 2f64.ln()).abs() <= delta);
        assert!(out.pass);
        // constant k = C1 e^{t1} with t1 = 0.5
        let (c1, c2, t1) = (3.0, 1.0, 0.5);
        let k = SampledFn { t0: t1, delta, values: vec![c1 * f64::exp(t1); 2500] };
        let out = isoperimetric_check(&k, c1, c2).unwrap();
        assert!((out.measure - 3f64.ln()).abs() <= delta);
        assert!(out.pass);
    }

    #[test]
    fn isoperimetric_preconditions_named() {
        let k = SampledFn { t0: 0.0, delta: 0.01, values: vec![1.0; 300] };
        let err = isoperimetric_check(&k, 2.0, 1.0).unwrap_err().to_string();
        assert!(err.contains("k(t1)"), "{err}");
        let k = SampledFn { t0: 0.0, delta: 0.01, values: vec![3.0, 0.5, 0.5] };
        let err = isoperimetric_check(&k, 2.0, 1.0).unwrap_err().to_string();
        assert!(err.contains("decreases"), "{err}");
        assert!(isoperimetric_check(&k, 1.0, 2.0).is_err());
    }

    #[test]
    fn corollary_constant_k_fixture() {
        // s = S1 e^{-t} with M = 0 keeps k constant; s sits in [S2, S1] exactly on [0, log(S1/S2)]
        let (s1, s2, delta) = (2.0, 0.5, 1e-3);
        let values: Vec<f64> = (0..3000).map(|i| s1 * (-(i as f64) * delta).exp()).collect();
        let p = ExpProfile::new(values, delta, 0.0, 10.0).unwrap();
        let out = corollary_e2_check(&p, 0.0, 2.999, s1, s2).unwrap();
        assert!(out.pass, "{out:?}");
        assert!((out.measure - 4f64.ln()).abs() <= 2.0 * delta);
        let flat = ExpProfile::new(vec![1.0; 10], 0.01, 0.0, 1.0).unwrap();
        assert!(corollary_e2_check(&flat, 0.0, 0.05, 1.0, 1.0).unwrap().pass);
    }

    #[test]
    fn dichotomy_zero_and_square_wave() {
        let z = ExpProfile::new(vec![0.0; 2001], 0.01, 1.0, 0.0).unwrap();
        let params = WindowParams::new(1.0, 0.8, 0.4, 2.0, 1.0, 0.0).unwrap();
        match lemma_e1_dichotomy(&z, 1.0, &params).unwrap() {
            Dichotomy::Measure { measure } => assert!(measure >= params.h - 1e-12),
            other => panic!("{other:?}"),
        }
        let sq = fixtures::square_wave(1.0, 0.5, 0.01, 40.0);
        let (s1, s2) = (0.8, 0.4);
        let h = minimal_h(2f64.ln(), s1, s2, sq.m_prime) + 0.02;
        let params = WindowParams::new(3.0, s1, s2, h, sq.m, sq.m_prime).unwrap();
        match lemma_e1_dichotomy(&sq, 3.0, &params).unwrap() {
            Dichotomy::Crossing { t1, t2 } => {
                assert!(t1 < t2);
                assert!(sq.value((t1 / 0.01).round() as usize) >= s1);
                assert!(sq.value((t2 / 0.01).round() as usize) <= s2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dichotomy_fixtures_reach_both_branches() {
        let mut rng = fixtures::rng(11);
        let (mut measure, mut crossing) = (0, 0);
        for _ in 0..100 {
            let fx = fixtures::dichotomy_fixture(&mut rng, 1e-2, 2000);
            match lemma_e1_dichotomy(&fx.profile, fx.x, &fx.params).unwrap() {
                Dichotomy::Measure { .. } => measure += 1,
                Dichotomy::Crossing { .. } => crossing += 1,
            }
        }
        assert!(measure > 0 && crossing > 0, "{measure} / {crossing}");
    }

    #[test]
    fn isoperimetric_fixtures_satisfy_preconditions() {
        let mut rng = fixtures::rng(3);
        for _ in 0..100 {
            let fx = fixtures::isoperimetric_fixture(&mut rng, 1e-3);
            assert!(isoperimetric_check(&fx.k, fx.c1, fx.c2).unwrap().pass);
        }
    }
}
