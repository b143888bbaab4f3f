//! Remainder-tracked elementary estimates: harmonic-type sums, Möbius sums,
//! the Λ+K summatory function, U(x), and Dirichlet's divisor sum.

use std::str::FromStr;
use std::sync::OnceLock;

use crate::arith::{k_function, ArithTable};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use crate::report::RemainderSeries;
use crate::summatory::divisor_summatory;

/// γ = lim (H_N − log N) with the Euler–Maclaurin correction
/// −1/(2N) + 1/(12N²).
pub fn gamma_euler_maclaurin(n: u64) -> f64 {
    let h = (1..=n).rev().map(|k| 1.0 / k as f64).collect::<CompensatedSum>().value();
    let nf = n as f64;
    h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf)
}

/// 1 − Σ_{n<N} [log((n+1)/n) − 1/(n+1)], which equals H_N − log N.
///
/// The summands are the integrals of (t − ⌊t⌋)/t² over [n, n+1], whose full
/// sum is 1 − γ.
pub fn gamma_integral_partial(n: u64) -> f64 {
    let s = (1..n)
        .rev()
        .map(|k| {
            let kf = k as f64;
            (1.0 / kf).ln_1p() - 1.0 / (kf + 1.0)
        })
        .collect::<CompensatedSum>()
        .value();
    1.0 - s
}

/// Richardson extrapolation of [`gamma_integral_partial`] over N, 2N, 4N, 8N.
pub fn gamma_integral_accelerated(n: u64) -> f64 {
    let mut row: Vec<f64> = (0..4).map(|i| gamma_integral_partial(n << i)).collect();
    for k in 1..4 {
        let w = (1u64 << k) as f64;
        row = row.windows(2).map(|p| (w * p[1] - p[0]) / (w - 1.0)).collect();
    }
    row[0]
}

/// Euler's constant, accelerated at N = 10^6.
pub fn compute_gamma() -> f64 {
    static GAMMA: OnceLock<f64> = OnceLock::new();
    *GAMMA.get_or_init(|| gamma_euler_maclaurin(1_000_000))
}

/// lim [Σ_{n≤N} (log n)/n − log²N/2], corrected by −(log N)/(2N).
pub fn c_euler_maclaurin(n: u64) -> f64 {
    let s = (1..=n)
        .rev()
        .map(|k| {
            let kf = k as f64;
            kf.ln() / kf
        })
        .collect::<CompensatedSum>()
        .value();
    let l = (n as f64).ln();
    s - 0.5 * l * l - l / (2.0 * n as f64)
}

/// The constant of Σ (log n)/n = log²x/2 + c + O((1+log x)/x), at N = 10^7.
pub fn compute_c() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| c_euler_maclaurin(10_000_000))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub gamma: f64,
    pub c: f64,
}

impl Constants {
    pub fn compute() -> Self {
        Self { gamma: compute_gamma(), c: compute_c() }
    }

    pub fn gamma_in_unit_interval(&self) -> bool {
        0.0 < self.gamma && self.gamma < 1.0
    }

    pub fn c_positive(&self) -> bool {
        self.c > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryKind {
    /// Σ 1/n = log x + γ + O(1/x)
    S1,
    /// Σ (log n)/n = log²x/2 + c + O((1+log x)/x)
    S5,
    /// Σ log n = x log x − x + O(log x)
    S2,
    /// Σ log(x/n) = x + O(log x)
    S2B,
    /// Σ log² n = x(log²x − 2log x + 2) + O(log²x)
    S3,
    /// Σ log²(x/n) = 2x + O(log²x)
    S3B,
}

impl ElementaryKind {
    pub const ALL: [ElementaryKind; 6] = [Self::S1, Self::S5, Self::S2, Self::S2B, Self::S3, Self::S3B];

    pub fn name(self) -> &'static str {
        match self {
            Self::S1 => "s1",
            Self::S5 => "s5",
            Self::S2 => "s2",
            Self::S2B => "s2b",
            Self::S3 => "s3",
            Self::S3B => "s3b",
        }
    }

    pub fn normalizer_name(self) -> &'static str {
        match self {
            Self::S1 => "1/x",
            Self::S5 => "(1+log x)/x",
            Self::S2 | Self::S2B => "log x",
            Self::S3 | Self::S3B => "log^2 x",
        }
    }
}

impl FromStr for ElementaryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown elementary series `{s}`")))
    }
}

fn check_xs(xs: &[f64], min: f64) -> Result<()> {
    if let Some(&x) = xs.iter().find(|&&x| !(x >= min) || !x.is_finite()) {
        return Err(Error::Domain(format!("sample point {x} is below {min}")));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("sample points must be strictly increasing".into()));
    }
    Ok(())
}

pub fn elementary_series(kind: ElementaryKind, xs: &[f64]) -> Result<RemainderSeries> {
    check_xs(xs, 1.0)?;
    let (gamma, c) = match kind {
        ElementaryKind::S1 => (compute_gamma(), 0.0),
        ElementaryKind::S5 => (0.0, compute_c()),
        _ => (0.0, 0.0),
    };
    let mut series = RemainderSeries::new(kind.name(), kind.normalizer_name());
    let (mut h, mut lh, mut l, mut l2) =
        (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
    let mut n = 0u64;
    for &x in xs {
        let top = x.floor() as u64;
        while n < top {
            n += 1;
            let nf = n as f64;
            let ln = nf.ln();
            h.add(1.0 / nf);
            lh.add(ln / nf);
            l.add(ln);
            l2.add(ln * ln);
        }
        let lx = x.ln();
        let count = top as f64;
        let (raw, main, normalizer) = match kind {
            ElementaryKind::S1 => (h.value(), lx + gamma, 1.0 / x),
            ElementaryKind::S5 => (lh.value(), 0.5 * lx * lx + c, (1.0 + lx) / x),
            ElementaryKind::S2 => (l.value(), x * lx - x, lx),
            ElementaryKind::S2B => (count * lx - l.value(), x, lx),
            ElementaryKind::S3 => (l2.value(), x * (lx * lx - 2.0 * lx + 2.0), lx * lx),
            ElementaryKind::S3B => {
                let mut s = CompensatedSum::new();
                s.add(count * lx * lx);
                s.add(-2.0 * lx * l.value());
                s.add(l2.value());
                (s.value(), 2.0 * x, lx * lx)
            }
        };
        series.push(x, raw, main, normalizer);
    }
    Ok(series)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MobiusKind {
    /// Σ μ(n)/n = O(1)
    Mu1,
    /// Σ μ(n)/n · log(x/n) = O(1)
    Mu2,
    /// Σ μ(n)/n · log²(x/n) = 2 log x + O(1)
    Mu3,
}

impl MobiusKind {
    pub const ALL: [MobiusKind; 3] = [Self::Mu1, Self::Mu2, Self::Mu3];

    pub fn name(self) -> &'static str {
        match self {
            Self::Mu1 => "mu1",
            Self::Mu2 => "mu2",
            Self::Mu3 => "mu3",
        }
    }
}

impl FromStr for MobiusKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown Möbius series `{s}`")))
    }
}

pub fn mobius_series(kind: MobiusKind, xs: &[f64], table: &ArithTable) -> Result<RemainderSeries> {
    check_xs(xs, 1.0)?;
    if let Some(&x) = xs.last() {
        table.ensure_covers(x.floor() as u64)?;
    }
    let mu = table.mu_slice();
    let mut series = RemainderSeries::new(kind.name(), "1");
    for &x in xs {
        let top = x.floor() as usize;
        let raw = (1..=top)
            .filter(|&n| mu[n] != 0)
            .map(|n| {
                let w = mu[n] as f64 / n as f64;
                match kind {
                    MobiusKind::Mu1 => w,
                    MobiusKind::Mu2 => w * (x / n as f64).ln(),
                    MobiusKind::Mu3 => {
                        let l = (x / n as f64).ln();
                        w * l * l
                    }
                }
            })
            .collect::<CompensatedSum>()
            .value();
        let main = match kind {
            MobiusKind::Mu3 => 2.0 * x.ln(),
            _ => 0.0,
        };
        series.push(x, raw, main, 1.0);
    }
    Ok(series)
}

/// Σ_{n≤x} (Λ(n) + K(n)) against 2x, normalized by x/log x.
pub fn erdos_karamata_series(xs: &[f64], table: &ArithTable) -> Result<RemainderSeries> {
    check_xs(xs, 1.0)?;
    if let Some(&x) = xs.last() {
        table.ensure_covers(x.floor() as u64)?;
    }
    let k = k_function(table);
    let lam = table.lambda_slice();
    let mut series = RemainderSeries::new("erdos_karamata", "x/log x");
    let mut acc = CompensatedSum::new();
    let mut n = 0usize;
    for &x in xs {
        let top = x.floor() as usize;
        while n < top {
            n += 1;
            acc.add(lam[n] + k.get(n));
        }
        series.push(x, acc.value(), 2.0 * x, x / x.ln());
    }
    Ok(series)
}

/// Σ_{n≤x} K(n), the part of the Λ+K sum beyond ψ.
pub fn k_partial_sums(xs: &[f64], table: &ArithTable) -> Result<Vec<f64>> {
    check_xs(xs, 1.0)?;
    if let Some(&x) = xs.last() {
        table.ensure_covers(x.floor() as u64)?;
    }
    let k = k_function(table);
    let mut acc = CompensatedSum::new();
    let mut n = 0usize;
    Ok(xs
        .iter()
        .map(|&x| {
            let top = x.floor() as usize;
            while n < top {
                n += 1;
                acc.add(k.get(n));
            }
            acc.value()
        })
        .collect())
}

/// U(x) = Σ_{n≤x} μ(n) Σ_{m≤x/n} log² m against 2x log x, normalized by x.
pub fn u_series(xs: &[f64], table: &ArithTable) -> Result<RemainderSeries> {
    check_xs(xs, 1.0)?;
    let top = xs.last().map_or(1, |x| x.floor() as usize);
    table.ensure_covers(top as u64)?;
    let mut log2_prefix = Vec::with_capacity(top + 1);
    let mut acc = CompensatedSum::new();
    log2_prefix.push(0.0);
    for m in 1..=top {
        let l = (m as f64).ln();
        acc.add(l * l);
        log2_prefix.push(acc.value());
    }
    let mu = table.mu_slice();
    let mut series = RemainderSeries::new("u", "x");
    for &x in xs {
        let top = x.floor() as usize;
        let raw = (1..=top)
            .filter(|&n| mu[n] != 0)
            .map(|n| mu[n] as f64 * log2_prefix[top / n])
            .collect::<CompensatedSum>()
            .value();
        series.push(x, raw, 2.0 * x * x.ln(), x);
    }
    Ok(series)
}

/// Σ_{m≤x} ⌊x/m⌋ against x log x + (2γ − 1)x, normalized by √x.
pub fn divisor_series(xs: &[f64]) -> Result<RemainderSeries> {
    check_xs(xs, 1.0)?;
    let gamma = compute_gamma();
    let mut series = RemainderSeries::new("divisor", "sqrt(x)");
    for &x in xs {
        let raw = divisor_summatory(x.floor() as u64) as f64;
        series.push(x, raw, x * x.ln() + (2.0 * gamma - 1.0) * x, x.sqrt());
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA_REF: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn gamma_routes_agree() {
        let g = compute_gamma();
        assert!((g - GAMMA_REF).abs() < 1e-12, "{g}");
        let g2 = gamma_integral_accelerated(10_000);
        assert!((g - g2).abs() < 1e-12, "{g} vs {g2}");
        assert!((gamma_euler_maclaurin(1000) - g).abs() < 1e-12);
    }

    #[test]
    fn gamma_partial_sum_at_10_within_one_tenth() {
        let p = gamma_integral_partial(10);
        assert!((p - compute_gamma()).abs() <= 0.1, "{p}");
    }

    #[test]
    fn c_value_and_remainder_at_100() {
        let c = compute_c();
        // Stieltjes constant γ₁
        assert!((c - -0.072_815_845_483_676_7).abs() < 1e-10, "{c}");
        let s: f64 = (1..=100).map(|n| (n as f64).ln() / n as f64).sum();
        let l = 100f64.ln();
        assert!((s - l * l / 2.0 - c).abs() <= (1.0 + l) / 100.0);
        assert!((c_euler_maclaurin(1_000_000) - c).abs() < 1e-9);
    }

    #[test]
    fn s1_at_10() {
        let s = elementary_series(ElementaryKind::S1, &[10.0]).unwrap();
        let r = s.records()[0];
        assert!((r.raw - 2.9290).abs() < 1e-4);
        assert!((r.main - 2.8798).abs() < 1e-4);
        assert!((r.normalized - 0.492).abs() < 1e-3);
    }

    #[test]
    fn s2_at_10_and_s2b_at_1() {
        let r = elementary_series(ElementaryKind::S2, &[10.0]).unwrap().records()[0];
        assert!((r.raw - 15.104).abs() < 1e-3);
        assert!((r.main - 13.026).abs() < 1e-3);
        let r = elementary_series(ElementaryKind::S2B, &[1.0]).unwrap().records()[0];
        assert_eq!((r.raw, r.main, r.remainder), (0.0, 1.0, -1.0));
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("S3B".parse::<ElementaryKind>().unwrap(), ElementaryKind::S3B);
        assert!(matches!("s4".parse::<ElementaryKind>(), Err(Error::Usage(_))));
        assert!(matches!("mu4".parse::<MobiusKind>(), Err(Error::Usage(_))));
    }

    #[test]
    fn mobius_examples() {
        let t = ArithTable::build(100_000).unwrap();
        let s = mobius_series(MobiusKind::Mu1, &[1.0, 10.0], &t).unwrap();
        assert_eq!(s.records()[0].raw, 1.0);
        assert!((s.records()[1].raw - 0.0905).abs() < 1e-4);
        let s = mobius_series(MobiusKind::Mu3, &[1e5], &t).unwrap();
        assert!(s.records()[0].remainder.abs() <= 10.0);
        assert!(mobius_series(MobiusKind::Mu1, &[1e5 + 1.0], &t).is_err());
    }

    #[test]
    fn erdos_karamata_examples() {
        let t = ArithTable::build(1000).unwrap();
        let s = erdos_karamata_series(&[1.0, 3.0], &t).unwrap();
        assert_eq!((s.records()[0].raw, s.records()[0].main), (0.0, 2.0));
        let r = s.records()[1];
        assert!((r.raw - 6f64.ln()).abs() < 1e-14);
        assert_eq!(r.main, 6.0);
        assert!((r.normalized - -1.541).abs() < 1e-3);
    }

    #[test]
    fn u_examples() {
        let t = ArithTable::build(100).unwrap();
        let s = u_series(&[1.0, 4.0], &t).unwrap();
        assert_eq!(s.records()[0].raw, 0.0);
        let (l2, l3) = (2f64.ln(), 3f64.ln());
        assert!((s.records()[1].raw - (l3 * l3 + 4.0 * l2 * l2)).abs() < 1e-13);
    }

    #[test]
    fn divisor_examples() {
        let s = divisor_series(&[1.0, 10.0]).unwrap();
        let r1 = s.records()[0];
        assert_eq!(r1.raw, 1.0);
        assert!((r1.main - 0.1544).abs() < 1e-4);
        let r10 = s.records()[1];
        assert_eq!(r10.raw, 27.0);
        assert!((r10.main - 24.571).abs() < 1e-3);
        assert!((r10.normalized - 0.768).abs() < 1e-3);
    }

    #[test]
    fn series_reject_bad_samples() {
        assert!(elementary_series(ElementaryKind::S1, &[5.0, 4.0]).is_err());
        assert!(divisor_series(&[0.5]).is_err());
    }
}
