//! Summatory functions M(x), ψ(x), D(x) = Σ⌊x/m⌋, π(x) and p_n.
//!
//! M and ψ come in two flavours: prefix sums over a sieve, and sublinear
//! evaluation through the inversion identities
//! Σ_{n≤x} M(x/n) = 1 and Σ_{n≤x} ψ(x/n) = log ⌊x⌋!, memoized over the
//! distinct values ⌊x/n⌋.

use std::collections::HashMap;

use crate::arith::ArithTable;
use crate::error::{Error, Result};
use crate::numeric::{isqrt, ln_factorial_stirling, CompensatedSum};
use crate::report::RemainderSeries;

/// Prefix sums of μ: entry v is M(v); entry 0 is 0.
pub fn mertens_prefix(table: &ArithTable) -> Vec<i64> {
    let mut out = Vec::with_capacity(table.limit() + 1);
    let mut acc = 0i64;
    out.push(0);
    for &m in &table.mu_slice()[1..] {
        acc += m as i64;
        out.push(acc);
    }
    out
}

/// Prefix sums of Λ: entry v is ψ(v); entry 0 is 0.
pub fn psi_prefix(table: &ArithTable) -> Vec<f64> {
    let mut out = Vec::with_capacity(table.limit() + 1);
    let mut acc = CompensatedSum::new();
    out.push(0.0);
    for &l in &table.lambda_slice()[1..] {
        acc.add(l);
        out.push(acc.value());
    }
    out
}

pub fn mertens_sieve(limit: usize) -> Result<Vec<i64>> {
    Ok(mertens_prefix(&ArithTable::build(limit)?))
}

pub fn psi_sieve(limit: usize) -> Result<Vec<f64>> {
    Ok(psi_prefix(&ArithTable::build(limit)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummatoryKind {
    Mertens,
    ChebyshevPsi,
}

/// Default sieve threshold for evaluating at x: max(1024, ⌊x^{2/3}⌋).
pub fn default_threshold(x: u64) -> usize {
    let t = (x as f64).powf(2.0 / 3.0).floor() as usize;
    t.max(1024)
}

/// Memoized sublinear evaluator for M or ψ.
///
/// Values at v ≤ threshold come from a sieve prefix table; larger v are
/// computed by the inversion recursion and cached. An instance is not
/// shareable across threads while evaluating (it mutates its memo).
#[derive(Debug, Clone)]
pub struct SummatoryOracle<V> {
    kind: SummatoryKind,
    base: Vec<V>,
    log_factorial: Vec<f64>,
    memo: HashMap<u64, V>,
}

pub type MertensOracle = SummatoryOracle<i64>;
pub type PsiOracle = SummatoryOracle<f64>;

impl<V: Copy> SummatoryOracle<V> {
    pub fn kind(&self) -> SummatoryKind {
        self.kind
    }

    pub fn threshold(&self) -> usize {
        self.base.len() - 1
    }

    pub fn memo(&self) -> &HashMap<u64, V> {
        &self.memo
    }
}

impl SummatoryOracle<i64> {
    pub fn mertens(threshold: usize) -> Result<Self> {
        let table = ArithTable::build(threshold.max(1))?;
        Ok(Self {
            kind: SummatoryKind::Mertens,
            base: mertens_prefix(&table),
            log_factorial: Vec::new(),
            memo: HashMap::new(),
        })
    }

    /// M(v), exactly.
    pub fn value(&mut self, v: u64) -> i64 {
        if (v as usize) < self.base.len() {
            return self.base[v as usize];
        }
        if let Some(&m) = self.memo.get(&v) {
            return m;
        }
        let mut acc = 1i64;
        let mut n = 2u64;
        while n <= v {
            let q = v / n;
            let n_end = v / q;
            acc -= (n_end - n + 1) as i64 * self.value(q);
            n = n_end + 1;
        }
        self.memo.insert(v, acc);
        acc
    }

    /// Memo invariant: |M(v)| ≤ v for every stored v.
    pub fn memo_is_consistent(&self) -> bool {
        self.memo.iter().all(|(&v, &m)| m.unsigned_abs() <= v)
    }
}

impl SummatoryOracle<f64> {
    pub fn psi(threshold: usize) -> Result<Self> {
        let table = ArithTable::build(threshold.max(1))?;
        let mut log_factorial = Vec::with_capacity(table.limit() + 1);
        let mut acc = CompensatedSum::new();
        log_factorial.push(0.0);
        for n in 1..=table.limit() {
            acc.add((n as f64).ln());
            log_factorial.push(acc.value());
        }
        Ok(Self {
            kind: SummatoryKind::ChebyshevPsi,
            base: psi_prefix(&table),
            log_factorial,
            memo: HashMap::new(),
        })
    }

    /// Σ_{n≤v} log n.
    fn log_factorial(&self, v: u64) -> f64 {
        match self.log_factorial.get(v as usize) {
            Some(&l) => l,
            None => ln_factorial_stirling(v),
        }
    }

    /// ψ(v).
    pub fn value(&mut self, v: u64) -> f64 {
        if (v as usize) < self.base.len() {
            return self.base[v as usize];
        }
        if let Some(&p) = self.memo.get(&v) {
            return p;
        }
        let mut acc = CompensatedSum::new();
        acc.add(self.log_factorial(v));
        let mut n = 2u64;
        while n <= v {
            let q = v / n;
            let n_end = v / q;
            acc.add(-((n_end - n + 1) as f64) * self.value(q));
            n = n_end + 1;
        }
        let p = acc.value();
        self.memo.insert(v, p);
        p
    }

    /// Memo invariant: values are non-negative and non-decreasing in v.
    pub fn memo_is_consistent(&self) -> bool {
        let mut entries: Vec<(u64, f64)> = self.memo.iter().map(|(&v, &p)| (v, p)).collect();
        entries.sort_by_key(|e| e.0);
        let tail = *self.base.last().expect("non-empty base");
        entries.iter().all(|e| e.1 >= 0.0)
            && entries.first().is_none_or(|e| e.1 >= tail - 1e-9 * tail)
            && entries.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-9 * w[1].1)
    }
}

/// M(⌊x⌋) in about x^{2/3} operations.
pub fn mertens_sublinear(x: u64) -> Result<i64> {
    mertens_sublinear_with_threshold(x, default_threshold(x))
}

pub fn mertens_sublinear_with_threshold(x: u64, threshold: usize) -> Result<i64> {
    if x == 0 {
        return Err(Error::Domain("M(x) requires x ≥ 1".into()));
    }
    let threshold = threshold.min(x as usize).max(1);
    Ok(MertensOracle::mertens(threshold)?.value(x))
}

/// ψ(⌊x⌋) in about x^{2/3} operations.
pub fn psi_sublinear(x: u64) -> Result<f64> {
    psi_sublinear_with_threshold(x, default_threshold(x))
}

pub fn psi_sublinear_with_threshold(x: u64, threshold: usize) -> Result<f64> {
    if x == 0 {
        return Err(Error::Domain("ψ(x) requires x ≥ 1".into()));
    }
    let threshold = threshold.min(x as usize).max(1);
    Ok(PsiOracle::psi(threshold)?.value(x))
}

/// Σ_{m≤x} ⌊x/m⌋ by the hyperbola method: 2·Σ_{m≤√x} ⌊x/m⌋ − ⌊√x⌋².
pub fn divisor_summatory(x: u64) -> u64 {
    let r = isqrt(x);
    let s: u64 = (1..=r).map(|m| x / m).sum();
    2 * s - r * r
}

/// Σ_{m≤x} ⌊x/m⌋ term by term.
pub fn divisor_summatory_direct(x: u64) -> u64 {
    (1..=x).map(|m| x / m).sum()
}

/// π(⌊x⌋) from the table's prime list.
pub fn prime_count(table: &ArithTable, x: f64) -> Result<u64> {
    if x < 2.0 {
        return Err(Error::Domain(format!("π(x) requires x ≥ 2, got {x}")));
    }
    let n = x.floor() as u64;
    table.ensure_covers(n)?;
    Ok(table.primes().partition_point(|&p| p as u64 <= n) as u64)
}

/// The n-th prime (p_1 = 2).
pub fn nth_prime(table: &ArithTable, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("p_n requires n ≥ 1".into()));
    }
    table
        .primes()
        .get(n as usize - 1)
        .map(|&p| p as u64)
        .ok_or(Error::Range { requested: n, limit: table.primes().len() as u64 })
}

/// The three Appendix ratio series: ψ(x)/x, π(x)log x/x, and p_n/(n log n)
/// with n = ⌊x⌋ (the last only where p_n lies in the sieved range).
#[derive(Debug, Clone)]
pub struct PntRatios {
    pub psi: RemainderSeries,
    pub pi: RemainderSeries,
    pub nth_prime: RemainderSeries,
}

pub fn pnt_ratio_series(table: &ArithTable, xs: &[f64]) -> Result<PntRatios> {
    let psi_table = psi_prefix(table);
    let mut out = PntRatios {
        psi: RemainderSeries::new("psi_over_x", "1"),
        pi: RemainderSeries::new("pi_log_x_over_x", "1"),
        nth_prime: RemainderSeries::new("p_n_over_n_log_n", "1"),
    };
    for &x in xs {
        if x < 2.0 {
            return Err(Error::Domain(format!("ratio series requires x ≥ 2, got {x}")));
        }
        let n = x.floor() as u64;
        table.ensure_covers(n)?;
        out.psi.push(x, psi_table[n as usize] / x, 1.0, 1.0);
        let pi = prime_count(table, x)? as f64;
        out.pi.push(x, pi * x.ln() / x, 1.0, 1.0);
        if let Ok(p) = nth_prime(table, n) {
            let nf = n as f64;
            out.nth_prime.push(nf, p as f64 / (nf * nf.ln()), 1.0, 1.0);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mertens_sieve_examples() {
        let m = mertens_sieve(100).unwrap();
        assert_eq!(m[1], 1);
        assert_eq!(m[10], -1);
        assert_eq!(m[100], 1);
    }

    #[test]
    fn psi_sieve_examples() {
        let p = psi_sieve(10).unwrap();
        assert_eq!(p[1], 0.0);
        assert_eq!(p[2], 2f64.ln());
        let expected = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((p[10] - expected).abs() < 1e-13);
        assert!((p[10] - 7.832).abs() < 1e-3);
    }

    #[test]
    fn sublinear_small_values() {
        assert_eq!(mertens_sublinear(1).unwrap(), 1);
        assert_eq!(mertens_sublinear(10).unwrap(), -1);
        assert_eq!(psi_sublinear(1).unwrap(), 0.0);
        assert!((psi_sublinear(10).unwrap() - psi_sieve(10).unwrap()[10]).abs() < 1e-12);
        assert!(matches!(mertens_sublinear(0), Err(Error::Domain(_))));
    }

    #[test]
    fn sublinear_recursion_engaged_with_small_threshold() {
        // threshold far below x forces the recursion for many arguments
        let m = mertens_sieve(50_000).unwrap();
        let p = psi_sieve(50_000).unwrap();
        for x in [1000u64, 4321, 9999, 50_000] {
            assert_eq!(mertens_sublinear_with_threshold(x, 30).unwrap(), m[x as usize], "x={x}");
            let ps = psi_sublinear_with_threshold(x, 30).unwrap();
            assert!((ps - p[x as usize]).abs() <= 1e-9 * p[x as usize], "x={x}");
        }
    }

    #[test]
    fn sublinear_matches_sieve_at_1e6() {
        let n = 1_000_000;
        let t = ArithTable::build(n).unwrap();
        let m = mertens_prefix(&t);
        let p = psi_prefix(&t);
        assert_eq!(mertens_sublinear(n as u64).unwrap(), m[n]);
        let ps = psi_sublinear(n as u64).unwrap();
        assert!((ps - p[n]).abs() <= 1e-9 * p[n]);
    }

    #[test]
    fn oracle_memo_invariants() {
        let mut mo = MertensOracle::mertens(100).unwrap();
        mo.value(1_000_000);
        assert!(!mo.memo().is_empty());
        assert!(mo.memo_is_consistent());
        let mut po = PsiOracle::psi(100).unwrap();
        po.value(1_000_000);
        assert!(po.memo_is_consistent());
        assert_eq!(po.kind(), SummatoryKind::ChebyshevPsi);
    }

    #[test]
    fn inversion_identity_sum_of_mertens() {
        let m = mertens_sieve(10_000).unwrap();
        for x in 1..=10_000usize {
            let s: i64 = (1..=x).map(|n| m[x / n]).sum();
            assert_eq!(s, 1, "x={x}");
        }
    }

    #[test]
    fn divisor_examples_and_hyperbola_identity() {
        assert_eq!(divisor_summatory(1), 1);
        assert_eq!(divisor_summatory(10), 27);
        assert_eq!(divisor_summatory(100), 482);
        for x in 1..=10_000 {
            assert_eq!(divisor_summatory(x), divisor_summatory_direct(x), "x={x}");
        }
    }

    #[test]
    fn prime_count_and_nth_prime() {
        let t = ArithTable::build(1000).unwrap();
        assert_eq!(prime_count(&t, 10.0).unwrap(), 4);
        assert_eq!(prime_count(&t, 100.0).unwrap(), 25);
        assert_eq!(prime_count(&t, 10.5).unwrap(), 4);
        assert_eq!(nth_prime(&t, 1).unwrap(), 2);
        assert_eq!(nth_prime(&t, 25).unwrap(), 97);
        match nth_prime(&t, 169) {
            Err(Error::Range { requested: 169, limit: 168 }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(prime_count(&t, 1.5), Err(Error::Domain(_))));
        assert!(matches!(prime_count(&t, 1001.0), Err(Error::Range { .. })));
    }

    #[test]
    fn pnt_ratio_examples() {
        let t = ArithTable::build(1000).unwrap();
        let r = pnt_ratio_series(&t, &[10.0, 25.0]).unwrap();
        assert!((r.psi.records()[0].raw - 0.7832).abs() < 1e-4);
        assert!((r.pi.records()[0].raw - 0.9210).abs() < 1e-4);
        let p25 = r.nth_prime.at(25.0).unwrap();
        assert!((p25.raw - 97.0 / (25.0 * 25f64.ln())).abs() < 1e-15);
        assert!((p25.raw - 1.2054).abs() < 1e-3);
    }

    #[test]
    fn monotonicity() {
        let t = ArithTable::build(100_000).unwrap();
        let p = psi_prefix(&t);
        assert!(p.windows(2).all(|w| w[1] >= w[0]));
        assert!(t.primes().windows(2).all(|w| w[1] > w[0]));
    }
}
