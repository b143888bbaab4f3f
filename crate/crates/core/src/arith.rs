//! Exact arithmetic functions and the Dirichlet-convolution ring.
//!
//! μ and Λ are built by a linear sieve; the recursive definition of μ and the
//! divisor-sum definition of Λ are kept alongside as independent oracles.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// Default upper bound on sieve limits (about 0.5 GB of tables).
pub const DEFAULT_MEMORY_CAP: usize = 50_000_000;

/// Dense tables of μ(n) and Λ(n) for `1 <= n <= limit`, plus the primes.
///
/// Index 0 of `mu` and `lambda` is unused and holds zero.
#[derive(Debug, Clone)]
pub struct ArithTable {
    limit: usize,
    mu: Vec<i8>,
    lambda: Vec<f64>,
    primes: Vec<u32>,
}

impl ArithTable {
    pub fn build(limit: usize) -> Result<Self> {
        Self::build_with_cap(limit, DEFAULT_MEMORY_CAP)
    }

    pub fn build_with_cap(limit: usize, cap: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Domain("sieve limit must be at least 1".into()));
        }
        if limit > cap {
            return Err(Error::Resource { requested: limit, cap });
        }
        let mut mu = vec![0i8; limit + 1];
        let mut lambda = vec![0f64; limit + 1];
        let mut composite = vec![false; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        mu[1] = 1;
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                mu[i] = -1;
                lambda[i] = (i as f64).ln();
            }
            for &p in &primes {
                let p = p as usize;
                let ip = i * p;
                if ip > limit {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    // mu[ip] stays 0; ip is a prime power iff i is a power of p
                    lambda[ip] = lambda[i];
                    break;
                }
                mu[ip] = -mu[i];
            }
        }
        Ok(Self { limit, mu, lambda, primes })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn mu(&self, n: usize) -> i8 {
        self.mu[n]
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    /// μ as a slice indexed by n (entry 0 unused).
    pub fn mu_slice(&self) -> &[i8] {
        &self.mu
    }

    /// Λ as a slice indexed by n (entry 0 unused).
    pub fn lambda_slice(&self) -> &[f64] {
        &self.lambda
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn mu_fn(&self) -> DenseArithFn {
        DenseArithFn::exact(self.mu.iter().map(|&m| m as i64).collect())
    }

    pub fn lambda_fn(&self) -> DenseArithFn {
        DenseArithFn::real(self.lambda.clone())
    }

    pub(crate) fn ensure_covers(&self, n: u64) -> Result<()> {
        if n as usize > self.limit {
            Err(Error::Range { requested: n, limit: self.limit as u64 })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Values {
    Exact(Vec<i64>),
    Real(Vec<f64>),
}

/// An arithmetic function on `1..=limit`, stored densely with index 0 unused.
/// Integer-valued functions keep exact storage so identities between them
/// can be checked without tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseArithFn {
    values: Values,
}

impl DenseArithFn {
    /// From values indexed `0..=limit`; entry 0 is ignored.
    pub fn exact(mut values: Vec<i64>) -> Self {
        assert!(values.len() >= 2, "need at least n = 1");
        values[0] = 0;
        Self { values: Values::Exact(values) }
    }

    pub fn real(mut values: Vec<f64>) -> Self {
        assert!(values.len() >= 2, "need at least n = 1");
        values[0] = 0.0;
        Self { values: Values::Real(values) }
    }

    pub fn from_fn_exact(limit: usize, f: impl Fn(usize) -> i64) -> Self {
        Self::exact((0..=limit).map(|n| if n == 0 { 0 } else { f(n) }).collect())
    }

    pub fn from_fn_real(limit: usize, f: impl Fn(usize) -> f64) -> Self {
        Self::real((0..=limit).map(|n| if n == 0 { 0.0 } else { f(n) }).collect())
    }

    /// δ: the convolution unit.
    pub fn delta(limit: usize) -> Self {
        Self::from_fn_exact(limit, |n| (n == 1) as i64)
    }

    /// 𝟙: the constant one.
    pub fn one(limit: usize) -> Self {
        Self::from_fn_exact(limit, |_| 1)
    }

    pub fn log(limit: usize) -> Self {
        Self::from_fn_real(limit, |n| (n as f64).ln())
    }

    pub fn limit(&self) -> usize {
        match &self.values {
            Values::Exact(v) => v.len() - 1,
            Values::Real(v) => v.len() - 1,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.values, Values::Exact(_))
    }

    pub fn get(&self, n: usize) -> f64 {
        match &self.values {
            Values::Exact(v) => v[n] as f64,
            Values::Real(v) => v[n],
        }
    }

    pub fn get_exact(&self, n: usize) -> Option<i64> {
        match &self.values {
            Values::Exact(v) => Some(v[n]),
            Values::Real(_) => None,
        }
    }

    pub fn to_real_vec(&self) -> Vec<f64> {
        match &self.values {
            Values::Exact(v) => v.iter().map(|&x| x as f64).collect(),
            Values::Real(v) => v.clone(),
        }
    }
}

/// (f⋆g)(n) = Σ_{ab=n} f(a)g(b) for all n ≤ N, via the O(N log N) pair loop.
pub fn dirichlet_convolve(f: &DenseArithFn, g: &DenseArithFn) -> Result<DenseArithFn> {
    let (nf, ng) = (f.limit(), g.limit());
    if nf != ng {
        return Err(Error::Shape { left: nf, right: ng });
    }
    let n = nf;
    match (&f.values, &g.values) {
        (Values::Exact(a), Values::Exact(b)) => {
            let mut out = vec![0i64; n + 1];
            for (i, &fa) in a.iter().enumerate().skip(1) {
                if fa == 0 {
                    continue;
                }
                for (j, &gb) in b.iter().enumerate().skip(1).take(n / i) {
                    out[i * j] += fa * gb;
                }
            }
            Ok(DenseArithFn::exact(out))
        }
        _ => {
            let (a, b) = (f.to_real_vec(), g.to_real_vec());
            let mut out = vec![0f64; n + 1];
            for i in 1..=n {
                let fa = a[i];
                if fa == 0.0 {
                    continue;
                }
                for j in 1..=n / i {
                    out[i * j] += fa * b[j];
                }
            }
            Ok(DenseArithFn::real(out))
        }
    }
}

/// Divisors of n in increasing order, by trial division up to √n.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// μ(n) from the recursion μ(1) = 1, μ(n) = −Σ_{d|n, d<n} μ(d).
pub fn mobius_recursive(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("μ is defined for n ≥ 1".into()));
    }
    fn go(n: u64, memo: &mut HashMap<u64, i64>) -> i64 {
        if n == 1 {
            return 1;
        }
        if let Some(&v) = memo.get(&n) {
            return v;
        }
        let mut s = 0;
        for d in divisors(n) {
            if d < n {
                s += go(d, memo);
            }
        }
        memo.insert(n, -s);
        -s
    }
    Ok(go(n, &mut HashMap::new()))
}

/// Λ(n) = −Σ_{d|n} μ(d) log d for n ≤ N, with μ taken from the table.
pub fn mangoldt_from_definition(table: &ArithTable, limit: usize) -> Result<DenseArithFn> {
    table.ensure_covers(limit as u64)?;
    if limit == 0 {
        return Err(Error::Domain("limit must be at least 1".into()));
    }
    let mut out = vec![0f64; limit + 1];
    for d in 2..=limit {
        let m = table.mu(d);
        if m == 0 {
            continue;
        }
        let term = -(m as f64) * (d as f64).ln();
        let mut k = d;
        while k <= limit {
            out[k] += term;
            k += d;
        }
    }
    Ok(DenseArithFn::real(out))
}

/// (Λ⋆Λ)(n) for n ≤ table limit, accumulated over pairs of prime powers.
pub fn lambda_self_convolution(table: &ArithTable) -> Vec<f64> {
    let n = table.limit();
    let lam = table.lambda_slice();
    let support: Vec<usize> = (2..=n).filter(|&k| lam[k] > 0.0).collect();
    let mut out = vec![0f64; n + 1];
    for &a in &support {
        if a * 2 > n {
            break;
        }
        for &b in &support {
            let ab = a * b;
            if ab > n {
                break;
            }
            out[ab] += lam[a] * lam[b];
        }
    }
    out
}

/// K(1) = 0, K(n) = (Λ⋆Λ)(n) / log n.
pub fn k_function(table: &ArithTable) -> DenseArithFn {
    let ll = lambda_self_convolution(table);
    DenseArithFn::real(
        ll.iter()
            .enumerate()
            .map(|(n, &v)| if n >= 2 { v / (n as f64).ln() } else { 0.0 })
            .collect(),
    )
}

/// Exact check of μ⋆𝟙 = δ on 1..=N.
pub fn verify_unit_law(table: &ArithTable, limit: usize) -> Result<VerificationReport> {
    table.ensure_covers(limit as u64)?;
    let mut acc = vec![0i64; limit + 1];
    for d in 1..=limit {
        let m = table.mu(d) as i64;
        if m == 0 {
            continue;
        }
        let mut k = d;
        while k <= limit {
            acc[k] += m;
            k += d;
        }
    }
    let mut report = VerificationReport::new("mu_star_one_is_delta", format!("1<=n<={limit}"), 0.0);
    for (n, &v) in acc.iter().enumerate().skip(1) {
        report.observe((v - (n == 1) as i64).abs() as f64, format!("n={n}"));
    }
    Ok(report)
}

/// Σ_{d|n} Λ(d) = log n for n ≤ N, tolerance 1e-9·(1 + log n).
pub fn verify_mangoldt_sum(table: &ArithTable, limit: usize) -> Result<VerificationReport> {
    verify_mangoldt_sum_scaled(table, limit, 1.0)
}

pub fn verify_mangoldt_sum_scaled(table: &ArithTable, limit: usize, tol_scale: f64) -> Result<VerificationReport> {
    table.ensure_covers(limit as u64)?;
    let mut acc = vec![0f64; limit + 1];
    for d in 2..=limit {
        let l = table.lambda(d);
        if l == 0.0 {
            continue;
        }
        let mut k = d;
        while k <= limit {
            acc[k] += l;
            k += d;
        }
    }
    let tol = 1e-9 * tol_scale;
    let mut report =
        VerificationReport::new("lambda_star_one_is_log", format!("1<=n<={limit}"), tol).with_notes("violation scaled by 1+log n");
    for (n, &v) in acc.iter().enumerate().skip(1) {
        let ln = (n as f64).ln();
        report.observe((v - ln).abs() / (1.0 + ln), format!("n={n}"));
    }
    Ok(report)
}

/// Selberg's identity Λ(n)log n + (Λ⋆Λ)(n) = Σ_{d|n} μ(d) log²(n/d) for
/// n ≤ N, tolerance 1e-6·log²(n+2).
pub fn verify_selberg(table: &ArithTable, limit: usize) -> Result<VerificationReport> {
    verify_selberg_scaled(table, limit, 1.0)
}

pub fn verify_selberg_scaled(table: &ArithTable, limit: usize, tol_scale: f64) -> Result<VerificationReport> {
    table.ensure_covers(limit as u64)?;
    let (lhs, rhs) = selberg_sides(table, limit);
    let tol = 1e-6 * tol_scale;
    let mut report =
        VerificationReport::new("selberg_identity", format!("1<=n<={limit}"), tol).with_notes("violation scaled by log^2(n+2)");
    for n in 1..=limit {
        let scale = ((n + 2) as f64).ln().powi(2);
        report.observe((lhs[n] - rhs[n]).abs() / scale, format!("n={n}"));
    }
    Ok(report)
}

/// Both sides of Selberg's identity on 1..=N (index 0 unused).
pub fn selberg_sides(table: &ArithTable, limit: usize) -> (Vec<f64>, Vec<f64>) {
    let lam = table.lambda_slice();
    let mut lhs = vec![0f64; limit + 1];
    for n in 2..=limit {
        lhs[n] = lam[n] * (n as f64).ln();
    }
    let support: Vec<usize> = (2..=limit).filter(|&k| lam[k] > 0.0).collect();
    for &a in &support {
        if a * 2 > limit {
            break;
        }
        for &b in &support {
            let ab = a * b;
            if ab > limit {
                break;
            }
            lhs[ab] += lam[a] * lam[b];
        }
    }
    let log2: Vec<f64> = (0..=limit).map(|m| if m >= 2 { (m as f64).ln().powi(2) } else { 0.0 }).collect();
    let mut rhs = vec![0f64; limit + 1];
    for d in 1..=limit {
        let m = table.mu(d);
        if m == 0 {
            continue;
        }
        let sign = m as f64;
        for q in 2..=limit / d {
            rhs[d * q] += sign * log2[q];
        }
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }

    #[test]
    fn recursive_mobius_examples() {
        assert_eq!(mobius_recursive(1).unwrap(), 1);
        assert_eq!(mobius_recursive(12).unwrap(), 0);
        assert_eq!(mobius_recursive(30).unwrap(), -1);
        assert!(matches!(mobius_recursive(0), Err(Error::Domain(_))));
    }

    #[test]
    fn table_n1() {
        let t = ArithTable::build(1).unwrap();
        assert_eq!(t.mu_slice()[1..], [1]);
        assert_eq!(t.lambda_slice()[1..], [0.0]);
        assert!(t.primes().is_empty());
    }

    #[test]
    fn table_n10_lambda() {
        let t = ArithTable::build(10).unwrap();
        assert_eq!(t.lambda(8), 2f64.ln());
        assert_eq!(t.lambda(6), 0.0);
        assert_eq!(t.lambda(9), 3f64.ln());
        assert_eq!(t.primes(), &[2, 3, 5, 7]);
    }

    #[test]
    fn cap_is_enforced() {
        match ArithTable::build_with_cap(1000, 999) {
            Err(Error::Resource { requested, cap }) => assert_eq!((requested, cap), (1000, 999)),
            other => panic!("expected resource error, got {other:?}"),
        }
        assert!(matches!(ArithTable::build(0), Err(Error::Domain(_))));
    }

    #[test]
    fn sieve_matches_recursion_up_to_1e4() {
        let t = ArithTable::build(10_000).unwrap();
        for n in 1..=10_000u64 {
            assert_eq!(t.mu(n as usize) as i64, mobius_recursive(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn sieve_matches_recursion_at_random_points_1e6() {
        let t = ArithTable::build(1_000_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=1_000_000u64);
            assert_eq!(t.mu(n as usize) as i64, mobius_recursive(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn lambda_is_log_p_on_prime_powers_only() {
        let t = ArithTable::build(5000).unwrap();
        for n in 2..=5000u64 {
            let ds = divisors(n);
            let p = ds[1];
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            let expected = if m == 1 { (p as f64).ln() } else { 0.0 };
            assert_eq!(t.lambda(n as usize), expected, "n={n}");
        }
    }

    #[test]
    fn mu_multiplicative_and_bounded() {
        let n = 1_000_000u64;
        let t = ArithTable::build(n as usize).unwrap();
        assert!(t.mu_slice()[1..].iter().all(|m| m.abs() <= 1));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 1000 {
            let a = rng.gen_range(1..=1000u64);
            let b = rng.gen_range(1..=n / a);
            if gcd(a, b) != 1 {
                continue;
            }
            let (a, b) = (a as usize, b as usize);
            assert_eq!(t.mu(a * b), t.mu(a) * t.mu(b), "{a}·{b}");
            checked += 1;
        }
    }

    #[test]
    fn convolution_examples() {
        let n = 200;
        let one = DenseArithFn::one(n);
        let dd = dirichlet_convolve(&one, &one).unwrap();
        assert_eq!(dd.get_exact(12), Some(6));
        for k in 1..=n {
            assert_eq!(dd.get_exact(k).unwrap() as usize, divisors(k as u64).len());
        }
        let f = DenseArithFn::from_fn_real(n, |k| (k as f64).sqrt() - 3.0);
        assert_eq!(dirichlet_convolve(&DenseArithFn::delta(n), &f).unwrap(), f);
        let t = ArithTable::build(n).unwrap();
        assert_eq!(dirichlet_convolve(&t.mu_fn(), &one).unwrap(), DenseArithFn::delta(n));
    }

    #[test]
    fn convolution_shape_error() {
        let e = dirichlet_convolve(&DenseArithFn::one(5), &DenseArithFn::one(6)).unwrap_err();
        assert!(matches!(e, Error::Shape { left: 5, right: 6 }));
    }

    #[test]
    fn mangoldt_definition_examples() {
        let t = ArithTable::build(10_000).unwrap();
        let one = mangoldt_from_definition(&t, 1).unwrap();
        assert_eq!(one.get(1), 0.0);
        let lam = mangoldt_from_definition(&t, 10_000).unwrap();
        assert!((lam.get(9) - 3f64.ln()).abs() < 1e-12);
        for n in 1..=10_000 {
            let tol = 1e-9 * (1.0 + (n as f64).ln());
            assert!((lam.get(n) - t.lambda(n)).abs() <= tol, "n={n}");
        }
    }

    #[test]
    fn k_function_examples() {
        let t = ArithTable::build(1000).unwrap();
        let k = k_function(&t);
        assert_eq!(k.get(1), 0.0);
        let expected6 = 2.0 * 2f64.ln() * 3f64.ln() / 6f64.ln();
        assert!((k.get(6) - expected6).abs() < 1e-14);
        assert!((k.get(6) - 0.850002).abs() < 1e-6);
        for &p in t.primes() {
            assert_eq!(k.get(p as usize), 0.0);
        }
        assert!((1..=1000).all(|n| k.get(n) >= 0.0));
    }

    #[test]
    fn selberg_small_cases() {
        let t = ArithTable::build(10).unwrap();
        let (lhs, rhs) = selberg_sides(&t, 10);
        assert_eq!(lhs[1], 0.0);
        assert_eq!(rhs[1], 0.0);
        let l2 = 2f64.ln();
        let l3 = 3f64.ln();
        assert!((lhs[4] - 3.0 * l2 * l2).abs() < 1e-13);
        assert!((rhs[4] - 3.0 * l2 * l2).abs() < 1e-13);
        assert!((lhs[6] - 2.0 * l2 * l3).abs() < 1e-13);
        assert!((rhs[6] - 2.0 * l2 * l3).abs() < 1e-13);
    }

    #[test]
    fn mangoldt_sum_small_and_full() {
        let t = ArithTable::build(1_000_000).unwrap();
        let r = verify_mangoldt_sum(&t, 1_000_000).unwrap();
        assert!(r.passed(), "{r}");
        let r12 = verify_mangoldt_sum(&t, 12).unwrap();
        assert!(r12.passed());
    }
}
