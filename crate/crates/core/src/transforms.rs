//! The Möbius transform on [1, ∞), its inverse, the Tatuzawa–Iseki weighted
//! inversion, and exact integration of step-minus-linear functions.

use std::fmt;
use std::sync::Arc;

use crate::arith::ArithTable;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Right-continuous jump function on [1, ∞):
/// value(x) = offset + Σ_{loc ≤ x} size.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    locs: Vec<f64>,
    sizes: Vec<f64>,
    cumulative: Vec<f64>,
    offset: f64,
}

impl StepFunction {
    pub fn new(locs: Vec<f64>, sizes: Vec<f64>, offset: f64) -> Result<Self> {
        if locs.len() != sizes.len() {
            return Err(Error::Precondition("jump locations and sizes differ in length".into()));
        }
        if locs.iter().any(|&l| !(l >= 1.0) || !l.is_finite()) {
            return Err(Error::Precondition("jump locations must be finite and ≥ 1".into()));
        }
        if locs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Precondition("jump locations must be strictly increasing".into()));
        }
        if sizes.iter().any(|s| !s.is_finite()) || !offset.is_finite() {
            return Err(Error::Precondition("jump sizes must be finite".into()));
        }
        let mut acc = CompensatedSum::new();
        acc.add(offset);
        let cumulative = sizes
            .iter()
            .map(|&s| {
                acc.add(s);
                acc.value()
            })
            .collect();
        Ok(Self { locs, sizes, cumulative, offset })
    }

    /// The zero function.
    pub fn zero() -> Self {
        Self { locs: Vec::new(), sizes: Vec::new(), cumulative: Vec::new(), offset: 0.0 }
    }

    /// Jumps at integers: `jumps` yields (n, size) with n increasing and ≥ 1.
    pub fn integer_jumps(jumps: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let (locs, sizes): (Vec<f64>, Vec<f64>) = jumps.into_iter().map(|(n, s)| (n as f64, s)).unzip();
        Self::new(locs, sizes, 0.0)
    }

    pub fn locations(&self) -> &[f64] {
        &self.locs
    }

    pub fn sizes(&self) -> &[f64] {
        &self.sizes
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.sizes.iter().all(|&s| s >= 0.0)
    }

    pub fn value(&self, x: f64) -> f64 {
        let k = self.locs.partition_point(|&l| l <= x);
        if k == 0 {
            self.offset
        } else {
            self.cumulative[k - 1]
        }
    }

    /// ∫_{1−0}^x df(t)/t = Σ_{loc ≤ x} size/loc, jumps at t = 1 included.
    pub fn stieltjes_over_t(&self, x: f64) -> f64 {
        let k = self.locs.partition_point(|&l| l <= x);
        self.locs[..k].iter().zip(&self.sizes[..k]).map(|(&l, &s)| s / l).collect::<CompensatedSum>().value()
    }

    /// ∫_1^x (f(t) − A t)/t² dt, or of its absolute value, integrated exactly
    /// piece by piece.
    pub fn integral_g_over_t2(&self, a: f64, x: f64, absolute: bool) -> f64 {
        let mut sweep = GOverT2Sweep::new(self, a, absolute);
        sweep.advance_to(x)
    }

    /// The same integral at every x in a non-decreasing list, in one pass.
    pub fn integrals_g_over_t2(&self, a: f64, xs: &[f64], absolute: bool) -> Vec<f64> {
        let mut sweep = GOverT2Sweep::new(self, a, absolute);
        xs.iter().map(|&x| sweep.advance_to(x)).collect()
    }
}

/// ∫_a^b (c − A t)/t² dt.
fn signed_piece(c: f64, a_coef: f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    c * (hi - lo) / (lo * hi) - a_coef * ((hi - lo) / lo).ln_1p()
}

/// ∫_a^b |c − A t|/t² dt, split at the sign change t = c/A.
fn absolute_piece(c: f64, a_coef: f64, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    if a_coef == 0.0 {
        return c.abs() * (hi - lo) / (lo * hi);
    }
    let root = c / a_coef;
    if a_coef > 0.0 {
        if root <= lo {
            -signed_piece(c, a_coef, lo, hi)
        } else if root >= hi {
            signed_piece(c, a_coef, lo, hi)
        } else {
            signed_piece(c, a_coef, lo, root) - signed_piece(c, a_coef, root, hi)
        }
    } else {
        // integrand c − A t increasing in t
        if root <= lo {
            signed_piece(c, a_coef, lo, hi)
        } else if root >= hi {
            -signed_piece(c, a_coef, lo, hi)
        } else {
            -signed_piece(c, a_coef, lo, root) + signed_piece(c, a_coef, root, hi)
        }
    }
}

/// Incremental evaluation of ∫_1^x (f(t) − A t)/t² dt for increasing x.
pub struct GOverT2Sweep<'a> {
    f: &'a StepFunction,
    a_coef: f64,
    absolute: bool,
    t: f64,
    next: usize,
    value: f64,
    acc: CompensatedSum,
}

impl<'a> GOverT2Sweep<'a> {
    pub fn new(f: &'a StepFunction, a_coef: f64, absolute: bool) -> Self {
        let next = f.locs.partition_point(|&l| l <= 1.0);
        let value = f.value(1.0);
        Self { f, a_coef, absolute, t: 1.0, next, value, acc: CompensatedSum::new() }
    }

    fn piece(&self, lo: f64, hi: f64) -> f64 {
        if self.absolute {
            absolute_piece(self.value, self.a_coef, lo, hi)
        } else {
            signed_piece(self.value, self.a_coef, lo, hi)
        }
    }

    /// Integral from 1 to x. Requests must be non-decreasing; x < 1 gives 0.
    pub fn advance_to(&mut self, x: f64) -> f64 {
        if x <= self.t {
            assert!(x >= self.t || x <= 1.0, "sweep requests must be non-decreasing");
            return self.acc.value();
        }
        while self.next < self.f.locs.len() && self.f.locs[self.next] <= x {
            let loc = self.f.locs[self.next];
            let p = self.piece(self.t, loc);
            self.acc.add(p);
            self.t = loc;
            self.value = self.f.cumulative[self.next];
            self.next += 1;
        }
        let p = self.piece(self.t, x);
        self.acc.add(p);
        self.t = x;
        self.acc.value()
    }
}

/// A real function on [1, ∞), extended by 0 on [0, 1).
#[derive(Clone)]
pub enum RealFn {
    ConstantOne,
    Identity,
    XLogX,
    Floor,
    Step(StepFunction),
    /// Values at integers, evaluated at ⌊x⌋; entry 0 unused.
    Table(Arc<[f64]>),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for RealFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealFn::ConstantOne => f.write_str("ConstantOne"),
            RealFn::Identity => f.write_str("Identity"),
            RealFn::XLogX => f.write_str("XLogX"),
            RealFn::Floor => f.write_str("Floor"),
            RealFn::Step(s) => write!(f, "Step({} jumps)", s.locations().len()),
            RealFn::Table(t) => write!(f, "Table({} entries)", t.len()),
            RealFn::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl RealFn {
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RealFn::Custom(Arc::new(f))
    }

    /// x ↦ Σ_{n≤x} f(x/n).
    pub fn mobius_transformed(self) -> Self {
        RealFn::custom(move |x| if x < 1.0 { 0.0 } else { mobius_sum(&self, x) })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < 1.0 {
            return 0.0;
        }
        match self {
            RealFn::ConstantOne => 1.0,
            RealFn::Identity => x,
            RealFn::XLogX => x * x.ln(),
            RealFn::Floor => x.floor(),
            RealFn::Step(s) => s.value(x),
            RealFn::Table(t) => t.get(x.floor() as usize).copied().unwrap_or(f64::NAN),
            RealFn::Custom(f) => f(x),
        }
    }
}

fn mobius_sum(f: &RealFn, x: f64) -> f64 {
    let n_max = x.floor() as u64;
    (1..=n_max).map(|n| f.eval(x / n as f64)).collect::<CompensatedSum>().value()
}

/// F(x) = Σ_{n≤x} f(x/n).
pub fn mobius_transform(f: &RealFn, x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("Möbius transform requires x ≥ 1, got {x}")));
    }
    Ok(mobius_sum(f, x))
}

/// f(x) = Σ_{n≤x} μ(n) F(x/n).
pub fn inverse_mobius_transform(big_f: &RealFn, x: f64, table: &ArithTable) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("inverse transform requires x ≥ 1, got {x}")));
    }
    let n_max = x.floor() as u64;
    table.ensure_covers(n_max)?;
    let mu = table.mu_slice();
    Ok((1..=n_max as usize)
        .filter(|&n| mu[n] != 0)
        .map(|n| mu[n] as f64 * big_f.eval(x / n as f64))
        .collect::<CompensatedSum>()
        .value())
}

/// Both sides of f(x)log x + Σ Λ(n) f(x/n) = Σ μ(n) log(x/n) F(x/n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiResidual {
    pub lhs: f64,
    pub rhs: f64,
}

impl TiResidual {
    /// |lhs − rhs| / (1 + |lhs|).
    pub fn relative_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs() / (1.0 + self.lhs.abs())
    }
}

pub fn tatuzawa_iseki_residual(f: &RealFn, x: f64, table: &ArithTable) -> Result<TiResidual> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("Tatuzawa–Iseki requires x ≥ 1, got {x}")));
    }
    let n_max = x.floor() as u64;
    table.ensure_covers(n_max)?;
    let (mu, lam) = (table.mu_slice(), table.lambda_slice());
    let mut lhs = CompensatedSum::new();
    lhs.add(f.eval(x) * x.ln());
    for (n, &l) in lam.iter().enumerate().take(n_max as usize + 1).skip(2) {
        if l > 0.0 {
            lhs.add(l * f.eval(x / n as f64));
        }
    }
    let mut rhs = CompensatedSum::new();
    for (n, &m) in mu.iter().enumerate().take(n_max as usize + 1).skip(1) {
        if m == 0 {
            continue;
        }
        let y = x / n as f64;
        let w = y.ln();
        if w == 0.0 {
            continue;
        }
        rhs.add(m as f64 * w * mobius_sum(f, y));
    }
    Ok(TiResidual { lhs: lhs.value(), rhs: rhs.value() })
}

/// ∫_{1−0}^x df(t)/t.
pub fn stieltjes_over_t(f: &StepFunction, x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("Stieltjes integral requires x ≥ 1, got {x}")));
    }
    Ok(f.stieltjes_over_t(x))
}

/// ∫_1^x (f(t) − A t)/t² dt, signed or absolute.
pub fn integral_g_over_t2(f: &StepFunction, a: f64, x: f64, absolute: bool) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("integral requires x ≥ 1, got {x}")));
    }
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("slope A must be ≥ 0, got {a}")));
    }
    Ok(f.integral_g_over_t2(a, x, absolute))
}
