//! Seeded random inputs for the isoperimetric lemma and the window dichotomy.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{minimal_h, ExpProfile, SampledFn, WindowParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A non-decreasing step function k on [t1, t2] sampled with step δ, with
/// k(t1) ≥ C1 e^{t1} and k(t2) ≤ C2 e^{t2}.
#[derive(Debug, Clone)]
pub struct IsoFixture {
    pub k: SampledFn,
    pub c1: f64,
    pub c2: f64,
}

pub fn isoperimetric_fixture<R: Rng>(rng: &mut R, delta: f64) -> IsoFixture {
    let c2 = rng.gen_range(0.1..2.0);
    let c1 = c2 * rng.gen_range(0.05f64..2.0).exp();
    let span = (c1 / c2).ln() + rng.gen_range(0.0..2.0);
    let t1 = (rng.gen_range(0.0..3.0) / delta).round() * delta;
    let n = (span / delta).ceil() as usize + 1;
    let t2 = t1 + (n - 1) as f64 * delta;
    let lo = c1 * t1.exp();
    let hi = c2 * t2.exp();
    let start = lo + rng.gen_range(0.0..0.5) * (hi - lo);
    let end = start + rng.gen_range(0.0..1.0) * (hi - start);

    // random jumps at grid cells, sizes normalized to end − start
    let jumps = rng.gen_range(1..40usize);
    let mut at: Vec<(usize, f64)> = (0..jumps).map(|_| (rng.gen_range(1..n), rng.gen_range(0.0..1.0))).collect();
    at.sort_by_key(|&(i, _)| i);
    let total: f64 = at.iter().map(|&(_, w)| w).sum();
    let mut values = Vec::with_capacity(n);
    let mut level = start;
    let mut next = 0;
    for i in 0..n {
        while next < at.len() && at[next].0 == i {
            if total > 0.0 {
                level += (end - start) * at[next].1 / total;
            }
            next += 1;
        }
        values.push(level.min(end));
    }
    IsoFixture { k: SampledFn { t0: t1, delta, values }, c1, c2 }
}

/// A cell-constant profile built from zero-mean blocks (so |∫_0^x s| stays
/// bounded), with window parameters and a window start that fits.
///
/// Half of the fixtures use random blocks, some of them flat at zero; the
/// other half alternate between +a and −a with every |a| above S1, so E is
/// empty and only a crossing can settle the window.
#[derive(Debug, Clone)]
pub struct DichotomyFixture {
    pub profile: ExpProfile,
    pub params: WindowParams,
    pub x: f64,
}

pub fn dichotomy_fixture<R: Rng>(rng: &mut R, delta: f64, cells: usize) -> DichotomyFixture {
    loop {
        let two_level = rng.gen_bool(0.5);
        let mut values = Vec::with_capacity(cells);
        let mut floor = f64::INFINITY;
        while values.len() < cells {
            let len = rng.gen_range(2..20usize).min(cells - values.len()).max(1);
            if two_level {
                let a = rng.gen_range(1.0..3.0);
                floor = floor.min(a);
                let half = len.div_ceil(2);
                values.extend((0..len).map(|i| if i < half { a } else { -a }));
                if len % 2 == 1 {
                    // keep the block mean at zero
                    let last = values.len() - 1;
                    values[last - half] = 0.0;
                    floor = 0.0;
                }
            } else {
                let amp = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.5..3.0) };
                let block: Vec<f64> = (0..len).map(|_| rng.gen_range(-amp..=amp)).collect();
                let mean = block.iter().sum::<f64>() / len as f64;
                values.extend(block.into_iter().map(|v| v - mean));
            }
        }
        let m = rng.gen_range(0.0..2.0);
        let profile = ExpProfile::from_cells(values, delta, m).expect("finite samples");
        let s = profile.s.values.iter().fold(0.0f64, |a, v| a.max(v.abs())) * 1.01;
        if s == 0.0 {
            continue;
        }
        let s1 = if two_level && floor > 0.0 { floor * rng.gen_range(0.3..0.95) } else { s * rng.gen_range(0.2..0.9) };
        let s2 = s1 * rng.gen_range(0.1..0.9);
        let e = ((s1 + m) / (s2 + m)).ln();
        let h = ((minimal_h(e, s1, s2, profile.m_prime) / delta).ceil() + 2.0) * delta;
        let end = profile.domain_end();
        if h >= end {
            continue;
        }
        let params = WindowParams::new(s, s1, s2, h, m, profile.m_prime).expect("admissible by construction");
        let x = (rng.gen_range(0.0..(end - h)) / delta).floor() * delta;
        return DichotomyFixture { profile, params, x };
    }
}

/// s alternating between +amp and −amp every `half_period`, sampled on [0, T];
/// M = 0 and M′ from the cell integrals.
pub fn square_wave(amp: f64, half_period: f64, delta: f64, t_max: f64) -> ExpProfile {
    let n = (t_max / delta).round() as usize + 1;
    let values = (0..n)
        .map(|i| {
            let phase = ((i as f64 * delta + 1e-9) / half_period).floor() as u64;
            if phase.is_multiple_of(2) { amp } else { -amp }
        })
        .collect();
    ExpProfile::from_cells(values, delta, 0.0).expect("finite samples")
}
