//! Small numerical helpers shared by the other modules.

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// `count` log-spaced reals in `[min, max]`, endpoints included.
pub fn log_spaced(min: f64, max: f64, count: usize) -> Vec<f64> {
    assert!(min > 0.0 && max >= min && count >= 1);
    if count == 1 {
        return vec![min];
    }
    let (lo, hi) = (min.ln(), max.ln());
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == 0 {
                min
            } else if i + 1 == count {
                max
            } else {
                (lo + step * i as f64).exp()
            }
        })
        .collect()
}

/// `count` distinct integers in `[min, max]`, spaced logarithmically where
/// the spacing exceeds one and consecutively otherwise.
pub fn log_spaced_integers(min: u64, max: u64, count: usize) -> Vec<u64> {
    assert!(min >= 1 && max >= min);
    let count = count.min((max - min + 1) as usize);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let (lo, hi) = ((min as f64).ln(), (max as f64).ln());
    for i in 0..count {
        let remaining = (count - 1 - i) as u64;
        let frac = if count == 1 { 0.0 } else { i as f64 / (count - 1) as f64 };
        let target = (lo + (hi - lo) * frac).exp().round() as u64;
        let floor = out.last().map_or(min, |&p| p + 1);
        let v = target.max(floor).min(max - remaining);
        out.push(v);
    }
    out
}

/// log(v!) for real v ≥ 0 evaluated at ⌊v⌋, via the Stirling series.
/// Intended for arguments beyond a directly tabulated range; accurate to
/// near machine precision for v ≥ 64.
pub fn ln_factorial_stirling(v: u64) -> f64 {
    if v < 2 {
        return 0.0;
    }
    let n = v as f64;
    let inv = 1.0 / n;
    let inv2 = inv * inv;
    // 1/(12n) - 1/(360n^3) + 1/(1260n^5) - 1/(1680n^7) + 1/(1188n^9)
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + series
}

/// Format with 15 significant digits, fixed notation for moderate
/// magnitudes and scientific otherwise; trailing zeros trimmed.
pub fn fmt_sig15(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.14e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        t.to_string()
    } else {
        s.to_string()
    }
}

/// Round to 15 significant digits.
pub fn round_sig15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.14e}", v).parse().unwrap_or(v)
}

/// Integer square root.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}
