use proptest::prelude::*;

use tauberlab::arith::{dirichlet_convolve, ArithTable, DenseArithFn};
use tauberlab::summatory::{
    divisor_summatory, divisor_summatory_direct, mertens_sieve, mertens_sublinear_with_threshold, psi_sieve,
    psi_sublinear_with_threshold,
};
use tauberlab::tauberian::{build_instance, exp_transform, measure_e_observed, InstanceLabel, WindowParams};
use tauberlab::transforms::{integral_g_over_t2, mobius_transform, RealFn, StepFunction};

fn exact_fn(limit: usize) -> impl Strategy<Value = DenseArithFn> {
    prop::collection::vec(-50i64..50, limit + 1).prop_map(DenseArithFn::exact)
}

fn step_fn() -> impl Strategy<Value = StepFunction> {
    prop::collection::vec((1.0f64..100.0, 0.0f64..5.0), 0..30).prop_map(|mut jumps| {
        jumps.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        jumps.dedup_by(|a, b| a.0 == b.0);
        let (locs, sizes) = jumps.into_iter().unzip();
        StepFunction::new(locs, sizes, 0.0).unwrap()
    })
}

/// Adaptive Simpson on [a, b] for a function smooth on that interval.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let left = (m - a) / 6.0 * (f(a) + 4.0 * f(lm) + f(m));
    let right = (b - m) / 6.0 * (f(m) + 4.0 * f(rm) + f(b));
    if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, a, m, eps / 2.0, depth - 1) + simpson(f, m, b, eps / 2.0, depth - 1)
    }
}

/// ∫_1^x g(t)/t² dt by quadrature between consecutive jumps (and the kink
/// of |g| when absolute), where the integrand is smooth.
fn quadrature(f: &StepFunction, a: f64, x: f64, absolute: bool) -> f64 {
    let mut cuts: Vec<f64> = vec![1.0, x];
    cuts.extend(f.locations().iter().copied().filter(|&l| l > 1.0 && l < x));
    if absolute && a > 0.0 {
        let mut level = 0.0;
        let mut knots = vec![0.0];
        for &s in f.sizes() {
            level += s;
            knots.push(level);
        }
        cuts.extend(knots.iter().map(|c| c / a).filter(|&t| t > 1.0 && t < x));
    }
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let level = f.value(mid);
            let g = move |t: f64| {
                let v = (level - a * t) / (t * t);
                if absolute { v.abs() } else { v }
            };
            simpson(&g, w[0], w[1], 1e-12, 40)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_commutes_and_associates(f in exact_fn(60), g in exact_fn(60), h in exact_fn(60)) {
        let fg = dirichlet_convolve(&f, &g).unwrap();
        let gf = dirichlet_convolve(&g, &f).unwrap();
        for n in 1..=60 {
            prop_assert_eq!(fg.get_exact(n), gf.get_exact(n));
        }
        let left = dirichlet_convolve(&fg, &h).unwrap();
        let right = dirichlet_convolve(&f, &dirichlet_convolve(&g, &h).unwrap()).unwrap();
        for n in 1..=60 {
            prop_assert_eq!(left.get_exact(n), right.get_exact(n));
        }
    }

    #[test]
    fn real_convolution_matches_exact(f in exact_fn(80), g in exact_fn(80)) {
        let exact = dirichlet_convolve(&f, &g).unwrap();
        let fr = DenseArithFn::real(f.to_real_vec());
        let gr = DenseArithFn::real(g.to_real_vec());
        let real = dirichlet_convolve(&fr, &gr).unwrap();
        for n in 1..=80 {
            let want = exact.get(n);
            prop_assert!((real.get(n) - want).abs() <= 1e-9 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn mobius_transform_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, x in 1.0f64..2000.0) {
        let combo = RealFn::custom(move |t| a * t + b * t * t.ln());
        let lhs = mobius_transform(&combo, x).unwrap();
        let rhs = a * mobius_transform(&RealFn::Identity, x).unwrap() + b * mobius_transform(&RealFn::XLogX, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn step_function_is_monotone(f in step_fn(), x in 0.0f64..120.0, dx in 0.0f64..20.0) {
        prop_assert!(f.value(x) <= f.value(x + dx));
    }

    #[test]
    fn integral_matches_quadrature(f in step_fn(), a in 0.0f64..2.0, x in 1.0f64..100.0, absolute in any::<bool>()) {
        let exact = integral_g_over_t2(&f, a, x, absolute).unwrap();
        let oracle = quadrature(&f, a, x, absolute);
        prop_assert!((exact - oracle).abs() <= 1e-6, "exact {} oracle {}", exact, oracle);
    }

    #[test]
    fn hyperbola_matches_direct(x in 1u64..20_000) {
        prop_assert_eq!(divisor_summatory(x), divisor_summatory_direct(x));
    }

    #[test]
    fn sublinear_matches_sieve_with_small_threshold(x in 1u64..30_000, threshold in 16usize..400) {
        let m = mertens_sieve(30_000).unwrap();
        let psi = psi_sieve(30_000).unwrap();
        prop_assert_eq!(mertens_sublinear_with_threshold(x, threshold).unwrap(), m[x as usize]);
        let p = psi_sublinear_with_threshold(x, threshold).unwrap();
        prop_assert!((p - psi[x as usize]).abs() <= 1e-9 * psi[x as usize].max(1.0));
    }
}

#[test]
fn profile_integral_bound_matches_direct_integrals() {
    let table = ArithTable::build(200_000).unwrap();
    let inst = build_instance(InstanceLabel::Psi, &table);
    let delta = 1e-3;
    let p = exp_transform(&inst, 12.0, delta).unwrap();
    let mut direct_max = 0.0f64;
    for i in (0..p.len()).step_by(97) {
        let v = integral_g_over_t2(&inst.f, inst.a, p.t(i).exp(), false).unwrap();
        assert!(v.abs() <= p.m_prime + 1e-12);
        direct_max = direct_max.max(v.abs());
    }
    assert!(direct_max > 0.9 * p.m_prime);
}

#[test]
fn psi_window_measure_reaches_e() {
    let table = ArithTable::build(1_000_000).unwrap();
    let inst = build_instance(InstanceLabel::Psi, &table);
    let delta = 1e-3;
    let p = exp_transform(&inst, 1e6f64.ln(), delta).unwrap();
    let params = WindowParams::from_profile(&p).unwrap();
    for i in 0..20 {
        let x = (i as f64 * p.domain_end() / 20.0 / delta).floor() * delta;
        let m = measure_e_observed(&p, x, &params).unwrap();
        assert!(m >= params.e - 2.0 * delta, "x = {x}: measure {m} below e = {}", params.e);
    }
}
