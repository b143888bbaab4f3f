//! The exponential substitution s(t) = e^{−t} g(e^t) for ψ: monotonicity of
//! e^t(s + M), the a-priori bounds on s, crossing pairs, window measures,
//! and the seeded lemma fixtures.

use tauberlab::tauberian::{
    build_instance, check_condition_s1, corollary_e2_check, crossing_pairs, exp_transform, fixtures,
    isoperimetric_check, lemma_e1_dichotomy, measure_e_observed, optimize_s_bounds, Dichotomy, InstanceLabel,
    WindowParams,
};
use tauberlab::ArithTable;

fn main() -> tauberlab::Result<()> {
    let table = ArithTable::build(1_000_000)?;
    let inst = build_instance(InstanceLabel::Psi, &table);
    let delta = 1e-3;
    let profile = exp_transform(&inst, 1e6f64.ln(), delta)?;
    println!("profile: {} points, M = {}, M' = {:.6}", profile.len(), profile.m, profile.m_prime);
    println!("{}", check_condition_s1(&profile));
    println!("{}", check_condition_s1(&profile.with_m(0.0)));

    let b = optimize_s_bounds(profile.m, profile.m_prime, 0.01, 100.0, 400)?;
    println!("bounds: s >= {:.4} (h = {:.3}), s <= {:.4} (h = {:.3})", b.lower, b.h_lower, b.upper, b.h_upper);

    let params = WindowParams::from_profile(&profile)?;
    println!("S = {:.3e}, S1 = {:.3e}, S2 = {:.3e}, e = {:.3e}, h = {:.1}", params.s, params.s1, params.s2, params.e, params.h);
    let pairs = crossing_pairs(&profile, params.s1, params.s2);
    for &(t1, t2) in pairs.iter().take(5) {
        let o = corollary_e2_check(&profile, t1, t2, params.s1, params.s2)?;
        println!("  crossing t1 = {t1:.3}, t2 = {t2:.3}: measure {:.3} vs bound {:.3e}", o.measure, o.bound);
    }
    println!("  ({} crossing pairs in total)", pairs.len());
    for x in [0.0, 4.0, 8.0, 12.0] {
        println!("  window from {x}: observed measure of E = {:.3}", measure_e_observed(&profile, x, &params)?);
    }

    let mut rng = fixtures::rng(7);
    let iso_ok = (0..200)
        .filter(|_| {
            let fx = fixtures::isoperimetric_fixture(&mut rng, delta);
            isoperimetric_check(&fx.k, fx.c1, fx.c2).map(|o| o.pass).unwrap_or(false)
        })
        .count();
    let (mut measure, mut crossing) = (0, 0);
    for _ in 0..200 {
        let fx = fixtures::dichotomy_fixture(&mut rng, 1e-2, 4000);
        match lemma_e1_dichotomy(&fx.profile, fx.x, &fx.params)? {
            Dichotomy::Measure { .. } => measure += 1,
            Dichotomy::Crossing { .. } => crossing += 1,
        }
    }
    println!("isoperimetric fixtures passing: {iso_ok}/200");
    println!("dichotomy fixtures: {measure} by measure, {crossing} by crossing");
    Ok(())
}
