//! Möbius transform round trips, the Tatuzawa–Iseki identity and the
//! closed-form integrals of a step function.

use tauberlab::tauberian::{build_instance, InstanceLabel};
use tauberlab::transforms::{
    integral_g_over_t2, inverse_mobius_transform, mobius_transform, stieltjes_over_t, tatuzawa_iseki_residual,
    RealFn,
};
use tauberlab::ArithTable;

fn main() -> tauberlab::Result<()> {
    let table = ArithTable::build(10_000)?;
    let psi = build_instance(InstanceLabel::Psi, &table).f;

    for (name, f) in [("1", RealFn::ConstantOne), ("x", RealFn::Identity), ("psi", RealFn::Step(psi.clone()))] {
        let big_f = f.clone().mobius_transformed();
        for x in [10.0, 1000.0, 9999.5] {
            let back = inverse_mobius_transform(&big_f, x, &table)?;
            let ti = tatuzawa_iseki_residual(&f, x, &table)?;
            println!(
                "f = {name:<3} x = {x:<7} F(x) = {:<14.6} round trip err {:.1e}  TI gap {:.1e}",
                mobius_transform(&f, x)?,
                (back - f.eval(x)).abs(),
                ti.relative_gap()
            );
        }
    }

    for x in [10.0, 100.0, 10_000.0] {
        println!(
            "x = {x:<6} int dpsi/t - log x = {:>9.5}   int (psi - t)/t^2 = {:>9.5}   int |psi - t|/t^2 = {:>9.5}",
            stieltjes_over_t(&psi, x)? - f64::ln(x),
            integral_g_over_t2(&psi, 1.0, x, false)?,
            integral_g_over_t2(&psi, 1.0, x, true)?,
        );
    }
    Ok(())
}
