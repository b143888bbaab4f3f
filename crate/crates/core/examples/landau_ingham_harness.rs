//! Both sides of |g(x)|/x ≤ (1/log x)∫_1^x |g(t)|/t² dt for the ψ and
//! M + ⌊·⌋ instances, plus the boundedness checks and the weighted
//! inversion residual.
//!
//!     cargo run --release --example landau_ingham_harness -- MERTENS_PLUS_FLOOR

use tauberlab::numeric::log_spaced;
use tauberlab::tauberian::{
    build_instance, prop_estim_checks, theorem1_report, weighted_inversion_residual, EstimBands, InstanceLabel,
};
use tauberlab::ArithTable;

fn main() -> tauberlab::Result<()> {
    let label: InstanceLabel = std::env::args().nth(1).as_deref().unwrap_or("PSI").parse()?;
    let table = ArithTable::build(1_000_000)?;
    let inst = build_instance(label, &table);
    let xs = log_spaced(10.0, 1e6, 11);

    println!("{label}: A = {}, B = {:.6}", inst.a, inst.b);
    println!("{:>10} {:>12} {:>12}", "x", "lhs", "rhs");
    for row in theorem1_report(&inst, &xs)? {
        println!("{:>10.0} {:>12.6} {:>12.6}", row.x, row.lhs, row.rhs);
    }

    let summary = prop_estim_checks(&inst, &log_spaced(10.0, 1e6, 200), EstimBands::default())?;
    for r in &summary.reports {
        println!("{r}");
    }

    let wi = weighted_inversion_residual(&inst, &xs, &table)?;
    for rec in wi.records() {
        println!("weighted inversion x = {:>8.0}: residual / (x log x) = {:+.4}", rec.x, rec.normalized);
    }
    Ok(())
}
