//! Normalized remainders of the elementary, Möbius, Erdős–Karamata, U and
//! divisor estimates, decade by decade.

use tauberlab::estimates::{
    compute_c, compute_gamma, divisor_series, elementary_series, erdos_karamata_series, mobius_series, u_series,
    ElementaryKind, MobiusKind,
};
use tauberlab::numeric::log_spaced;
use tauberlab::{ArithTable, RemainderSeries};

fn main() -> tauberlab::Result<()> {
    let max = 1e6;
    let table = ArithTable::build(max as usize)?;
    let xs = log_spaced(100.0, max, 120);
    println!("gamma = {:.15}   c = {:.15}", compute_gamma(), compute_c());

    let mut all: Vec<RemainderSeries> = Vec::new();
    for kind in ElementaryKind::ALL {
        all.push(elementary_series(kind, &xs)?);
    }
    for kind in [MobiusKind::Mu1, MobiusKind::Mu2, MobiusKind::Mu3] {
        all.push(mobius_series(kind, &xs, &table)?);
    }
    all.push(erdos_karamata_series(&xs, &table)?);
    all.push(u_series(&xs, &table)?);
    all.push(divisor_series(&xs)?);

    println!("{:<16} {:>10} {:>10} {:>10} {:>10}", "series", "1e2-1e3", "1e3-1e4", "1e4-1e5", "1e5-1e6");
    for s in &all {
        let cols: Vec<String> = (2..6)
            .map(|d| format!("{:>10.4}", s.max_abs_normalized(10f64.powi(d), 10f64.powi(d + 1))))
            .collect();
        println!("{:<16} {}   (units of {})", s.name, cols.join(" "), s.normalizer_name);
    }
    Ok(())
}
