//! ψ(x)/x, π(x) log x / x and p_n/(n log n) from a sieve, at powers of ten.
//!
//!     cargo run --release --example pnt_bands -- 10000000

use tauberlab::summatory::pnt_ratio_series;
use tauberlab::ArithTable;

fn main() -> tauberlab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10_000_000);
    let table = ArithTable::build(n)?;
    let xs: Vec<f64> = (1..).map(|k| 10f64.powi(k)).take_while(|&x| x <= n as f64).collect();
    let r = pnt_ratio_series(&table, &xs)?;
    println!("{:>10} {:>12} {:>14}", "x", "psi(x)/x", "pi(x)log x/x");
    for (a, b) in r.psi.records().iter().zip(r.pi.records()) {
        println!("{:>10.0} {:>12.6} {:>14.6}", a.x, a.raw, b.raw);
    }
    println!("{:>10} {:>14}", "n", "p_n/(n log n)");
    for rec in r.nth_prime.records() {
        println!("{:>10.0} {:>14.6}", rec.x, rec.raw);
    }
    Ok(())
}
