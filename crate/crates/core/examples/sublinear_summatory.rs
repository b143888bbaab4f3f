//! M(x) and ψ(x) by memoized recursion over ⌊x/n⌋, compared with a sieve.
//!
//!     cargo run --release --example sublinear_summatory -- 10000000

use std::time::Instant;

use tauberlab::summatory::{divisor_summatory, mertens_sieve, mertens_sublinear, psi_sieve, psi_sublinear};

fn main() -> tauberlab::Result<()> {
    let x: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1_000_000);

    let t = Instant::now();
    let m = mertens_sublinear(x)?;
    let psi = psi_sublinear(x)?;
    let sublinear = t.elapsed();

    let t = Instant::now();
    let m_sieve = mertens_sieve(x as usize)?[x as usize];
    let psi_sieve = psi_sieve(x as usize)?[x as usize];
    let sieve = t.elapsed();

    println!("M({x})   = {m:>14}   sieve {m_sieve:>14}");
    println!("psi({x}) = {psi:>14.4}   sieve {psi_sieve:>14.4}");
    println!("D({x})   = {}", divisor_summatory(x));
    println!("sublinear {sublinear:.2?}, sieve {sieve:.2?}");
    Ok(())
}
