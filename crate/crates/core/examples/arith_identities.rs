//! Sieve μ and Λ, then check μ⋆𝟙 = δ, Λ⋆𝟙 = log and Selberg's identity.
//!
//!     cargo run --example arith_identities -- 200000

use tauberlab::arith::{k_function, verify_mangoldt_sum, verify_selberg, verify_unit_law, ArithTable};

fn main() -> tauberlab::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(100_000);
    let table = ArithTable::build(n)?;
    println!("sieved {} primes up to {n}", table.primes().len());

    for n in [1, 2, 4, 6, 12, 30, 97] {
        println!("  mu({n:>2}) = {:>2}   Lambda({n:>2}) = {:.6}", table.mu(n), table.lambda(n));
    }

    for report in [verify_unit_law(&table, n)?, verify_mangoldt_sum(&table, n)?, verify_selberg(&table, n)?] {
        println!("{report}");
    }

    let k = k_function(&table);
    println!("K(6) = {:.6}, K(30) = {:.6}", k.get(6), k.get(30));
    Ok(())
}
