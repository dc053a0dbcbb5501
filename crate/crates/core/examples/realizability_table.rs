//! Which cycle sizes admit a faithful m-qubit realization.
//!
//! Usage: `cargo run --release --example realizability_table -- [m_max]`

use std::time::Instant;

use pauli_cycles::search::realizability_table;

fn main() -> pauli_cycles::Result<()> {
    let m_max: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    for m in 2..=m_max {
        let t = Instant::now();
        let table = realizability_table(m, 4..=3 * m + 1, u64::MAX, threads)?;
        let row: Vec<String> = table
            .entries
            .iter()
            .map(|(n, v)| format!("{n}:{}", format!("{v:?}").to_lowercase()))
            .collect();
        println!(
            "m={m}: largest cycle {:?}  ({:.2?})\n    {}",
            table.max_found(),
            t.elapsed(),
            row.join(" ")
        );
    }
    Ok(())
}
