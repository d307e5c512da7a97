//! Recomputes the tables. Pass ids to pick some (default: all) and `--seeds k`
//! for the number of noise seeds (default 20).
//!
//! `cargo run --release --example reproduce_tables -- 6 7 --seeds 3`

use graphtik::harness::{run_table, ExperimentConfig};

fn main() -> graphtik::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut seeds = 20u64;
    let mut ids = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--seeds" {
            seeds = it.next().and_then(|s| s.parse().ok()).expect("--seeds takes a count");
        } else {
            ids.push(a.parse::<u8>().expect("table id"));
        }
    }
    if ids.is_empty() {
        ids = (1..=7).collect();
    }
    let seed_list: Vec<u64> = (0..seeds).collect();
    for id in ids {
        let report = run_table(id, &seed_list, &ExperimentConfig::default())?;
        println!("table {id}");
        for c in &report.cells {
            let value = c.value.map_or_else(|| format!("failed: {}", c.error.as_deref().unwrap_or("?")), |v| format!("{v:.4e}"));
            println!("  {:<16} {:<9} {value}", c.row, c.column);
        }
    }
    Ok(())
}
