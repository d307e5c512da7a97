//! Writes the data behind the three figures as CSV into a directory
//! (default `figures/`).

use std::path::PathBuf;

use graphtik::harness::commands::figure;
use graphtik::harness::ExperimentConfig;

fn main() -> graphtik::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    for id in 1..=3 {
        let out = figure(id, &ExperimentConfig::default())?;
        let path = dir.join(format!("figure{id}.csv"));
        out.write(Some(&path), None)?;
        println!("{}: {}", path.display(), out.summary);
    }
    Ok(())
}
