//! Writes plot tables for a few curves into a temporary directory.
use std::path::PathBuf;

use mixmin::cli::{run_sweep, Curve, Format, SweepSpec};

fn main() -> mixmin::Result<()> {
    let out_dir = std::env::temp_dir().join("mixmin-sweep");
    let spec = SweepSpec {
        k: 15,
        p_start: 0.005,
        p_end: 0.5,
        steps: 20,
        curves: vec![Curve::Greedy, Curve::Blu, Curve::BoundGeometric],
        format: Format::Dat,
        out_dir,
    };
    let written: Vec<PathBuf> = run_sweep(&spec)?;
    for path in written {
        let text = std::fs::read_to_string(&path).unwrap_or_default();
        println!("{} ({} rows)", path.display(), text.lines().count());
    }
    Ok(())
}
