//! Linear-time entropy recursion for a uniform block followed by a binary block.
use std::time::Instant;

use mixmin::fastmix::uniform_binary_mi_with_stats;

fn main() -> mixmin::Result<()> {
    for n in [10, 40, 200, 1000] {
        let start = Instant::now();
        let (mi, stats) = uniform_binary_mi_with_stats(4, n, 0.25)?;
        println!(
            "M = 4, N = {n:>4}: I = {:.6e}  bootstrap {} steps, recursion {} steps, {} live atoms, {:.1?}",
            mi.value(),
            stats.bootstrap_steps,
            stats.recursion_steps,
            stats.peak_atoms,
            start.elapsed()
        );
    }
    Ok(())
}
