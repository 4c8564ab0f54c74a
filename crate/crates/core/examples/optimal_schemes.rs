//! Exhaustive search for the least informative scheme at K = 5.
use mixmin::optimizers::{brute_force_optimal, DEFAULT_MAX_K_GUARD};
use mixmin::ModelParams;

fn main() -> mixmin::Result<()> {
    for p in [0.5, 0.25, 0.1, 0.01] {
        let params = ModelParams::new(p, 5)?;
        let best = brute_force_optimal(&params, DEFAULT_MAX_K_GUARD)?;
        println!(
            "p = {p:<5} alpha = {:<20} I = {:.12}  ({} vectors)",
            best.scheme.to_string(),
            best.mi.value(),
            best.nodes_explored
        );
    }
    Ok(())
}
