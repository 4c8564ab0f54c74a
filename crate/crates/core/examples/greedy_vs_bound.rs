//! Greedy scheme against the geometric lower bound at K = 15.
use mixmin::bounds::geometric_bound_closed_form;
use mixmin::optimizers::greedy_search;
use mixmin::ModelParams;

fn main() -> mixmin::Result<()> {
    println!("{:>6} {:>14} {:>14} {:>8}", "p", "greedy", "bound", "ratio");
    for i in 1..=10 {
        let p = 0.05 * i as f64;
        let params = ModelParams::new(p, 15)?;
        let greedy = greedy_search(&params)?.mi.value();
        let bound = geometric_bound_closed_form(&params)?.value();
        println!(
            "{p:>6.2} {greedy:>14.6e} {bound:>14.6e} {:>8.3}",
            greedy / bound
        );
    }
    Ok(())
}
