//! Noise distributions of the greedy scheme and the geometric variable it imitates.
use mixmin::bounds::GeometricNoise;
use mixmin::entropy::noise_pmf;
use mixmin::optimizers::greedy_search;
use mixmin::ModelParams;

fn main() -> mixmin::Result<()> {
    let params = ModelParams::new(0.25, 15)?;
    let greedy = greedy_search(&params)?;
    let q = noise_pmf(&greedy.scheme, &params)?;
    let geo = GeometricNoise::new(&params, 1e-12)?;
    println!("greedy scheme {}", greedy.scheme);
    println!("{:>4} {:>12} {:>12}", "y", "greedy", "geometric");
    for y in 0..25 {
        println!("{y:>4} {:>12.6} {:>12.6}", q.prob(y), geo.prob(y as u64));
    }
    Ok(())
}
