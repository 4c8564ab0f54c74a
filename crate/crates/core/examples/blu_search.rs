//! Best binary-linear-uniform split at K = 15 compared with the pure schemes.
use mixmin::entropy::mutual_information;
use mixmin::optimizers::blu_search;
use mixmin::schemes::{binary_scheme, linear_scheme, uniform_scheme};
use mixmin::ModelParams;

fn main() -> mixmin::Result<()> {
    for p in [0.01, 0.1, 0.25, 0.4, 0.5] {
        let params = ModelParams::new(p, 15)?;
        let blu = blu_search(&params)?;
        let pure = |s| mutual_information(&s, &params).map(|v| v.value());
        println!(
            "p = {p:<4} U = {:>2} L = {:>2}  blu {:.6e}  uniform {:.6e}  linear {:.6e}  binary {:.6e}",
            blu.u_star,
            blu.l_star,
            blu.mi.value(),
            pure(uniform_scheme(15)?)?,
            pure(linear_scheme(15)?)?,
            pure(binary_scheme(15)?)?
        );
    }
    Ok(())
}
