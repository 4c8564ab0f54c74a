//! Checks the stationarity certificate of the perturbed relaxation and
//! compares it with a numerical solve.
use mixmin::bounds::geometric_bound_closed_form;
use mixmin::entropy::binary_entropy;
use mixmin::relaxation::{kkt_certificate, numeric_relaxation_solve, perturbation_bound};
use mixmin::ModelParams;

fn main() -> mixmin::Result<()> {
    let params = ModelParams::new(0.3, 4)?;
    let hp = binary_entropy(params.p())?.value();
    let closed = geometric_bound_closed_form(&params)?.value();
    for n in [5, 10, 30] {
        let cert = kkt_certificate(&params, n)?;
        let solved = numeric_relaxation_solve(&params, n, 1e-10)?;
        println!(
            "n = {n:>2}: v = ({:.6}, {:.6}, {:.6}), residual {:.1e}, solver optimum {:.12} in {} steps",
            cert.v1, cert.v2, cert.v3, cert.max_residual, hp + solved.objective, solved.iterations
        );
        println!(
            "         perturbation bound {:.12}",
            hp + perturbation_bound(&params, n)?
        );
    }
    println!("closed form {closed:.12}");
    Ok(())
}
