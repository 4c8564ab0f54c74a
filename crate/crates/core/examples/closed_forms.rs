//! Closed-form uniform and binary MI next to the explicit convolution.
use mixmin::schemes::{scheme_mi, Method, SchemeName};
use mixmin::ModelParams;

fn main() -> mixmin::Result<()> {
    let params = ModelParams::new(0.2, 12)?;
    for name in [SchemeName::Uniform, SchemeName::Binary] {
        let closed = scheme_mi(name, &params, Method::Closed)?.value();
        let direct = scheme_mi(name, &params, Method::Direct)?.value();
        println!(
            "{:<8} closed {closed:.15}  direct {direct:.15}  diff {:.1e}",
            name.to_string(),
            (closed - direct).abs()
        );
    }
    Ok(())
}
