//! Exact Gaussian likelihood fits of FI and CSA models, plus a HAR regression.

use longmem::generate::{csa_gen, fi_gen};
use longmem::param::{csa_mle_fit, fi_mle_fit, har_est};
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let x = fi_gen(4096, 0.3, 2.0, &RngSpec::new(9))?;
    let fit = fi_mle_fit(&x)?;
    println!(
        "FI(0.3), sigma 2: d = {:.4}, sigma = {:.4} after {} evaluations",
        fit.params.d, fit.params.sigma, fit.evaluations
    );

    let y = csa_gen(1000, 1.3, 1.5, 1.0, &RngSpec::new(10))?;
    let fit = csa_mle_fit(&y)?;
    println!(
        "CSA(1.3, 1.5): p = {:.3}, q = {:.3}, implied d = {:.3}, at bound {:?}",
        fit.params.p,
        fit.params.q,
        fit.params.implied_d(),
        fit.at_bound
    );

    let har = har_est(&x, &[1, 5, 22])?;
    println!("HAR(1, 5, 22) on the FI path: coefficients {:.3?}, sigma {:.3}", har.coefficients, har.sigma);
    Ok(())
}
