//! Multi-step forecasts with 95% bands from FI, CSA and HAR models.

use longmem::forecast::{csa_forecast, fi_forecast, har_forecast};
use longmem::generate::fi_gen;
use longmem::param::fi_mle_fit;
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let x = fi_gen(1000, 0.35, 1.0, &RngSpec::new(21))?;
    let mu = x.mean();
    let centred = x.demeaned();
    let fit = fi_mle_fit(&x)?;
    let fi = fi_forecast(&centred, 10, fit.params.d, fit.params.sigma)?.with_mean(mu);
    let csa = csa_forecast(&centred, 10, 1.3, 1.4, fit.params.sigma)?.with_mean(mu);
    let har = har_forecast(&x, 10, &[1, 5, 22])?;
    println!("h     FI [lower, upper]           CSA      HAR");
    for h in 0..10 {
        println!(
            "{:>2} {:>7.3} [{:>7.3}, {:>7.3}] {:>8.3} {:>8.3}",
            h + 1,
            fi.point[h],
            fi.lower[h],
            fi.upper[h],
            csa.point[h],
            har.point[h]
        );
    }
    Ok(())
}
