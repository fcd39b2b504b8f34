//! Log-variance and rescaled-range regressions on white noise and FI(0.3).

use longmem::classic::{log_variance_est, rescaled_range_est};
use longmem::generate::{fi_gen, gaussian_noise};
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let noise = gaussian_noise(&mut RngSpec::new(1).rng(), 20_000, 1.0);
    let fi = fi_gen(20_000, 0.3, 1.0, &RngSpec::new(2))?;
    for (name, x) in [("white noise", &noise[..]), ("FI(0.3)", &fi[..])] {
        let v = log_variance_est(x, 100)?;
        let rs = rescaled_range_est(x, 100)?;
        println!(
            "{name:>12}: log-variance slope {:.3} (d = {:.3}), R/S slope {:.3} (d = {:.3})",
            v.slope, v.implied_d, rs.slope, rs.implied_d
        );
    }
    Ok(())
}
