//! Long memory from shocks that survive a random number of periods.

use longmem::generate::{fi_survival_probs, sds_gen};
use longmem::semiparam::{gph_est, whittle_est};
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let d = 0.3;
    let surv = fi_survival_probs(8, d)?;
    println!("survival probabilities p_0..p_7: {surv:.3?}");
    let x = sds_gen(100_000, d, 1.0, &RngSpec::new(3))?;
    let gph = gph_est(&x, None, 0)?;
    let lw = whittle_est(&x, None)?;
    println!(
        "d = {d}: GPH {:.3} (s.e. {:.3}), local Whittle {:.3}",
        gph.d_hat,
        gph.asy_variance.unwrap_or(f64::NAN).sqrt(),
        lw.d_hat
    );
    Ok(())
}
