//! Long memory from aggregating AR(1) units with Beta-distributed persistence.
//!
//! Compares the asymptotic MA representation with an explicit finite
//! aggregate and prints the theoretical autocorrelations.

use longmem::generate::{csa_gen, csa_gen_finite};
use longmem::moments::{autocorrelation, csa_cor_vals};
use longmem::semiparam::gph_est;
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let (p, q) = (1.3, 1.5);
    println!("implied d = 1 - q/2 = {}", 1.0 - q / 2.0);
    let theory = csa_cor_vals(6, p, q)?;
    println!("theoretical ACF, lags 0..5: {:.3?}", theory.values);

    let asym = csa_gen(20_000, p, q, 1.0, &RngSpec::new(11))?;
    let acf = autocorrelation(&asym, 6)?;
    println!("asymptotic path ACF:        {:.3?}", acf.values);

    let finite = csa_gen_finite(2_000, 2_000, p, q, 1.0, &RngSpec::new(12))?;
    let acf = autocorrelation(&finite, 6)?;
    println!("finite aggregate ACF:       {:.3?}", acf.values);
    println!("GPH on asymptotic path: {:.3}", gph_est(&asym, None, 0)?.d_hat);
    Ok(())
}
