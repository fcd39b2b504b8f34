//! Log-periodogram and Whittle estimators across bandwidths.

use longmem::generate::fi_gen;
use longmem::semiparam::{default_bandwidth, exact_whittle_est, gph_est, gph_est_variance, whittle_est};
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let x = fi_gen(1 << 14, 0.4, 1.0, &RngSpec::new(5))?;
    println!("true d = 0.4, T = {}", x.len());
    for exp in [0.5, 0.65, 0.8] {
        let m = default_bandwidth(x.len(), exp);
        let g = gph_est(&x, Some(m), 0)?;
        let br = gph_est(&x, Some(m), 1)?;
        let lw = whittle_est(&x, Some(m))?;
        let elw = exact_whittle_est(&x, Some(m))?;
        println!(
            "m = {m:>5}: GPH {:.3} ± {:.3}  GPH-BR1 {:.3}  LW {:.3}  ELW {:.3}",
            g.d_hat,
            gph_est_variance(x.len(), Some(m), 0)?.sqrt(),
            br.d_hat,
            lw.d_hat,
            elw.d_hat
        );
    }
    Ok(())
}
