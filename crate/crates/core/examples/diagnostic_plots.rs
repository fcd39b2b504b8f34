//! Writes the four-panel diagnostic figure and a log-variance plot as SVG,
//! with CSV dumps of the plotted numbers.
//!
//! `cargo run --example diagnostic_plots -- out_dir`

use std::path::PathBuf;

use longmem::generate::sds_gen;
use longmem::plot::{lm_plot, log_variance_plot};
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let x = sds_gen(1000, 0.45, 1.0, &RngSpec::new(1))?;
    let lm = lm_plot(&x, "Stochastic duration shocks, d = 0.45")?;
    lm.write_svg(dir.join("sds_lm.svg"))?;
    lm.write_csv(dir.join("sds_lm.csv"))?;
    let lv = log_variance_plot(&x, 300, true, "Log-variance")?;
    lv.write_svg(dir.join("sds_logvar.svg"))?;
    println!("wrote sds_lm.svg, sds_lm.csv and sds_logvar.svg to {}", dir.display());
    Ok(())
}
