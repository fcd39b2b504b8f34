//! Fractional integration and differencing of a simulated FI(d) path.
//!
//! `cargo run --example fractional_differencing -- 0.35`

use longmem::generate::{fi_gen, fracdiff};
use longmem::specfun::{fi_ar_coefs, fi_ma_coefs};
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let d: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.35);
    let ma = fi_ma_coefs(6, d)?;
    let ar = fi_ar_coefs(6, d)?;
    println!("MA weights of (1-L)^-{d}: {:.4?}", ma.as_slice());
    println!("weights of (1-L)^{d}:     {:.4?}", ar.as_slice());

    let x = fi_gen(10_000, d, 1.0, &RngSpec::new(7))?;
    let e = fracdiff(&x, d)?;
    let back = fracdiff(&e, -d)?;
    let err = x.iter().zip(back.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("x has {} values, mean {:.4}", x.len(), x.mean());
    println!("variance after differencing: {:.4}", e.iter().map(|v| v * v).sum::<f64>() / e.len() as f64);
    println!("round trip max error: {err:.2e}");
    Ok(())
}
