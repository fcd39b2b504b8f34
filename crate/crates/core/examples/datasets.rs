//! Bundled datasets and CSV input/output.
//!
//! Bundled files are looked up in `$LONGMEM_DATA_DIR` or the crate's `data/`
//! directory. A CSV path given as the first argument is loaded instead, using
//! the column named by the second argument (default `x`).

use longmem::data::{builtin_series, data_dir, load_csv, write_series};
use longmem::generate::fi_gen;
use longmem::semiparam::gph_est;
use longmem::RngSpec;

fn main() -> longmem::Result<()> {
    let mut args = std::env::args().skip(1);
    if let Some(path) = args.next() {
        let column = args.next().unwrap_or_else(|| "x".into());
        let x = load_csv(&path, &column)?;
        println!("{path}: {} values, GPH d = {:.4}", x.len(), gph_est(&x, None, 0)?.d_hat);
        return Ok(());
    }
    println!("data directory: {}", data_dir().display());
    for name in ["nile", "nhtemp"] {
        match builtin_series(name) {
            Ok(x) => println!("{name}: {} values, GPH d = {:.4}", x.len(), gph_est(&x, None, 0)?.d_hat),
            Err(e) => println!("{name}: unavailable ({e})"),
        }
    }
    let dir = std::env::temp_dir().join("longmem-datasets-example");
    std::fs::create_dir_all(&dir).map_err(|source| longmem::Error::Io { path: dir.clone(), source })?;
    let path = dir.join("fi.csv");
    let x = fi_gen(500, 0.25, 1.0, &RngSpec::new(4))?;
    write_series(&path, &x, "x")?;
    let back = load_csv(&path, "x")?;
    println!("wrote and re-read {} ({} values, identical: {})", path.display(), back.len(), back.values() == x.values());
    Ok(())
}
