//! Certified bounds for 4 to 11 copies, written as CSV to stdout.
//!
//!     cargo run --release --example gamma_table

use covgamma::table::{gamma_table, write_csv, TableOptions};

fn main() -> covgamma::Result<()> {
    let rows = gamma_table(4, 11, &TableOptions::default())?;
    write_csv(&rows, std::io::stdout())
}
