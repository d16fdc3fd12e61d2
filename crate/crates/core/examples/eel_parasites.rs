//! The four bundled datasets: measure tables next to the published values,
//! plus the window differences d_m.

use discdisp::cli::example_report;
use discdisp::QuantileType;

fn main() -> discdisp::Result<()> {
    for id in 1..=4 {
        let r = example_report(id, QuantileType::Interp)?;
        println!("{}", r.render());
    }
    Ok(())
}
