//! Concentration function of a non-lattice support and of its convolution
//! with a small integer noise term.

use discdisp::{concentration_at, concentration_function, convolve, from_counts, make_distribution};

fn main() -> discdisp::Result<()> {
    let x = make_distribution(&[0.0, 0.7, 1.1, 3.05], &[0.4, 0.3, 0.2, 0.1])?;
    let noise = from_counts(&[(0.0, 1), (1.0, 2), (2.0, 1)])?;
    let sum = convolve(&x, &noise)?;

    println!("{:>8} {:>10} {:>10}", "eps", "Q_X", "Q_X+N");
    let qx = concentration_function(&x);
    let qs = concentration_function(&sum);
    let mut eps: Vec<f64> = qx.breakpoints().iter().chain(qs.breakpoints()).copied().collect();
    eps.sort_by(f64::total_cmp);
    eps.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    for e in eps {
        println!("{e:>8.3} {:>10.4} {:>10.4}", qx.eval(e).value(), qs.eval(e).value());
    }
    println!("\nQ_X(0.5) = {}", concentration_at(&x, 0.5)?);
    Ok(())
}
