//! Identifying sequences and dispersion-relevant index pairs for two
//! uniform distributions.

use discdisp::{ek_discrete_compare, ek_relevant_pairs, from_counts, identifying_sequence, weak_dispersive_compare};

fn uniform(n: u64) -> discdisp::Result<discdisp::Distribution> {
    from_counts(&(1..=n).map(|k| (k as f64, 1)).collect::<Vec<_>>())
}

fn main() -> discdisp::Result<()> {
    let (x, y) = (uniform(3)?, uniform(5)?);
    let f = identifying_sequence(&x)?;
    let g = identifying_sequence(&y)?;
    for (a, xa, pa) in f.entries() {
        println!("x_{a} = {xa}, p_{a} = {pa}, F = {}", f.cdf(a));
    }
    let (relevant, chained) = ek_relevant_pairs(&f, &g);
    println!("relevant pairs: {relevant:?}");
    println!("chained pairs:  {chained:?}");
    println!("discrete dispersive: {:?}", ek_discrete_compare(&x, &y)?.relation);
    println!("weak dispersive:     {:?}", weak_dispersive_compare(&x, &y).relation);
    Ok(())
}
