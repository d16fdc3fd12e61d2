//! Weak dispersive order within parametric families. Infinite supports are
//! truncated, so the verdicts carry the `approximate` flag.

use discdisp::{family, nu_r, weak_dispersive_compare, Family, TailBudget};

fn main() -> discdisp::Result<()> {
    let budget = TailBudget::new(1e-12)?;
    let pairs = [
        ("poisson(1.5)", "poisson(3)"),
        ("binomial(4, 0.3)", "binomial(9, 0.3)"),
        ("neg_binomial(2, 0.4)", "neg_binomial(5, 0.4)"),
        ("hermite(0.1, 1.0)", "hermite(0.15, 1.1)"),
        ("geometric(0.6)", "geometric(0.25)"),
        ("logarithmic(0.3)", "logarithmic(0.8)"),
        ("bernoulli(0.2)", "bernoulli(0.5)"),
    ];
    for (a, b) in pairs {
        let x = a.parse::<Family>()?.build(budget)?;
        let y = b.parse::<Family>()?.build(budget)?;
        let v = weak_dispersive_compare(&x, &y);
        println!(
            "{a:>22} vs {b:<22} {:?}{}  nu_1 {:.4} / {:.4}",
            v.relation,
            if v.approximate { " (approximate)" } else { "" },
            nu_r(&x, 1.0)?,
            nu_r(&y, 1.0)?
        );
    }
    let g = family("geometric", &[0.5], budget)?;
    println!("\ngeometric(0.5): {} support points, tail deficit {:e}", g.len(), g.tail_deficit());
    Ok(())
}
