//! Two distributions on {0, 1, 2} where the classical measures and the
//! concentration-based orders disagree.

use discdisp::{
    classical_measures, concentration_function, ek_discrete_compare, entropy, make_distribution,
    weak_dispersive_compare, QuantileType,
};

fn main() -> discdisp::Result<()> {
    let pts = [0.0, 1.0, 2.0];
    let p = make_distribution(&pts, &[0.6, 0.2, 0.2])?;
    let q = make_distribution(&pts, &[0.3, 0.5, 0.2])?;

    for (name, d) in [("p", &p), ("q", &q)] {
        let m = classical_measures(d, QuantileType::Interp)?;
        println!(
            "{name}: SD {:.3}  MAD {:.3}  GMD {:.3}  H {:.3} bits",
            m.get("sd").unwrap(),
            m.get("mad").unwrap(),
            m.get("gmd").unwrap(),
            entropy(d)
        );
        let curve: Vec<String> = concentration_function(d).segments().map(|(e, _, v)| format!("Q({e}) = {v}")).collect();
        println!("   {}", curve.join(", "));
    }

    let wd = weak_dispersive_compare(&p, &q);
    println!("\nweak dispersive: {:?} (q fails at {:?})", wd.relation, wd.witness_backward);
    let ek = ek_discrete_compare(&p, &q)?;
    println!("discrete dispersive: {:?}", ek.relation);
    println!("  p fails at {:?}, q fails at {:?}", ek.witness_forward, ek.witness_backward);
    Ok(())
}
