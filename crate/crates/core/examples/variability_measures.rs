use discdisp::{
    centered_rmoment_min, measure_report, nu_r, nu_rob, MeasureOptions, NuRobVariant, QuantileType, Sample,
};

fn main() -> discdisp::Result<()> {
    let s = Sample::new(&[0.0, 5.0, 8.0, 8.0, 14.0, 15.0, 17.0, 19.0, 25.0])?;
    for qt in [QuantileType::Interp, QuantileType::InverseCdf] {
        let r = measure_report(&s, MeasureOptions { quantile_type: qt, nu_rob: NuRobVariant::Sqrt })?;
        println!("{qt:?}");
        for (k, v) in &r.values {
            println!("  {k:<8} {v:.4}");
        }
    }

    let d = s.distribution()?;
    for r in [1.0, 2.0, 3.0] {
        let nu = nu_r(&d, r)?;
        println!("r = {r}: nu_r^r = {:.4} <= min_a E|X-a|^r = {:.4}", nu.powf(r), centered_rmoment_min(&d, r)?);
    }
    println!("nu_rob raw {:.4}, sqrt {:.4}", nu_rob(&d, NuRobVariant::Raw), nu_rob(&d, NuRobVariant::Sqrt));

    // one far outlier barely moves nu_rob
    let mut with_outlier: Vec<f64> = s.groups().flat_map(|(v, c)| std::iter::repeat(v).take(c as usize)).collect();
    with_outlier.push(1e6);
    let o = Sample::new(&with_outlier)?.distribution()?;
    println!("with outlier: nu_1 {:.1}, nu_rob {:.4}", nu_r(&o, 1.0)?, nu_rob(&o, NuRobVariant::Raw));
    Ok(())
}
