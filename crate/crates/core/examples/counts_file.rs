//! Parse a counts table with a censored row and compare it with a family.

use discdisp::cli::{compare, load, parse_counts, CensorPolicy, CompareOptions, Dataset, LoadOptions};

const TABLE: &str = "\
# value,count
0,14
1,3
2,5
3,4
>=6,4
";

fn main() -> discdisp::Result<()> {
    let table = parse_counts(TABLE, CensorPolicy::LowerBound)?;
    println!("canonical form:\n{}", table.to_text());
    let a = Dataset::from_table("table", &table)?;
    let b = load(&"poisson(1.2)".parse()?, &LoadOptions::default())?;
    let r = compare(&a, &b, &CompareOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&r.verdicts).unwrap());
    println!("censored: {}, approximate: {}", r.censored, r.approximate);
    Ok(())
}
