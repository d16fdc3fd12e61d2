//! The four bundled datasets (frequency tables of two samples each) and the
//! dispersion measures published alongside them.

use crate::error::{Error, Result};

const EX1_S1: &str = "0,32\n1,15\n2,8\n3,4\n4,1\n5,1\n6,3\n7,2\n8,1\n16,1\n21,1\n42,1\n64,1\n";
const EX1_S2: &str = "0,134\n1,19\n2,9\n4,1\n5,2\n7,1\n8,1\n12,1\n";
const EX2_S1: &str = "0,104\n1,47\n2,16\n3,13\n4,5\n5,3\n6,2\n7,1\n9,1\n13,1\n16,1\n22,1\n23,1\n";
const EX2_S2: &str = "0,61\n1,16\n2,10\n3,1\n4,2\n5,1\n6,1\n7,1\n8,2\n10,2\n11,2\n12,1\n";
const EX3_S1: &str = "0,14\n1,3\n2,5\n3,4\n4,2\n5,1\n6,1\n7,1\n10,1\n11,1\n27,1\n37,1\n39,1\n>=40,4\n";
const EX3_S2: &str = "0,1\n2,2\n3,1\n4,3\n5,2\n6,1\n8,1\n9,2\n11,2\n12,2\n14,1\n27,1\n39,1\n";
const EX4_S1: &str = "0,1\n5,1\n8,2\n14,1\n15,1\n17,1\n19,1\n25,1\n";
const EX4_S2: &str = "3,1\n6,1\n10,2\n11,1\n12,1\n13,2\n16,1\n";

/// Column order of [`PUBLISHED`] rows.
pub const TABLE_COLUMNS: [&str; 7] = ["sd", "mad", "gmd", "iqr", "nu_1", "nu_2", "nu_rob"];

/// Published SD, MAD, GMD, IQR, nu_1, nu_2, nu_rob for samples 1 and 2 of
/// each example, rounded to two decimals. The nu_rob column is on the square
/// root scale.
pub const PUBLISHED: [[[f64; 7]; 2]; 4] = [
    [[9.39, 4.29, 5.48, 2.0, 1.65, 4.95, 0.90], [1.43, 0.74, 0.83, 0.0, 0.23, 0.75, 0.51]],
    [[2.94, 1.53, 1.99, 1.0, 0.65, 1.61, 0.79], [2.73, 1.76, 2.18, 1.0, 0.68, 1.52, 0.75]],
    [[35.83, 21.48, 25.68, 6.25, 7.60, 19.25, 1.06], [9.19, 6.06, 8.93, 7.25, 4.07, 6.23, 1.23]],
    [[7.75, 6.30, 9.28, 9.0, 4.78, 6.28, 1.23], [3.91, 2.84, 4.50, 3.0, 2.11, 3.02, 1.14]],
];

pub const TITLES: [&str; 4] = [
    "Example 1: parasite counts, two samples",
    "Example 2: parasite counts, two samples",
    "Example 3: counts with a censored upper bin",
    "Example 4: small samples of nine observations",
];

/// Three-point masses on `{0, 1, 2}` that are weakly dispersively ordered but
/// not ordered by the discrete dispersive order.
pub const THREE_POINT_P: [f64; 3] = [0.6, 0.2, 0.2];
pub const THREE_POINT_Q: [f64; 3] = [0.3, 0.5, 0.2];

/// Counts-file text of sample `sample` (1 or 2) of example `id` (1 to 4).
pub fn counts_text(id: u32, sample: u32) -> Result<&'static str> {
    let text = match (id, sample) {
        (1, 1) => EX1_S1,
        (1, 2) => EX1_S2,
        (2, 1) => EX2_S1,
        (2, 2) => EX2_S2,
        (3, 1) => EX3_S1,
        (3, 2) => EX3_S2,
        (4, 1) => EX4_S1,
        (4, 2) => EX4_S2,
        (1..=4, _) => return Err(Error::BadFamilyExpr(format!("fixture sample {sample}"))),
        _ => return Err(Error::UnknownExample(id)),
    };
    Ok(text)
}

/// Published row for sample `sample` of example `id`.
pub fn published(id: u32, sample: u32) -> Result<[f64; 7]> {
    if !(1..=4).contains(&id) {
        return Err(Error::UnknownExample(id));
    }
    match sample {
        1 | 2 => Ok(PUBLISHED[id as usize - 1][sample as usize - 1]),
        _ => Err(Error::BadFamilyExpr(format!("fixture sample {sample}"))),
    }
}
