use alloc::string::ToString;
use alloc::vec::Vec;

use super::{FractalSpec, ModelError};
use crate::cyclotomic::CycInt;

/// Names accepted by [`catalog`], in display order.
pub const CATALOG_NAMES: [&str; 5] = [
    "sierpinski-gasket",
    "vicsek-cross",
    "sierpinski-hexagon",
    "lindstrom-snowflake",
    "pentagon-ring",
];

fn ring(k: usize, corner: &CycInt) -> Vec<CycInt> {
    (0..k as i64).map(|j| corner.rotate(j)).collect()
}

fn c(coeffs: &[i64]) -> CycInt {
    CycInt::new(coeffs.to_vec()).expect("catalog coefficients in range")
}

/// Classical level-1 configurations, normalized so the global barycenter is
/// the origin and one corner cell lies on the positive real axis.
pub fn catalog(name: &str) -> Result<FractalSpec, ModelError> {
    match name {
        "sierpinski-gasket" => FractalSpec::new(3, ring(3, &c(&[1, 0, 0])), false),
        "vicsek-cross" => {
            let mut cells = alloc::vec![CycInt::zero(4)];
            cells.extend(ring(4, &c(&[2, 0, 0, 0])));
            FractalSpec::new(4, cells, false)
        }
        "sierpinski-hexagon" => FractalSpec::new(6, ring(6, &c(&[2, 0, 0, 0, 0, 0])), false),
        "lindstrom-snowflake" => {
            let mut cells = ring(6, &c(&[2, 0, 0, 0, 0, 0]));
            cells.push(CycInt::zero(6));
            FractalSpec::new(6, cells, false)
        }
        // neighbouring corners meet across the step ζ² - ζ⁴
        "pentagon-ring" => FractalSpec::new(5, ring(5, &c(&[1, 1, 0, 0, 1])), false),
        other => Err(ModelError::UnknownCatalogName(other.to_string())),
    }
}
