//! Constructive generators: rings with a good labeling, short odd cycles
//! without one, random configurations and substitution to deeper levels.

mod canvas;
mod random;

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use thiserror::Error;

use crate::cyclotomic::{CycError, CycInt, MAX_ORDER};
use crate::model::{derive_scaling, FractalSpec, ModelError};

pub use random::random_valid_spec;

/// Largest number of cells [`expand`] will produce.
pub const EXPANSION_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("k = {0} is outside 3..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("k = {0} is prime, so every configuration has a good labeling")]
    PrimeOrder(usize),
    #[error("k = {0} is a power of two, so every configuration has a good labeling")]
    PowerOfTwoOrder(usize),
    #[error("counterexamples need k >= 6, got {0}")]
    OrderTooSmall(usize),
    #[error("expansion level {0} is outside 1..=3")]
    LevelOutOfRange(usize),
    #[error("expansion would produce {0} cells, above the cap of {EXPANSION_CAP}")]
    TooManyCells(usize),
    #[error("target of {0} cells is outside 1..=100")]
    TargetOutOfRange(usize),
    #[error("could not reach {target} cells for k = {k} within the retry budget")]
    TargetUnreachable { k: usize, target: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    GlpExample,
    Counterexample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingStyle {
    /// `k` corner cells, each touching its two neighbours.
    Corners,
    /// `k` corners plus one cell between each neighbouring pair.
    Interleaved,
}

/// Parameters behind a generated spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRecipe {
    pub k: usize,
    pub kind: GeneratorKind,
    /// Odd divisor `r > 1` giving the cycle length of a counterexample.
    pub odd_divisor: Option<usize>,
    pub ring: Option<RingStyle>,
}

impl GeneratorRecipe {
    pub fn counterexample(k: usize) -> Result<Self, ConstructError> {
        if !(3..=MAX_ORDER).contains(&k) {
            return Err(ConstructError::OrderOutOfRange(k));
        }
        if k.is_power_of_two() {
            return Err(ConstructError::PowerOfTwoOrder(k));
        }
        let smallest = (2..=k).find(|d| k % d == 0).expect("k > 1");
        if smallest == k {
            return Err(ConstructError::PrimeOrder(k));
        }
        if k < 6 {
            return Err(ConstructError::OrderTooSmall(k));
        }
        let r = if k % 2 == 0 {
            k >> k.trailing_zeros()
        } else {
            // k itself is odd, and a k-cycle can be labeled
            k / smallest
        };
        Ok(Self {
            k,
            kind: GeneratorKind::Counterexample,
            odd_divisor: Some(r),
            ring: None,
        })
    }

    pub fn glp_example(k: usize) -> Result<Self, ConstructError> {
        if !(3..=MAX_ORDER).contains(&k) {
            return Err(ConstructError::OrderOutOfRange(k));
        }
        Ok(Self {
            k,
            kind: GeneratorKind::GlpExample,
            odd_divisor: None,
            ring: Some(if k % 4 == 0 { RingStyle::Interleaved } else { RingStyle::Corners }),
        })
    }

    /// Recipe parameters as `#` comment lines for generated files.
    pub fn comment_lines(&self) -> Vec<String> {
        let mut lines = vec![format!("# generated k={}", self.k)];
        match self.kind {
            GeneratorKind::Counterexample => {
                let r = self.odd_divisor.unwrap_or(0);
                lines.push(format!("# kind=noglp odd-divisor={r} step-multiple={}", self.k / r.max(1)));
            }
            GeneratorKind::GlpExample => {
                let style = match self.ring {
                    Some(RingStyle::Interleaved) => "interleaved",
                    _ => "corners",
                };
                lines.push(format!("# kind=glp ring={style}"));
            }
        }
        lines
    }

    pub fn build(&self) -> Result<FractalSpec, ConstructError> {
        match self.kind {
            GeneratorKind::Counterexample => build_counterexample(self.k, self.odd_divisor.unwrap_or(1)),
            GeneratorKind::GlpExample => Ok(FractalSpec::new(self.k, ring_cells(self.k), false)?),
        }
    }
}

fn sum_of_roots(k: usize, from: i64, count: usize) -> CycInt {
    let mut coeffs = vec![0i64; k];
    for i in 0..count as i64 {
        coeffs[(from + i).rem_euclid(k as i64) as usize] += 1;
    }
    CycInt::new(coeffs).expect("small coefficients")
}

/// The basic adjacency step: a diameter for even `k`, `1 - ζ^{(k+1)/2}` for
/// odd `k`.
pub(crate) fn base_step(k: usize) -> CycInt {
    if k % 2 == 0 {
        CycInt::root(k, 0).try_scale(2).expect("small")
    } else {
        CycInt::root(k, 0)
            .try_sub(&CycInt::root(k, (k as i64 + 1) / 2))
            .expect("small")
    }
}

fn build_counterexample(k: usize, r: usize) -> Result<FractalSpec, ConstructError> {
    let step = base_step(k);
    let stride = (k / r) as i64;
    let mut cells = Vec::with_capacity(r);
    let mut position = CycInt::zero(k);
    for h in 0..r as i64 {
        cells.push(position.clone());
        position = position.try_add(&step.rotate(h * stride))?;
    }
    Ok(FractalSpec::new(k, cells, true)?)
}

/// Cells of the GLP example ring, corners first. Corner `j` is `ζ^j·R`.
pub(crate) fn ring_cells(k: usize) -> Vec<CycInt> {
    if k % 4 != 0 {
        // m consecutive roots summed and turned so the sum is real
        let m = if k % 2 == 0 {
            k / 2
        } else if (k + 1) / 2 % 2 == 1 {
            (k + 1) / 2
        } else {
            (k - 1) / 2
        };
        let corner = sum_of_roots(k, -((m as i64 - 1) / 2), m);
        return (0..k as i64).map(|j| corner.rotate(j)).collect();
    }
    // R = 2cot(π/k) = ζ^{3k/4}·(1 + ζ)·Σ_{i<k/2} ζ^i; the middle cell sits a
    // diameter step from each of its two corners.
    let one_plus = CycInt::root(k, 0).try_add(&CycInt::root(k, 1)).expect("small");
    let corner = one_plus
        .try_mul(&sum_of_roots(k, 0, k / 2))
        .expect("small")
        .rotate(3 * k as i64 / 4);
    let up = if k == 4 { k / 4 } else { k / 4 + 1 };
    let middle = corner
        .try_add(&CycInt::root(k, up as i64).try_scale(2).expect("small"))
        .expect("small");
    let mut cells: Vec<CycInt> = (0..k as i64).map(|j| corner.rotate(j)).collect();
    cells.extend((0..k as i64).map(|j| middle.rotate(j)));
    cells
}

/// Partial spec of `r` cells forming one cycle whose constraint weights do
/// not cancel; `r` is the largest odd divisor of even `k` and the largest
/// proper odd divisor of odd `k`.
pub fn generate_counterexample(k: usize) -> Result<FractalSpec, ConstructError> {
    GeneratorRecipe::counterexample(k)?.build()
}

/// A ring configuration that always has a good labeling: `k` corners when
/// `4 ∤ k`, otherwise `2k` cells alternating corners and connectors.
pub fn generate_glp_example(k: usize) -> Result<FractalSpec, ConstructError> {
    GeneratorRecipe::glp_example(k)?.build()
}

/// Substitutes the configuration into itself `level - 1` times: the cells
/// of level `M` sit at `Σ_{j<M} L^j·t_{i_j}`.
pub fn expand(spec: &FractalSpec, level: usize) -> Result<FractalSpec, ConstructError> {
    if !(1..=3).contains(&level) {
        return Err(ConstructError::LevelOutOfRange(level));
    }
    let scaling = derive_scaling(spec)?;
    let total = spec
        .len()
        .checked_pow(level as u32)
        .filter(|&t| t <= EXPANSION_CAP)
        .ok_or(ConstructError::TooManyCells(spec.len().saturating_pow(level as u32)))?;
    let mut cells = vec![CycInt::zero(spec.k())];
    for _ in 0..level {
        let mut next = Vec::with_capacity(cells.len() * spec.len());
        for outer in &cells {
            let scaled = outer.try_mul(&scaling)?;
            for t in spec.barycenters() {
                next.push(scaled.try_add(t)?);
            }
        }
        cells = next;
    }
    debug_assert_eq!(cells.len(), total);
    Ok(FractalSpec::new(spec.k(), cells, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glp::decide_glp;
    use crate::model::{catalog, validate, Layout};

    #[test]
    fn counterexample_sizes() {
        for (k, r) in [(6, 3), (9, 3), (10, 5), (12, 3), (15, 5), (25, 5), (27, 9), (30, 15)] {
            let spec = generate_counterexample(k).unwrap();
            assert_eq!(spec.len(), r, "k={k}");
            assert!(spec.is_partial());
            let verdict = decide_glp(&spec).unwrap();
            assert_eq!(verdict.witness().map(<[usize]>::len), Some(r), "k={k}");
        }
    }

    #[test]
    fn counterexample_errors() {
        assert_eq!(generate_counterexample(8).unwrap_err(), ConstructError::PowerOfTwoOrder(8));
        assert_eq!(generate_counterexample(7).unwrap_err(), ConstructError::PrimeOrder(7));
        assert_eq!(generate_counterexample(40).unwrap_err(), ConstructError::OrderOutOfRange(40));
    }

    #[test]
    fn glp_examples_for_small_orders() {
        let hex = generate_glp_example(6).unwrap();
        let reference = catalog("sierpinski-hexagon").unwrap();
        for (a, b) in hex.barycenters().zip(reference.barycenters()) {
            assert!(a.equals(b));
        }
        let gasket = generate_glp_example(3).unwrap();
        assert!(gasket.barycenters().zip(catalog("sierpinski-gasket").unwrap().barycenters()).all(|(a, b)| a.equals(b)));
        let square = generate_glp_example(4).unwrap();
        assert_eq!(square.len(), 8);
        assert!(validate(&square).is_valid());
        // every cell of the interleaved ring touches exactly two others
        for k in [4, 8, 12, 16, 20] {
            let ring = generate_glp_example(k).unwrap();
            let layout = Layout::of(&ring);
            assert!(layout.conflicts.is_empty(), "k={k}");
            assert_eq!(layout.adjacencies.len(), 2 * k, "k={k}");
        }
    }

    #[test]
    fn interleaved_corner_is_twice_the_cotangent() {
        for k in [4usize, 8, 12, 16, 20, 24] {
            let corner = generate_glp_example(k).unwrap().cells()[0].barycenter.clone();
            let (x, y) = corner.to_cartesian();
            let expected = 2.0 / libm::tan(core::f64::consts::PI / k as f64);
            assert!((x - expected).abs() < 1e-9 && y.abs() < 1e-9, "k={k}");
        }
    }

    #[test]
    fn expansion_counts() {
        let gasket = catalog("sierpinski-gasket").unwrap();
        let two = expand(&gasket, 2).unwrap();
        assert_eq!(two.len(), 9);
        assert!(decide_glp(&two).unwrap().is_glp());
        let hex = catalog("sierpinski-hexagon").unwrap();
        let one = expand(&hex, 1).unwrap();
        assert!(one.barycenters().zip(hex.barycenters()).all(|(a, b)| a.equals(b)));
        assert_eq!(expand(&gasket, 4).unwrap_err(), ConstructError::LevelOutOfRange(4));
        assert!(matches!(expand(&gasket.to_partial(), 2), Err(ConstructError::Model(ModelError::PartialSpec))));
    }
}
