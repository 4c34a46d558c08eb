//! Floating-point helpers for translates of the unit-circumradius regular
//! `k`-gon whose vertex 0 points along angle 0.

use alloc::vec::Vec;
use core::f64::consts::PI;

/// Tolerance for overlap and containment decisions.
pub const OVERLAP_EPS: f64 = 1e-6;

/// Edge normals of the reference polygon together with its projection
/// interval on each normal.
#[derive(Debug, Clone)]
pub(crate) struct PolygonAxes {
    axes: Vec<Axis>,
    apothem: f64,
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    nx: f64,
    ny: f64,
    lo: f64,
    hi: f64,
}

impl PolygonAxes {
    pub(crate) fn new(k: usize) -> Self {
        let axes = (0..k)
            .map(|e| {
                let t = PI * (2 * e + 1) as f64 / k as f64;
                let (nx, ny) = (libm::cos(t), libm::sin(t));
                let (lo, hi) = (0..k).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), j| {
                    let a = 2.0 * PI * j as f64 / k as f64;
                    let p = nx * libm::cos(a) + ny * libm::sin(a);
                    (lo.min(p), hi.max(p))
                });
                Axis { nx, ny, lo, hi }
            })
            .collect();
        Self {
            axes,
            apothem: libm::cos(PI / k as f64),
        }
    }

    /// Separating-axis test for two translates: true iff their open
    /// interiors overlap by more than [`OVERLAP_EPS`] on every axis.
    pub(crate) fn interiors_overlap(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        self.axes.iter().all(|ax| {
            let width = ax.hi - ax.lo;
            (ax.nx * dx + ax.ny * dy).abs() < width - OVERLAP_EPS
        })
    }

    /// True iff the translate at `center` lies inside the regular polygon of
    /// circumradius `scale` centred at the origin.
    pub(crate) fn contained_in_scaled(&self, center: (f64, f64), scale: f64) -> bool {
        let bound = scale * self.apothem + OVERLAP_EPS;
        self.axes
            .iter()
            .all(|ax| ax.nx * center.0 + ax.ny * center.1 + ax.hi <= bound)
    }
}

pub(crate) fn distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    libm::hypot(a.0 - b.0, a.1 - b.1)
}

/// Centres farther apart than this cannot touch or overlap.
pub(crate) const CONTACT_RADIUS: f64 = 2.0 + OVERLAP_EPS;

#[cfg(test)]
mod tests {
    use super::*;

    // Brute-force oracle: sample points strictly inside both polygons.
    fn sampled_overlap(k: usize, a: (f64, f64), b: (f64, f64)) -> bool {
        let inside = |c: (f64, f64), p: (f64, f64)| {
            (0..k).all(|e| {
                let t = PI * (2 * e + 1) as f64 / k as f64;
                libm::cos(t) * (p.0 - c.0) + libm::sin(t) * (p.1 - c.1) < libm::cos(PI / k as f64) - 1e-9
            })
        };
        let n = 200;
        (0..=n).any(|i| {
            (0..=n).any(|j| {
                let p = (a.0 - 1.0 + 2.0 * i as f64 / n as f64, a.1 - 1.0 + 2.0 * j as f64 / n as f64);
                inside(a, p) && inside(b, p)
            })
        })
    }

    #[test]
    fn hexagons_touching_at_a_vertex_do_not_overlap() {
        let axes = PolygonAxes::new(6);
        assert!(!axes.interiors_overlap((0.0, 0.0), (2.0, 0.0)));
        assert!(axes.interiors_overlap((0.0, 0.0), (1.0, 0.0)));
        assert!(sampled_overlap(6, (0.0, 0.0), (1.0, 0.0)));
    }

    #[test]
    fn disjoint_squares() {
        let axes = PolygonAxes::new(4);
        // cells at 0 and 2ζ⁰ + 2ζ¹
        assert!(!axes.interiors_overlap((0.0, 0.0), (2.0, 2.0)));
        assert!(!sampled_overlap(4, (0.0, 0.0), (2.0, 2.0)));
    }

    #[test]
    fn sat_agrees_with_sampling_on_a_grid_of_offsets() {
        for k in [3usize, 4, 5, 7] {
            let axes = PolygonAxes::new(k);
            for i in -4..=4 {
                for j in -4..=4 {
                    let b = (0.37 * i as f64, 0.41 * j as f64);
                    if i == 0 && j == 0 {
                        continue;
                    }
                    assert_eq!(
                        axes.interiors_overlap((0.0, 0.0), b),
                        sampled_overlap(k, (0.0, 0.0), b),
                        "k={k} offset={b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn containment_in_scaled_polygon() {
        let axes = PolygonAxes::new(3);
        // gasket corner cell at ζ⁰ sits inside the triangle of circumradius 2
        assert!(axes.contained_in_scaled((1.0, 0.0), 2.0));
        assert!(!axes.contained_in_scaled((1.5, 0.0), 2.0));
    }
}
