//! Angular slices around the global barycenter and the reductions built on
//! them.
//!
//! Sector `i` (1-based) is the open angle between the vertex rays at
//! `2π(i-1)/k` and `2πi/k`, together with its counter-clockwise ray. The
//! closed slice adds the clockwise ray as well.

use alloc::vec;
use alloc::vec::Vec;

use super::{build_constraint_graph, GlpError, Labeling, Verdict};
use crate::cyclotomic::{key_is_zero, RingContext};
use crate::model::{centred_scaled, FractalSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlicePlace {
    /// Barycenter at the global barycenter; in no slice.
    Central,
    /// `on_axis` marks cells lying on the sector's counter-clockwise ray.
    Sector { index: usize, on_axis: bool },
}

/// Slice of every cell, in cell order.
pub fn slices(spec: &FractalSpec) -> Vec<SlicePlace> {
    let k = spec.k();
    let ctx = RingContext::new(k);
    let centred = centred_scaled(spec).expect("centred coordinates in range");
    let width = core::f64::consts::TAU / k as f64;
    centred
        .iter()
        .map(|c| {
            let key = ctx.key(c);
            if key_is_zero(&key) {
                return SlicePlace::Central;
            }
            let (x, y) = ctx.xy(c);
            for j in 0..k {
                let (rx, ry) = ctx.root_xy(j);
                if ctx.key(&c.reflect(2 * j as i64)) == key && x * rx + y * ry > 0.0 {
                    let index = if j == 0 { k } else { j };
                    return SlicePlace::Sector { index, on_axis: true };
                }
            }
            let mut angle = libm::atan2(y, x);
            if angle < 0.0 {
                angle += core::f64::consts::TAU;
            }
            let index = ((angle / width) as usize).min(k - 1) + 1;
            SlicePlace::Sector { index, on_axis: false }
        })
        .collect()
}

/// Cells of each closed slice; entry `i - 1` lists slice `i` in cell order.
pub fn closed_slices(spec: &FractalSpec) -> Vec<Vec<usize>> {
    let k = spec.k();
    let places = slices(spec);
    (1..=k)
        .map(|i| {
            let clockwise = if i == 1 { k } else { i - 1 };
            places
                .iter()
                .enumerate()
                .filter(|(_, p)| match **p {
                    SlicePlace::Sector { index, on_axis } => {
                        index == i || (on_axis && index == clockwise)
                    }
                    SlicePlace::Central => false,
                })
                .map(|(cell, _)| cell)
                .collect()
        })
        .collect()
}

fn selected_cells(spec: &FractalSpec, ids: &[usize], closed: bool) -> Result<Vec<usize>, GlpError> {
    let k = spec.k();
    if let Some(&bad) = ids.iter().find(|&&i| i == 0 || i > k) {
        return Err(GlpError::UnknownSlice(bad));
    }
    let mut chosen = vec![false; spec.len()];
    if closed {
        let closed = closed_slices(spec);
        for &i in ids {
            for &cell in &closed[i - 1] {
                chosen[cell] = true;
            }
        }
    } else {
        for (cell, place) in slices(spec).into_iter().enumerate() {
            if let SlicePlace::Sector { index, .. } = place {
                chosen[cell] |= ids.contains(&index);
            }
        }
    }
    Ok((0..spec.len()).filter(|&c| chosen[c]).collect())
}

/// Partial spec made of the union of the chosen slices, in cell order.
pub fn slice_subspec(spec: &FractalSpec, ids: &[usize], closed: bool) -> Result<FractalSpec, GlpError> {
    let cells = selected_cells(spec, ids, closed)?;
    if cells.is_empty() {
        return Err(GlpError::EmptySelection);
    }
    Ok(spec.subspec(&cells)?)
}

/// Decides a full spec through one or two slices.
///
/// Orders 3, 4 and 5 always admit a labeling. For `k = 6` a central cell
/// rules one out. Even `k > 7` and centre-free `k = 6` are decided on the
/// closed first slice; the remaining orders on the first two open slices.
/// A positive answer is completed to a labeling of the whole spec, and a
/// failure to complete is reported as [`GlpError::ReductionMismatch`].
pub fn glp_via_slices(spec: &FractalSpec) -> Result<Verdict, GlpError> {
    if spec.is_partial() {
        return Err(GlpError::PartialSpec);
    }
    let k = spec.k();
    let graph = build_constraint_graph(spec)?;
    if graph.component_count() != 1 {
        return Err(GlpError::Disconnected(graph.component_count()));
    }
    let places = slices(spec);
    let central = places.iter().position(|p| *p == SlicePlace::Central);

    if k == 6 {
        if let Some(c) = central {
            return Ok(Verdict::NoGlp(central_triangle(&graph, c).unwrap_or_else(|| {
                graph.solve().err().unwrap_or_else(|| vec![c])
            })));
        }
    }
    if !matches!(k, 3..=5) {
        let cells = if k % 2 == 0 {
            selected_cells(spec, &[1], true)?
        } else {
            selected_cells(spec, &[1, 2], false)?
        };
        if !cells.is_empty() {
            let reduced = build_constraint_graph(&spec.subspec(&cells)?)?;
            if let Err(cycle) = reduced.solve() {
                return Ok(Verdict::NoGlp(cycle.into_iter().map(|i| cells[i]).collect()));
            }
        }
    }
    match graph.solve() {
        Ok(offsets) => Ok(Verdict::Glp(Labeling::from_offsets(spec, offsets))),
        Err(cycle) => Err(GlpError::ReductionMismatch(cycle)),
    }
}

/// `[centre, u, v]` for the first pair of mutually adjacent neighbours of
/// the central cell.
fn central_triangle(graph: &super::ConstraintGraph, centre: usize) -> Option<Vec<usize>> {
    let neighbours: Vec<usize> = graph
        .edges()
        .iter()
        .filter_map(|e| match (e.a == centre, e.b == centre) {
            (true, _) => Some(e.b),
            (_, true) => Some(e.a),
            _ => None,
        })
        .collect();
    for (x, &u) in neighbours.iter().enumerate() {
        for &v in &neighbours[x + 1..] {
            if graph.edge_between(u, v).is_some() {
                return Some(vec![centre, u, v]);
            }
        }
    }
    None
}
