//! Level-1 configurations: cells, their exact geometry, and the axioms a
//! configuration must satisfy.

mod catalog;
mod layout;
mod validate;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::cyclotomic::{CycError, CycInt, Key, RingContext, MAX_ORDER};
use crate::geometry::PolygonAxes;

pub use catalog::{catalog, CATALOG_NAMES};
pub use layout::{Adjacency, Layout};
pub use validate::{validate, Axiom, CenterFailure, SymmetryFailure, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("k = {0} is outside 3..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("cell {cell} has order {found}, expected {expected}")]
    MixedOrders { cell: usize, expected: usize, found: usize },
    #[error("cells {0} and {1} have the same barycenter")]
    DuplicateBarycenter(usize, usize),
    #[error("a spec needs at least one cell")]
    Empty,
    #[error("a full spec with k = {k} needs at least {k} cells, got {cells}")]
    TooFewCells { k: usize, cells: usize },
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogName(alloc::string::String),
    #[error("scaling is only defined for full specs")]
    PartialSpec,
    #[error("global barycenter is not at the origin")]
    NotCentred,
    #[error("no cell lies on the positive real axis")]
    NoAxisCorner,
    #[error("derived scaling factor is not a real number greater than 1")]
    BadScaling,
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// One 0-complex: a unit-circumradius regular `k`-gon with vertices
/// `barycenter + ζ^j`.
#[derive(Debug, Clone)]
pub struct Cell {
    pub barycenter: CycInt,
    pub index: usize,
}

impl Cell {
    pub fn vertex(&self, j: usize) -> CycInt {
        let k = self.barycenter.order();
        self.barycenter
            .try_add(&CycInt::root(k, j as i64))
            .expect("vertex of an in-range barycenter")
    }

    pub fn vertices(&self) -> Vec<CycInt> {
        (0..self.barycenter.order()).map(|j| self.vertex(j)).collect()
    }
}

/// Free-function form of [`Cell::vertices`].
pub fn vertices(cell: &Cell) -> Vec<CycInt> {
    cell.vertices()
}

/// A level-1 configuration. `partial` marks sub-configurations, which are
/// exempt from the symmetry, corner and centre axioms.
#[derive(Debug, Clone)]
pub struct FractalSpec {
    k: usize,
    cells: Vec<Cell>,
    partial: bool,
}

impl FractalSpec {
    pub fn new(k: usize, barycenters: Vec<CycInt>, partial: bool) -> Result<Self, ModelError> {
        if !(3..=MAX_ORDER).contains(&k) {
            return Err(ModelError::OrderOutOfRange(k));
        }
        if barycenters.is_empty() {
            return Err(ModelError::Empty);
        }
        if !partial && barycenters.len() < k {
            return Err(ModelError::TooFewCells {
                k,
                cells: barycenters.len(),
            });
        }
        for (cell, b) in barycenters.iter().enumerate() {
            if b.order() != k {
                return Err(ModelError::MixedOrders {
                    cell,
                    expected: k,
                    found: b.order(),
                });
            }
        }
        let ctx = RingContext::new(k);
        let mut seen: BTreeMap<Key, usize> = BTreeMap::new();
        for (i, b) in barycenters.iter().enumerate() {
            if let Some(&first) = seen.get(&ctx.key(b)) {
                return Err(ModelError::DuplicateBarycenter(first, i));
            }
            seen.insert(ctx.key(b), i);
        }
        let cells = barycenters
            .into_iter()
            .enumerate()
            .map(|(index, barycenter)| Cell { barycenter, index })
            .collect();
        Ok(Self { k, cells, partial })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn barycenters(&self) -> impl Iterator<Item = &CycInt> {
        self.cells.iter().map(|c| &c.barycenter)
    }

    /// The same cells flagged as a partial configuration.
    pub fn to_partial(&self) -> Self {
        Self {
            partial: true,
            ..self.clone()
        }
    }

    /// Partial spec made of the listed cells, in the given order.
    pub fn subspec(&self, indices: &[usize]) -> Result<Self, ModelError> {
        let bs = indices.iter().map(|&i| self.cells[i].barycenter.clone()).collect();
        Self::new(self.k, bs, true)
    }
}

/// Index pairs `(j_a, j_b)` with `a.barycenter + ζ^{j_a} = b.barycenter + ζ^{j_b}`.
pub fn shared_vertices(a: &Cell, b: &Cell) -> Vec<(usize, usize)> {
    let k = a.barycenter.order();
    if b.barycenter.order() != k {
        return Vec::new();
    }
    let ctx = RingContext::new(k);
    let diff = ctx.key(&b.barycenter.try_sub(&a.barycenter).expect("difference in range"));
    let mut out = Vec::new();
    for ja in 0..k {
        for jb in 0..k {
            // b - a = ζ^{ja} - ζ^{jb}
            let step: Key = ctx
                .root_key(ja)
                .iter()
                .zip(ctx.root_key(jb))
                .map(|(x, y)| x - y)
                .collect();
            if step == diff {
                out.push((ja, jb));
            }
        }
    }
    out
}

/// True iff the two cells share two or more vertices or their open hulls
/// overlap.
pub fn cells_conflict(a: &Cell, b: &Cell) -> bool {
    if shared_vertices(a, b).len() >= 2 {
        return true;
    }
    let k = a.barycenter.order();
    PolygonAxes::new(k).interiors_overlap(a.barycenter.to_cartesian(), b.barycenter.to_cartesian())
}

/// Exact barycenter of the configuration as `(Σ barycenters, N)`.
pub fn global_barycenter(spec: &FractalSpec) -> (CycInt, usize) {
    let sum = spec
        .barycenters()
        .try_fold(CycInt::zero(spec.k()), |acc, b| acc.try_add(b))
        .expect("barycenter sum in range");
    (sum, spec.len())
}

/// Barycenters relative to the global barycenter, scaled by `N` so they stay
/// integral: `N·b_i - Σ b`.
pub(crate) fn centred_scaled(spec: &FractalSpec) -> Result<Vec<CycInt>, CycError> {
    let (sum, n) = global_barycenter(spec);
    spec.barycenters()
        .map(|b| b.try_scale(n as i64)?.try_sub(&sum))
        .collect()
}

/// Index of the outermost cell on the positive real axis, given centred
/// coordinates.
pub(crate) fn axis_corner(ctx: &RingContext, centred: &[CycInt]) -> Option<usize> {
    centred
        .iter()
        .enumerate()
        .filter(|(_, c)| ctx.key(c) == ctx.key(&c.reflect(0)))
        .map(|(i, c)| (i, ctx.xy(c).0))
        .filter(|&(_, x)| x > 1e-9)
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
}

/// Scaling factor `L = 1 + b*`, where `b*` is the corner cell on the
/// positive real axis of a centred full spec.
pub fn derive_scaling(spec: &FractalSpec) -> Result<CycInt, ModelError> {
    if spec.is_partial() {
        return Err(ModelError::PartialSpec);
    }
    let ctx = RingContext::new(spec.k());
    let (sum, _) = global_barycenter(spec);
    if !sum.is_zero() {
        return Err(ModelError::NotCentred);
    }
    let barycenters: Vec<CycInt> = spec.barycenters().cloned().collect();
    let corner = axis_corner(&ctx, &barycenters).ok_or(ModelError::NoAxisCorner)?;
    let l = barycenters[corner].try_add(&CycInt::from_int(spec.k(), 1)?)?;
    if ctx.key(&l) != ctx.key(&l.reflect(0)) || ctx.xy(&l).0 <= 1.0 {
        return Err(ModelError::BadScaling);
    }
    Ok(l)
}

/// Distinct vertex points of the configuration, in first-seen order.
pub fn distinct_vertices(spec: &FractalSpec) -> Vec<CycInt> {
    let ctx = RingContext::new(spec.k());
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for cell in spec.cells() {
        for v in cell.vertices() {
            if seen.insert(ctx.key(&v), ()).is_none() {
                out.push(v);
            }
        }
    }
    out
}
