use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{axis_corner, centred_scaled, FractalSpec, Layout};
use crate::cyclotomic::{key_add, key_is_zero, key_scale, CycInt, Key, RingContext};
use crate::model::Adjacency;

/// Outcome of one axiom check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom<T> {
    Pass,
    Fail(T),
    /// Not applicable, e.g. symmetry for a partial spec.
    Skipped,
}

impl<T> Axiom<T> {
    pub fn is_fail(&self) -> bool {
        matches!(self, Axiom::Fail(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryFailure {
    /// Rotation by `2πj/k` does not map the configuration to itself.
    Rotation(usize),
    /// Reflection across the axis at angle `mπ/k` does not.
    Reflection(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterFailure {
    /// A cell sits at the global barycenter although `k ∉ {3, 4, 6}`.
    ForbiddenCentralCell(usize),
    /// Vertex `vertex` of cell `cell` coincides with the global barycenter.
    VertexAtCenter { cell: usize, vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub k: usize,
    pub cells: usize,
    pub partial: bool,
    /// Number of connected components of the adjacency graph.
    pub components: usize,
    pub connectivity: Axiom<usize>,
    pub nesting: Axiom<(usize, usize)>,
    pub symmetry: Axiom<SymmetryFailure>,
    /// Failure carries the first direction `j` with no corner cell.
    pub corner_coverage: Axiom<usize>,
    pub odd_adjacency_classes: Axiom<Adjacency>,
    pub central_cell: Option<usize>,
    pub center: Axiom<CenterFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !(self.connectivity.is_fail()
            || self.nesting.is_fail()
            || self.symmetry.is_fail()
            || self.corner_coverage.is_fail()
            || self.odd_adjacency_classes.is_fail()
            || self.center.is_fail())
    }
}

/// Checks the level-1 axioms that have a finite certificate.
pub fn validate(spec: &FractalSpec) -> ValidationReport {
    let k = spec.k();
    let ctx = RingContext::new(k);
    let layout = Layout::of(spec);
    let components = layout.component_count(spec.len());

    let connectivity = if components == 1 {
        Axiom::Pass
    } else {
        Axiom::Fail(components)
    };
    let nesting = match layout.conflicts.first() {
        Some(&pair) => Axiom::Fail(pair),
        None => Axiom::Pass,
    };
    let odd_adjacency_classes = if k % 2 == 0 {
        Axiom::Skipped
    } else {
        let (plus, minus) = ((k + 1) / 2, (k - 1) / 2);
        match layout.adjacencies.iter().find(|adj| {
            let d = (adj.jb + k - adj.ja) % k;
            d != plus && d != minus
        }) {
            Some(&adj) => Axiom::Fail(adj),
            None => Axiom::Pass,
        }
    };

    let centred = centred_scaled(spec).expect("centred coordinates in range");
    let keys: Vec<Key> = centred.iter().map(|c| ctx.key(c)).collect();
    let central_cell = keys.iter().position(key_is_zero);

    let (symmetry, corner_coverage) = if spec.is_partial() {
        (Axiom::Skipped, Axiom::Skipped)
    } else {
        (dihedral_check(&ctx, &centred, &keys), corner_check(&ctx, &centred, &keys))
    };

    let n = spec.len() as i128;
    let mut center = Axiom::Pass;
    if let Some(i) = central_cell {
        if !matches!(k, 3 | 4 | 6) {
            center = Axiom::Fail(CenterFailure::ForbiddenCentralCell(i));
        }
    }
    if !center.is_fail() && k > 3 {
        // vertex b_i + ζ^j is the barycenter iff N·b_i - Σb + N·ζ^j = 0
        'scan: for (cell, key) in keys.iter().enumerate() {
            for vertex in 0..k {
                if key_is_zero(&key_add(key, &key_scale(ctx.root_key(vertex), n))) {
                    center = Axiom::Fail(CenterFailure::VertexAtCenter { cell, vertex });
                    break 'scan;
                }
            }
        }
    }
    if spec.is_partial() && center.is_fail() {
        // partial specs only report where their centre falls
        center = Axiom::Skipped;
    }

    ValidationReport {
        k,
        cells: spec.len(),
        partial: spec.is_partial(),
        components,
        connectivity,
        nesting,
        symmetry,
        corner_coverage,
        odd_adjacency_classes,
        central_cell,
        center,
    }
}

fn multiset(keys: impl Iterator<Item = Key>) -> BTreeMap<Key, usize> {
    let mut out = BTreeMap::new();
    for key in keys {
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

fn dihedral_check(ctx: &RingContext, centred: &[CycInt], keys: &[Key]) -> Axiom<SymmetryFailure> {
    let k = ctx.order();
    let original = multiset(keys.iter().cloned());
    for j in 1..k {
        let moved = multiset(centred.iter().map(|c| ctx.key(&c.rotate(j as i64))));
        if moved != original {
            return Axiom::Fail(SymmetryFailure::Rotation(j));
        }
    }
    for m in 0..k {
        let moved = multiset(centred.iter().map(|c| ctx.key(&c.reflect(m as i64))));
        if moved != original {
            return Axiom::Fail(SymmetryFailure::Reflection(m));
        }
    }
    Axiom::Pass
}

fn corner_check(ctx: &RingContext, centred: &[CycInt], keys: &[Key]) -> Axiom<usize> {
    let Some(corner) = axis_corner(ctx, centred) else {
        return Axiom::Fail(0);
    };
    let present = multiset(keys.iter().cloned());
    for j in 1..ctx.order() {
        if !present.contains_key(&ctx.key(&centred[corner].rotate(j as i64))) {
            return Axiom::Fail(j);
        }
    }
    Axiom::Pass
}
