use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cyclotomic::{key_add, CycInt, Key, RingContext};
use crate::geometry::{distance, PolygonAxes, CONTACT_RADIUS};

/// Growing set of cells with incremental duplicate and conflict checks.
#[derive(Debug, Clone)]
pub(crate) struct Canvas {
    ctx: RingContext,
    axes: PolygonAxes,
    cells: Vec<CycInt>,
    centres: Vec<(f64, f64)>,
    by_key: BTreeMap<Key, usize>,
    by_vertex: BTreeMap<Key, Vec<usize>>,
    grid: BTreeMap<(i64, i64), Vec<usize>>,
}

fn bucket(p: (f64, f64)) -> (i64, i64) {
    (libm::floor(p.0 / 2.0) as i64, libm::floor(p.1 / 2.0) as i64)
}

impl Canvas {
    pub(crate) fn new(k: usize) -> Self {
        Self {
            ctx: RingContext::new(k),
            axes: PolygonAxes::new(k),
            cells: Vec::new(),
            centres: Vec::new(),
            by_key: BTreeMap::new(),
            by_vertex: BTreeMap::new(),
            grid: BTreeMap::new(),
        }
    }

    pub(crate) fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub(crate) fn axes(&self) -> &PolygonAxes {
        &self.axes
    }

    pub(crate) fn cells(&self) -> &[CycInt] {
        &self.cells
    }

    pub(crate) fn len(&self) -> usize {
        self.cells.len()
    }

    /// True iff `c` is new and touches every existing cell in at most one
    /// vertex without overlapping it.
    pub(crate) fn fits(&self, c: &CycInt) -> bool {
        let key = self.ctx.key(c);
        if self.by_key.contains_key(&key) {
            return false;
        }
        let mut shared: BTreeMap<usize, usize> = BTreeMap::new();
        for j in 0..self.ctx.order() {
            if let Some(owners) = self.by_vertex.get(&key_add(&key, self.ctx.root_key(j))) {
                for &o in owners {
                    let count = shared.entry(o).or_insert(0);
                    *count += 1;
                    if *count >= 2 {
                        return false;
                    }
                }
            }
        }
        let p = self.ctx.xy(c);
        let (bx, by) = bucket(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &o in self.grid.get(&(bx + dx, by + dy)).into_iter().flatten() {
                    let q = self.centres[o];
                    if distance(p, q) <= CONTACT_RADIUS && self.axes.interiors_overlap(p, q) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn push(&mut self, c: CycInt) {
        let i = self.cells.len();
        let key = self.ctx.key(&c);
        for j in 0..self.ctx.order() {
            self.by_vertex
                .entry(key_add(&key, self.ctx.root_key(j)))
                .or_default()
                .push(i);
        }
        let p = self.ctx.xy(&c);
        self.grid.entry(bucket(p)).or_default().push(i);
        self.by_key.insert(key, i);
        self.centres.push(p);
        self.cells.push(c);
    }

    /// Pushes `c` if it fits.
    pub(crate) fn try_push(&mut self, c: CycInt) -> bool {
        let ok = self.fits(&c);
        if ok {
            self.push(c);
        }
        ok
    }

    pub(crate) fn into_cells(self) -> Vec<CycInt> {
        self.cells
    }
}
