use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::FractalSpec;
use crate::cyclotomic::{key_add, Key, RingContext};
use crate::geometry::{distance, PolygonAxes, CONTACT_RADIUS};

/// Two cells meeting in exactly one vertex: `a < b` and
/// `barycenter_a + ζ^{ja} = barycenter_b + ζ^{jb}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Adjacency {
    pub a: usize,
    pub b: usize,
    pub ja: usize,
    pub jb: usize,
}

/// Contact structure of a spec: single-vertex adjacencies and conflicting
/// pairs, both sorted by `(min index, max index)`.
#[derive(Debug, Clone, Default)]
pub struct Layout {
    pub adjacencies: Vec<Adjacency>,
    pub conflicts: Vec<(usize, usize)>,
}

impl Layout {
    pub fn of(spec: &FractalSpec) -> Self {
        let k = spec.k();
        let ctx = RingContext::new(k);
        let keys: Vec<Key> = spec.barycenters().map(|b| ctx.key(b)).collect();
        let centers: Vec<(f64, f64)> = spec.barycenters().map(|b| ctx.xy(b)).collect();

        let mut at_point: BTreeMap<Key, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, key) in keys.iter().enumerate() {
            for j in 0..k {
                at_point.entry(key_add(key, ctx.root_key(j))).or_default().push((i, j));
            }
        }
        let mut shared: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for incident in at_point.values() {
            for (x, &(a, ja)) in incident.iter().enumerate() {
                for &(b, jb) in &incident[x + 1..] {
                    let entry = if a < b { ((a, b), (ja, jb)) } else { ((b, a), (jb, ja)) };
                    shared.entry(entry.0).or_default().push(entry.1);
                }
            }
        }

        let mut conflicts: Vec<(usize, usize)> = Vec::new();
        let mut adjacencies = Vec::new();
        for (&(a, b), pairs) in &shared {
            if pairs.len() >= 2 {
                conflicts.push((a, b));
            } else {
                adjacencies.push(Adjacency {
                    a,
                    b,
                    ja: pairs[0].0,
                    jb: pairs[0].1,
                });
            }
        }

        // Hull overlaps among nearby pairs, found through a coarse grid.
        let axes = PolygonAxes::new(k);
        let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        let bucket = |p: (f64, f64)| (libm::floor(p.0 / 2.0) as i64, libm::floor(p.1 / 2.0) as i64);
        for (i, &c) in centers.iter().enumerate() {
            grid.entry(bucket(c)).or_default().push(i);
        }
        for (a, &ca) in centers.iter().enumerate() {
            let (bx, by) = bucket(ca);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let Some(others) = grid.get(&(bx + dx, by + dy)) else {
                        continue;
                    };
                    for &b in others {
                        if b <= a || distance(ca, centers[b]) > CONTACT_RADIUS {
                            continue;
                        }
                        if shared.get(&(a, b)).is_some_and(|p| p.len() >= 2) {
                            continue;
                        }
                        if axes.interiors_overlap(ca, centers[b]) {
                            conflicts.push((a, b));
                        }
                    }
                }
            }
        }
        conflicts.sort_unstable();
        conflicts.dedup();
        // A pair that overlaps is not an adjacency even if it shares a vertex.
        adjacencies.retain(|adj| conflicts.binary_search(&(adj.a, adj.b)).is_err());
        Self {
            adjacencies,
            conflicts,
        }
    }

    /// Connected components of the adjacency graph on `n` cells.
    pub fn component_count(&self, n: usize) -> usize {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for adj in &self.adjacencies {
            let (ra, rb) = (find(&mut parent, adj.a), find(&mut parent, adj.b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }
}
