//! Good-labeling deciders.
//!
//! Giving cell `i` the rotation offset `r_i` labels its vertex `j` with
//! `(j + r_i) mod k`. Two cells sharing the vertex `b_a + ζ^{ja} = b_b + ζ^{jb}`
//! agree on it iff `r_b ≡ r_a + (ja - jb)`, so a good labeling is exactly a
//! `Z_k`-valued potential on the adjacency graph and the only obstructions are
//! cycles whose weights do not sum to zero.

mod slices;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::cyclotomic::{CycInt, Key, RingContext};
use crate::model::{FractalSpec, Layout, ModelError};

pub use slices::{closed_slices, glp_via_slices, slice_subspec, slices, SlicePlace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlpError {
    #[error("cells {0} and {1} overlap or share more than one vertex")]
    Conflict(usize, usize),
    #[error("adjacency graph has {0} components")]
    Disconnected(usize),
    #[error("k = {0} is below 3")]
    OrderTooSmall(usize),
    #[error("this decider needs even k, got {0}")]
    NeedsEvenOrder(usize),
    #[error("this decider needs odd k, got {0}")]
    NeedsOddOrder(usize),
    #[error("adjacency between cells {a} and {b} is neither rotation class")]
    Unclassifiable { a: usize, b: usize },
    #[error("slice index {0} is outside 1..=k")]
    UnknownSlice(usize),
    #[error("the selected slices contain no cells")]
    EmptySelection,
    #[error("slice reduction needs a full spec")]
    PartialSpec,
    #[error("no label for vertex {vertex} of cell {cell}")]
    MissingLabel { cell: usize, vertex: usize },
    #[error("slice reduction found a labeling that does not extend; cycle {0:?}")]
    ReductionMismatch(Vec<usize>),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// An adjacency with its `Z_k` weight: `r_b ≡ r_a + weight`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintEdge {
    pub a: usize,
    pub b: usize,
    pub ja: usize,
    pub jb: usize,
    pub weight: usize,
}

/// Adjacency graph with a breadth-first spanning forest. Roots are taken in
/// cell order and neighbours in edge order, so the forest is deterministic.
#[derive(Debug, Clone)]
pub struct ConstraintGraph {
    k: usize,
    n: usize,
    edges: Vec<ConstraintEdge>,
    index: BTreeMap<(usize, usize), usize>,
    /// `(parent, edge)` for every non-root cell.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    /// Components in root order, each listed in visiting order.
    components: Vec<Vec<usize>>,
    non_tree: Vec<usize>,
}

/// Builds the constraint graph; fails on conflicting cells.
pub fn build_constraint_graph(spec: &FractalSpec) -> Result<ConstraintGraph, GlpError> {
    let layout = Layout::of(spec);
    if let Some(&(a, b)) = layout.conflicts.first() {
        return Err(GlpError::Conflict(a, b));
    }
    let k = spec.k();
    let n = spec.len();
    let edges: Vec<ConstraintEdge> = layout
        .adjacencies
        .iter()
        .map(|adj| ConstraintEdge {
            a: adj.a,
            b: adj.b,
            ja: adj.ja,
            jb: adj.jb,
            weight: (adj.ja + k - adj.jb) % k,
        })
        .collect();
    let index = edges.iter().enumerate().map(|(e, edge)| ((edge.a, edge.b), e)).collect();

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, edge) in edges.iter().enumerate() {
        incident[edge.a].push(e);
        incident[edge.b].push(e);
    }
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; edges.len()];
    let mut components = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in &incident[u] {
                let v = if edges[e].a == u { edges[e].b } else { edges[e].a };
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, e));
                    depth[v] = depth[u] + 1;
                    in_tree[e] = true;
                    order.push(v);
                    queue.push_back(v);
                }
            }
        }
        components.push(order);
    }
    let non_tree = (0..edges.len()).filter(|&e| !in_tree[e]).collect();
    Ok(ConstraintGraph {
        k,
        n,
        edges,
        index,
        parent,
        depth,
        components,
        non_tree,
    })
}

impl ConstraintGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cell_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[ConstraintEdge] {
        &self.edges
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Indices (into [`edges`](Self::edges)) of edges outside the forest.
    pub fn non_tree_edges(&self) -> &[usize] {
        &self.non_tree
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<&ConstraintEdge> {
        self.index.get(&(u.min(v), u.max(v))).map(|&e| &self.edges[e])
    }

    /// Weight of traversing the edge from `from` to the other end.
    fn directed_weight(&self, edge: &ConstraintEdge, from: usize) -> usize {
        if edge.a == from {
            edge.weight
        } else {
            (self.k - edge.weight) % self.k
        }
    }

    /// Sum of the directed weights around the closed walk
    /// `cycle[0] → cycle[1] → … → cycle[0]`, or `None` if two consecutive
    /// cells are not adjacent.
    pub fn cycle_weight(&self, cycle: &[usize]) -> Option<usize> {
        let mut total = 0;
        for (i, &u) in cycle.iter().enumerate() {
            let v = cycle[(i + 1) % cycle.len()];
            let edge = self.edge_between(u, v)?;
            total = (total + self.directed_weight(edge, u)) % self.k;
        }
        Some(total)
    }

    /// Cycle closed by a non-tree edge `(a, b)`: the tree path from `a` up
    /// to the common ancestor and back down to `b`.
    pub fn fundamental_cycle(&self, edge: usize) -> Vec<usize> {
        let ConstraintEdge { a, b, .. } = self.edges[edge];
        let (mut x, mut y) = (a, b);
        let mut up = vec![x];
        let mut down = vec![y];
        while x != y {
            if self.depth[x] >= self.depth[y] {
                x = self.parent[x].expect("non-root above the ancestor").0;
                up.push(x);
            } else {
                y = self.parent[y].expect("non-root above the ancestor").0;
                down.push(y);
            }
        }
        down.pop();
        up.extend(down.into_iter().rev());
        up
    }

    pub fn fundamental_cycles(&self) -> Vec<Vec<usize>> {
        self.non_tree.iter().map(|&e| self.fundamental_cycle(e)).collect()
    }

    /// Propagates offsets along the forest (each root gets 0) and checks
    /// every non-tree edge. Disconnected graphs are fine here.
    pub fn solve(&self) -> Result<Vec<usize>, Vec<usize>> {
        let mut offsets = vec![0; self.n];
        for component in &self.components {
            for &v in &component[1..] {
                let (u, e) = self.parent[v].expect("non-root has a parent");
                offsets[v] = (offsets[u] + self.directed_weight(&self.edges[e], u)) % self.k;
            }
        }
        for &e in &self.non_tree {
            let edge = &self.edges[e];
            if (offsets[edge.a] + edge.weight) % self.k != offsets[edge.b] {
                return Err(self.fundamental_cycle(e));
            }
        }
        Ok(offsets)
    }
}

/// A vertex point together with its label.
#[derive(Debug, Clone)]
pub struct VertexLabel {
    pub point: CycInt,
    pub label: usize,
}

/// Per-cell rotation offsets and the vertex labels they induce.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub offsets: Vec<usize>,
    /// One entry per distinct vertex, in first-seen order.
    pub labels: Vec<VertexLabel>,
}

impl Labeling {
    /// Labels every vertex from its first incident cell.
    pub fn from_offsets(spec: &FractalSpec, offsets: Vec<usize>) -> Self {
        let k = spec.k();
        let ctx = RingContext::new(k);
        let mut seen: BTreeMap<Key, ()> = BTreeMap::new();
        let mut labels = Vec::new();
        for (cell, &r) in spec.cells().iter().zip(&offsets) {
            for j in 0..k {
                let point = cell.vertex(j);
                if seen.insert(ctx.key(&point), ()).is_none() {
                    labels.push(VertexLabel {
                        point,
                        label: (j + r) % k,
                    });
                }
            }
        }
        Self { offsets, labels }
    }

    /// Label of `point`, by exact comparison.
    pub fn label_of(&self, point: &CycInt) -> Option<usize> {
        self.labels.iter().find(|v| v.point.equals(point)).map(|v| v.label)
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Glp(Labeling),
    /// Cells of a closed walk whose weights do not sum to zero.
    NoGlp(Vec<usize>),
}

impl Verdict {
    pub fn is_glp(&self) -> bool {
        matches!(self, Verdict::Glp(_))
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Verdict::NoGlp(cycle) => Some(cycle),
            Verdict::Glp(_) => None,
        }
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        match self {
            Verdict::Glp(labeling) => Some(labeling),
            Verdict::NoGlp(_) => None,
        }
    }
}

fn connected_graph(spec: &FractalSpec) -> Result<ConstraintGraph, GlpError> {
    let graph = build_constraint_graph(spec)?;
    if graph.component_count() != 1 {
        return Err(GlpError::Disconnected(graph.component_count()));
    }
    Ok(graph)
}

/// General decider by potential propagation. The labeling has offset 0 on
/// cell 0; the witness comes from the first violated non-tree edge.
pub fn decide_glp(spec: &FractalSpec) -> Result<Verdict, GlpError> {
    let graph = connected_graph(spec)?;
    Ok(match graph.solve() {
        Ok(offsets) => Verdict::Glp(Labeling::from_offsets(spec, offsets)),
        Err(cycle) => Verdict::NoGlp(cycle),
    })
}

/// Result of the two-class test for even `k`.
#[derive(Debug, Clone)]
pub struct EvenDecision {
    pub verdict: Verdict,
    /// Class 1 or 2 per cell when the adjacency graph is bipartite.
    pub classes: Option<Vec<u8>>,
}

/// Even `k`: good labeling exists iff the cells split into two classes with
/// every adjacency crossing between them.
pub fn decide_glp_even(spec: &FractalSpec) -> Result<EvenDecision, GlpError> {
    let k = spec.k();
    if k % 2 != 0 {
        return Err(GlpError::NeedsEvenOrder(k));
    }
    let graph = connected_graph(spec)?;
    let colour: Vec<u8> = graph.depth.iter().map(|d| (d % 2) as u8 + 1).collect();
    if let Some(&e) = graph
        .non_tree
        .iter()
        .find(|&&e| colour[graph.edges[e].a] == colour[graph.edges[e].b])
    {
        return Ok(EvenDecision {
            verdict: Verdict::NoGlp(graph.fundamental_cycle(e)),
            classes: None,
        });
    }
    let offsets = colour.iter().map(|&c| if c == 1 { 0 } else { k / 2 }).collect();
    Ok(EvenDecision {
        verdict: Verdict::Glp(Labeling::from_offsets(spec, offsets)),
        classes: Some(colour),
    })
}

/// `+1` when `jb - ja ≡ (k+1)/2`, the rotation by `(k+1)π/k`; `-1` when
/// `jb - ja ≡ (k-1)/2`.
fn rotation_class(k: usize, edge: &ConstraintEdge) -> Option<i64> {
    let d = (edge.jb + k - edge.ja) % k;
    if d == (k + 1) / 2 {
        Some(1)
    } else if d == (k - 1) / 2 {
        Some(-1)
    } else {
        None
    }
}

/// Counts `(c, d)` of the two rotation classes met while walking `cycle`.
pub fn rotation_counts(graph: &ConstraintGraph, cycle: &[usize]) -> Result<(usize, usize), GlpError> {
    let k = graph.k;
    if k % 2 == 0 {
        return Err(GlpError::NeedsOddOrder(k));
    }
    let (mut c, mut d) = (0, 0);
    for (i, &u) in cycle.iter().enumerate() {
        let v = cycle[(i + 1) % cycle.len()];
        let edge = graph
            .edge_between(u, v)
            .ok_or(GlpError::Unclassifiable { a: u, b: v })?;
        let s = rotation_class(k, edge).ok_or(GlpError::Unclassifiable { a: edge.a, b: edge.b })?;
        let s = if edge.a == u { s } else { -s };
        if s > 0 {
            c += 1;
        } else {
            d += 1;
        }
    }
    Ok((c, d))
}

/// Odd `k`: good labeling exists iff every cycle has `k | (c - d)`. Works
/// with an integer potential counting net `+1` rotations.
pub fn decide_glp_odd(spec: &FractalSpec) -> Result<Verdict, GlpError> {
    let k = spec.k();
    if k % 2 == 0 {
        return Err(GlpError::NeedsOddOrder(k));
    }
    let graph = connected_graph(spec)?;
    let mut class = Vec::with_capacity(graph.edges.len());
    for edge in &graph.edges {
        class.push(rotation_class(k, edge).ok_or(GlpError::Unclassifiable { a: edge.a, b: edge.b })?);
    }
    let mut potential = vec![0i64; graph.n];
    for &v in &graph.components[0][1..] {
        let (u, e) = graph.parent[v].expect("non-root has a parent");
        let s = if graph.edges[e].a == u { class[e] } else { -class[e] };
        potential[v] = potential[u] + s;
    }
    for &e in &graph.non_tree {
        let edge = &graph.edges[e];
        if (potential[edge.a] + class[e] - potential[edge.b]).rem_euclid(k as i64) != 0 {
            return Ok(Verdict::NoGlp(graph.fundamental_cycle(e)));
        }
    }
    let half = ((k + 1) / 2) as i64;
    let offsets = potential
        .iter()
        .map(|&p| (-half * p).rem_euclid(k as i64) as usize)
        .collect();
    Ok(Verdict::Glp(Labeling::from_offsets(spec, offsets)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlwaysReason {
    Prime,
    PowerOfTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KClass {
    AlwaysGlp(AlwaysReason),
    Conditional,
}

/// Orders for which every configuration has a good labeling.
pub fn classify_k(k: usize) -> Result<KClass, GlpError> {
    if k < 3 {
        return Err(GlpError::OrderTooSmall(k));
    }
    if k.is_power_of_two() {
        return Ok(KClass::AlwaysGlp(AlwaysReason::PowerOfTwo));
    }
    let prime = (2..).take_while(|d| d * d <= k).all(|d| k % d != 0);
    Ok(if prime {
        KClass::AlwaysGlp(AlwaysReason::Prime)
    } else {
        KClass::Conditional
    })
}

/// Fundamental cycles of odd length below `k`. Each one rules out a good
/// labeling; an empty result decides nothing.
pub fn odd_cycle_scan(spec: &FractalSpec) -> Result<Vec<Vec<usize>>, GlpError> {
    let k = spec.k();
    if k % 2 == 0 {
        return Err(GlpError::NeedsOddOrder(k));
    }
    let graph = build_constraint_graph(spec)?;
    Ok(graph
        .fundamental_cycles()
        .into_iter()
        .filter(|c| c.len() % 2 == 1 && c.len() < k)
        .collect())
}

/// Independent check of a labeling: every vertex of every cell must carry a
/// label, each cell must see its reference order rotated by one offset, and
/// repeated points must agree.
pub fn check_labeling(spec: &FractalSpec, labeling: &Labeling) -> Result<bool, GlpError> {
    let k = spec.k();
    let ctx = RingContext::new(k);
    let mut by_point: BTreeMap<Key, usize> = BTreeMap::new();
    for v in &labeling.labels {
        if v.point.order() != k || v.label >= k {
            return Ok(false);
        }
        if let Some(previous) = by_point.insert(ctx.key(&v.point), v.label) {
            if previous != v.label {
                return Ok(false);
            }
        }
    }
    for (i, cell) in spec.cells().iter().enumerate() {
        let mut rotation = None;
        for j in 0..k {
            let label = *by_point
                .get(&ctx.key(&cell.vertex(j)))
                .ok_or(GlpError::MissingLabel { cell: i, vertex: j })?;
            let r = (label + k - j) % k;
            if *rotation.get_or_insert(r) != r {
                return Ok(false);
            }
        }
        if labeling.offsets.get(i).is_some_and(|&r| Some(r) != rotation) {
            return Ok(false);
        }
    }
    Ok(true)
}
