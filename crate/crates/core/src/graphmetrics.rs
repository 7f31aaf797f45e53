//! Exact metric and structural computations on finite simple graphs.
//!
//! Images, hyperspace views and function graphs all project to
//! [`FiniteGraph`], so girth, longest cycles, domination and the
//! eccentricity family are computed once here for every construction.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hyperspace::{self, Subset};
use crate::lattice::{mask_indices, DigitalImage, Point};

pub const DEFAULT_LONGEST_CYCLE_VERTICES: usize = 20;
pub const DEFAULT_DOMINATING_VERTICES: usize = 64;

/// An undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list; duplicate edges collapse, self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FiniteGraph { adj, labels: None })
    }

    /// Trusted constructor: lists must already be sorted, symmetric and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, ns)| ns.windows(2).all(|w| w[0] < w[1]) && !ns.contains(&u)));
        FiniteGraph { adj, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::invalid(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn adjacent_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Shortest-path distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Breadth-first shortest path; `None` when `to` is unreachable.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        self.shortest_path_within(from, to, |_| true)
    }

    /// Shortest path using only vertices accepted by `allowed`.
    pub fn shortest_path_within(
        &self,
        from: usize,
        to: usize,
        allowed: impl Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        if !allowed(from) || !allowed(to) {
            return None;
        }
        let mut parent = vec![usize::MAX; self.n()];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX && allowed(w) {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }

    /// Component label per vertex, numbered by smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().iter().max().map_or(0, |m| m + 1)
    }

    /// Connected and nonempty.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_count() == 1
    }

    /// Subgraph induced by the vertices with `keep[v]`, plus the map from new
    /// vertex ids to old ones.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (FiniteGraph, Vec<usize>) {
        let old_of: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old_of.iter().enumerate() {
            new_of[v] = i;
        }
        let adj = old_of
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| keep[w])
                    .map(|&w| new_of[w])
                    .collect()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| old_of.iter().map(|&v| l[v].clone()).collect());
        (FiniteGraph { adj, labels }, old_of)
    }

    fn neighbor_masks(&self) -> Vec<u64> {
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }
}

impl DigitalImage {
    /// The image as a graph, labeled by point coordinates.
    pub fn graph(&self) -> FiniteGraph {
        let adj = (0..self.len()).map(|i| self.neighbor_indices(i).to_vec()).collect();
        FiniteGraph {
            adj,
            labels: Some(self.points().iter().map(Point::to_string).collect()),
        }
    }
}

/// A cycle: at least three distinct vertices, cyclically consecutive
/// vertices adjacent. Chords are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    vertices: Vec<usize>,
}

impl CycleWitness {
    pub fn new(vertices: Vec<usize>, graph: &FiniteGraph) -> Result<Self> {
        let w = CycleWitness { vertices };
        if !w.is_valid_in(graph) {
            return Err(Error::invalid(format!("{:?} is not a cycle of the graph", w.vertices)));
        }
        Ok(w)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_valid_in(&self, graph: &FiniteGraph) -> bool {
        let vs = &self.vertices;
        if vs.len() < 3 || vs.iter().any(|&v| v >= graph.n()) {
            return false;
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == vs.len()
            && (0..vs.len()).all(|i| graph.has_edge(vs[i], vs[(i + 1) % vs.len()]))
    }
}

/// Shortest cycle, or `None` for a forest.
pub fn girth(graph: &FiniteGraph) -> Option<CycleWitness> {
    let n = graph.n();
    let mut best: Option<(usize, usize, usize, usize)> = None; // (len, root, u, v)
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some((b, ..)) = best {
                if 2 * dist[u] + 1 >= b {
                    break 'bfs;
                }
            }
            for &v in graph.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    if best.is_none_or(|(b, ..)| len < b) {
                        best = Some((len, root, u, v));
                    }
                }
            }
        }
    }
    let (_, root, u, v) = best?;

    // Rebuild both tree paths from this root and splice them at their
    // lowest common ancestor.
    let n = graph.n();
    let mut parent = vec![usize::MAX; n];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let to_root = |mut x: usize| {
        let mut p = vec![x];
        while x != root {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let (mut pu, mut pv) = (to_root(u), to_root(v));
    while pu.len() >= 2 && pv.len() >= 2 && pu[pu.len() - 2] == pv[pv.len() - 2] {
        pu.pop();
        pv.pop();
    }
    // pu and pv now end at the common ancestor; walk u..lca..v.
    pv.pop();
    pv.reverse();
    pu.extend(pv);
    let witness = CycleWitness { vertices: pu };
    debug_assert!(witness.is_valid_in(graph));
    Some(witness)
}

/// Longest cycle by exhaustive search over simple paths, or `None` for a
/// forest.
///
/// Each cycle is rooted at its smallest vertex. A branch is cut when the
/// vertices still reachable from the path tip cannot lengthen it past the
/// best cycle found, or when none of them can close back to the root.
pub fn longest_cycle(graph: &FiniteGraph, max_vertices: usize) -> Result<Option<CycleWitness>> {
    let n = graph.n();
    if n > max_vertices {
        return Err(Error::limit(format!("longest-cycle search on {n} vertices"), max_vertices));
    }
    if n > 64 {
        return Err(Error::limit(format!("longest-cycle search on {n} vertices"), 64));
    }
    let adj = graph.neighbor_masks();
    let mut search = CycleSearch {
        adj: &adj,
        root: 0,
        allowed: 0,
        path: Vec::with_capacity(n),
        best: Vec::new(),
        target: n,
    };
    for root in 0..n {
        let above = if root == 0 { u64::MAX } else { !((1u64 << root) - 1) };
        let allowed = flood(&adj, 1 << root, above & full_mask(n));
        if (allowed.count_ones() as usize) < 3.max(search.best.len() + 1) {
            continue;
        }
        search.root = root;
        search.allowed = allowed;
        search.path.clear();
        search.path.push(root);
        search.extend(root, 1 << root);
        if search.best.len() == n {
            break;
        }
    }
    if search.best.is_empty() {
        return Ok(None);
    }
    Ok(Some(CycleWitness { vertices: search.best }))
}

struct CycleSearch<'a> {
    adj: &'a [u64],
    root: usize,
    allowed: u64,
    path: Vec<usize>,
    best: Vec<usize>,
    target: usize,
}

impl CycleSearch<'_> {
    fn extend(&mut self, tip: usize, visited: u64) {
        if self.best.len() == self.target {
            return;
        }
        let len = self.path.len();
        if len >= 3 && self.adj[tip] & (1 << self.root) != 0 && len > self.best.len() {
            self.best = self.path.clone();
        }
        let free = self.allowed & !visited;
        let reach = flood(self.adj, self.adj[tip] & free, free);
        if len + reach.count_ones() as usize <= self.best.len() {
            return;
        }
        if self.adj[self.root] & reach == 0 {
            return;
        }
        for next in mask_indices(self.adj[tip] & free) {
            self.path.push(next);
            self.extend(next, visited | (1 << next));
            self.path.pop();
        }
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Vertices of `within` reachable from `seed` inside `within`.
fn flood(adj: &[u64], seed: u64, within: u64) -> u64 {
    let mut reached = seed & within;
    let mut frontier = reached;
    while frontier != 0 {
        let grown = mask_indices(frontier).fold(0, |acc, v| acc | adj[v]) & within & !reached;
        reached |= grown;
        frontier = grown;
    }
    reached
}

/// Every vertex is in `set` or adjacent to a member of it.
pub fn is_dominating(set: &[usize], graph: &FiniteGraph) -> bool {
    let mut covered = vec![false; graph.n()];
    for &d in set {
        if d >= graph.n() {
            return false;
        }
        covered[d] = true;
        for &w in graph.neighbors(d) {
            covered[w] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// A dominating set of minimum cardinality, by branch and bound.
///
/// Branches on the undominated vertex with the fewest dominators; a branch
/// is cut when even the largest single-vertex gain cannot finish within the
/// incumbent size.
pub fn minimum_dominating_set(graph: &FiniteGraph, max_vertices: usize) -> Result<Vec<usize>> {
    let n = graph.n();
    if n > max_vertices.min(64) {
        return Err(Error::limit(
            format!("dominating-set search on {n} vertices"),
            max_vertices.min(64),
        ));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let closed: Vec<u64> = graph
        .neighbor_masks()
        .into_iter()
        .enumerate()
        .map(|(v, m)| m | (1 << v))
        .collect();
    let full = full_mask(n);

    // Greedy incumbent.
    let mut greedy = Vec::new();
    let mut dominated = 0u64;
    while dominated != full {
        let v = (0..n)
            .max_by_key(|&v| ((closed[v] & !dominated).count_ones(), std::cmp::Reverse(v)))
            .expect("nonempty graph");
        greedy.push(v);
        dominated |= closed[v];
    }

    let mut solver = DominationSearch {
        closed: &closed,
        full,
        best: greedy,
        chosen: Vec::new(),
    };
    solver.branch(0);
    let mut best = solver.best;
    best.sort_unstable();
    Ok(best)
}

struct DominationSearch<'a> {
    closed: &'a [u64],
    full: u64,
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl DominationSearch<'_> {
    fn branch(&mut self, dominated: u64) {
        if dominated == self.full {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let open = self.full & !dominated;
        let max_gain = self
            .closed
            .iter()
            .map(|&c| (c & open).count_ones())
            .max()
            .unwrap_or(0) as usize;
        let need = (open.count_ones() as usize).div_ceil(max_gain.max(1));
        if self.chosen.len() + need >= self.best.len() {
            return;
        }
        let pivot = mask_indices(open)
            .min_by_key(|&u| self.closed[u].count_ones())
            .expect("open set nonempty");
        let mut options: Vec<usize> = mask_indices(self.closed[pivot]).collect();
        options.sort_by_key(|&v| std::cmp::Reverse((self.closed[v] & open).count_ones()));
        for v in options {
            self.chosen.push(v);
            self.branch(dominated | self.closed[v]);
            self.chosen.pop();
        }
    }
}

/// Eccentricity of every vertex of a connected graph.
pub fn eccentricities(graph: &FiniteGraph) -> Result<Vec<usize>> {
    if graph.n() == 0 {
        return Err(Error::Domain("metric of the empty graph is undefined".into()));
    }
    (0..graph.n())
        .map(|v| {
            graph
                .distances_from(v)
                .into_iter()
                .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
                .ok_or_else(|| {
                    Error::Domain("graph is disconnected; the path metric is undefined".into())
                })
        })
        .collect()
}

pub fn eccentricity(graph: &FiniteGraph, v: usize) -> Result<usize> {
    if v >= graph.n() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let ecc = eccentricities(graph)?;
    Ok(ecc[v])
}

pub fn radius(graph: &FiniteGraph) -> Result<usize> {
    Ok(eccentricities(graph)?.into_iter().min().unwrap_or(0))
}

pub fn diameter(graph: &FiniteGraph) -> Result<usize> {
    Ok(eccentricities(graph)?.into_iter().max().unwrap_or(0))
}

/// Vertices of minimum eccentricity.
pub fn center(graph: &FiniteGraph) -> Result<Vec<usize>> {
    let ecc = eccentricities(graph)?;
    let r = ecc.iter().copied().min().unwrap_or(0);
    Ok((0..graph.n()).filter(|&v| ecc[v] == r).collect())
}

/// 𝒟 = { A ∈ 2^X : A ∩ D ≠ ∅ }, as members of the full hyperspace.
pub fn lift_dominating(set: &[Point], image: &DigitalImage, max_points: usize) -> Result<Vec<Subset>> {
    let d = image.mask_of(set)?;
    let family = hyperspace::enumerate_all_subsets(image, max_points)?;
    Ok(family
        .members()
        .iter()
        .copied()
        .filter(|a| a.mask() & d != 0)
        .collect())
}

/// Whether removing `removed` from a connected image leaves it disconnected.
pub fn disconnects(removed: &[Point], image: &DigitalImage) -> Result<bool> {
    if !image.is_connected_image() {
        return Err(Error::Domain("disconnecting sets are defined for connected images".into()));
    }
    let idx = image.indices_of(removed)?;
    if idx.len() == image.len() {
        return Err(Error::invalid("removing every point leaves nothing to disconnect"));
    }
    let rest: Vec<usize> = (0..image.len()).filter(|i| idx.binary_search(i).is_err()).collect();
    Ok(!image.is_connected_indices(&rest))
}

/// Whether deleting the given vertices leaves a nonempty disconnected graph.
pub fn removal_disconnects(graph: &FiniteGraph, removed: &[usize]) -> bool {
    let mut keep = vec![true; graph.n()];
    for &v in removed {
        keep[v] = false;
    }
    let (rest, _) = graph.induced_subgraph(&keep);
    rest.n() > 0 && !rest.is_connected()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> FiniteGraph {
        FiniteGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> FiniteGraph {
        FiniteGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> FiniteGraph {
        FiniteGraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(FiniteGraph::new(2, [(0, 0)]).is_err());
        assert!(FiniteGraph::new(2, [(0, 2)]).is_err());
        let g = FiniteGraph::new(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&cycle(5)).unwrap().len(), 5);
        assert_eq!(girth(&complete(4)).unwrap().len(), 3);
        assert!(girth(&path(6)).is_none());
        let isolated = FiniteGraph::new(3, []).unwrap();
        assert!(girth(&isolated).is_none());
        // 6-cycle with one chord splitting it into a 4-cycle and a 4-cycle.
        let g = FiniteGraph::new(6, (0..6).map(|i| (i, (i + 1) % 6)).chain([(0, 3)])).unwrap();
        let w = girth(&g).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.is_valid_in(&g));
    }

    #[test]
    fn longest_cycle_examples() {
        assert_eq!(longest_cycle(&complete(3), 20).unwrap().unwrap().len(), 3);
        assert_eq!(longest_cycle(&cycle(7), 20).unwrap().unwrap().len(), 7);
        assert!(longest_cycle(&path(5), 20).unwrap().is_none());
        assert!(matches!(
            longest_cycle(&path(30), 20),
            Err(Error::ResourceLimit { budget: 20, .. })
        ));
        // Two triangles sharing a vertex: longest simple cycle is 3.
        let bowtie = FiniteGraph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(longest_cycle(&bowtie, 20).unwrap().unwrap().len(), 3);
    }

    #[test]
    fn cycle_witness_validation() {
        let g = cycle(5);
        assert!(CycleWitness::new(vec![0, 1, 2, 3, 4], &g).is_ok());
        assert!(CycleWitness::new(vec![0, 1, 2], &g).is_err());
        assert!(CycleWitness::new(vec![0, 1, 0], &g).is_err());
        assert!(CycleWitness::new(vec![0, 1], &complete(2)).is_err());
    }

    #[test]
    fn domination_examples() {
        let p5 = path(5);
        assert!(is_dominating(&[0, 1, 2, 3, 4], &p5));
        assert!(is_dominating(&[1, 3], &p5));
        assert!(!is_dominating(&[], &p5));
        assert!(!is_dominating(&[0, 4], &p5));

        assert_eq!(minimum_dominating_set(&path(1), 64).unwrap(), vec![0]);
        assert_eq!(minimum_dominating_set(&path(3), 64).unwrap(), vec![1]);
        assert_eq!(minimum_dominating_set(&cycle(5), 64).unwrap().len(), 2);
    }

    #[test]
    fn metric_examples() {
        let p5 = path(5);
        assert_eq!(center(&p5).unwrap(), vec![2]);
        assert_eq!(radius(&p5).unwrap(), 2);
        assert_eq!(diameter(&p5).unwrap(), 4);
        assert_eq!(eccentricity(&p5, 0).unwrap(), 4);
        let k5 = complete(5);
        assert_eq!(radius(&k5).unwrap(), 1);
        assert_eq!(diameter(&k5).unwrap(), 1);
        let split = FiniteGraph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(diameter(&split), Err(Error::Domain(_))));
    }

    #[test]
    fn disconnect_examples() {
        let x = DigitalImage::interval(0, 2).unwrap();
        assert!(disconnects(&[1.into()], &x).unwrap());
        assert!(!disconnects(&[0.into()], &x).unwrap());
        assert!(disconnects(x.points(), &x).is_err());
    }

    #[test]
    fn lifted_dominating_family() {
        let x = DigitalImage::interval(1, 3).unwrap();
        assert_eq!(lift_dominating(x.points(), &x, 24).unwrap().len(), 7);
        assert_eq!(lift_dominating(&[2.into()], &x, 24).unwrap().len(), 4);
    }
}
