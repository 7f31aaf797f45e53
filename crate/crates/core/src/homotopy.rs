//! Function graphs (Y^X, Φ) and (Y^X, Ψ), homotopy decision by component
//! search, and homotopy tables with their lifts to hyperspaces and function
//! graphs.
//!
//! A homotopy in m steps between f and g is the same thing as a Φ-walk of
//! length m from f to g: one step is possible exactly when the two slices
//! agree up to adjacency at every point. Strong homotopies correspond to
//! Ψ-walks in the same way. Deciding (strong) homotopy is therefore a
//! breadth-first search in an explicitly built function graph, and the BFS
//! path doubles as a minimal-length witness table.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functions::{self, FamilyFunction, FiniteFunction, GraphMap};
use crate::graphmetrics::FiniteGraph;
use crate::hyperspace::{self, FamilyKind, Subset, SubsetFamily};
use crate::lattice::{DigitalImage, Point};

pub const DEFAULT_FUNCTION_GRAPH_VERTICES: usize = 1_000_000;

/// Backtracking enumeration of continuous maps X → Y whose value at each
/// point is restricted to an allowed list.
///
/// Points are assigned in breadth-first order, so every point after the
/// first of its component has an assigned neighbor, and candidate values
/// are immediately filtered by the adjacency condition.
pub(crate) struct MapSearch<'a> {
    x: &'a DigitalImage,
    y: &'a DigitalImage,
    allowed: Vec<Vec<usize>>,
    limit: usize,
}

impl<'a> MapSearch<'a> {
    pub(crate) fn new(x: &'a DigitalImage, y: &'a DigitalImage, allowed: Vec<Vec<usize>>, limit: usize) -> Self {
        MapSearch { x, y, allowed, limit }
    }

    /// Calls `visit` on each continuous table (domain point order) until it
    /// returns false. Returns the number of tables visited.
    pub(crate) fn run(self, mut visit: impl FnMut(&[usize]) -> bool) -> Result<usize> {
        let order = self.x.traversal_order();
        let mut position = vec![0; self.x.len()];
        for (k, &p) in order.iter().enumerate() {
            position[p] = k;
        }
        let earlier: Vec<Vec<usize>> = order
            .iter()
            .map(|&p| {
                self.x
                    .neighbor_indices(p)
                    .iter()
                    .copied()
                    .filter(|&q| position[q] < position[p])
                    .collect()
            })
            .collect();
        let mut state = SearchState {
            search: &self,
            order: &order,
            earlier: &earlier,
            table: vec![usize::MAX; self.x.len()],
            count: 0,
            stopped: false,
        };
        state.assign(0, &mut visit)?;
        Ok(state.count)
    }
}

struct SearchState<'s, 'a> {
    search: &'s MapSearch<'a>,
    order: &'s [usize],
    earlier: &'s [Vec<usize>],
    table: Vec<usize>,
    count: usize,
    stopped: bool,
}

impl SearchState<'_, '_> {
    fn assign(&mut self, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> Result<()> {
        if k == self.order.len() {
            self.count += 1;
            if self.count > self.search.limit {
                return Err(Error::limit("continuous-map enumeration", self.search.limit));
            }
            if !visit(&self.table) {
                self.stopped = true;
            }
            return Ok(());
        }
        let p = self.order[k];
        for &v in &self.search.allowed[p] {
            if self.earlier[k]
                .iter()
                .all(|&q| self.search.y.adjacent_or_equal(v, self.table[q]))
            {
                self.table[p] = v;
                self.assign(k + 1, visit)?;
                if self.stopped {
                    return Ok(());
                }
            }
        }
        self.table[p] = usize::MAX;
        Ok(())
    }
}

fn all_values(x: &DigitalImage, y: &DigitalImage) -> Vec<Vec<usize>> {
    vec![(0..y.len()).collect(); x.len()]
}

fn closed_neighborhood(y: &DigitalImage, v: usize) -> Vec<usize> {
    let mut out = y.neighbor_indices(v).to_vec();
    let pos = out.partition_point(|&w| w < v);
    out.insert(pos, v);
    out
}

/// Every continuous map X → Y, each once, in lexicographic table order.
pub fn enumerate_continuous_maps(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    max_functions: usize,
) -> Result<Vec<FiniteFunction>> {
    let mut tables = Vec::new();
    MapSearch::new(x, y, all_values(x, y), max_functions).run(|t| {
        tables.push(t.to_vec());
        true
    })?;
    tables.sort();
    Ok(tables
        .into_iter()
        .map(|t| FiniteFunction::new(x.clone(), y.clone(), t).expect("valid table"))
        .collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    /// f(x) ↔= g(x) for every x.
    Phi,
    /// f(x0) ↔= g(x1) for every x0 ↔= x1.
    Psi,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Phi => "phi",
            Flavor::Psi => "psi",
        })
    }
}

/// A point x with f(x) and g(x) neither adjacent nor equal.
pub fn phi_violation(f: &FiniteFunction, g: &FiniteFunction) -> Result<Option<Point>> {
    f.same_spaces(g)?;
    let y = f.codomain();
    Ok((0..f.domain().len())
        .find(|&i| !y.adjacent_or_equal(f.table()[i], g.table()[i]))
        .map(|i| f.domain().point(i).clone()))
}

/// A pair x0 ↔= x1 with f(x0) and g(x1) neither adjacent nor equal.
pub fn psi_violation(f: &FiniteFunction, g: &FiniteFunction) -> Result<Option<(Point, Point)>> {
    f.same_spaces(g)?;
    let (x, y) = (f.domain(), f.codomain());
    for i in 0..x.len() {
        for j in closed_neighborhood(x, i) {
            if !y.adjacent_or_equal(f.table()[i], g.table()[j]) {
                return Ok(Some((x.point(i).clone(), x.point(j).clone())));
            }
        }
    }
    Ok(None)
}

/// Φ adjacency: distinct maps agreeing up to adjacency at every point.
pub fn phi_adjacent(f: &FiniteFunction, g: &FiniteFunction) -> Result<bool> {
    Ok(phi_violation(f, g)?.is_none() && f != g)
}

/// Ψ adjacency: distinct maps with f(x0) ↔= g(x1) whenever x0 ↔= x1.
pub fn psi_adjacent(f: &FiniteFunction, g: &FiniteFunction) -> Result<bool> {
    Ok(psi_violation(f, g)?.is_none() && f != g)
}

/// The graph of continuous maps X → Y under Φ or Ψ adjacency.
///
/// Vertices are the continuous maps in lexicographic table order.
#[derive(Clone, Debug)]
pub struct FunctionGraph {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    flavor: Flavor,
    tables: Vec<u32>,
    graph: FiniteGraph,
}

impl FunctionGraph {
    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.graph.n()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.n() == 0
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    fn width(&self) -> usize {
        self.domain.len()
    }

    fn raw(&self, i: usize) -> &[u32] {
        &self.tables[i * self.width()..(i + 1) * self.width()]
    }

    pub fn table(&self, i: usize) -> Vec<usize> {
        self.raw(i).iter().map(|&v| v as usize).collect()
    }

    pub fn function(&self, i: usize) -> FiniteFunction {
        FiniteFunction::new(self.domain.clone(), self.codomain.clone(), self.table(i)).expect("stored tables are valid")
    }

    pub fn index_of_table(&self, table: &[usize]) -> Option<usize> {
        if table.len() != self.width() {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match cmp_table(self.raw(mid), table) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn index_of(&self, f: &FiniteFunction) -> Option<usize> {
        if f.domain() != &*self.domain || f.codomain() != &*self.codomain {
            return None;
        }
        self.index_of_table(f.table())
    }

    /// Vertex label listing the table, e.g. `0->1; 1->2`.
    pub fn label(&self, i: usize) -> String {
        self.raw(i)
            .iter()
            .enumerate()
            .map(|(x, &v)| format!("{}->{}", self.domain.point(x), self.codomain.point(v as usize)))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// The graph with function-table labels attached.
    pub fn labeled_graph(&self) -> FiniteGraph {
        self.graph
            .clone()
            .with_labels((0..self.len()).map(|i| self.label(i)).collect())
            .expect("one label per vertex")
    }
}

fn cmp_table(stored: &[u32], table: &[usize]) -> Ordering {
    stored
        .iter()
        .map(|&v| v as usize)
        .cmp(table.iter().copied())
}

/// Builds (Y^X, Φ) or (Y^X, Ψ).
///
/// Neighbors of f are generated rather than tested pairwise: Φ-neighbors
/// take g(x) in the closed neighborhood of f(x), and Ψ-neighbors take g(x1)
/// in the intersection of the closed neighborhoods of f(x0) over x0 ↔= x1.
pub fn build_function_graph(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    flavor: Flavor,
    max_vertices: usize,
) -> Result<FunctionGraph> {
    let maps = enumerate_continuous_maps(x, y, max_vertices)?;
    let width = x.len();
    let mut tables = Vec::with_capacity(maps.len() * width);
    for f in &maps {
        tables.extend(f.table().iter().map(|&v| v as u32));
    }
    let mut fg = FunctionGraph {
        domain: x.clone(),
        codomain: y.clone(),
        flavor,
        tables,
        graph: FiniteGraph::from_adjacency(vec![Vec::new(); maps.len()]),
    };

    let closed: Vec<Vec<usize>> = (0..y.len()).map(|v| closed_neighborhood(y, v)).collect();
    let mut adj = vec![Vec::new(); maps.len()];
    for i in 0..maps.len() {
        let f = fg.table(i);
        let allowed: Vec<Vec<usize>> = match flavor {
            Flavor::Phi => f.iter().map(|&v| closed[v].clone()).collect(),
            Flavor::Psi => (0..width)
                .map(|x1| {
                    let mut cand = closed[f[x1]].clone();
                    for &x0 in x.neighbor_indices(x1) {
                        cand.retain(|v| closed[f[x0]].binary_search(v).is_ok());
                    }
                    cand
                })
                .collect(),
        };
        MapSearch::new(x, y, allowed, max_vertices).run(|g| {
            let j = fg.index_of_table(g).expect("continuous neighbor is a vertex");
            if j > i {
                adj[i].push(j);
                adj[j].push(i);
            }
            true
        })?;
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    fg.graph = FiniteGraph::from_adjacency(adj);
    Ok(fg)
}

/// Outcome of a homotopy decision. `path` runs from f to g with each
/// consecutive pair adjacent in the function graph; a single-entry path
/// means f = g.
#[derive(Clone, Debug)]
pub struct HomotopyDecision {
    pub homotopic: bool,
    pub path: Option<Vec<FiniteFunction>>,
}

impl HomotopyDecision {
    /// The witness as a homotopy table with m = path length.
    pub fn table(&self) -> Option<HomotopyTable> {
        self.path.as_ref().map(|p| HomotopyTable::from_path(p).expect("witness path is consistent"))
    }
}

fn require_continuous(f: &FiniteFunction) -> Result<()> {
    if let Some((a, b)) = functions::continuity_violation(f) {
        return Err(Error::invalid(format!(
            "map is not continuous: {a} and {b} are adjacent but their images are not"
        )));
    }
    Ok(())
}

fn decide(
    f: &FiniteFunction,
    g: &FiniteFunction,
    flavor: Flavor,
    basepoint: Option<&Point>,
    max_vertices: usize,
) -> Result<HomotopyDecision> {
    f.same_spaces(g)?;
    require_continuous(f)?;
    require_continuous(g)?;
    let base = basepoint.map(|p| f.domain().require_index(p)).transpose()?;
    if let Some(b) = base {
        if f.table()[b] != g.table()[b] {
            return Ok(HomotopyDecision {
                homotopic: false,
                path: None,
            });
        }
    }
    if f == g {
        return Ok(HomotopyDecision {
            homotopic: true,
            path: Some(vec![f.clone()]),
        });
    }
    let fg = build_function_graph(f.domain_arc(), f.codomain_arc(), flavor, max_vertices)?;
    let s = fg.index_of(f).expect("continuous map is a vertex");
    let t = fg.index_of(g).expect("continuous map is a vertex");
    let fixed = base.map(|b| f.table()[b] as u32);
    let width = fg.width();
    let path = fg.graph().shortest_path_within(s, t, |v| match (base, fixed) {
        (Some(b), Some(y0)) => fg.tables[v * width + b] == y0,
        _ => true,
    });
    Ok(HomotopyDecision {
        homotopic: path.is_some(),
        path: path.map(|p| p.into_iter().map(|v| fg.function(v)).collect()),
    })
}

/// f and g are homotopic iff they share a component of (Y^X, Φ).
pub fn homotopic(f: &FiniteFunction, g: &FiniteFunction, max_vertices: usize) -> Result<HomotopyDecision> {
    decide(f, g, Flavor::Phi, None, max_vertices)
}

/// Strong homotopy, decided in (Y^X, Ψ).
pub fn strongly_homotopic(f: &FiniteFunction, g: &FiniteFunction, max_vertices: usize) -> Result<HomotopyDecision> {
    decide(f, g, Flavor::Psi, None, max_vertices)
}

/// Pointed (strong) homotopy holding `basepoint` fixed: component search
/// among maps that agree with f at the basepoint.
pub fn pointed_homotopic(
    f: &FiniteFunction,
    g: &FiniteFunction,
    basepoint: &Point,
    flavor: Flavor,
    max_vertices: usize,
) -> Result<HomotopyDecision> {
    decide(f, g, flavor, Some(basepoint), max_vertices)
}

/// H: X × [0, m] → Y, stored as m + 1 slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyTable {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    slices: Vec<Vec<usize>>,
}

impl HomotopyTable {
    pub fn new(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, slices: Vec<Vec<usize>>) -> Result<Self> {
        if slices.is_empty() {
            return Err(Error::invalid("a homotopy has at least one time slice"));
        }
        for s in &slices {
            FiniteFunction::new(domain.clone(), codomain.clone(), s.clone())?;
        }
        Ok(HomotopyTable {
            domain,
            codomain,
            slices,
        })
    }

    /// Slices h_0, ..., h_k as a k-step table.
    pub fn from_path(path: &[FiniteFunction]) -> Result<Self> {
        let first = path.first().ok_or_else(|| Error::invalid("empty homotopy path"))?;
        for h in path {
            first.same_spaces(h)?;
        }
        Ok(HomotopyTable {
            domain: first.domain_arc().clone(),
            codomain: first.codomain_arc().clone(),
            slices: path.iter().map(|h| h.table().to_vec()).collect(),
        })
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    /// Number of time steps.
    pub fn m(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slices(&self) -> &[Vec<usize>] {
        &self.slices
    }

    pub fn slice(&self, t: usize) -> FiniteFunction {
        FiniteFunction::new(self.domain.clone(), self.codomain.clone(), self.slices[t].clone())
            .expect("slices validated at construction")
    }

    pub fn value(&self, x: &Point, t: usize) -> Result<&Point> {
        let i = self.domain.require_index(x)?;
        let row = self
            .slices
            .get(t)
            .ok_or_else(|| Error::invalid(format!("time {t} exceeds m = {}", self.m())))?;
        Ok(self.codomain.point(row[i]))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HomotopyMode {
    Plain,
    Strong,
}

/// Checks a homotopy table over arbitrary graphs: endpoints, slice
/// continuity, track continuity, and in strong mode the cross-step
/// condition H(x, t) ↔= H(y, t + 1) for adjacent x, y. A fixed vertex must
/// keep its value across all slices.
pub(crate) fn verify_graph_homotopy(
    domain: &FiniteGraph,
    codomain: &FiniteGraph,
    slices: &[Vec<usize>],
    start: &[usize],
    end: &[usize],
    mode: HomotopyMode,
    fixed: Option<usize>,
) -> bool {
    let (Some(first), Some(last)) = (slices.first(), slices.last()) else {
        return false;
    };
    if first.as_slice() != start || last.as_slice() != end {
        return false;
    }
    if slices.iter().any(|s| s.len() != domain.n() || s.iter().any(|&v| v >= codomain.n())) {
        return false;
    }
    let ok = |a: usize, b: usize| codomain.adjacent_or_equal(a, b);
    let slices_continuous = slices
        .iter()
        .all(|s| domain.edges().all(|(u, v)| ok(s[u], s[v])));
    let tracks_continuous = slices
        .windows(2)
        .all(|w| (0..domain.n()).all(|x| ok(w[0][x], w[1][x])));
    if !slices_continuous || !tracks_continuous {
        return false;
    }
    if mode == HomotopyMode::Strong {
        let cross = slices.windows(2).all(|w| {
            domain
                .edges()
                .all(|(u, v)| ok(w[0][u], w[1][v]) && ok(w[1][u], w[0][v]))
        });
        if !cross {
            return false;
        }
    }
    match fixed {
        Some(x0) if x0 >= domain.n() => false,
        Some(x0) => slices.iter().all(|s| s[x0] == first[x0]),
        None => true,
    }
}

/// Validates H as a (strong) (pointed) homotopy from f to g.
pub fn verify_homotopy(
    h: &HomotopyTable,
    f: &FiniteFunction,
    g: &FiniteFunction,
    mode: HomotopyMode,
    fixed_point: Option<&Point>,
) -> bool {
    let same = |k: &FiniteFunction| k.domain() == &*h.domain && k.codomain() == &*h.codomain;
    if !same(f) || !same(g) {
        return false;
    }
    let fixed = match fixed_point {
        Some(p) => match h.domain.index_of(p) {
            Some(i) => Some(i),
            None => return false,
        },
        None => None,
    };
    verify_graph_homotopy(
        &h.domain.graph(),
        &h.codomain.graph(),
        &h.slices,
        f.table(),
        g.table(),
        mode,
        fixed,
    )
}

/// A homotopy between family maps: m + 1 slices of member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyHomotopyTable {
    domain: SubsetFamily,
    codomain: SubsetFamily,
    slices: Vec<Vec<usize>>,
}

impl FamilyHomotopyTable {
    pub fn domain(&self) -> &SubsetFamily {
        &self.domain
    }

    pub fn codomain(&self) -> &SubsetFamily {
        &self.codomain
    }

    pub fn m(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, t: usize) -> FamilyFunction {
        FamilyFunction::new(self.domain.clone(), self.codomain.clone(), self.slices[t].clone())
            .expect("slices validated at construction")
    }

    pub fn value(&self, a: Subset, t: usize) -> Option<Subset> {
        let i = self.domain.index_of(a)?;
        self.slices.get(t).map(|s| self.codomain.member(s[i]))
    }

    /// Validates the table as a (strong) (pointed) homotopy between two
    /// family maps on the κ′ graphs.
    pub fn verify(
        &self,
        start: &FamilyFunction,
        end: &FamilyFunction,
        mode: HomotopyMode,
        fixed: Option<Subset>,
    ) -> bool {
        let same = |k: &FamilyFunction| k.domain() == &self.domain && k.codomain() == &self.codomain;
        if !same(start) || !same(end) {
            return false;
        }
        let fixed = match fixed {
            Some(a) => match self.domain.index_of(a) {
                Some(i) => Some(i),
                None => return false,
            },
            None => None,
        };
        verify_graph_homotopy(
            &hyperspace::family_graph(&self.domain),
            &hyperspace::family_graph(&self.codomain),
            &self.slices,
            start.table(),
            end.table(),
            mode,
            fixed,
        )
    }
}

/// H_*(A, t) = H_t(A) on the families of the given kind over H's domain and
/// codomain.
pub fn lift_homotopy_to_hyperspace(
    h: &HomotopyTable,
    kind: FamilyKind,
    max_points: usize,
) -> Result<FamilyHomotopyTable> {
    let domain = SubsetFamily::of_kind(&h.domain, kind, max_points)?;
    let codomain = SubsetFamily::of_kind(&h.codomain, kind, max_points)?;
    let slices = (0..=h.m())
        .map(|t| functions::induced_map_into(&h.slice(t), &domain, &codomain).map(|m| m.table().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyHomotopyTable {
        domain,
        codomain,
        slices,
    })
}

/// A contraction of X: a (strong) (pointed) homotopy from the identity to
/// a constant, or `None` when X is not contractible in that sense.
pub fn contraction(
    x: &Arc<DigitalImage>,
    flavor: Flavor,
    basepoint: Option<&Point>,
    max_vertices: usize,
) -> Result<Option<HomotopyTable>> {
    let fg = build_function_graph(x, x, flavor, max_vertices)?;
    let id = fg
        .index_of(&FiniteFunction::identity(x.clone()))
        .expect("identity is continuous");
    let width = fg.width();
    let base = basepoint.map(|p| x.require_index(p)).transpose()?;
    let accept = |v: usize| base.is_none_or(|b| fg.tables[v * width + b] as usize == b);
    let is_target = |v: usize| {
        let t = fg.raw(v);
        let constant = t.iter().all(|&c| c == t[0]);
        constant && base.is_none_or(|b| t[0] as usize == b)
    };

    let mut parent = vec![usize::MAX; fg.len()];
    parent[id] = id;
    let mut queue = VecDeque::from([id]);
    let mut hit = None;
    while let Some(v) = queue.pop_front() {
        if is_target(v) {
            hit = Some(v);
            break;
        }
        for &w in fg.graph().neighbors(v) {
            if parent[w] == usize::MAX && accept(w) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let Some(mut v) = hit else {
        return Ok(None);
    };
    let mut path = vec![fg.function(v)];
    while v != id {
        v = parent[v];
        path.push(fg.function(v));
    }
    path.reverse();
    Ok(Some(HomotopyTable::from_path(&path)?))
}

/// Identity and some constant share a Φ-component of X^X.
pub fn is_contractible(x: &Arc<DigitalImage>, max_vertices: usize) -> Result<bool> {
    Ok(contraction(x, Flavor::Phi, None, max_vertices)?.is_some())
}

/// F ↦ f ∘ F from (X^W, Φ) to (Y^W, Φ).
#[derive(Clone, Debug)]
pub struct PostcomposeMap {
    source: FunctionGraph,
    target: FunctionGraph,
    table: Vec<usize>,
}

impl PostcomposeMap {
    pub fn source(&self) -> &FunctionGraph {
        &self.source
    }

    pub fn target(&self) -> &FunctionGraph {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, map: &FiniteFunction) -> Option<FiniteFunction> {
        self.source
            .index_of(map)
            .map(|i| self.target.function(self.table[i]))
    }

    pub fn graph_map(&self) -> GraphMap {
        GraphMap::new(self.source.graph.clone(), self.target.graph.clone(), self.table.clone())
            .expect("table indexes the target graph")
    }
}

fn postcompose_into(f: &FiniteFunction, source: FunctionGraph, target: FunctionGraph) -> PostcomposeMap {
    let table = (0..source.len())
        .map(|i| {
            let composed: Vec<usize> = source.raw(i).iter().map(|&v| f.table()[v as usize]).collect();
            target.index_of_table(&composed).expect("composite of continuous maps is continuous")
        })
        .collect();
    PostcomposeMap { source, target, table }
}

/// The post-composition map induced by a continuous f: X → Y on maps out of W.
pub fn postcompose_map(f: &FiniteFunction, w: &Arc<DigitalImage>, max_vertices: usize) -> Result<PostcomposeMap> {
    require_continuous(f)?;
    let source = build_function_graph(w, f.domain_arc(), Flavor::Phi, max_vertices)?;
    let target = build_function_graph(w, f.codomain_arc(), Flavor::Phi, max_vertices)?;
    Ok(postcompose_into(f, source, target))
}

/// H_*(F, t) = H_t ∘ F: a homotopy X × [0, m] → Y lifted to a homotopy
/// between the post-composition maps on (X^W, Φ) → (Y^W, Φ).
#[derive(Clone, Debug)]
pub struct FunctionGraphHomotopy {
    start: PostcomposeMap,
    end: PostcomposeMap,
    slices: Vec<Vec<usize>>,
}

impl FunctionGraphHomotopy {
    pub fn start(&self) -> &PostcomposeMap {
        &self.start
    }

    pub fn end(&self) -> &PostcomposeMap {
        &self.end
    }

    pub fn m(&self) -> usize {
        self.slices.len() - 1
    }

    /// Validates the lifted table between the induced endpoint maps on the
    /// function graphs.
    pub fn verify(&self, mode: HomotopyMode, fixed: Option<&FiniteFunction>) -> bool {
        let fixed = match fixed {
            Some(k) => match self.start.source.index_of(k) {
                Some(i) => Some(i),
                None => return false,
            },
            None => None,
        };
        verify_graph_homotopy(
            self.start.source.graph(),
            self.start.target.graph(),
            &self.slices,
            &self.start.table,
            &self.end.table,
            mode,
            fixed,
        )
    }
}

pub fn lift_homotopy_to_function_graph(
    h: &HomotopyTable,
    w: &Arc<DigitalImage>,
    max_vertices: usize,
) -> Result<FunctionGraphHomotopy> {
    for t in 0..=h.m() {
        require_continuous(&h.slice(t))?;
    }
    let source = build_function_graph(w, &h.domain, Flavor::Phi, max_vertices)?;
    let target = build_function_graph(w, &h.codomain, Flavor::Phi, max_vertices)?;
    let slices: Vec<Vec<usize>> = (0..=h.m())
        .map(|t| postcompose_into(&h.slice(t), source.clone(), target.clone()).table)
        .collect();
    let start = postcompose_into(&h.slice(0), source.clone(), target.clone());
    let end = postcompose_into(&h.slice(h.m()), source, target);
    Ok(FunctionGraphHomotopy { start, end, slices })
}

/// Explicit homotopy-equivalence data between X and Y: maps f, g and
/// homotopies from g ∘ f to id_X and from f ∘ g to id_Y.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub f: FiniteFunction,
    pub g: FiniteFunction,
    pub gf_to_id: HomotopyTable,
    pub fg_to_id: HomotopyTable,
}

impl HomotopyEquivalence {
    /// Finds the two homotopies for given f: X → Y and g: Y → X, if they exist.
    pub fn certify(f: &FiniteFunction, g: &FiniteFunction, max_vertices: usize) -> Result<Option<Self>> {
        let gf = f.then(g)?;
        let fg = g.then(f)?;
        let id_x = FiniteFunction::identity(f.domain_arc().clone());
        let id_y = FiniteFunction::identity(g.domain_arc().clone());
        let a = homotopic(&gf, &id_x, max_vertices)?;
        let b = homotopic(&fg, &id_y, max_vertices)?;
        Ok(match (a.table(), b.table()) {
            (Some(gf_to_id), Some(fg_to_id)) => Some(HomotopyEquivalence {
                f: f.clone(),
                g: g.clone(),
                gf_to_id,
                fg_to_id,
            }),
            _ => None,
        })
    }

    pub fn verify(&self) -> bool {
        let (Ok(gf), Ok(fg)) = (self.f.then(&self.g), self.g.then(&self.f)) else {
            return false;
        };
        let id_x = FiniteFunction::identity(self.f.domain_arc().clone());
        let id_y = FiniteFunction::identity(self.g.domain_arc().clone());
        functions::is_continuous(&self.f)
            && functions::is_continuous(&self.g)
            && verify_homotopy(&self.gf_to_id, &gf, &id_x, HomotopyMode::Plain, None)
            && verify_homotopy(&self.fg_to_id, &fg, &id_y, HomotopyMode::Plain, None)
    }

    /// The induced data on the hyperspaces of the given kind.
    pub fn lift(&self, kind: FamilyKind, max_points: usize) -> Result<FamilyHomotopyEquivalence> {
        let fam_x = SubsetFamily::of_kind(self.f.domain(), kind, max_points)?;
        let fam_y = SubsetFamily::of_kind(self.g.domain(), kind, max_points)?;
        Ok(FamilyHomotopyEquivalence {
            f: functions::induced_map_into(&self.f, &fam_x, &fam_y)?,
            g: functions::induced_map_into(&self.g, &fam_y, &fam_x)?,
            gf_to_id: lift_homotopy_to_hyperspace(&self.gf_to_id, kind, max_points)?,
            fg_to_id: lift_homotopy_to_hyperspace(&self.fg_to_id, kind, max_points)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct FamilyHomotopyEquivalence {
    pub f: FamilyFunction,
    pub g: FamilyFunction,
    pub gf_to_id: FamilyHomotopyTable,
    pub fg_to_id: FamilyHomotopyTable,
}

impl FamilyHomotopyEquivalence {
    /// Checks both family maps are continuous and both lifted tables are
    /// homotopies from the composites to the identities.
    pub fn verify(&self) -> bool {
        let (Ok(gf), Ok(fg)) = (self.f.then(&self.g), self.g.then(&self.f)) else {
            return false;
        };
        let id_x = FamilyFunction::identity(self.f.domain().clone());
        let id_y = FamilyFunction::identity(self.g.domain().clone());
        functions::is_family_continuous(&self.f)
            && functions::is_family_continuous(&self.g)
            && self.gf_to_id.verify(&gf, &id_x, HomotopyMode::Plain, None)
            && self.fg_to_id.verify(&fg, &id_y, HomotopyMode::Plain, None)
    }
}
