//! Hyperspaces (2^X, κ′) and K(X, κ′).
//!
//! Members are nonempty subsets of an image with at most 64 points, encoded
//! as bit masks over the image's point indices. Two members A ≠ B are
//! κ′-adjacent when every point of each lies in the closed neighborhood of
//! the other, so adjacency reduces to two mask coverage tests.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functions::GraphMap;
use crate::graphmetrics::FiniteGraph;
use crate::lattice::{mask_indices, DigitalImage, Point};

pub const DEFAULT_HYPERSPACE_POINTS: usize = 24;

/// A nonempty subset of an image, as a mask over point indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subset(u64);

impl Subset {
    pub fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Subset(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        mask_indices(self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FamilyKind {
    /// 2^X: every nonempty subset.
    Full,
    /// K(X): every connected nonempty subset.
    Connected,
    /// An arbitrary subfamily.
    Custom,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Full => "full",
            FamilyKind::Connected => "connected",
            FamilyKind::Custom => "custom",
        })
    }
}

/// A family of nonempty subsets of a base image. Members are sorted by
/// mask, so family equality is member-list equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    base: Arc<DigitalImage>,
    members: Vec<Subset>,
    kind: FamilyKind,
}

impl SubsetFamily {
    /// A custom family; members are deduplicated and must be nonempty
    /// subsets of the base.
    pub fn custom(base: Arc<DigitalImage>, members: Vec<Subset>) -> Result<Self> {
        check_mask_width(&base)?;
        let universe = full_mask(base.len());
        let mut members = members;
        if let Some(bad) = members.iter().find(|m| m.is_empty() || m.0 & !universe != 0) {
            return Err(Error::invalid(format!(
                "family member {:#b} is empty or not contained in the base image",
                bad.0
            )));
        }
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::invalid("a family needs at least one member"));
        }
        Ok(SubsetFamily {
            base,
            members,
            kind: FamilyKind::Custom,
        })
    }

    /// Builds a family of the given kind over `base`, enumerating it.
    pub fn of_kind(base: &DigitalImage, kind: FamilyKind, max_points: usize) -> Result<Self> {
        match kind {
            FamilyKind::Full => enumerate_all_subsets(base, max_points),
            FamilyKind::Connected => enumerate_connected_subsets(base, max_points),
            FamilyKind::Custom => Err(Error::invalid("a custom family must list its members")),
        }
    }

    pub fn base(&self) -> &DigitalImage {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<DigitalImage> {
        &self.base
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn member(&self, i: usize) -> Subset {
        self.members[i]
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    pub fn points_of(&self, s: Subset) -> Vec<Point> {
        self.base.points_of_mask(s.0)
    }

    /// Subset rendered as a sorted point list, e.g. `{1, 2}`.
    pub fn label(&self, s: Subset) -> String {
        let pts: Vec<String> = s.indices().map(|i| self.base.point(i).to_string()).collect();
        format!("{{{}}}", pts.join(", "))
    }

    /// Sub-family of members accepted by `keep`, tagged custom.
    pub fn filter(&self, keep: impl Fn(Subset) -> bool) -> Result<SubsetFamily> {
        SubsetFamily::custom(
            self.base.clone(),
            self.members.iter().copied().filter(|&s| keep(s)).collect(),
        )
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_mask_width(image: &DigitalImage) -> Result<()> {
    if image.len() > 64 {
        return Err(Error::limit(format!("hyperspace over {} points", image.len()), 64));
    }
    Ok(())
}

fn check_budget(image: &DigitalImage, max_points: usize) -> Result<()> {
    if image.len() > max_points {
        return Err(Error::limit(
            format!("hyperspace enumeration over {} points", image.len()),
            max_points,
        ));
    }
    check_mask_width(image)
}

/// Union of the closed neighborhoods of the points of `a`.
pub(crate) fn coverage(a: u64, closed: &[u64]) -> u64 {
    mask_indices(a).fold(0, |acc, i| acc | closed[i])
}

/// κ′ test on masks, for A ≠ B.
pub(crate) fn hyper_adjacent_masks(a: u64, b: u64, closed: &[u64]) -> bool {
    a != b && b & !coverage(a, closed) == 0 && a & !coverage(b, closed) == 0
}

/// κ′ adjacency of two distinct nonempty point sets of `image`.
pub fn hyper_adjacent(a: &[Point], b: &[Point], image: &DigitalImage) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("hyperspace members are nonempty"));
    }
    let ma = image.mask_of(a)?;
    let mb = image.mask_of(b)?;
    if ma == mb {
        return Err(Error::invalid("κ′ adjacency relates distinct members"));
    }
    let closed = image.closed_masks().expect("mask_of checked the width");
    Ok(hyper_adjacent_masks(ma, mb, closed))
}

/// "Adjacent or equal" in the hyperspace, on masks.
pub(crate) fn hyper_adjacent_or_equal(a: u64, b: u64, closed: &[u64]) -> bool {
    a == b || hyper_adjacent_masks(a, b, closed)
}

/// 2^X: all 2^n − 1 nonempty subsets.
pub fn enumerate_all_subsets(image: &DigitalImage, max_points: usize) -> Result<SubsetFamily> {
    check_budget(image, max_points)?;
    let n = image.len();
    let members = (1..=full_mask(n)).map(Subset).collect();
    Ok(SubsetFamily {
        base: Arc::new(image.clone()),
        members,
        kind: FamilyKind::Full,
    })
}

/// K(X): the connected nonempty subsets, each generated once.
///
/// Sets are grown from their smallest point. At each step a frontier point
/// is either added (its new neighbors join the frontier) or excluded for
/// the rest of that branch, so distinct branches produce distinct sets.
pub fn enumerate_connected_subsets(image: &DigitalImage, max_points: usize) -> Result<SubsetFamily> {
    check_budget(image, max_points)?;
    let n = image.len();
    let closed = image.closed_masks().expect("width checked");
    let open: Vec<u64> = (0..n).map(|i| closed[i] & !(1 << i)).collect();
    let mut members = Vec::new();
    for v in 0..n {
        let below_or_v = full_mask(v + 1);
        grow_connected(&open, 1 << v, open[v] & !below_or_v, below_or_v, &mut members);
    }
    members.sort_unstable();
    Ok(SubsetFamily {
        base: Arc::new(image.clone()),
        members,
        kind: FamilyKind::Connected,
    })
}

fn grow_connected(open: &[u64], set: u64, frontier: u64, excluded: u64, out: &mut Vec<Subset>) {
    out.push(Subset(set));
    let mut frontier = frontier;
    let mut excluded = excluded;
    while frontier != 0 {
        let w = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let grown = set | (1 << w);
        let fresh = open[w] & !grown & !excluded & !frontier;
        grow_connected(open, grown, frontier | fresh, excluded, out);
        excluded |= 1 << w;
    }
}

/// A family together with its κ′ graph. Vertex `i` of the graph is member `i`.
#[derive(Clone, Debug)]
pub struct HypergraphView {
    family: SubsetFamily,
    graph: FiniteGraph,
}

impl HypergraphView {
    pub fn family(&self) -> &SubsetFamily {
        &self.family
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn vertex_of(&self, s: Subset) -> Option<usize> {
        self.family.index_of(s)
    }
}

/// Builds the κ′ graph on a family.
pub fn hyperspace_graph(family: &SubsetFamily) -> HypergraphView {
    let graph = family_graph(family)
        .with_labels(family.members.iter().map(|&s| family.label(s)).collect())
        .expect("one label per member");
    HypergraphView {
        family: family.clone(),
        graph,
    }
}

/// Unlabeled κ′ graph. Neighbors of A are drawn from subsets of its
/// coverage when that is cheaper than scanning the whole family.
pub(crate) fn family_graph(family: &SubsetFamily) -> FiniteGraph {
    let closed = family.base.closed_masks().expect("family bases fit in a mask");
    let m = family.members.len();
    let mut adj = vec![Vec::new(); m];
    for (i, &a) in family.members.iter().enumerate() {
        let cov = coverage(a.0, closed);
        let submasks = cov.count_ones();
        if submasks < 63 && (1u64 << submasks) < m as u64 {
            // All B ⊆ cov(A); then require A ⊆ cov(B).
            let mut b = cov;
            while b != 0 {
                if let Some(j) = family.index_of(Subset(b)) {
                    if j > i && a.0 & !coverage(b, closed) == 0 {
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                }
                b = (b - 1) & cov;
            }
        } else {
            for (j, &b) in family.members.iter().enumerate().skip(i + 1) {
                if b.0 & !cov == 0 && a.0 & !coverage(b.0, closed) == 0 {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    FiniteGraph::from_adjacency(adj)
}

/// ⋃ W for a nonempty collection of members.
pub fn union_of_family(members: &[Subset]) -> Result<Subset> {
    if members.is_empty() {
        return Err(Error::invalid("union of an empty family"));
    }
    Ok(members.iter().fold(Subset(0), |acc, &s| acc.union(s)))
}

/// The isomorphism [m, n]_Z ↦ (m, n) from K([a, b]_Z, c_1′) onto the
/// triangle {(x, y) : a ≤ x ≤ y ≤ b} with c_2 adjacency.
///
/// The domain graph is the labeled κ′ graph of K([a, b]_Z); the codomain is
/// the triangle image's graph.
pub fn interval_triangle_iso(a: i64, b: i64) -> Result<GraphMap> {
    if a > b {
        return Err(Error::invalid(format!("interval [{a},{b}] is empty")));
    }
    let interval = DigitalImage::interval(a, b)?;
    let family = enumerate_connected_subsets(&interval, 64)?;
    let triangle = DigitalImage::from_points(
        crate::lattice::Adjacency::c(2)?,
        (a..=b).flat_map(|x| (x..=b).map(move |y| [x, y])),
    )?;
    let table = family
        .members()
        .iter()
        .map(|&s| {
            let lo = interval.point(s.indices().next().expect("nonempty")).coords()[0];
            let hi = interval.point(s.indices().last().expect("nonempty")).coords()[0];
            triangle
                .index_of(&Point::from([lo, hi]))
                .ok_or_else(|| Error::invalid(format!("({lo},{hi}) missing from the triangle")))
        })
        .collect::<Result<Vec<_>>>()?;
    GraphMap::new(hyperspace_graph(&family).graph, triangle.graph(), table)
}
