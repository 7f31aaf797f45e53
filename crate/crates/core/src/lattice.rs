//! Digital images: finite point sets in Z^n with a c_u adjacency.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point of Z^n. Points order lexicographically by coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        Point(coords.to_vec())
    }
}

impl From<i64> for Point {
    fn from(x: i64) -> Self {
        Point(vec![x])
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The c_u adjacency selector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Adjacency(usize);

impl Adjacency {
    pub fn c(u: usize) -> Result<Self> {
        if u == 0 {
            return Err(Error::invalid("adjacency parameter u must be at least 1"));
        }
        Ok(Adjacency(u))
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn check_dim(self, dim: usize) -> Result<()> {
        if self.0 > dim {
            return Err(Error::invalid(format!(
                "adjacency c{} is not defined in dimension {dim}",
                self.0
            )));
        }
        Ok(())
    }

    /// Parses the `"c<u>"` notation used in image documents.
    pub fn parse(s: &str) -> Result<Self> {
        s.strip_prefix('c')
            .and_then(|rest| rest.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown adjacency {s:?}, expected c1, c2, ...")))
            .and_then(Adjacency::c)
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// Raw c_u test on coordinate slices of equal length.
pub(crate) fn cu_coords(x: &[i64], y: &[i64], u: usize) -> bool {
    let mut differing = 0;
    for (a, b) in x.iter().zip(y) {
        match (a - b).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= u
}

/// True iff `x != y`, at most `u` coordinates differ by exactly one, and
/// the remaining coordinates agree.
pub fn cu_adjacent(x: &Point, y: &Point, adjacency: Adjacency) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {x} has dimension {}, {y} has dimension {}",
            x.dim(),
            y.dim()
        )));
    }
    adjacency.check_dim(x.dim())?;
    Ok(cu_coords(x.coords(), y.coords(), adjacency.u()))
}

/// The "adjacent or equal" relation.
pub fn adjacent_or_equal(x: &Point, y: &Point, adjacency: Adjacency) -> Result<bool> {
    Ok(x == y || cu_adjacent(x, y, adjacency)?)
}

/// A finite digital image (X, c_u).
///
/// Points are kept sorted and deduplicated, so two images with the same
/// point set and adjacency compare equal. Points are addressed by their
/// index in that order; subsets of images with at most 64 points are
/// encoded as `u64` masks over those indices.
#[derive(Clone, Debug)]
pub struct DigitalImage {
    dim: usize,
    adjacency: Adjacency,
    points: Vec<Point>,
    neighbors: Vec<Vec<usize>>,
    closed_masks: Option<Vec<u64>>,
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.adjacency == other.adjacency && self.points == other.points
    }
}

impl Eq for DigitalImage {}

impl DigitalImage {
    pub fn new(dim: usize, adjacency: Adjacency, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("image dimension must be positive"));
        }
        adjacency.check_dim(dim)?;
        if points.is_empty() {
            return Err(Error::invalid("digital image must have at least one point"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::invalid(format!(
                "point {p} has dimension {}, image has dimension {dim}",
                p.dim()
            )));
        }
        let mut points = points;
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate point {}", w[0])));
        }

        let n = points.len();
        let mut neighbors = vec![Vec::new(); n];
        for i in 0..n {
            // Sorted order bounds the first coordinate, so the scan stops early.
            for j in i + 1..n {
                if points[j].0[0] - points[i].0[0] > 1 {
                    break;
                }
                if cu_coords(&points[i].0, &points[j].0, adjacency.u()) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let closed_masks = (n <= 64).then(|| {
            neighbors
                .iter()
                .enumerate()
                .map(|(i, ns)| ns.iter().fold(1u64 << i, |m, &j| m | (1u64 << j)))
                .collect()
        });

        Ok(DigitalImage {
            dim,
            adjacency,
            points,
            neighbors,
            closed_masks,
        })
    }

    /// Builds an image inferring the dimension from the first point.
    pub fn from_points<P: Into<Point>>(adjacency: Adjacency, points: impl IntoIterator<Item = P>) -> Result<Self> {
        let points: Vec<Point> = points.into_iter().map(Into::into).collect();
        let dim = points
            .first()
            .map(Point::dim)
            .ok_or_else(|| Error::invalid("digital image must have at least one point"))?;
        DigitalImage::new(dim, adjacency, points)
    }

    /// The digital interval `[a, b]_Z` with c_1 adjacency.
    pub fn interval(a: i64, b: i64) -> Result<Self> {
        if a > b {
            return Err(Error::invalid(format!("empty interval [{a},{b}]")));
        }
        DigitalImage::from_points(Adjacency(1), a..=b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjacency(&self) -> Adjacency {
        self.adjacency
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index_of(p).is_some()
    }

    pub(crate) fn require_index(&self, p: &Point) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::invalid(format!("point {p} is not in the image")))
    }

    /// Sorted indices of the points adjacent to point `i`.
    pub fn neighbor_indices(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    pub fn adjacent_or_equal(&self, i: usize, j: usize) -> bool {
        i == j || self.adjacent(i, j)
    }

    /// N(X, x, κ).
    pub fn neighbors(&self, x: &Point) -> Result<Vec<Point>> {
        let i = self.require_index(x)?;
        Ok(self.neighbors[i].iter().map(|&j| self.points[j].clone()).collect())
    }

    /// Closed neighborhood of point `i` as a mask; `None` above 64 points.
    pub fn closed_mask(&self, i: usize) -> Option<u64> {
        self.closed_masks.as_ref().map(|m| m[i])
    }

    pub(crate) fn closed_masks(&self) -> Option<&[u64]> {
        self.closed_masks.as_deref()
    }

    /// Index set of the given points.
    pub fn indices_of(&self, points: &[Point]) -> Result<Vec<usize>> {
        let mut idx = points
            .iter()
            .map(|p| self.require_index(p))
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    pub fn mask_of(&self, points: &[Point]) -> Result<u64> {
        if self.len() > 64 {
            return Err(Error::limit("subset mask over image points", 64));
        }
        Ok(self.indices_of(points)?.iter().fold(0u64, |m, &i| m | (1 << i)))
    }

    pub fn points_of_mask(&self, mask: u64) -> Vec<Point> {
        mask_indices(mask).map(|i| self.points[i].clone()).collect()
    }

    /// Connectivity of a point set, decided by traversal inside the set.
    pub fn is_connected(&self, subset: &[Point]) -> Result<bool> {
        if subset.is_empty() {
            return Err(Error::invalid("connectivity of the empty set is undefined"));
        }
        let idx = self.indices_of(subset)?;
        Ok(self.is_connected_indices(&idx))
    }

    /// Connectivity of a nonempty index set.
    pub fn is_connected_indices(&self, subset: &[usize]) -> bool {
        let Some(&start) = subset.first() else {
            return false;
        };
        let mut inside = vec![false; self.len()];
        for &i in subset {
            inside[i] = true;
        }
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.neighbors[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        subset.iter().all(|&i| seen[i])
    }

    /// Connectivity of a nonempty subset mask (images of at most 64 points).
    pub fn is_connected_mask(&self, mask: u64) -> bool {
        let Some(closed) = self.closed_masks() else {
            let idx: Vec<usize> = mask_indices(mask).collect();
            return self.is_connected_indices(&idx);
        };
        if mask == 0 {
            return false;
        }
        let mut reached = mask & mask.wrapping_neg();
        loop {
            let grown = mask_indices(reached).fold(reached, |acc, i| acc | closed[i]) & mask;
            if grown == reached {
                return reached == mask;
            }
            reached = grown;
        }
    }

    pub fn is_connected_image(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.is_connected_indices(&all)
    }

    /// Connected components as sorted index lists, ordered by smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.len()];
        let mut comps = Vec::new();
        for s in 0..self.len() {
            if label[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            label[s] = id;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.neighbors[v] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The subimage on the given points, with the same adjacency.
    pub fn subimage(&self, points: &[Point]) -> Result<DigitalImage> {
        let idx = self.indices_of(points)?;
        DigitalImage::new(
            self.dim,
            self.adjacency,
            idx.into_iter().map(|i| self.points[i].clone()).collect(),
        )
    }

    /// Breadth-first order of all points, component by component.
    pub(crate) fn traversal_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut seen = vec![false; self.len()];
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }
}

/// Iterates the set bit positions of a mask in increasing order.
pub fn mask_indices(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

/// A κ-path y_0, ..., y_m: consecutive entries adjacent or equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticePath {
    steps: Vec<Point>,
}

impl LatticePath {
    pub fn new(steps: Vec<Point>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::invalid("a path has at least one point"));
        }
        Ok(LatticePath { steps })
    }

    pub fn steps(&self) -> &[Point] {
        &self.steps
    }

    /// Number of steps m.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> &Point {
        &self.steps[0]
    }

    pub fn end(&self) -> &Point {
        &self.steps[self.steps.len() - 1]
    }

    /// True iff every step lies in `image` and consecutive steps are
    /// adjacent or equal there.
    pub fn is_valid_in(&self, image: &DigitalImage) -> bool {
        let Some(idx) = self
            .steps
            .iter()
            .map(|p| image.index_of(p))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        idx.windows(2).all(|w| image.adjacent_or_equal(w[0], w[1]))
    }

    /// The product p1 · p2; the shared endpoint appears once.
    pub fn concatenate(&self, other: &LatticePath) -> Result<LatticePath> {
        if self.end() != other.start() {
            return Err(Error::invalid(format!(
                "cannot concatenate: path ends at {} but the next starts at {}",
                self.end(),
                other.start()
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps[1..]);
        Ok(LatticePath { steps })
    }
}
