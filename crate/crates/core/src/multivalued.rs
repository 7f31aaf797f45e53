//! Multivalued functions between digital images: weak and strong
//! continuity, connectivity preservation, and continuity in the sense of
//! being generated by a continuous map on a subdivision.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functions::{self, FamilyFunction, FiniteFunction};
use crate::hyperspace::{self, FamilyKind, Subset, SubsetFamily};
use crate::lattice::{DigitalImage, Point};

pub const DEFAULT_SUBDIVISION_POINTS: usize = 4096;
pub const DEFAULT_EGS_NODES: u64 = 10_000_000;

/// F: X ⊸ Y with every value set nonempty. Value sets are sorted codomain
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFunction {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    values: Vec<Vec<usize>>,
}

impl MultiFunction {
    pub fn new(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, values: Vec<Vec<usize>>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::invalid(format!(
                "multifunction table has {} entries for {} domain points",
                values.len(),
                domain.len()
            )));
        }
        let mut values = values;
        for (i, set) in values.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::invalid(format!("value set of {} is empty", domain.point(i))));
            }
            if set.last().is_some_and(|&v| v >= codomain.len()) {
                return Err(Error::invalid(format!(
                    "value set of {} leaves the codomain",
                    domain.point(i)
                )));
            }
        }
        Ok(MultiFunction {
            domain,
            codomain,
            values,
        })
    }

    /// Builds F from (x, F(x)) pairs; every domain point must appear once.
    pub fn from_pairs(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        pairs: &[(Point, Vec<Point>)],
    ) -> Result<Self> {
        let mut values: Vec<Option<Vec<usize>>> = vec![None; domain.len()];
        for (x, ys) in pairs {
            let i = domain.require_index(x)?;
            if values[i].is_some() {
                return Err(Error::invalid(format!("point {x} is assigned twice")));
            }
            values[i] = Some(codomain.indices_of(ys)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::invalid(format!("point {} has no value set", domain.point(i)))))
            .collect::<Result<Vec<_>>>()?;
        MultiFunction::new(domain, codomain, values)
    }

    /// x ↦ {f(x)}.
    pub fn from_function(f: &FiniteFunction) -> Self {
        MultiFunction {
            domain: f.domain_arc().clone(),
            codomain: f.codomain_arc().clone(),
            values: f.table().iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn domain(&self) -> &DigitalImage {
        &self.domain
    }

    pub fn codomain(&self) -> &DigitalImage {
        &self.codomain
    }

    pub fn domain_arc(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain_arc(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    /// Value sets by domain index.
    pub fn values(&self) -> &[Vec<usize>] {
        &self.values
    }

    pub fn value(&self, x: &Point) -> Result<Vec<Point>> {
        let i = self.domain.require_index(x)?;
        Ok(self.values[i].iter().map(|&v| self.codomain.point(v).clone()).collect())
    }

    pub fn pairs(&self) -> Vec<(Point, Vec<Point>)> {
        (0..self.domain.len())
            .map(|i| {
                let ys = self.values[i].iter().map(|&v| self.codomain.point(v).clone()).collect();
                (self.domain.point(i).clone(), ys)
            })
            .collect()
    }

    /// F(A) as sorted codomain indices.
    pub fn image_of(&self, a: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut out: Vec<usize> = a.into_iter().flat_map(|i| self.values[i].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Adjacent x, y whose value sets have no adjacent-or-equal pair.
pub fn weak_continuity_violation(f: &MultiFunction) -> Option<(Point, Point)> {
    let (x, y) = (&f.domain, &f.codomain);
    for i in 0..x.len() {
        for &j in x.neighbor_indices(i).iter().filter(|&&j| j > i) {
            let linked = f.values[i]
                .iter()
                .any(|&a| f.values[j].iter().any(|&b| y.adjacent_or_equal(a, b)));
            if !linked {
                return Some((x.point(i).clone(), x.point(j).clone()));
            }
        }
    }
    None
}

pub fn has_weak_continuity(f: &MultiFunction) -> bool {
    weak_continuity_violation(f).is_none()
}

/// Adjacent x, y and a point of F(x) with no adjacent-or-equal partner in
/// F(y).
pub fn strong_continuity_violation(f: &MultiFunction) -> Option<(Point, Point, Point)> {
    let (x, y) = (&f.domain, &f.codomain);
    for i in 0..x.len() {
        for &j in x.neighbor_indices(i) {
            if let Some(&orphan) = f.values[i]
                .iter()
                .find(|&&a| !f.values[j].iter().any(|&b| y.adjacent_or_equal(a, b)))
            {
                return Some((x.point(i).clone(), x.point(j).clone(), y.point(orphan).clone()));
            }
        }
    }
    None
}

pub fn has_strong_continuity(f: &MultiFunction) -> bool {
    strong_continuity_violation(f).is_none()
}

/// A connected A ⊆ X with F(A) disconnected, if any.
pub fn connectivity_violation(f: &MultiFunction, max_points: usize) -> Result<Option<Vec<Point>>> {
    let family = hyperspace::enumerate_connected_subsets(&f.domain, max_points)?;
    Ok(family
        .members()
        .iter()
        .find(|a| !f.codomain.is_connected_indices(&f.image_of(a.indices())))
        .map(|&a| family.points_of(a)))
}

pub fn is_connectivity_preserving(f: &MultiFunction, max_points: usize) -> Result<bool> {
    Ok(connectivity_violation(f, max_points)?.is_none())
}

/// S(X, r) with coordinates scaled by r: the points r·x + k for x in X and
/// k in [0, r − 1]^n, under the adjacency of X.
#[derive(Clone, Debug)]
pub struct Subdivision {
    base: Arc<DigitalImage>,
    r: usize,
    image: Arc<DigitalImage>,
    cell: Vec<usize>,
}

impl Subdivision {
    pub fn new(base: &Arc<DigitalImage>, r: usize, max_points: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("subdivision factor must be positive"));
        }
        let n = base.dim();
        let size = u32::try_from(n)
            .ok()
            .and_then(|n| r.checked_pow(n))
            .and_then(|c| c.checked_mul(base.len()))
            .filter(|&s| s <= max_points)
            .ok_or_else(|| Error::limit(format!("subdivision S(X,{r})"), max_points))?;
        let ri = r as i64;
        let mut points = Vec::with_capacity(size);
        for p in base.points() {
            let mut offset = vec![0i64; n];
            loop {
                points.push(Point::new(
                    p.coords().iter().zip(&offset).map(|(&c, &k)| ri * c + k).collect(),
                ));
                let Some(pos) = offset.iter().position(|&k| k + 1 < ri) else {
                    break;
                };
                offset[pos] += 1;
                offset[..pos].iter_mut().for_each(|k| *k = 0);
            }
        }
        let image = DigitalImage::new(n, base.adjacency(), points)?;
        let cell = image
            .points()
            .iter()
            .map(|q| {
                let home = Point::new(q.coords().iter().map(|&c| c.div_euclid(ri)).collect());
                base.index_of(&home).expect("every subdivision point lies over a base point")
            })
            .collect();
        Ok(Subdivision {
            base: base.clone(),
            r,
            image: Arc::new(image),
            cell,
        })
    }

    pub fn base(&self) -> &Arc<DigitalImage> {
        &self.base
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    /// Base index of the cell containing subdivision point `i`.
    pub fn cell_of(&self, i: usize) -> usize {
        self.cell[i]
    }

    /// Subdivision indices of S({x}, r) for base index x.
    pub fn cell_members(&self, x: usize) -> Vec<usize> {
        (0..self.cell.len()).filter(|&i| self.cell[i] == x).collect()
    }
}

/// A generator f: S(X, r) → Y with F(x) = f(S({x}, r)) for every x.
#[derive(Clone, Debug)]
pub struct EgsWitness {
    pub r: usize,
    pub generator: FiniteFunction,
}

#[derive(Clone, Copy, Debug)]
pub struct EgsBudget {
    pub max_points: usize,
    pub max_nodes: u64,
}

impl Default for EgsBudget {
    fn default() -> Self {
        EgsBudget {
            max_points: DEFAULT_SUBDIVISION_POINTS,
            max_nodes: DEFAULT_EGS_NODES,
        }
    }
}

/// Searches r = 1..=r_max for a generator; `None` means F is not generated
/// for any r up to r_max.
pub fn is_egs_continuous(f: &MultiFunction, r_max: usize, budget: EgsBudget) -> Result<Option<EgsWitness>> {
    if r_max == 0 {
        return Err(Error::invalid("r_max must be positive"));
    }
    // A cell is connected, so its image under a continuous generator is too.
    if f.values.iter().any(|set| !f.codomain.is_connected_indices(set)) {
        return Ok(None);
    }
    let widest = f.values.iter().map(Vec::len).max().unwrap_or(1);
    let mut nodes = 0u64;
    for r in 1..=r_max {
        let cell_size = u32::try_from(f.domain.dim())
            .ok()
            .and_then(|n| r.checked_pow(n))
            .unwrap_or(usize::MAX);
        if cell_size < widest {
            continue;
        }
        let sub = Subdivision::new(&f.domain, r, budget.max_points)?;
        if let Some(table) = GeneratorSearch::new(f, &sub, budget.max_nodes, &mut nodes).run()? {
            let generator = FiniteFunction::new(sub.image.clone(), f.codomain.clone(), table)?;
            return Ok(Some(EgsWitness { r, generator }));
        }
    }
    Ok(None)
}

struct GeneratorSearch<'a> {
    f: &'a MultiFunction,
    sub: &'a Subdivision,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    table: Vec<usize>,
    remaining: Vec<usize>,
    uncovered: Vec<usize>,
    hits: Vec<Vec<u32>>,
    nodes: &'a mut u64,
    max_nodes: u64,
}

impl<'a> GeneratorSearch<'a> {
    fn new(f: &'a MultiFunction, sub: &'a Subdivision, max_nodes: u64, nodes: &'a mut u64) -> Self {
        let img = &sub.image;
        let order = img.traversal_order();
        let mut position = vec![0; img.len()];
        for (k, &p) in order.iter().enumerate() {
            position[p] = k;
        }
        let earlier = order
            .iter()
            .map(|&p| {
                img.neighbor_indices(p)
                    .iter()
                    .copied()
                    .filter(|&q| position[q] < position[p])
                    .collect()
            })
            .collect();
        let mut remaining = vec![0; f.domain.len()];
        for &c in &sub.cell {
            remaining[c] += 1;
        }
        GeneratorSearch {
            f,
            sub,
            order,
            earlier,
            table: vec![usize::MAX; img.len()],
            remaining,
            uncovered: f.values.iter().map(Vec::len).collect(),
            hits: f.values.iter().map(|s| vec![0; s.len()]).collect(),
            nodes,
            max_nodes,
        }
    }

    fn run(mut self) -> Result<Option<Vec<usize>>> {
        Ok(self.assign(0)?.then_some(self.table))
    }

    fn assign(&mut self, k: usize) -> Result<bool> {
        if k == self.order.len() {
            return Ok(true);
        }
        *self.nodes += 1;
        if *self.nodes > self.max_nodes {
            return Err(Error::limit("generator search nodes", self.max_nodes as usize));
        }
        let p = self.order[k];
        let c = self.sub.cell[p];
        let y = &self.f.codomain;
        let candidates = &self.f.values[c];
        // Values not yet hit in this cell go first.
        let mut tries: Vec<usize> = (0..candidates.len()).collect();
        tries.sort_by_key(|&pos| self.hits[c][pos] != 0);
        for pos in tries {
            let v = candidates[pos];
            if !self.earlier[k].iter().all(|&q| y.adjacent_or_equal(v, self.table[q])) {
                continue;
            }
            let fresh = self.hits[c][pos] == 0;
            self.remaining[c] -= 1;
            self.hits[c][pos] += 1;
            if fresh {
                self.uncovered[c] -= 1;
            }
            self.table[p] = v;
            if self.uncovered[c] <= self.remaining[c] && self.assign(k + 1)? {
                return Ok(true);
            }
            self.remaining[c] += 1;
            self.hits[c][pos] -= 1;
            if fresh {
                self.uncovered[c] += 1;
            }
        }
        self.table[p] = usize::MAX;
        Ok(false)
    }
}

/// Independent check of a generator witness: the domain is exactly
/// S(X, r), the generator is continuous, and each cell maps onto F(x).
pub fn generates(f: &MultiFunction, witness: &EgsWitness) -> bool {
    let g = &witness.generator;
    let r = witness.r as i64;
    if r < 1 || g.codomain() != f.codomain() {
        return false;
    }
    let x = f.domain();
    let expected = x.len() * (witness.r).pow(x.dim() as u32);
    let sub = g.domain();
    if sub.len() != expected || sub.dim() != x.dim() || sub.adjacency() != x.adjacency() {
        return false;
    }
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); x.len()];
    for (q, &v) in sub.points().iter().zip(g.table()) {
        let home = Point::new(q.coords().iter().map(|&c| c.div_euclid(r)).collect());
        match x.index_of(&home) {
            Some(i) => images[i].push(v),
            None => return false,
        }
    }
    for set in &mut images {
        set.sort_unstable();
        set.dedup();
    }
    images == f.values && functions::is_continuous(g)
}

/// A ↦ F(A) on the family of the given kind over X, into the family of the
/// same kind over Y.
pub fn induced_multifunction_map(f: &MultiFunction, kind: FamilyKind, max_points: usize) -> Result<FamilyFunction> {
    let domain = SubsetFamily::of_kind(&f.domain, kind, max_points)?;
    let codomain = SubsetFamily::of_kind(&f.codomain, kind, max_points)?;
    induced_multifunction_map_into(f, &domain, &codomain)
}

/// A ↦ F(A) between explicitly given families, e.g. K(X) into 2^Y.
pub fn induced_multifunction_map_into(
    f: &MultiFunction,
    domain: &SubsetFamily,
    codomain: &SubsetFamily,
) -> Result<FamilyFunction> {
    if domain.base() != f.domain() || codomain.base() != f.codomain() {
        return Err(Error::invalid("families do not sit over the multifunction's images"));
    }
    FamilyFunction::from_fn(domain.clone(), codomain.clone(), |a| {
        Subset::from_indices(f.image_of(a.indices()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Adjacency;

    fn seg(a: i64, b: i64) -> Arc<DigitalImage> {
        Arc::new(DigitalImage::interval(a, b).unwrap())
    }

    fn multi(pairs: &[(i64, &[i64])]) -> MultiFunction {
        let pairs: Vec<(Point, Vec<Point>)> = pairs
            .iter()
            .map(|(x, ys)| (Point::from(*x), ys.iter().map(|&y| Point::from(y)).collect()))
            .collect();
        MultiFunction::from_pairs(seg(0, 1), seg(0, 2), &pairs).unwrap()
    }

    #[test]
    fn continuity_notions_on_example() {
        let f = multi(&[(0, &[0]), (1, &[1, 2])]);
        assert!(has_weak_continuity(&f));
        assert!(!has_strong_continuity(&f));
        assert_eq!(
            strong_continuity_violation(&f),
            Some((1.into(), 0.into(), 2.into()))
        );
        assert!(is_connectivity_preserving(&f, 24).unwrap());

        let w = is_egs_continuous(&f, 4, EgsBudget::default()).unwrap().unwrap();
        assert_eq!(w.r, 2);
        assert!(generates(&f, &w));
        let expect: Vec<(Point, Point)> = [(0, 0), (1, 0), (2, 1), (3, 2)]
            .into_iter()
            .map(|(a, b)| (Point::from(a), Point::from(b)))
            .collect();
        assert_eq!(w.generator.pairs(), expect);

        let full = induced_multifunction_map(&f, FamilyKind::Full, 24).unwrap();
        assert!(!functions::is_family_continuous(&full));
    }

    #[test]
    fn negative_examples() {
        let gap = multi(&[(0, &[0]), (1, &[2])]);
        assert!(!has_weak_continuity(&gap));
        assert!(!has_strong_continuity(&gap));

        let split = multi(&[(0, &[0, 2]), (1, &[1])]);
        assert!(is_egs_continuous(&split, 5, EgsBudget::default()).unwrap().is_none());
        assert!(!is_connectivity_preserving(&split, 24).unwrap());
        assert!(matches!(
            induced_multifunction_map(&split, FamilyKind::Connected, 24),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn single_valued_maps() {
        let x = seg(0, 3);
        let f = FiniteFunction::from_fn(x.clone(), x.clone(), |p| (p.coords()[0] / 2).into()).unwrap();
        let m = MultiFunction::from_function(&f);
        assert!(has_weak_continuity(&m) && has_strong_continuity(&m));
        assert!(is_connectivity_preserving(&m, 24).unwrap());
        let w = is_egs_continuous(&m, 3, EgsBudget::default()).unwrap().unwrap();
        assert_eq!(w.r, 1);
        assert!(generates(&m, &w));
        for kind in [FamilyKind::Full, FamilyKind::Connected] {
            let fam = SubsetFamily::of_kind(&x, kind, 24).unwrap();
            assert_eq!(
                induced_multifunction_map(&m, kind, 24).unwrap(),
                functions::induced_map(&f, &fam, 24).unwrap()
            );
        }
    }

    #[test]
    fn closed_neighborhood_multifunction() {
        let x = seg(0, 3);
        let values = (0..4)
            .map(|i: usize| (i.saturating_sub(1)..=(i + 1).min(3)).collect())
            .collect();
        let m = MultiFunction::new(x.clone(), x, values).unwrap();
        assert!(has_strong_continuity(&m));
        for kind in [FamilyKind::Full, FamilyKind::Connected] {
            assert!(functions::is_family_continuous(&induced_multifunction_map(&m, kind, 24).unwrap()));
        }
    }

    #[test]
    fn subdivision_shape() {
        let sq = Arc::new(
            DigitalImage::from_points(Adjacency::c(2).unwrap(), [[0, 0], [0, 1], [1, 1]]).unwrap(),
        );
        let s = Subdivision::new(&sq, 3, 1000).unwrap();
        assert_eq!(s.image().len(), 3 * 9);
        assert_eq!(s.cell_members(0).len(), 9);
        assert!(s.image().is_connected_image());
        let one = Subdivision::new(&sq, 1, 1000).unwrap();
        assert_eq!(**one.image(), *sq);
        assert!(matches!(Subdivision::new(&sq, 30, 100), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn rejects_bad_tables() {
        let x = seg(0, 1);
        assert!(MultiFunction::new(x.clone(), x.clone(), vec![vec![0], vec![]]).is_err());
        assert!(MultiFunction::new(x.clone(), x.clone(), vec![vec![0], vec![5]]).is_err());
        assert!(MultiFunction::from_pairs(x.clone(), x, &[(0.into(), vec![0.into()])]).is_err());
    }
}
