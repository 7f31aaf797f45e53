//! Single-valued maps between images and between hyperspace families.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graphmetrics::FiniteGraph;
use crate::homotopy::{self, MapSearch};
use crate::hyperspace::{self, FamilyKind, Subset, SubsetFamily};
use crate::lattice::{DigitalImage, Point};

/// A vertex map between two finite graphs.
///
/// Every construction in the crate (image maps, induced family maps,
/// post-composition on function graphs) reduces to this form for the
/// continuity and isomorphism checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    domain: FiniteGraph,
    codomain: FiniteGraph,
    table: Vec<usize>,
}

impl GraphMap {
    pub fn new(domain: FiniteGraph, codomain: FiniteGraph, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.n() {
            return Err(Error::invalid(format!(
                "map table has {} entries for {} domain vertices",
                table.len(),
                domain.n()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= codomain.n()) {
            return Err(Error::invalid(format!("map value {v} is not a codomain vertex")));
        }
        Ok(GraphMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn domain(&self) -> &FiniteGraph {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteGraph {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// An adjacent domain pair whose images are neither adjacent nor equal.
    pub fn continuity_violation(&self) -> Option<(usize, usize)> {
        self.domain
            .edges()
            .find(|&(u, v)| !self.codomain.adjacent_or_equal(self.table[u], self.table[v]))
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity_violation().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.n() != self.codomain.n() {
            return false;
        }
        let mut hit = vec![false; self.codomain.n()];
        self.table.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    pub fn inverse(&self) -> Option<GraphMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (u, &v) in self.table.iter().enumerate() {
            inv[v] = u;
        }
        Some(GraphMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            table: inv,
        })
    }

    /// Continuous bijection with continuous inverse.
    pub fn is_isomorphism(&self) -> bool {
        self.is_continuous() && self.inverse().is_some_and(|inv| inv.is_continuous())
    }
}

/// A total map between the points of two images, stored as codomain point
/// indices in domain point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunction {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    table: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::invalid(format!(
                "function table has {} entries for {} domain points",
                table.len(),
                domain.len()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::invalid(format!("function value index {v} is outside the codomain")));
        }
        Ok(FiniteFunction {
            domain,
            codomain,
            table,
        })
    }

    /// Builds a function from explicit (x, f(x)) pairs; every domain point
    /// must appear exactly once.
    pub fn from_pairs(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        pairs: &[(Point, Point)],
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; domain.len()];
        for (x, y) in pairs {
            let i = domain.require_index(x)?;
            let j = codomain.require_index(y)?;
            if table[i] != usize::MAX {
                return Err(Error::invalid(format!("point {x} is assigned twice")));
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
            return Err(Error::invalid(format!("no value for domain point {}", domain.point(i))));
        }
        FiniteFunction::new(domain, codomain, table)
    }

    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        f: impl Fn(&Point) -> Point,
    ) -> Result<Self> {
        let table = domain
            .points()
            .iter()
            .map(|x| codomain.require_index(&f(x)))
            .collect::<Result<Vec<_>>>()?;
        FiniteFunction::new(domain, codomain, table)
    }

    pub fn identity(image: Arc<DigitalImage>) -> Self {
        let table = (0..image.len()).collect();
        FiniteFunction {
            domain: image.clone(),
            codomain: image,
            table,
        }
    }

    pub fn constant(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, value: &Point) -> Result<Self> {
        let j = codomain.require_index(value)?;
        let table = vec![j; domain.len()];
        FiniteFunction::new(domain, codomain, table)
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

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: &Point) -> Result<&Point> {
        let i = self.domain.require_index(x)?;
        Ok(self.codomain.point(self.table[i]))
    }

    pub fn pairs(&self) -> Vec<(Point, Point)> {
        self.domain
            .points()
            .iter()
            .zip(&self.table)
            .map(|(x, &j)| (x.clone(), self.codomain.point(j).clone()))
            .collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FiniteFunction) -> Result<FiniteFunction> {
        if *self.codomain != *next.domain {
            return Err(Error::invalid("composition needs the codomain to match the next domain"));
        }
        Ok(FiniteFunction {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            table: self.table.iter().map(|&j| next.table[j]).collect(),
        })
    }

    /// f(A) as a codomain mask.
    pub fn image_of(&self, a: Subset) -> Subset {
        Subset::from_indices(a.indices().map(|i| self.table[i]))
    }

    pub fn graph_map(&self) -> GraphMap {
        GraphMap {
            domain: self.domain.graph(),
            codomain: self.codomain.graph(),
            table: self.table.clone(),
        }
    }

    pub(crate) fn same_spaces(&self, other: &FiniteFunction) -> Result<()> {
        if *self.domain != *other.domain || *self.codomain != *other.codomain {
            return Err(Error::invalid("functions have different domains or codomains"));
        }
        Ok(())
    }
}

/// An adjacent pair x ↔ x′ with f(x) and f(x′) neither adjacent nor equal.
pub fn continuity_violation(f: &FiniteFunction) -> Option<(Point, Point)> {
    let x = f.domain();
    (0..x.len()).find_map(|i| {
        x.neighbor_indices(i)
            .iter()
            .find(|&&j| j > i && !f.codomain().adjacent_or_equal(f.table[i], f.table[j]))
            .map(|&j| (x.point(i).clone(), x.point(j).clone()))
    })
}

/// Adjacent points map to adjacent-or-equal points.
pub fn is_continuous(f: &FiniteFunction) -> bool {
    continuity_violation(f).is_none()
}

pub fn is_isomorphism(f: &FiniteFunction) -> bool {
    f.graph_map().is_isomorphism()
}

/// `r` is continuous, its codomain is exactly `y`, and it fixes `y`.
pub fn is_retraction(r: &FiniteFunction, y: &[Point]) -> Result<bool> {
    if y.is_empty() {
        return Err(Error::invalid("a retract is nonempty"));
    }
    let mut y_sorted = y.to_vec();
    y_sorted.sort();
    y_sorted.dedup();
    if let Some(p) = y_sorted.iter().find(|p| !r.domain().contains(p)) {
        return Err(Error::invalid(format!("retract point {p} is not in the domain")));
    }
    if r.codomain().points() != y_sorted.as_slice() {
        return Err(Error::invalid("the retraction's codomain must be the retract"));
    }
    Ok(is_continuous(r) && y_sorted.iter().all(|p| r.apply(p).is_ok_and(|v| v == p)))
}

/// A map between two subset families, stored as codomain member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFunction {
    domain: SubsetFamily,
    codomain: SubsetFamily,
    table: Vec<usize>,
}

impl FamilyFunction {
    pub fn new(domain: SubsetFamily, codomain: SubsetFamily, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::invalid(format!(
                "family map has {} entries for {} members",
                table.len(),
                domain.len()
            )));
        }
        if table.iter().any(|&v| v >= codomain.len()) {
            return Err(Error::invalid("family map value outside the codomain family"));
        }
        Ok(FamilyFunction {
            domain,
            codomain,
            table,
        })
    }

    /// Builds a family map from a member-to-member rule.
    pub fn from_fn(
        domain: SubsetFamily,
        codomain: SubsetFamily,
        f: impl Fn(Subset) -> Subset,
    ) -> Result<Self> {
        let table = domain
            .members()
            .iter()
            .map(|&a| {
                let b = f(a);
                codomain.index_of(b).ok_or_else(|| {
                    Error::invalid(format!(
                        "image {} of member {} is not in the codomain family",
                        codomain.label(b),
                        domain.label(a)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FamilyFunction::new(domain, codomain, table)
    }

    pub fn identity(family: SubsetFamily) -> Self {
        let table = (0..family.len()).collect();
        FamilyFunction {
            domain: family.clone(),
            codomain: family,
            table,
        }
    }

    pub fn domain(&self) -> &SubsetFamily {
        &self.domain
    }

    pub fn codomain(&self) -> &SubsetFamily {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: Subset) -> Option<Subset> {
        self.domain
            .index_of(a)
            .map(|i| self.codomain.member(self.table[i]))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FamilyFunction) -> Result<FamilyFunction> {
        if self.codomain != next.domain {
            return Err(Error::invalid("composition needs the codomain family to match"));
        }
        Ok(FamilyFunction {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            table: self.table.iter().map(|&j| next.table[j]).collect(),
        })
    }

    pub fn graph_map(&self) -> GraphMap {
        GraphMap {
            domain: hyperspace::family_graph(&self.domain),
            codomain: hyperspace::family_graph(&self.codomain),
            table: self.table.clone(),
        }
    }
}

fn image_family(f: &FiniteFunction, family: &SubsetFamily, max_points: usize) -> Result<SubsetFamily> {
    match family.kind() {
        FamilyKind::Full | FamilyKind::Connected => {
            SubsetFamily::of_kind(f.codomain(), family.kind(), max_points)
        }
        FamilyKind::Custom => SubsetFamily::custom(
            f.codomain_arc().clone(),
            family.members().iter().map(|&a| f.image_of(a)).collect(),
        ),
    }
}

/// f_*: A ↦ f(A) into the family of the same kind over the codomain (for a
/// custom family, into the family of images).
///
/// On full families this is defined for every f. On K(X) a discontinuous f
/// sends some connected member to a disconnected set, which is reported as
/// an error naming that member.
pub fn induced_map(f: &FiniteFunction, family: &SubsetFamily, max_points: usize) -> Result<FamilyFunction> {
    if family.base() != f.domain() {
        return Err(Error::invalid("family base differs from the function's domain"));
    }
    let codomain = image_family(f, family, max_points)?;
    induced_map_into(f, family, &codomain)
}

/// f_* into an explicitly given codomain family.
pub fn induced_map_into(
    f: &FiniteFunction,
    family: &SubsetFamily,
    codomain: &SubsetFamily,
) -> Result<FamilyFunction> {
    if family.base() != f.domain() || codomain.base() != f.codomain() {
        return Err(Error::invalid("family bases differ from the function's domain and codomain"));
    }
    FamilyFunction::from_fn(family.clone(), codomain.clone(), |a| f.image_of(a))
}

/// A κ′-adjacent pair of members whose images are neither λ′-adjacent nor equal.
pub fn family_continuity_violation(map: &FamilyFunction) -> Option<(Subset, Subset)> {
    let closed = map.codomain.base().closed_masks().expect("family bases fit in a mask");
    let graph = hyperspace::family_graph(&map.domain);
    let found = graph
        .edges()
        .find(|&(u, v)| {
            let a = map.codomain.member(map.table[u]).mask();
            let b = map.codomain.member(map.table[v]).mask();
            !hyperspace::hyper_adjacent_or_equal(a, b, closed)
        })
        .map(|(u, v)| (map.domain.member(u), map.domain.member(v)));
    found
}

pub fn is_family_continuous(map: &FamilyFunction) -> bool {
    family_continuity_violation(map).is_none()
}

/// Searches for a continuous f with f_* = F.
///
/// When the domain family holds every singleton, F({x}) must be the
/// singleton {f(x)}, which pins f down completely; otherwise all
/// continuous maps are enumerated.
pub fn find_inducing_map(map: &FamilyFunction, max_functions: usize) -> Result<Option<FiniteFunction>> {
    let x = map.domain.base_arc().clone();
    let y = map.codomain.base_arc().clone();
    let mut allowed: Vec<Vec<usize>> = vec![(0..y.len()).collect(); x.len()];
    for (i, slot) in allowed.iter_mut().enumerate() {
        if let Some(image) = map.apply(Subset::singleton(i)) {
            if image.len() != 1 {
                return Ok(None);
            }
            *slot = image.indices().collect();
        }
    }
    let mut found = None;
    MapSearch::new(&x, &y, allowed, max_functions).run(|table| {
        let f = FiniteFunction::new(x.clone(), y.clone(), table.to_vec()).expect("search yields valid tables");
        match induced_map_into(&f, &map.domain, &map.codomain) {
            Ok(induced) if induced.table == map.table => {
                found = Some(f);
                false
            }
            _ => true,
        }
    })?;
    Ok(found)
}

/// Whether the function is the identity on its (shared) image.
pub fn is_identity(f: &FiniteFunction) -> bool {
    f.domain == f.codomain && f.table.iter().enumerate().all(|(i, &j)| i == j)
}

pub use homotopy::enumerate_continuous_maps;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperspace::{enumerate_all_subsets, enumerate_connected_subsets};

    fn seg(a: i64, b: i64) -> Arc<DigitalImage> {
        Arc::new(DigitalImage::interval(a, b).unwrap())
    }

    #[test]
    fn continuity_examples() {
        let x = seg(0, 2);
        assert!(is_continuous(&FiniteFunction::identity(x.clone())));
        let g = FiniteFunction::from_fn(x.clone(), x.clone(), |p| (p.coords()[0] + 1).min(2).into()).unwrap();
        assert!(is_continuous(&g));

        let jump = FiniteFunction::from_pairs(
            seg(0, 1),
            x.clone(),
            &[(0.into(), 0.into()), (1.into(), 2.into())],
        )
        .unwrap();
        assert!(!is_continuous(&jump));
        assert_eq!(continuity_violation(&jump), Some((0.into(), 1.into())));
    }

    #[test]
    fn function_validation() {
        let x = seg(0, 1);
        assert!(FiniteFunction::from_pairs(x.clone(), x.clone(), &[(0.into(), 0.into())]).is_err());
        assert!(FiniteFunction::from_pairs(
            x.clone(),
            x.clone(),
            &[(0.into(), 0.into()), (0.into(), 1.into()), (1.into(), 1.into())]
        )
        .is_err());
        assert!(FiniteFunction::new(x.clone(), x.clone(), vec![0, 2]).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let x = seg(0, 3);
        assert!(is_isomorphism(&FiniteFunction::identity(x)));

        let apart = Arc::new(DigitalImage::from_points(crate::lattice::Adjacency::c(1).unwrap(), [0, 2]).unwrap());
        let f = FiniteFunction::from_pairs(seg(0, 1), apart, &[(0.into(), 0.into()), (1.into(), 2.into())]).unwrap();
        assert!(!is_isomorphism(&f));

        let iso = hyperspace::interval_triangle_iso(1, 4).unwrap();
        assert_eq!(iso.domain().n(), 10);
        assert!(iso.is_isomorphism());
    }

    #[test]
    fn retraction_examples() {
        let x = seg(0, 2);
        let all: Vec<Point> = x.points().to_vec();
        assert!(is_retraction(&FiniteFunction::identity(x.clone()), &all).unwrap());

        let y = seg(0, 1);
        let r = FiniteFunction::from_fn(x.clone(), y.clone(), |p| p.coords()[0].min(1).into()).unwrap();
        assert!(is_retraction(&r, y.points()).unwrap());

        let swap = FiniteFunction::from_fn(x.clone(), y.clone(), |p| (1 - p.coords()[0].min(1)).into()).unwrap();
        assert!(!is_retraction(&swap, y.points()).unwrap());
        assert!(is_retraction(&r, &[]).is_err());
    }

    #[test]
    fn induced_map_examples() {
        let x = seg(0, 2);
        let full = enumerate_all_subsets(&x, 24).unwrap();
        let conn = enumerate_connected_subsets(&x, 24).unwrap();

        let c = FiniteFunction::constant(x.clone(), x.clone(), &1.into()).unwrap();
        let cf = induced_map(&c, &full, 24).unwrap();
        assert!(full.members().iter().all(|&a| cf.apply(a) == Some(Subset::singleton(1))));

        let id = FiniteFunction::identity(x.clone());
        assert_eq!(induced_map(&id, &full, 24).unwrap(), FamilyFunction::identity(full.clone()));
        assert_eq!(induced_map(&id, &conn, 24).unwrap(), FamilyFunction::identity(conn.clone()));
        assert!(is_family_continuous(&induced_map(&id, &conn, 24).unwrap()));

        let jump = FiniteFunction::from_pairs(
            x.clone(),
            x.clone(),
            &[(0.into(), 0.into()), (1.into(), 2.into()), (2.into(), 2.into())],
        )
        .unwrap();
        let jf = induced_map(&jump, &full, 24).unwrap();
        assert!(!is_family_continuous(&jf));
        let err = induced_map(&jump, &conn, 24).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(msg) if msg.contains("{0, 1}")));
    }

    #[test]
    fn constant_family_map_is_continuous_but_not_induced() {
        let x = seg(0, 1);
        let conn = enumerate_connected_subsets(&x, 24).unwrap();
        let whole = Subset::from_indices([0, 1]);
        let f = FamilyFunction::from_fn(conn.clone(), conn.clone(), |_| whole).unwrap();
        assert!(is_family_continuous(&f));
        assert!(find_inducing_map(&f, 1_000_000).unwrap().is_none());

        let id = FamilyFunction::identity(conn);
        let g = find_inducing_map(&id, 1_000_000).unwrap().unwrap();
        assert!(is_identity(&g));
    }
}
