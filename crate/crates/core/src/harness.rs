//! Seeded property suites over small random images, plus samplers shared
//! with the test targets.
//!
//! Every check draws from its own ChaCha stream, so a report depends only
//! on the seed and configuration, never on which checks ran before it.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{self, FamilyFunction, FiniteFunction};
use crate::graphmetrics::{self, CycleWitness, FiniteGraph};
use crate::homotopy::{self, Flavor, HomotopyEquivalence, HomotopyMode, HomotopyTable};
use crate::hyperspace::{self, FamilyKind, Subset, SubsetFamily};
use crate::lattice::{Adjacency, DigitalImage, Point};
use crate::multivalued::{self, EgsBudget, MultiFunction, Subdivision};

/// The ChaCha stream for one check.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn cu_offsets(dim: usize, u: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(dim as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..dim)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        let moved = v.iter().filter(|&&d| d != 0).count();
        if (1..=u).contains(&moved) {
            out.push(v);
        }
    }
    out
}

fn random_selector(rng: &mut impl Rng) -> (usize, Adjacency) {
    let dim = rng.gen_range(1..=2);
    let u = rng.gen_range(1..=dim);
    (dim, Adjacency::c(u).expect("u is positive"))
}

/// An image with exactly k points drawn from a small box in Z or Z^2,
/// under c_1 or (in Z^2) c_2.
pub fn random_image_of_size(rng: &mut impl Rng, k: usize) -> DigitalImage {
    let (dim, adjacency) = random_selector(rng);
    let points: Vec<Point> = if dim == 1 {
        let width = k + 2;
        index::sample(rng, width, k)
            .into_iter()
            .map(|i| Point::from(i as i64))
            .collect()
    } else {
        let mut side = 1;
        while side * side < k + 1 {
            side += 1;
        }
        index::sample(rng, side * side, k)
            .into_iter()
            .map(|i| Point::from([(i / side) as i64, (i % side) as i64]))
            .collect()
    };
    DigitalImage::new(dim, adjacency, points).expect("sampled points are distinct")
}

pub fn random_image(rng: &mut impl Rng, max_points: usize) -> DigitalImage {
    let k = rng.gen_range(1..=max_points.max(1));
    random_image_of_size(rng, k)
}

/// A connected image grown from the origin by random c_u steps.
pub fn random_connected_image(rng: &mut impl Rng, max_points: usize) -> DigitalImage {
    let (dim, adjacency) = random_selector(rng);
    let k = rng.gen_range(1..=max_points.max(1));
    let steps = cu_offsets(dim, adjacency.u());
    let mut points = vec![Point::new(vec![0; dim])];
    while points.len() < k {
        let base = points.choose(rng).expect("nonempty").clone();
        let step = steps.choose(rng).expect("some offsets");
        let next = Point::new(base.coords().iter().zip(step).map(|(a, b)| a + b).collect());
        if !points.contains(&next) {
            points.push(next);
        }
    }
    DigitalImage::new(dim, adjacency, points).expect("grown points are distinct")
}

pub fn random_function(rng: &mut impl Rng, x: &Arc<DigitalImage>, y: &Arc<DigitalImage>) -> FiniteFunction {
    let table = (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect();
    FiniteFunction::new(x.clone(), y.clone(), table).expect("table in range")
}

/// A uniformly chosen continuous map (by full enumeration).
pub fn random_continuous_function(
    rng: &mut impl Rng,
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
) -> Result<FiniteFunction> {
    let maps = homotopy::enumerate_continuous_maps(x, y, homotopy::DEFAULT_FUNCTION_GRAPH_VERTICES)?;
    Ok(maps.choose(rng).expect("constant maps are continuous").clone())
}

/// Value sets of 1 to 3 random codomain points.
pub fn random_multifunction(rng: &mut impl Rng, x: &Arc<DigitalImage>, y: &Arc<DigitalImage>) -> MultiFunction {
    let values = (0..x.len())
        .map(|_| {
            let k = rng.gen_range(1..=y.len().min(3));
            index::sample(rng, y.len(), k).into_vec()
        })
        .collect();
    MultiFunction::new(x.clone(), y.clone(), values).expect("nonempty value sets")
}

/// x ↦ {f_1(x), ..., f_k(x)} for continuous f_i, which is always strongly
/// continuous.
pub fn random_strong_multifunction(
    rng: &mut impl Rng,
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
) -> Result<MultiFunction> {
    let maps = homotopy::enumerate_continuous_maps(x, y, homotopy::DEFAULT_FUNCTION_GRAPH_VERTICES)?;
    let k = rng.gen_range(1..=3);
    let chosen: Vec<&FiniteFunction> = (0..k).map(|_| maps.choose(rng).expect("nonempty")).collect();
    let values = (0..x.len())
        .map(|i| chosen.iter().map(|f| f.table()[i]).collect())
        .collect();
    MultiFunction::new(x.clone(), y.clone(), values)
}

/// G(n, p).
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> FiniteGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    FiniteGraph::new(n, edges).expect("simple graph")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Cardinality,
    Induced,
    Homotopy,
    Connectivity,
    Multivalued,
    Cycles,
    Dominating,
    Diameter,
}

impl Suite {
    pub const NAMES: [&'static str; 9] = [
        "all",
        "cardinality",
        "induced",
        "homotopy",
        "connectivity",
        "multivalued",
        "cycles",
        "dominating",
        "diameter",
    ];

    fn includes(self, name: &str) -> bool {
        self == Suite::All || self.to_string() == name
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = match self {
            Suite::All => 0,
            Suite::Cardinality => 1,
            Suite::Induced => 2,
            Suite::Homotopy => 3,
            Suite::Connectivity => 4,
            Suite::Multivalued => 5,
            Suite::Cycles => 6,
            Suite::Dominating => 7,
            Suite::Diameter => 8,
        };
        f.write_str(Suite::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "cardinality" => Suite::Cardinality,
            "induced" => Suite::Induced,
            "homotopy" => Suite::Homotopy,
            "connectivity" => Suite::Connectivity,
            "multivalued" => Suite::Multivalued,
            "cycles" => Suite::Cycles,
            "dominating" => Suite::Dominating,
            "diameter" => Suite::Diameter,
            other => return Err(Error::invalid(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Random cases per sampled check.
    pub samples: usize,
    /// Largest sampled image; connectivity and diameter checks use one more.
    pub max_points: usize,
    pub hyperspace_points: usize,
    pub function_vertices: usize,
    pub cycle_vertices: usize,
    pub r_max: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0,
            samples: 100,
            max_points: 6,
            hyperspace_points: hyperspace::DEFAULT_HYPERSPACE_POINTS,
            function_vertices: homotopy::DEFAULT_FUNCTION_GRAPH_VERTICES,
            cycle_vertices: graphmetrics::DEFAULT_LONGEST_CYCLE_VERTICES,
            r_max: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub name: String,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "[{tag}] {}/{} ({} cases)", c.suite, c.name, c.cases).unwrap();
            if let Some(ce) = &c.counterexample {
                for line in ce.lines() {
                    writeln!(out, "       {line}").unwrap();
                }
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        writeln!(
            out,
            "seed {}: {} checks, {} failed",
            self.seed,
            self.checks.len(),
            failed
        )
        .unwrap();
        out
    }
}

/// Outcome of one check: number of cases examined and the first failure.
struct Outcome {
    cases: usize,
    counterexample: Option<String>,
}

struct Ctx<'a> {
    cfg: &'a HarnessConfig,
    rng: ChaCha8Rng,
    cases: usize,
}

impl Ctx<'_> {
    fn pass(&self) -> Result<Outcome> {
        Ok(Outcome {
            cases: self.cases,
            counterexample: None,
        })
    }

    fn fail(&self, msg: String) -> Result<Outcome> {
        Ok(Outcome {
            cases: self.cases,
            counterexample: Some(msg),
        })
    }

    fn image(&mut self, max: usize) -> Arc<DigitalImage> {
        Arc::new(random_image(&mut self.rng, max))
    }

    fn any_image(&mut self, max: usize) -> Arc<DigitalImage> {
        if self.rng.gen_bool(0.5) {
            Arc::new(random_connected_image(&mut self.rng, max))
        } else {
            self.image(max)
        }
    }
}

fn describe_image(x: &DigitalImage) -> String {
    let pts: Vec<String> = x.points().iter().map(ToString::to_string).collect();
    format!("{} {{{}}}", x.adjacency(), pts.join(", "))
}

fn describe_map(f: &FiniteFunction) -> String {
    let pairs: Vec<String> = f.pairs().iter().map(|(a, b)| format!("{a}->{b}")).collect();
    format!(
        "{} -> {}: {}",
        describe_image(f.domain()),
        describe_image(f.codomain()),
        pairs.join(" ")
    )
}

type CheckFn = fn(&mut Ctx) -> Result<Outcome>;

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("cardinality", "full-hyperspace-size", full_hyperspace_size),
    ("cardinality", "connected-interval-count", connected_interval_count),
    ("cardinality", "connected-count-matches-filter", connected_count_matches_filter),
    ("cardinality", "interval-triangle-isomorphism", interval_triangle_isomorphism),
    ("induced", "continuity-iff-induced-continuity", continuity_iff_induced),
    ("induced", "isomorphism-iff-induced-isomorphism", isomorphism_iff_induced),
    ("induced", "retractions-lift", retractions_lift),
    ("induced", "functor-laws", functor_laws),
    ("induced", "inducing-map-search", inducing_map_search),
    ("homotopy", "psi-edges-are-phi-edges", psi_edges_are_phi_edges),
    ("homotopy", "one-step-iff-adjacent", one_step_iff_adjacent),
    ("homotopy", "witnesses-verify", witnesses_verify),
    ("homotopy", "cycle-rotations", cycle_rotations),
    ("homotopy", "set-images-of-adjacent-maps", set_images_of_adjacent_maps),
    ("homotopy", "function-graph-retract", function_graph_retract),
    ("homotopy", "contractible-function-graph-connected", contractible_graph_connected),
    ("homotopy", "homotopies-lift-to-hyperspaces", homotopies_lift),
    ("homotopy", "postcomposition-functor", postcomposition_functor),
    ("homotopy", "homotopy-equivalences-lift", equivalences_lift),
    ("connectivity", "connected-iff-hyperspace-connected", connected_iff_hyperspace_connected),
    ("connectivity", "component-correspondence", component_correspondence),
    ("connectivity", "union-of-connected-subfamily", union_of_connected_subfamily),
    ("connectivity", "path-to-singleton", path_to_singleton),
    ("connectivity", "disconnection-lifts", disconnection_lifts),
    ("multivalued", "example-ladder", multivalued_ladder),
    ("multivalued", "implications", multivalued_implications),
    ("multivalued", "strong-continuity-lifts", strong_continuity_lifts),
    ("multivalued", "subdivision-sanity", subdivision_sanity),
    ("cycles", "triangle-iff-non-isolated", triangle_iff_non_isolated),
    ("cycles", "power-set-of-four-interval", power_set_longest_cycle),
    ("cycles", "six-cycle-witness", six_cycle_witness),
    ("cycles", "girth-at-most-longest", girth_at_most_longest),
    ("dominating", "dominating-iff-lifted-dominating", dominating_iff_lifted),
    ("dominating", "minimum-dominating-set", minimum_dominating_exact),
    ("diameter", "hyperspace-diameter-bound", hyperspace_diameter_bound),
    ("diameter", "radius-diameter-sandwich", radius_diameter_sandwich),
];

/// Runs every check of the suite in a fixed order.
pub fn run_suite(suite: Suite, cfg: &HarnessConfig) -> Result<Report> {
    let mut checks = Vec::new();
    for (stream, &(group, name, check)) in CHECKS.iter().enumerate() {
        if !suite.includes(group) {
            continue;
        }
        let mut ctx = Ctx {
            cfg,
            rng: rng_for(cfg.seed, stream as u64),
            cases: 0,
        };
        let outcome = check(&mut ctx)?;
        checks.push(CheckResult {
            suite: group.to_string(),
            name: name.to_string(),
            cases: outcome.cases,
            counterexample: outcome.counterexample,
        });
    }
    Ok(Report {
        seed: cfg.seed,
        checks,
    })
}

fn full_hyperspace_size(ctx: &mut Ctx) -> Result<Outcome> {
    for n in 1..=12 {
        ctx.cases += 1;
        let x = DigitalImage::interval(1, n)?;
        let got = hyperspace::enumerate_all_subsets(&x, ctx.cfg.hyperspace_points)?.len();
        if got != (1usize << n) - 1 {
            return ctx.fail(format!("#2^[1,{n}] = {got}"));
        }
    }
    ctx.pass()
}

fn connected_interval_count(ctx: &mut Ctx) -> Result<Outcome> {
    for n in 1..=8usize {
        ctx.cases += 1;
        let x = DigitalImage::interval(1, n as i64)?;
        let got = hyperspace::enumerate_connected_subsets(&x, ctx.cfg.hyperspace_points)?.len();
        if got != n * (n + 1) / 2 {
            return ctx.fail(format!("#K([1,{n}]) = {got}"));
        }
    }
    ctx.pass()
}

fn connected_count_matches_filter(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = ctx.image(ctx.cfg.max_points);
        let k = hyperspace::enumerate_connected_subsets(&x, ctx.cfg.hyperspace_points)?;
        let full = (1u64 << x.len()) - 1;
        let filtered = (1..=full).filter(|&m| x.is_connected_mask(m)).count();
        if filtered != k.len() {
            return ctx.fail(format!("{}: enumerated {} vs filtered {filtered}", describe_image(&x), k.len()));
        }
    }
    ctx.pass()
}

fn interval_triangle_isomorphism(ctx: &mut Ctx) -> Result<Outcome> {
    for b in 1..=6 {
        ctx.cases += 1;
        if !hyperspace::interval_triangle_iso(1, b)?.is_isomorphism() {
            return ctx.fail(format!("b = {b}"));
        }
    }
    ctx.pass()
}

fn continuity_iff_induced(ctx: &mut Ctx) -> Result<Outcome> {
    let mp = ctx.cfg.hyperspace_points;
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(4), ctx.image(4));
        let f = random_function(&mut ctx.rng, &x, &y);
        let c = functions::is_continuous(&f);
        let full = functions::is_family_continuous(&functions::induced_map(
            &f,
            &SubsetFamily::of_kind(&x, FamilyKind::Full, mp)?,
            mp,
        )?);
        let kx = SubsetFamily::of_kind(&x, FamilyKind::Connected, mp)?;
        let into_full = SubsetFamily::of_kind(&y, FamilyKind::Full, mp)?;
        let conn = functions::is_family_continuous(&functions::induced_map_into(&f, &kx, &into_full)?);
        let onto_k = functions::induced_map(&f, &kx, mp);
        let k_ok = match &onto_k {
            Ok(m) => functions::is_family_continuous(m),
            Err(_) => false,
        };
        if c != full || c != conn || c != k_ok {
            return ctx.fail(format!(
                "{}\ncontinuous={c} 2^X={full} K(X)->2^Y={conn} K(X)->K(Y)={k_ok}",
                describe_map(&f)
            ));
        }
    }
    ctx.pass()
}

fn isomorphism_iff_induced(ctx: &mut Ctx) -> Result<Outcome> {
    let mp = ctx.cfg.hyperspace_points;
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let k = ctx.rng.gen_range(1..=4);
        let x = Arc::new(random_image_of_size(&mut ctx.rng, k));
        let y = if ctx.rng.gen_bool(0.3) {
            x.clone()
        } else {
            Arc::new(random_image_of_size(&mut ctx.rng, k))
        };
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut ctx.rng);
        let f = FiniteFunction::new(x.clone(), y.clone(), perm)?;
        let iso = functions::is_isomorphism(&f);
        let full = functions::induced_map(&f, &SubsetFamily::of_kind(&x, FamilyKind::Full, mp)?, mp)?
            .graph_map()
            .is_isomorphism();
        let conn = functions::induced_map(&f, &SubsetFamily::of_kind(&x, FamilyKind::Connected, mp)?, mp)
            .map(|m| m.graph_map().is_isomorphism())
            .unwrap_or(false);
        if iso != full || iso != conn {
            return ctx.fail(format!("{}\niso={iso} 2^X={full} K(X)={conn}", describe_map(&f)));
        }
    }
    ctx.pass()
}

fn retractions_lift(ctx: &mut Ctx) -> Result<Outcome> {
    let mp = ctx.cfg.hyperspace_points;
    let max = ctx.cfg.max_points.min(5);
    for _ in 0..ctx.cfg.samples {
        let x = ctx.image(max);
        let k = ctx.rng.gen_range(1..=x.len());
        let keep = index::sample(&mut ctx.rng, x.len(), k).into_vec();
        let y_pts: Vec<Point> = keep.iter().map(|&i| x.point(i).clone()).collect();
        let y = Arc::new(x.subimage(&y_pts)?);
        let retractions: Vec<FiniteFunction> =
            homotopy::enumerate_continuous_maps(&x, &y, ctx.cfg.function_vertices)?
                .into_iter()
                .filter(|r| functions::is_retraction(r, &y_pts).unwrap_or(false))
                .collect();
        let Some(r) = retractions.choose(&mut ctx.rng) else {
            continue;
        };
        ctx.cases += 1;
        for kind in [FamilyKind::Full, FamilyKind::Connected] {
            let fam = SubsetFamily::of_kind(&x, kind, mp)?;
            let lifted = functions::induced_map(r, &fam, mp)?;
            if !functions::is_family_continuous(&lifted) {
                return ctx.fail(format!("{kind}: lifted retraction discontinuous\n{}", describe_map(r)));
            }
            for &a in fam.members() {
                let pts = fam.points_of(a);
                if pts.iter().all(|p| y.contains(p)) {
                    let image = lifted.apply(a).expect("member");
                    if lifted.codomain().points_of(image) != pts {
                        return ctx.fail(format!("{kind}: member {} moved\n{}", fam.label(a), describe_map(r)));
                    }
                }
            }
        }
    }
    ctx.pass()
}

fn functor_laws(ctx: &mut Ctx) -> Result<Outcome> {
    let mp = ctx.cfg.hyperspace_points;
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y, z) = (ctx.image(4), ctx.image(4), ctx.image(4));
        let f = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let g = random_continuous_function(&mut ctx.rng, &y, &z)?;
        for kind in [FamilyKind::Full, FamilyKind::Connected] {
            let fx = SubsetFamily::of_kind(&x, kind, mp)?;
            let fy = SubsetFamily::of_kind(&y, kind, mp)?;
            let id = functions::induced_map(&FiniteFunction::identity(x.clone()), &fx, mp)?;
            if id != FamilyFunction::identity(fx.clone()) {
                return ctx.fail(format!("{kind}: identity not preserved on {}", describe_image(&x)));
            }
            let whole = functions::induced_map(&f.then(&g)?, &fx, mp)?;
            let parts = functions::induced_map(&f, &fx, mp)?.then(&functions::induced_map(&g, &fy, mp)?)?;
            if whole != parts {
                return ctx.fail(format!("{kind}: composition\nf = {}\ng = {}", describe_map(&f), describe_map(&g)));
            }
        }
    }
    ctx.pass()
}

fn inducing_map_search(ctx: &mut Ctx) -> Result<Outcome> {
    let mp = ctx.cfg.hyperspace_points;
    ctx.cases += 1;
    let x = Arc::new(DigitalImage::interval(0, 1)?);
    let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, mp)?;
    let whole = Subset::from_indices(0..x.len());
    let constant = FamilyFunction::from_fn(k.clone(), k, |_| whole)?;
    if functions::find_inducing_map(&constant, ctx.cfg.function_vertices)?.is_some() {
        return ctx.fail("constant map A -> X on K([0,1]) reported as induced".into());
    }
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(4), ctx.image(4));
        let g = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let kind = if ctx.rng.gen_bool(0.5) { FamilyKind::Full } else { FamilyKind::Connected };
        let fam = SubsetFamily::of_kind(&x, kind, mp)?;
        let target = functions::induced_map(&g, &fam, mp)?;
        match functions::find_inducing_map(&target, ctx.cfg.function_vertices)? {
            Some(f) if functions::induced_map(&f, &fam, mp)? == target => {}
            _ => return ctx.fail(format!("{kind}: no inducing map found for {}", describe_map(&g))),
        }
    }
    ctx.pass()
}

fn psi_edges_are_phi_edges(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(3), ctx.image(3));
        let phi = homotopy::build_function_graph(&x, &y, Flavor::Phi, ctx.cfg.function_vertices)?;
        let psi = homotopy::build_function_graph(&x, &y, Flavor::Psi, ctx.cfg.function_vertices)?;
        if phi.len() != psi.len() {
            return ctx.fail(format!("vertex sets differ for {} -> {}", describe_image(&x), describe_image(&y)));
        }
        let stray = psi.graph().edges().find(|&(u, v)| !phi.graph().has_edge(u, v));
        if let Some((u, v)) = stray {
            return ctx.fail(format!("psi edge {} -- {} is not a phi edge", psi.label(u), psi.label(v)));
        }
    }
    ctx.pass()
}

fn one_step_iff_adjacent(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(3), ctx.image(3));
        let f = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let g = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let h = HomotopyTable::from_path(&[f.clone(), g.clone()])?;
        let plain = homotopy::verify_homotopy(&h, &f, &g, HomotopyMode::Plain, None);
        let strong = homotopy::verify_homotopy(&h, &f, &g, HomotopyMode::Strong, None);
        let phi = f == g || homotopy::phi_adjacent(&f, &g)?;
        let psi = f == g || homotopy::psi_adjacent(&f, &g)?;
        if plain != phi || strong != psi {
            return ctx.fail(format!(
                "f = {}\ng = {}\none-step plain={plain} phi={phi} strong={strong} psi={psi}",
                describe_map(&f),
                describe_map(&g)
            ));
        }
    }
    ctx.pass()
}

fn witnesses_verify(ctx: &mut Ctx) -> Result<Outcome> {
    let budget = ctx.cfg.function_vertices;
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(4), ctx.image(3));
        let f = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let g = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let plain = homotopy::homotopic(&f, &g, budget)?;
        let strong = homotopy::strongly_homotopic(&f, &g, budget)?;
        let base = x.point(ctx.rng.gen_range(0..x.len())).clone();
        let pointed = homotopy::pointed_homotopic(&f, &g, &base, Flavor::Phi, budget)?;
        let ok = plain.table().is_none_or(|h| homotopy::verify_homotopy(&h, &f, &g, HomotopyMode::Plain, None))
            && strong.table().is_none_or(|h| homotopy::verify_homotopy(&h, &f, &g, HomotopyMode::Strong, None))
            && pointed
                .table()
                .is_none_or(|h| homotopy::verify_homotopy(&h, &f, &g, HomotopyMode::Plain, Some(&base)))
            && (!strong.homotopic || plain.homotopic)
            && (!pointed.homotopic || plain.homotopic)
            && plain.homotopic == plain.path.is_some();
        if !ok {
            return ctx.fail(format!("f = {}\ng = {}", describe_map(&f), describe_map(&g)));
        }
    }
    ctx.pass()
}

/// The 5-point cycle in Z^3 under c_3, in cyclic order.
pub fn five_cycle() -> (Arc<DigitalImage>, Vec<Point>) {
    let cyc: Vec<Point> = [[0, 0, 1], [0, 1, 0], [1, 2, 0], [2, 1, 1], [1, 0, 2]]
        .into_iter()
        .map(Point::from)
        .collect();
    let img = DigitalImage::from_points(Adjacency::c(3).expect("c3"), cyc.clone()).expect("distinct points");
    (Arc::new(img), cyc)
}

/// Rotation by j steps of a cycle listed in cyclic order.
pub fn rotation(img: &Arc<DigitalImage>, cyc: &[Point], j: usize) -> FiniteFunction {
    let pairs: Vec<(Point, Point)> = (0..cyc.len())
        .map(|i| (cyc[i].clone(), cyc[(i + j) % cyc.len()].clone()))
        .collect();
    FiniteFunction::from_pairs(img.clone(), img.clone(), &pairs).expect("rotation is a bijection")
}

fn cycle_rotations(ctx: &mut Ctx) -> Result<Outcome> {
    let budget = ctx.cfg.function_vertices;
    let (img, cyc) = five_cycle();
    for j in 0..5 {
        for k in 0..5 {
            ctx.cases += 1;
            let (rj, rk) = (rotation(&img, &cyc, j), rotation(&img, &cyc, k));
            let d = homotopy::homotopic(&rj, &rk, budget)?;
            let valid = d.table().is_some_and(|h| homotopy::verify_homotopy(&h, &rj, &rk, HomotopyMode::Plain, None));
            let strong = homotopy::strongly_homotopic(&rj, &rk, budget)?.homotopic;
            if !d.homotopic || !valid || strong != (j == k) {
                return ctx.fail(format!("r_{j} vs r_{k}: homotopic={} witness={valid} strong={strong}", d.homotopic));
            }
        }
    }
    ctx.cases += 1;
    let c = FiniteFunction::constant(img.clone(), img.clone(), &cyc[0])?;
    if homotopy::homotopic(&rotation(&img, &cyc, 0), &c, budget)?.homotopic {
        return ctx.fail("identity of the 5-cycle homotopic to a constant".into());
    }
    ctx.pass()
}

fn set_images_of_adjacent_maps(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        let (x, y) = (ctx.image(4), ctx.image(4));
        let phi = homotopy::build_function_graph(&x, &y, Flavor::Phi, ctx.cfg.function_vertices)?;
        let edges: Vec<(usize, usize)> = phi.graph().edges().collect();
        let Some(&(u, v)) = edges.choose(&mut ctx.rng) else {
            continue;
        };
        ctx.cases += 1;
        let (f, g) = (phi.function(u), phi.function(v));
        let closed = y.closed_masks().expect("small codomain");
        let all = (1u64 << x.len()) - 1;
        for a in 1..=all {
            let s = Subset::from_mask(a);
            let (fa, ga) = (f.image_of(s), g.image_of(s));
            if !hyperspace::hyper_adjacent_or_equal(fa.mask(), ga.mask(), closed) {
                return ctx.fail(format!(
                    "f = {}\ng = {}\nA = {:?}",
                    describe_map(&f),
                    describe_map(&g),
                    x.points_of_mask(a)
                ));
            }
        }
    }
    ctx.pass()
}

fn function_graph_retract(ctx: &mut Ctx) -> Result<Outcome> {
    let budget = ctx.cfg.function_vertices;
    for _ in 0..ctx.cfg.samples {
        let (x, y) = (ctx.image(3), ctx.image(4));
        let k = ctx.rng.gen_range(1..=y.len());
        let w_pts: Vec<Point> = index::sample(&mut ctx.rng, y.len(), k)
            .into_iter()
            .map(|i| y.point(i).clone())
            .collect();
        let w = Arc::new(y.subimage(&w_pts)?);
        let retractions: Vec<FiniteFunction> = homotopy::enumerate_continuous_maps(&y, &w, budget)?
            .into_iter()
            .filter(|r| functions::is_retraction(r, &w_pts).unwrap_or(false))
            .collect();
        let Some(r) = retractions.choose(&mut ctx.rng) else {
            continue;
        };
        ctx.cases += 1;
        let post = homotopy::postcompose_map(r, &x, budget)?;
        if !post.graph_map().is_continuous() {
            return ctx.fail(format!("post-composition with r discontinuous: {}", describe_map(r)));
        }
        for i in 0..post.target().len() {
            let g = post.target().function(i);
            let lifted = FiniteFunction::from_fn(x.clone(), y.clone(), |p| g.apply(p).expect("domain point").clone())?;
            if post.apply(&lifted).as_ref() != Some(&g) {
                return ctx.fail(format!("r = {}\nmoves {}", describe_map(r), describe_map(&g)));
            }
        }
    }
    ctx.pass()
}

fn contractible_graph_connected(ctx: &mut Ctx) -> Result<Outcome> {
    let budget = ctx.cfg.function_vertices;
    for _ in 0..ctx.cfg.samples {
        let x = Arc::new(random_connected_image(&mut ctx.rng, 4));
        if !homotopy::is_contractible(&x, budget)? {
            continue;
        }
        ctx.cases += 1;
        let phi = homotopy::build_function_graph(&x, &x, Flavor::Phi, budget)?;
        if !phi.graph().is_connected() {
            return ctx.fail(format!("contractible {} has disconnected X^X", describe_image(&x)));
        }
    }
    ctx.pass()
}

/// A random walk of a few Φ-steps from f, staying among maps that agree
/// with f at `fixed` when given.
fn walk_from(ctx: &mut Ctx, f: &FiniteFunction, fixed: Option<usize>) -> Result<FiniteFunction> {
    let phi = homotopy::build_function_graph(f.domain_arc(), f.codomain_arc(), Flavor::Phi, ctx.cfg.function_vertices)?;
    let mut v = phi.index_of(f).expect("continuous");
    for _ in 0..ctx.rng.gen_range(0..4) {
        let options: Vec<usize> = phi
            .graph()
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| fixed.is_none_or(|b| phi.table(w)[b] == f.table()[b]))
            .collect();
        match options.choose(&mut ctx.rng) {
            Some(&w) => v = w,
            None => break,
        }
    }
    Ok(phi.function(v))
}

fn homotopies_lift(ctx: &mut Ctx) -> Result<Outcome> {
    let (mp, budget) = (ctx.cfg.hyperspace_points, ctx.cfg.function_vertices);
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(3), ctx.image(3));
        let f = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let b = ctx.rng.gen_range(0..x.len());
        let g = walk_from(ctx, &f, Some(b))?;
        let base = x.point(b).clone();
        let d = homotopy::pointed_homotopic(&f, &g, &base, Flavor::Phi, budget)?;
        let Some(h) = d.table() else {
            return ctx.fail(format!("walk endpoints not pointed homotopic\nf = {}\ng = {}", describe_map(&f), describe_map(&g)));
        };
        for kind in [FamilyKind::Full, FamilyKind::Connected] {
            let lifted = homotopy::lift_homotopy_to_hyperspace(&h, kind, mp)?;
            let fam = SubsetFamily::of_kind(&x, kind, mp)?;
            let (fs, gs) = (functions::induced_map(&f, &fam, mp)?, functions::induced_map(&g, &fam, mp)?);
            let fixed = Subset::singleton(b);
            if !lifted.verify(&fs, &gs, HomotopyMode::Plain, Some(fixed)) {
                return ctx.fail(format!("{kind}: lifted homotopy rejected\nf = {}\ng = {}", describe_map(&f), describe_map(&g)));
            }
        }
    }
    ctx.pass()
}

fn postcomposition_functor(ctx: &mut Ctx) -> Result<Outcome> {
    let budget = ctx.cfg.function_vertices;
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (w, x, y, z) = (ctx.image(2), ctx.image(3), ctx.image(3), ctx.image(3));
        let f = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let g = random_continuous_function(&mut ctx.rng, &y, &z)?;
        let (pf, pg) = (homotopy::postcompose_map(&f, &w, budget)?, homotopy::postcompose_map(&g, &w, budget)?);
        let pgf = homotopy::postcompose_map(&f.then(&g)?, &w, budget)?;
        let composed: Vec<usize> = pf.table().iter().map(|&i| pg.table()[i]).collect();
        if composed != pgf.table() || !pf.graph_map().is_continuous() {
            return ctx.fail(format!("f = {}\ng = {}", describe_map(&f), describe_map(&g)));
        }
        let f2 = walk_from(ctx, &f, None)?;
        if f2 == f || homotopy::phi_adjacent(&f, &f2)? {
            let lifted = homotopy::lift_homotopy_to_function_graph(&HomotopyTable::from_path(&[f.clone(), f2.clone()])?, &w, budget)?;
            if !lifted.verify(HomotopyMode::Plain, None) {
                return ctx.fail(format!("one-step lift rejected\nf = {}\nf' = {}", describe_map(&f), describe_map(&f2)));
            }
        }
    }
    ctx.pass()
}

fn equivalences_lift(ctx: &mut Ctx) -> Result<Outcome> {
    let (mp, budget) = (ctx.cfg.hyperspace_points, ctx.cfg.function_vertices);
    for _ in 0..ctx.cfg.samples {
        let x = ctx.any_image(4);
        let k = ctx.rng.gen_range(1..=x.len());
        let y_pts: Vec<Point> = index::sample(&mut ctx.rng, x.len(), k)
            .into_iter()
            .map(|i| x.point(i).clone())
            .collect();
        let y = Arc::new(x.subimage(&y_pts)?);
        let f = random_continuous_function(&mut ctx.rng, &x, &y)?;
        let g = FiniteFunction::from_fn(y.clone(), x.clone(), Point::clone)?;
        let Some(eq) = HomotopyEquivalence::certify(&f, &g, budget)? else {
            continue;
        };
        ctx.cases += 1;
        if !eq.verify() {
            return ctx.fail(format!("certificate rejected\nf = {}", describe_map(&f)));
        }
        for kind in [FamilyKind::Full, FamilyKind::Connected] {
            if !eq.lift(kind, mp)?.verify() {
                return ctx.fail(format!("{kind}: lifted certificate rejected\nf = {}", describe_map(&f)));
            }
        }
    }
    ctx.pass()
}

fn connected_iff_hyperspace_connected(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = ctx.any_image(ctx.cfg.max_points + 1);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        if x.is_connected_image() != hyperspace::family_graph(&k).is_connected() {
            return ctx.fail(describe_image(&x));
        }
    }
    ctx.pass()
}

fn component_correspondence(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = ctx.image(ctx.cfg.max_points + 1);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let labels = hyperspace::family_graph(&k).component_labels();
        for comp in x.components() {
            let d = Subset::from_indices(comp.iter().copied());
            let inside: Vec<usize> = (0..k.len()).filter(|&i| k.member(i).is_subset_of(d)).collect();
            let expected = hyperspace::enumerate_connected_subsets(&x.subimage(&x.points_of_mask(d.mask()))?, ctx.cfg.hyperspace_points)?.len();
            let lab = labels[inside[0]];
            let same = (0..k.len()).filter(|&i| labels[i] == lab).count();
            if inside.len() != expected || same != inside.len() || inside.iter().any(|&i| labels[i] != lab) {
                return ctx.fail(format!("{}: component {}", describe_image(&x), k.label(d)));
            }
        }
    }
    ctx.pass()
}

fn union_of_connected_subfamily(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = ctx.image(ctx.cfg.max_points);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let g = hyperspace::family_graph(&k);
        let mut chosen = vec![ctx.rng.gen_range(0..k.len())];
        for _ in 0..ctx.rng.gen_range(0..6) {
            let frontier: Vec<usize> = chosen
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|w| !chosen.contains(w))
                .collect();
            match frontier.choose(&mut ctx.rng) {
                Some(&w) => chosen.push(w),
                None => break,
            }
        }
        let members: Vec<Subset> = chosen.iter().map(|&i| k.member(i)).collect();
        let u = hyperspace::union_of_family(&members)?;
        if !x.is_connected_mask(u.mask()) {
            let labels: Vec<String> = members.iter().map(|&m| k.label(m)).collect();
            return ctx.fail(format!("{}: {}", describe_image(&x), labels.join(" ")));
        }
    }
    ctx.pass()
}

fn path_to_singleton(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        let x = ctx.image(ctx.cfg.max_points);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let a = k.member(ctx.rng.gen_range(0..k.len()));
        ctx.cases += 1;
        let sub = x.subimage(&x.points_of_mask(a.mask()))?;
        let ka = SubsetFamily::of_kind(&sub, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let g = hyperspace::family_graph(&ka);
        let top = ka.index_of(Subset::from_indices(0..sub.len())).expect("A is connected");
        let dist = g.distances_from(top);
        let reached = (0..sub.len()).any(|i| dist[ka.index_of(Subset::singleton(i)).expect("singleton")].is_some());
        if !reached {
            return ctx.fail(format!("{}: A = {}", describe_image(&x), k.label(a)));
        }
    }
    ctx.pass()
}

fn disconnection_lifts(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        let x = Arc::new(random_connected_image(&mut ctx.rng, ctx.cfg.max_points + 1));
        if x.len() < 3 {
            continue;
        }
        let k = ctx.rng.gen_range(1..x.len());
        let y: Vec<Point> = index::sample(&mut ctx.rng, x.len(), k)
            .into_iter()
            .map(|i| x.point(i).clone())
            .collect();
        if !graphmetrics::disconnects(&y, &x)? {
            continue;
        }
        ctx.cases += 1;
        let ymask = x.mask_of(&y)?;
        let kx = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let removed: Vec<usize> = (0..kx.len()).filter(|&i| kx.member(i).mask() & ymask != 0).collect();
        if !graphmetrics::removal_disconnects(&hyperspace::family_graph(&kx), &removed) {
            return ctx.fail(format!("{}: Y = {:?}", describe_image(&x), y));
        }
    }
    ctx.pass()
}

/// F(0) = {0}, F(1) = {1, 2} from [0,1] to [0,2].
pub fn ladder_example() -> MultiFunction {
    let x = Arc::new(DigitalImage::interval(0, 1).expect("interval"));
    let y = Arc::new(DigitalImage::interval(0, 2).expect("interval"));
    MultiFunction::new(x, y, vec![vec![0], vec![1, 2]]).expect("valid")
}

fn multivalued_ladder(ctx: &mut Ctx) -> Result<Outcome> {
    ctx.cases += 1;
    let f = ladder_example();
    let budget = EgsBudget {
        max_points: multivalued::DEFAULT_SUBDIVISION_POINTS,
        ..EgsBudget::default()
    };
    let weak = multivalued::has_weak_continuity(&f);
    let strong = multivalued::has_strong_continuity(&f);
    let cp = multivalued::is_connectivity_preserving(&f, ctx.cfg.hyperspace_points)?;
    let egs = multivalued::is_egs_continuous(&f, ctx.cfg.r_max, budget)?;
    let egs_ok = egs.as_ref().is_some_and(|w| w.r == 2 && multivalued::generates(&f, w));
    let lifted = multivalued::induced_multifunction_map(&f, FamilyKind::Full, ctx.cfg.hyperspace_points)?;
    let lifted_continuous = functions::is_family_continuous(&lifted);
    if !(weak && !strong && cp && egs_ok && !lifted_continuous) {
        return ctx.fail(format!(
            "weak={weak} strong={strong} connectivity-preserving={cp} generated-at-2={egs_ok} lift-continuous={lifted_continuous}"
        ));
    }
    ctx.pass()
}

fn multivalued_implications(ctx: &mut Ctx) -> Result<Outcome> {
    let mut weak_not_strong = false;
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(4), ctx.image(4));
        let f = random_multifunction(&mut ctx.rng, &x, &y);
        let weak = multivalued::has_weak_continuity(&f);
        let strong = multivalued::has_strong_continuity(&f);
        let cp = multivalued::is_connectivity_preserving(&f, ctx.cfg.hyperspace_points)?;
        if (strong || cp) && !weak {
            return ctx.fail(format!(
                "{} -> {}: {:?}\nweak={weak} strong={strong} connectivity-preserving={cp}",
                describe_image(&x),
                describe_image(&y),
                f.values()
            ));
        }
        weak_not_strong |= weak && !strong;
    }
    if !weak_not_strong {
        return ctx.fail("sample contains no weakly but not strongly continuous multifunction".into());
    }
    ctx.pass()
}

fn strong_continuity_lifts(ctx: &mut Ctx) -> Result<Outcome> {
    let mp = ctx.cfg.hyperspace_points;
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let (x, y) = (ctx.image(4), ctx.image(4));
        let f = random_strong_multifunction(&mut ctx.rng, &x, &y)?;
        if !multivalued::has_strong_continuity(&f) {
            return ctx.fail(format!("sampler produced a non-strong multifunction: {:?}", f.values()));
        }
        let full = multivalued::induced_multifunction_map(&f, FamilyKind::Full, mp)?;
        let kx = SubsetFamily::of_kind(&x, FamilyKind::Connected, mp)?;
        let into_full = SubsetFamily::of_kind(&y, FamilyKind::Full, mp)?;
        let conn = multivalued::induced_multifunction_map_into(&f, &kx, &into_full)?;
        if !functions::is_family_continuous(&full) || !functions::is_family_continuous(&conn) {
            return ctx.fail(format!(
                "{} -> {}: {:?}",
                describe_image(&x),
                describe_image(&y),
                f.values()
            ));
        }
    }
    ctx.pass()
}

fn subdivision_sanity(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = ctx.image(ctx.cfg.max_points);
        let r = ctx.rng.gen_range(1..=3);
        let s = Subdivision::new(&x, r, multivalued::DEFAULT_SUBDIVISION_POINTS)?;
        let expected = x.len() * r.pow(x.dim() as u32);
        let one = Subdivision::new(&x, 1, multivalued::DEFAULT_SUBDIVISION_POINTS)?;
        if s.image().len() != expected || **one.image() != *x {
            return ctx.fail(format!("{} with r = {r}", describe_image(&x)));
        }
    }
    ctx.pass()
}

fn triangle_iff_non_isolated(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = ctx.image(ctx.cfg.max_points);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let girth = graphmetrics::girth(&hyperspace::family_graph(&k)).map(|c| c.len());
        let non_isolated = (0..x.len()).any(|i| !x.neighbor_indices(i).is_empty());
        let expected = non_isolated.then_some(3);
        if girth != expected {
            return ctx.fail(format!("{}: girth {girth:?}", describe_image(&x)));
        }
    }
    ctx.pass()
}

/// The listed Hamiltonian cycle of the 2^[1,4] graph, as point sets.
pub fn power_set_cycle() -> Vec<Vec<i64>> {
    vec![
        vec![1, 2],
        vec![1, 2, 3],
        vec![1, 3],
        vec![1, 4],
        vec![1, 3, 4],
        vec![1, 2, 4],
        vec![1, 2, 3, 4],
        vec![2, 3, 4],
        vec![2, 3],
        vec![2, 4],
        vec![3, 4],
        vec![4],
        vec![3],
        vec![2],
        vec![1],
    ]
}

fn power_set_longest_cycle(ctx: &mut Ctx) -> Result<Outcome> {
    ctx.cases += 1;
    let x = DigitalImage::interval(1, 4)?;
    let fam = SubsetFamily::of_kind(&x, FamilyKind::Full, ctx.cfg.hyperspace_points)?;
    let g = hyperspace::family_graph(&fam);
    let longest = graphmetrics::longest_cycle(&g, ctx.cfg.cycle_vertices)?;
    let listed: Vec<usize> = power_set_cycle()
        .into_iter()
        .map(|s| {
            let pts: Vec<Point> = s.into_iter().map(Point::from).collect();
            x.mask_of(&pts).map(|m| fam.index_of(Subset::from_mask(m)).expect("member"))
        })
        .collect::<Result<_>>()?;
    let listed_ok = CycleWitness::new(listed, &g).is_ok();
    let len = longest.as_ref().map(CycleWitness::len);
    if len != Some(15) || !listed_ok || !longest.is_some_and(|c| c.is_valid_in(&g)) {
        return ctx.fail(format!("longest cycle {len:?}, listed cycle valid = {listed_ok}"));
    }
    ctx.pass()
}

fn six_cycle_witness(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        let x = ctx.image(ctx.cfg.max_points);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let g = hyperspace::family_graph(&k);
        for c in 0..x.len() {
            let ns = x.neighbor_indices(c);
            for (i, &u) in ns.iter().enumerate() {
                for &v in &ns[i + 1..] {
                    if x.adjacent(u, v) {
                        continue;
                    }
                    ctx.cases += 1;
                    let seq = [
                        vec![u],
                        vec![u, c],
                        vec![u, c, v],
                        vec![c, v],
                        vec![v],
                        vec![c],
                    ];
                    let ids: Vec<usize> = seq
                        .iter()
                        .map(|s| k.index_of(Subset::from_indices(s.iter().copied())).expect("connected"))
                        .collect();
                    if CycleWitness::new(ids, &g).is_err() {
                        return ctx.fail(format!("{}: x = {}", describe_image(&x), x.point(c)));
                    }
                }
            }
        }
    }
    ctx.pass()
}

fn girth_at_most_longest(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let n = ctx.rng.gen_range(1..=9);
        let p = ctx.rng.gen_range(0.2..0.8);
        let g = random_graph(&mut ctx.rng, n, p);
        let short = graphmetrics::girth(&g);
        let long = graphmetrics::longest_cycle(&g, ctx.cfg.cycle_vertices)?;
        let ok = match (&short, &long) {
            (None, None) => true,
            (Some(s), Some(l)) => s.len() <= l.len() && s.is_valid_in(&g) && l.is_valid_in(&g),
            _ => false,
        };
        if !ok {
            return ctx.fail(format!("edges {:?}", g.edges().collect::<Vec<_>>()));
        }
    }
    ctx.pass()
}

fn dominating_iff_lifted(ctx: &mut Ctx) -> Result<Outcome> {
    let mp = ctx.cfg.hyperspace_points;
    for _ in 0..ctx.cfg.samples {
        let x = ctx.image(ctx.cfg.max_points.min(5));
        let xg = x.graph();
        let fam = SubsetFamily::of_kind(&x, FamilyKind::Full, mp)?;
        let fg = hyperspace::family_graph(&fam);
        for d in 1..(1u64 << x.len()) {
            ctx.cases += 1;
            let pts = x.points_of_mask(d);
            let idx = x.indices_of(&pts)?;
            let lifted: Vec<usize> = graphmetrics::lift_dominating(&pts, &x, mp)?
                .into_iter()
                .map(|s| fam.index_of(s).expect("member"))
                .collect();
            if graphmetrics::is_dominating(&idx, &xg) != graphmetrics::is_dominating(&lifted, &fg) {
                return ctx.fail(format!("{}: D = {pts:?}", describe_image(&x)));
            }
        }
    }
    ctx.pass()
}

fn minimum_dominating_exact(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let n = ctx.rng.gen_range(1..=8);
        let p = ctx.rng.gen_range(0.1..0.6);
        let g = random_graph(&mut ctx.rng, n, p);
        let best = graphmetrics::minimum_dominating_set(&g, graphmetrics::DEFAULT_DOMINATING_VERTICES)?;
        let smaller_exists = (0u32..1 << n).any(|m| {
            let set: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            set.len() < best.len() && graphmetrics::is_dominating(&set, &g)
        });
        if !graphmetrics::is_dominating(&best, &g) || smaller_exists {
            return ctx.fail(format!("edges {:?}: solver gave {best:?}", g.edges().collect::<Vec<_>>()));
        }
    }
    ctx.pass()
}

fn hyperspace_diameter_bound(ctx: &mut Ctx) -> Result<Outcome> {
    let (mut singletons, mut larger) = (0usize, None);
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = random_connected_image(&mut ctx.rng, ctx.cfg.max_points + 1);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        let diam = graphmetrics::diameter(&hyperspace::family_graph(&k))?;
        let r = graphmetrics::radius(&x.graph())?;
        if diam >= 2 * (x.len() + r - 1) {
            if x.len() == 1 {
                singletons += 1;
            } else if larger.is_none() {
                larger = Some(format!("{}: diam K(X) = {diam}, radius = {r}", describe_image(&x)));
            }
        }
    }
    match (singletons, larger) {
        (0, None) => ctx.pass(),
        (_, Some(first)) => ctx.fail(first),
        // A one-point image has diam K(X) = 0 = 2(1 + 0 - 1), so the strict
        // bound cannot hold there. Reported, not skipped.
        (n, None) => ctx.fail(format!(
            "strict bound fails on {n} one-point image(s): diam K(X) = 0 = 2(#X + r - 1); no violation with #X >= 2"
        )),
    }
}

fn radius_diameter_sandwich(ctx: &mut Ctx) -> Result<Outcome> {
    for _ in 0..ctx.cfg.samples {
        ctx.cases += 1;
        let x = random_connected_image(&mut ctx.rng, ctx.cfg.max_points + 1);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, ctx.cfg.hyperspace_points)?;
        for g in [x.graph(), hyperspace::family_graph(&k)] {
            let (r, d) = (graphmetrics::radius(&g)?, graphmetrics::diameter(&g)?);
            if r > d || d > 2 * r {
                return ctx.fail(format!("{}: radius {r}, diameter {d}", describe_image(&x)));
            }
        }
    }
    ctx.pass()
}
