//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use digitopo::functions::{self, induced_map_into, is_family_continuous};
use digitopo::graphmetrics::{self, CycleWitness};
use digitopo::harness::{self, rng_for};
use digitopo::homotopy::{self, HomotopyMode, HomotopyTable, DEFAULT_FUNCTION_GRAPH_VERTICES};
use digitopo::hyperspace::{self, hyperspace_graph};
use digitopo::multivalued::{self, EgsBudget};
use digitopo::{DigitalImage, FamilyFunction, FamilyKind, FiniteFunction, Point, Result, SubsetFamily};
use rand::Rng;

const SEED: u64 = 20_261_015;
const MAXP: usize = hyperspace::DEFAULT_HYPERSPACE_POINTS;

type Outcome = std::result::Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<Outcome>,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() {
    let criteria = [
        Criterion { name: "cardinality", limit: secs(1), run: cardinality },
        Criterion { name: "interval-triangle isomorphism", limit: secs(1), run: interval_triangle },
        Criterion { name: "induced-map iff", limit: None, run: induced_map_iff },
        Criterion { name: "non-induced family map", limit: secs(1), run: non_induced },
        Criterion { name: "homotopy decision on the 5-cycle", limit: secs(60), run: five_cycle },
        Criterion { name: "one-step iff", limit: None, run: one_step_iff },
        Criterion { name: "connectivity lifting", limit: secs(120), run: connectivity_lifting },
        Criterion { name: "multivalued ladder", limit: secs(1), run: ladder },
        Criterion { name: "strong lifting", limit: None, run: strong_lifting },
        Criterion { name: "cycles", limit: secs(60), run: cycles },
        Criterion { name: "dominating iff", limit: None, run: dominating_iff },
        Criterion { name: "diameter bound", limit: None, run: diameter_bound },
        Criterion { name: "oracle equivalence", limit: None, run: oracle_equivalence },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = match (c.run)() {
            Ok(o) => o,
            Err(e) => Err(format!("error: {e}")),
        };
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(d), Some(limit)) if took > limit => Err(format!("{d}; took {took:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {} ({took:.2?}): {detail}", i + 1, c.name);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn arc(x: DigitalImage) -> Arc<DigitalImage> {
    Arc::new(x)
}

fn describe(x: &DigitalImage) -> String {
    let pts: Vec<String> = x.points().iter().map(|p| format!("{:?}", p.coords())).collect();
    format!("c{} {{{}}}", x.adjacency().u(), pts.join(" "))
}

fn cardinality() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 1);
    for n in 1..=12usize {
        let expected = (1usize << n) - 1;
        let interval = DigitalImage::interval(1, n as i64)?;
        let random = harness::random_image_of_size(&mut rng, n);
        for x in [&interval, &random] {
            let got = hyperspace::enumerate_all_subsets(x, MAXP)?.len();
            if got != expected {
                return Ok(Err(format!("#2^X = {got} for {}, expected {expected}", describe(x))));
            }
        }
    }
    for n in 1..=8usize {
        let got = hyperspace::enumerate_connected_subsets(&DigitalImage::interval(1, n as i64)?, MAXP)?.len();
        if got != n * (n + 1) / 2 {
            return Ok(Err(format!("#K([1,{n}]) = {got}")));
        }
    }
    Ok(Ok("2^X for n <= 12 (intervals and random images), K([1,n]) for n <= 8".into()))
}

fn interval_triangle() -> Result<Outcome> {
    for b in 1..=6 {
        let iso = hyperspace::interval_triangle_iso(1, b)?;
        if !iso.is_isomorphism() {
            return Ok(Err(format!("b = {b} not certified")));
        }
    }
    Ok(Ok("b = 1..6 certified".into()))
}

fn induced_map_iff() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 3);
    let (mut pairs, mut maps, mut continuous) = (0, 0, 0);
    while pairs < 500 {
        pairs += 1;
        let (x, y) = (arc(harness::random_image(&mut rng, 4)), arc(harness::random_image(&mut rng, 4)));
        let (px, py) = (SubsetFamily::of_kind(&x, FamilyKind::Full, MAXP)?, SubsetFamily::of_kind(&y, FamilyKind::Full, MAXP)?);
        let (kx, ky) = (
            SubsetFamily::of_kind(&x, FamilyKind::Connected, MAXP)?,
            SubsetFamily::of_kind(&y, FamilyKind::Connected, MAXP)?,
        );
        for table in common::all_tables(x.len(), y.len()) {
            maps += 1;
            let f = FiniteFunction::new(x.clone(), y.clone(), table)?;
            let c = functions::is_continuous(&f);
            continuous += usize::from(c);
            let full = is_family_continuous(&induced_map_into(&f, &px, &py)?);
            // f_* lands in K(Y) only when f is continuous.
            let conn = induced_map_into(&f, &kx, &ky).map(|m| is_family_continuous(&m)).unwrap_or(false);
            if c != full || c != conn {
                return Ok(Err(format!(
                    "{} -> {} table {:?}: continuous={c} 2^X={full} K(X)={conn}",
                    describe(&x),
                    describe(&y),
                    f.table()
                )));
            }
        }
    }
    Ok(Ok(format!("{pairs} image pairs, {maps} functions ({continuous} continuous), 0 violations")))
}

fn non_induced() -> Result<Outcome> {
    let x = DigitalImage::interval(0, 1)?;
    let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, MAXP)?;
    let whole = k.index_of(hyperspace::Subset::from_mask(0b11)).expect("X is a member");
    let map = FamilyFunction::new(k.clone(), k.clone(), vec![whole; k.len()])?;
    match functions::find_inducing_map(&map, DEFAULT_FUNCTION_GRAPH_VERTICES)? {
        None => Ok(Ok("no inducing function".into())),
        Some(f) => Ok(Err(format!("claimed inducing function {:?}", f.table()))),
    }
}

fn five_cycle() -> Result<Outcome> {
    let budget = DEFAULT_FUNCTION_GRAPH_VERTICES;
    let (img, cyc) = harness::five_cycle();
    for j in 0..5 {
        for k in 0..5 {
            let (rj, rk) = (harness::rotation(&img, &cyc, j), harness::rotation(&img, &cyc, k));
            let d = homotopy::homotopic(&rj, &rk, budget)?;
            let witness = d.table().is_some_and(|h| homotopy::verify_homotopy(&h, &rj, &rk, HomotopyMode::Plain, None));
            if !d.homotopic || !witness {
                return Ok(Err(format!("r_{j}, r_{k}: homotopic={} witness valid={witness}", d.homotopic)));
            }
            if j != k && homotopy::strongly_homotopic(&rj, &rk, budget)?.homotopic {
                return Ok(Err(format!("r_{j}, r_{k} strongly homotopic")));
            }
        }
    }
    let id = FiniteFunction::identity(img.clone());
    for p in &cyc {
        let c = FiniteFunction::constant(img.clone(), img.clone(), p)?;
        if homotopy::homotopic(&id, &c, budget)?.homotopic {
            return Ok(Err(format!("identity homotopic to constant {:?}", p.coords())));
        }
    }
    Ok(Ok(format!("25 rotation pairs with validated witnesses, budget {budget} vertices")))
}

fn one_step_iff() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 6);
    let (mut adjacent, mut equal) = (0, 0);
    for n in 0..500 {
        let (x, y) = (arc(harness::random_image(&mut rng, 3)), arc(harness::random_image(&mut rng, 3)));
        let f = harness::random_continuous_function(&mut rng, &x, &y)?;
        // Bias toward nearby pairs so both sides of the iff occur often.
        let g = if rng.gen_bool(0.5) {
            harness::random_continuous_function(&mut rng, &x, &y)?
        } else {
            let maps = homotopy::enumerate_continuous_maps(&x, &y, DEFAULT_FUNCTION_GRAPH_VERTICES)?;
            let near: Vec<&FiniteFunction> = maps.iter().filter(|g| homotopy::phi_adjacent(&f, g).unwrap_or(false)).collect();
            if near.is_empty() { f.clone() } else { near[rng.gen_range(0..near.len())].clone() }
        };
        let table = HomotopyTable::new(x.clone(), y.clone(), vec![f.table().to_vec(), g.table().to_vec()])?;
        let accepted = homotopy::verify_homotopy(&table, &f, &g, HomotopyMode::Plain, None);
        let phi = homotopy::phi_adjacent(&f, &g)?;
        adjacent += usize::from(phi);
        equal += usize::from(f == g);
        if accepted != (f == g || phi) {
            return Ok(Err(format!("sample {n}: f={:?} g={:?} accepted={accepted} phi={phi}", f.table(), g.table())));
        }
    }
    Ok(Ok(format!("500 pairs ({adjacent} Φ-adjacent, {equal} equal), 0 violations")))
}

fn connectivity_lifting() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 7);
    let (mut conn, mut disc, mut cuts) = (0, 0, 0);
    for n in 0..240 {
        let x = if n % 2 == 0 { harness::random_connected_image(&mut rng, 7) } else { harness::random_image(&mut rng, 7) };
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, MAXP)?;
        let view = hyperspace_graph(&k);
        let x_conn = x.is_connected_image();
        if x_conn != common::connected(x.points(), x.adjacency().u()) {
            return Ok(Err(format!("library and oracle disagree on connectivity of {}", describe(&x))));
        }
        if x_conn != view.graph().is_connected() {
            return Ok(Err(format!("{}: X connected={x_conn}, K(X) connected={}", describe(&x), !x_conn)));
        }
        if !x_conn {
            disc += 1;
            continue;
        }
        conn += 1;
        let full = (1u64 << x.len()) - 1;
        for y in 1..full {
            let ypts = common::subset_points(&x, y);
            if !graphmetrics::disconnects(&ypts, &x)? {
                continue;
            }
            cuts += 1;
            let removed: Vec<usize> = (0..k.len()).filter(|&i| k.member(i).mask() & y != 0).collect();
            if !graphmetrics::removal_disconnects(view.graph(), &removed) {
                return Ok(Err(format!("{}: Y = {:?} disconnects X but not K(X)", describe(&x), ypts)));
            }
        }
    }
    Ok(Ok(format!("{} images ({conn} connected, {disc} disconnected), {cuts} disconnecting sets", conn + disc)))
}

fn ladder() -> Result<Outcome> {
    let f = harness::ladder_example();
    let weak = multivalued::has_weak_continuity(&f);
    let strong = multivalued::has_strong_continuity(&f);
    let cp = multivalued::is_connectivity_preserving(&f, MAXP)?;
    let egs = multivalued::is_egs_continuous(&f, 4, EgsBudget::default())?;
    let r = egs.as_ref().map(|w| w.r);
    let generated = egs.as_ref().is_some_and(|w| multivalued::generates(&f, w));
    let lifted = is_family_continuous(&multivalued::induced_multifunction_map(&f, FamilyKind::Full, MAXP)?);
    let detail = format!("weak={weak} strong={strong} connectivity-preserving={cp} egs r={r:?} lifted continuous={lifted}");
    Ok(if weak && !strong && cp && r == Some(2) && generated && !lifted { Ok(detail) } else { Err(detail) })
}

fn strong_lifting() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 9);
    for n in 0..200 {
        let (x, y) = (arc(harness::random_image(&mut rng, 4)), arc(harness::random_image(&mut rng, 4)));
        let f = harness::random_strong_multifunction(&mut rng, &x, &y)?;
        if !multivalued::has_strong_continuity(&f) {
            return Ok(Err(format!("sample {n} is not strongly continuous: {:?}", f.values())));
        }
        let lifted = multivalued::induced_multifunction_map(&f, FamilyKind::Full, MAXP)?;
        if !is_family_continuous(&lifted) {
            return Ok(Err(format!("{} -> {}: {:?}", describe(&x), describe(&y), f.values())));
        }
    }
    Ok(Ok("200 strongly continuous multifunctions, 0 violations".into()))
}

fn cycle_of(family: &SubsetFamily, view: &hyperspace::HypergraphView, sets: &[Vec<i64>]) -> Result<CycleWitness> {
    let base = family.base();
    let verts = sets
        .iter()
        .map(|s| {
            let pts: Vec<Point> = s.iter().map(|&v| Point::from(v)).collect();
            let mask = base.mask_of(&pts)?;
            Ok(view.vertex_of(hyperspace::Subset::from_mask(mask)).expect("member"))
        })
        .collect::<Result<Vec<_>>>()?;
    CycleWitness::new(verts, view.graph())
}

fn cycles() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 10);
    for _ in 0..300 {
        let x = harness::random_image(&mut rng, 6);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, MAXP)?;
        let triangle = graphmetrics::girth(hyperspace_graph(&k).graph()).is_some_and(|c| c.len() == 3);
        let non_isolated = (0..x.len()).any(|i| (0..x.len()).any(|j| common::adj(x.point(i), x.point(j), x.adjacency().u())));
        if triangle != non_isolated {
            return Ok(Err(format!("{}: 3-cycle={triangle}, non-isolated point={non_isolated}", describe(&x))));
        }
    }
    let p = SubsetFamily::of_kind(&DigitalImage::interval(1, 4)?, FamilyKind::Full, MAXP)?;
    let pv = hyperspace_graph(&p);
    let longest = graphmetrics::longest_cycle(pv.graph(), graphmetrics::DEFAULT_LONGEST_CYCLE_VERTICES)?.map(|c| c.len());
    if longest != Some(15) {
        return Ok(Err(format!("longest cycle of 2^[1,4] = {longest:?}")));
    }
    if let Err(e) = cycle_of(&p, &pv, &harness::power_set_cycle()) {
        return Ok(Err(format!("listed 15-cycle rejected: {e}")));
    }
    let k = SubsetFamily::of_kind(&DigitalImage::interval(0, 2)?, FamilyKind::Connected, MAXP)?;
    let kv = hyperspace_graph(&k);
    let six = [vec![0], vec![0, 1], vec![0, 1, 2], vec![1, 2], vec![2], vec![1]];
    if let Err(e) = cycle_of(&k, &kv, &six) {
        return Ok(Err(format!("6-cycle rejected: {e}")));
    }
    Ok(Ok("300 images for the 3-cycle iff, 2^[1,4] cycle length 15, both listed cycles valid".into()))
}

fn dominating_iff() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 11);
    let mut sets = 0;
    for _ in 0..120 {
        let x = harness::random_image(&mut rng, 5);
        let full = SubsetFamily::of_kind(&x, FamilyKind::Full, MAXP)?;
        let view = hyperspace_graph(&full);
        let xg = x.graph();
        for d in 0u64..1 << x.len() {
            sets += 1;
            let dpts = common::subset_points(&x, d);
            let didx: Vec<usize> = (0..x.len()).filter(|i| d >> i & 1 == 1).collect();
            let lifted: Vec<usize> = graphmetrics::lift_dominating(&dpts, &x, MAXP)?
                .into_iter()
                .map(|s| view.vertex_of(s).expect("member"))
                .collect();
            let below = graphmetrics::is_dominating(&didx, &xg);
            let above = graphmetrics::is_dominating(&lifted, view.graph());
            if below != above {
                return Ok(Err(format!("{}: D = {dpts:?} dominates X {below}, lift {above}", describe(&x))));
            }
        }
    }
    Ok(Ok(format!("120 images, {sets} subsets D, 0 violations")))
}

fn diameter_bound() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 12);
    let (mut larger, mut singletons) = (0, 0);
    let mut violations = Vec::new();
    for _ in 0..240 {
        let x = harness::random_connected_image(&mut rng, 7);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, MAXP)?;
        let diam = graphmetrics::diameter(hyperspace_graph(&k).graph())?;
        let r = graphmetrics::radius(&x.graph())?;
        if x.len() == 1 { singletons += 1 } else { larger += 1 }
        if diam >= 2 * (x.len() + r - 1) {
            violations.push((x.len(), format!("{}: diam {diam}, radius {r}", describe(&x))));
        }
    }
    let big: Vec<&String> = violations.iter().filter(|(n, _)| *n > 1).map(|(_, s)| s).collect();
    let summary = format!(
        "{} images ({singletons} with one point, {larger} larger); {} violations with #X >= 2",
        singletons + larger,
        big.len()
    );
    if let Some(first) = big.first() {
        return Ok(Err(format!("{summary}; first: {first}")));
    }
    if !violations.is_empty() {
        // The strict inequality is false for a one-point image: both sides are 0.
        return Ok(Err(format!(
            "{summary}; {} one-point images violate: diam K(X) = 0 = 2(1 + 0 - 1)",
            violations.len()
        )));
    }
    Ok(Ok(summary))
}

fn oracle_equivalence() -> Result<Outcome> {
    let mut rng = rng_for(SEED, 13);
    let mut cyclic = 0;
    for n in 0..60 {
        let size = rng.gen_range(1..=9);
        let p = rng.gen_range(0.2..0.7);
        let g = harness::random_graph(&mut rng, size, p);
        let got = graphmetrics::longest_cycle(&g, graphmetrics::DEFAULT_LONGEST_CYCLE_VERTICES)?;
        let got_len = got.as_ref().map_or(0, |c| c.len());
        let want = common::longest_cycle_oracle(&g);
        let valid = got.as_ref().is_none_or(|c| c.is_valid_in(&g));
        if got_len != want || !valid {
            return Ok(Err(format!("graph {n} edges {:?}: solver {got_len}, oracle {want}", g.edges().collect::<Vec<_>>())));
        }
        cyclic += usize::from(want > 0);
    }
    let (mut yes, mut no) = (0, 0);
    for n in 0..80 {
        let (x, y) = (arc(harness::random_image(&mut rng, 3)), arc(harness::random_image(&mut rng, 3)));
        let f = harness::random_continuous_function(&mut rng, &x, &y)?;
        let g = harness::random_continuous_function(&mut rng, &x, &y)?;
        let d = homotopy::homotopic(&f, &g, DEFAULT_FUNCTION_GRAPH_VERTICES)?;
        let want = common::homotopy_oracle(&x, &y, f.table(), g.table());
        let m = d.table().map(|h| h.m());
        if d.homotopic != want.is_some() || m != want {
            return Ok(Err(format!("instance {n}: f={:?} g={:?} solver m={m:?}, oracle m={want:?}", f.table(), g.table())));
        }
        if want.is_some() { yes += 1 } else { no += 1 }
    }
    Ok(Ok(format!(
        "60 graphs ({cyclic} with cycles) agree; 80 homotopy instances ({yes} homotopic, {no} not) agree with minimal m"
    )))
}
