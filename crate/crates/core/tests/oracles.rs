//! Library results against the brute-force references in `common`.

mod common;

use std::sync::Arc;

use digitopo::graphmetrics;
use digitopo::harness::{self, rng_for};
use digitopo::homotopy::{self, build_function_graph, Flavor, DEFAULT_FUNCTION_GRAPH_VERTICES};
use digitopo::hyperspace::{self, hyperspace_graph};
use digitopo::multivalued;
use digitopo::{FamilyKind, SubsetFamily};
use rand::Rng;

const MAXP: usize = hyperspace::DEFAULT_HYPERSPACE_POINTS;

#[test]
fn connected_subsets_match_mask_scan() {
    let mut rng = rng_for(7, 0);
    for _ in 0..150 {
        let x = harness::random_image(&mut rng, 7);
        let u = x.adjacency().u();
        let want: Vec<u64> = (1u64..1 << x.len())
            .filter(|&m| common::connected(&common::subset_points(&x, m), u))
            .collect();
        let mut got: Vec<u64> = SubsetFamily::of_kind(&x, FamilyKind::Connected, MAXP)
            .unwrap()
            .members()
            .iter()
            .map(|s| s.mask())
            .collect();
        got.sort_unstable();
        assert_eq!(got, want);
    }
}

#[test]
fn hyperspace_edges_match_pointwise_definition() {
    let mut rng = rng_for(7, 1);
    for _ in 0..80 {
        let x = harness::random_image(&mut rng, 5);
        let u = x.adjacency().u();
        for kind in [FamilyKind::Full, FamilyKind::Connected] {
            let fam = SubsetFamily::of_kind(&x, kind, MAXP).unwrap();
            let view = hyperspace_graph(&fam);
            for i in 0..fam.len() {
                for j in 0..fam.len() {
                    let (a, b) = (fam.points_of(fam.member(i)), fam.points_of(fam.member(j)));
                    let (vi, vj) = (view.vertex_of(fam.member(i)).unwrap(), view.vertex_of(fam.member(j)).unwrap());
                    assert_eq!(view.graph().has_edge(vi, vj), common::hyper_adj(&a, &b, u), "{a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn continuous_map_enumeration_matches_filter() {
    let mut rng = rng_for(7, 2);
    for _ in 0..100 {
        let x = Arc::new(harness::random_image(&mut rng, 4));
        let y = Arc::new(harness::random_image(&mut rng, 4));
        let mut want = common::continuous_tables(&x, &y);
        want.sort();
        let got: Vec<Vec<usize>> = homotopy::enumerate_continuous_maps(&x, &y, DEFAULT_FUNCTION_GRAPH_VERTICES)
            .unwrap()
            .iter()
            .map(|f| f.table().to_vec())
            .collect();
        assert_eq!(got, want);
    }
}

#[test]
fn function_graph_edges_match_pairwise_check() {
    let mut rng = rng_for(7, 3);
    for _ in 0..60 {
        let x = Arc::new(harness::random_image(&mut rng, 3));
        let y = Arc::new(harness::random_image(&mut rng, 3));
        let (ux, uy) = (x.adjacency().u(), y.adjacency().u());
        let phi = build_function_graph(&x, &y, Flavor::Phi, DEFAULT_FUNCTION_GRAPH_VERTICES).unwrap();
        let psi = build_function_graph(&x, &y, Flavor::Psi, DEFAULT_FUNCTION_GRAPH_VERTICES).unwrap();
        for i in 0..phi.len() {
            for j in 0..phi.len() {
                let (f, g) = (phi.table(i), phi.table(j));
                assert_eq!(phi.graph().has_edge(i, j), common::one_step(&y, &f, &g));
                let strong = f != g
                    && (0..x.len()).all(|a| {
                        (0..x.len()).all(|b| {
                            !common::adj_eq(x.point(a), x.point(b), ux) || common::adj_eq(y.point(f[a]), y.point(g[b]), uy)
                        })
                    });
                let (pi, pj) = (psi.index_of_table(&f).unwrap(), psi.index_of_table(&g).unwrap());
                assert_eq!(psi.graph().has_edge(pi, pj), strong);
            }
        }
    }
}

#[test]
fn homotopy_decisions_match_table_search() {
    let mut rng = rng_for(7, 4);
    for _ in 0..60 {
        let x = Arc::new(harness::random_image(&mut rng, 3));
        let y = Arc::new(harness::random_image(&mut rng, 3));
        let f = harness::random_continuous_function(&mut rng, &x, &y).unwrap();
        let g = harness::random_continuous_function(&mut rng, &x, &y).unwrap();
        let d = homotopy::homotopic(&f, &g, DEFAULT_FUNCTION_GRAPH_VERTICES).unwrap();
        assert_eq!(d.table().map(|h| h.m()), common::homotopy_oracle(&x, &y, f.table(), g.table()));
    }
}

#[test]
fn girth_matches_exhaustive_search() {
    let mut rng = rng_for(7, 5);
    for _ in 0..60 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.15..0.6);
        let g = harness::random_graph(&mut rng, n, p);
        let got = graphmetrics::girth(&g);
        assert!(got.as_ref().is_none_or(|c| c.is_valid_in(&g)));
        assert_eq!(got.map(|c| c.len()), common::girth_oracle(&g));
    }
}

#[test]
fn longest_cycle_matches_permutations() {
    let mut rng = rng_for(7, 6);
    for _ in 0..60 {
        let n = rng.gen_range(1..=9);
        let p = rng.gen_range(0.2..0.8);
        let g = harness::random_graph(&mut rng, n, p);
        let got = graphmetrics::longest_cycle(&g, graphmetrics::DEFAULT_LONGEST_CYCLE_VERTICES).unwrap();
        assert!(got.as_ref().is_none_or(|c| c.is_valid_in(&g)));
        assert_eq!(got.map_or(0, |c| c.len()), common::longest_cycle_oracle(&g));
    }
}

#[test]
fn domination_number_matches_subset_scan() {
    let mut rng = rng_for(7, 7);
    for _ in 0..80 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.6);
        let g = harness::random_graph(&mut rng, n, p);
        let set = graphmetrics::minimum_dominating_set(&g, graphmetrics::DEFAULT_DOMINATING_VERTICES).unwrap();
        assert!(common::dominates(&g, &set));
        assert_eq!(set.len(), common::domination_oracle(&g));
    }
}

#[test]
fn radius_and_diameter_match_floyd_warshall() {
    let mut rng = rng_for(7, 8);
    for _ in 0..60 {
        let x = harness::random_connected_image(&mut rng, 6);
        let k = SubsetFamily::of_kind(&x, FamilyKind::Connected, MAXP).unwrap();
        for g in [x.graph(), hyperspace_graph(&k).graph().clone()] {
            let (r, d) = common::radius_diameter_oracle(&g);
            assert_eq!(graphmetrics::radius(&g).unwrap(), r);
            assert_eq!(graphmetrics::diameter(&g).unwrap(), d);
        }
    }
}

#[test]
fn component_counts_match_bfs() {
    let mut rng = rng_for(7, 9);
    for _ in 0..80 {
        let n = rng.gen_range(1..=12);
        let g = harness::random_graph(&mut rng, n, 0.2);
        assert_eq!(g.component_count(), common::components_oracle(&g));
    }
}

#[test]
fn multivalued_continuity_matches_definitions() {
    let mut rng = rng_for(7, 10);
    for _ in 0..200 {
        let x = Arc::new(harness::random_image(&mut rng, 4));
        let y = Arc::new(harness::random_image(&mut rng, 4));
        let f = harness::random_multifunction(&mut rng, &x, &y);
        let (ux, uy) = (x.adjacency().u(), y.adjacency().u());
        let pts = |vals: &[usize]| vals.iter().map(|&i| y.point(i).clone()).collect::<Vec<_>>();
        let mut weak = true;
        let mut strong = true;
        for a in 0..x.len() {
            for b in 0..x.len() {
                if !common::adj(x.point(a), x.point(b), ux) {
                    continue;
                }
                let (fa, fb) = (pts(&f.values()[a]), pts(&f.values()[b]));
                // Weak: some value of a is adjacent or equal to some value of b.
                let touching = fa.iter().any(|p| fb.iter().any(|q| common::adj_eq(p, q, uy)));
                weak &= touching;
                strong &= fa.iter().all(|p| fb.iter().any(|q| common::adj_eq(p, q, uy)));
            }
        }
        assert_eq!(multivalued::has_weak_continuity(&f), weak, "{:?}", f.values());
        assert_eq!(multivalued::has_strong_continuity(&f), strong, "{:?}", f.values());
    }
}
