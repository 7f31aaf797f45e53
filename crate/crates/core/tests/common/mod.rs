//! Brute-force reference implementations. None of these call into the
//! library's adjacency tables, search routines or graph metrics; they
//! work from coordinates and edge queries only.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{HashSet, VecDeque};

use digitopo::{DigitalImage, FiniteGraph, Point};

/// c_u adjacency straight from coordinates.
pub fn adj(p: &Point, q: &Point, u: usize) -> bool {
    let mut differing = 0;
    for (a, b) in p.coords().iter().zip(q.coords()) {
        match (a - b).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= u
}

pub fn adj_eq(p: &Point, q: &Point, u: usize) -> bool {
    p == q || adj(p, q, u)
}

/// Is the point set connected under c_u (empty counts as not connected).
pub fn connected(points: &[Point], u: usize) -> bool {
    if points.is_empty() {
        return false;
    }
    let mut seen = vec![false; points.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..points.len() {
            if !seen[j] && adj(&points[i], &points[j], u) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Index subsets of an image as point lists.
pub fn subset_points(x: &DigitalImage, mask: u64) -> Vec<Point> {
    (0..x.len()).filter(|i| mask >> i & 1 == 1).map(|i| x.point(i).clone()).collect()
}

/// A and B are κ′-adjacent: distinct and every point of each is adjacent
/// or equal to some point of the other.
pub fn hyper_adj(a: &[Point], b: &[Point], u: usize) -> bool {
    let covered = |s: &[Point], t: &[Point]| s.iter().all(|p| t.iter().any(|q| adj_eq(p, q, u)));
    let (sa, sb): (HashSet<&Point>, HashSet<&Point>) = (a.iter().collect(), b.iter().collect());
    sa != sb && covered(a, b) && covered(b, a)
}

pub fn hyper_adj_eq(a: &[Point], b: &[Point], u: usize) -> bool {
    let (sa, sb): (HashSet<&Point>, HashSet<&Point>) = (a.iter().collect(), b.iter().collect());
    sa == sb || hyper_adj(a, b, u)
}

/// Every table X -> Y by counting in base #Y.
pub fn all_tables(nx: usize, ny: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t = vec![0; nx];
    loop {
        out.push(t.clone());
        let mut i = 0;
        loop {
            if i == nx {
                return out;
            }
            t[i] += 1;
            if t[i] < ny {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

pub fn table_continuous(x: &DigitalImage, y: &DigitalImage, t: &[usize]) -> bool {
    let (ux, uy) = (x.adjacency().u(), y.adjacency().u());
    (0..x.len()).all(|i| {
        (0..x.len()).all(|j| !adj(x.point(i), x.point(j), ux) || adj_eq(y.point(t[i]), y.point(t[j]), uy))
    })
}

pub fn continuous_tables(x: &DigitalImage, y: &DigitalImage) -> Vec<Vec<usize>> {
    all_tables(x.len(), y.len()).into_iter().filter(|t| table_continuous(x, y, t)).collect()
}

/// One step of a homotopy: f(x) ↔= g(x) for every x. Both slices are
/// already known to be continuous.
pub fn one_step(y: &DigitalImage, f: &[usize], g: &[usize]) -> bool {
    let uy = y.adjacency().u();
    f != g && f.iter().zip(g).all(|(&a, &b)| adj_eq(y.point(a), y.point(b), uy))
}

/// Smallest m for which a homotopy table of m steps from f to g exists,
/// searching tables of every length up to the number of continuous maps.
pub fn homotopy_oracle(x: &DigitalImage, y: &DigitalImage, f: &[usize], g: &[usize]) -> Option<usize> {
    let maps = continuous_tables(x, y);
    let mut reach: HashSet<Vec<usize>> = HashSet::from([f.to_vec()]);
    for m in 0..=maps.len() {
        if reach.contains(g) {
            return Some(m);
        }
        let mut next = reach.clone();
        for h in &maps {
            if !next.contains(h) && reach.iter().any(|k| one_step(y, k, h)) {
                next.insert(h.clone());
            }
        }
        reach = next;
    }
    None
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Longest simple cycle by trying every ordering of every vertex subset
/// (least vertex first). 0 if the graph is acyclic.
pub fn longest_cycle_oracle(g: &FiniteGraph) -> usize {
    let n = g.n();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as usize;
        if k < 3 || k <= best {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut rest = verts[1..].to_vec();
        let mut found = false;
        permute(&mut rest, 0, &mut |order| {
            if found {
                return;
            }
            let mut cyc = vec![verts[0]];
            cyc.extend_from_slice(order);
            found = (0..k).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % k]));
        });
        if found {
            best = k;
        }
    }
    best
}

/// Shortest cycle length by the same exhaustive search, from below.
pub fn girth_oracle(g: &FiniteGraph) -> Option<usize> {
    let n = g.n();
    for k in 3..=n {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != k {
                continue;
            }
            let verts: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let mut rest = verts[1..].to_vec();
            let mut found = false;
            permute(&mut rest, 0, &mut |order| {
                if found {
                    return;
                }
                let mut cyc = vec![verts[0]];
                cyc.extend_from_slice(order);
                found = (0..k).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % k]));
            });
            if found {
                return Some(k);
            }
        }
    }
    None
}

pub fn dominates(g: &FiniteGraph, set: &[usize]) -> bool {
    (0..g.n()).all(|v| set.iter().any(|&d| d == v || g.has_edge(d, v)))
}

/// Domination number by trying subsets in order of size.
pub fn domination_oracle(g: &FiniteGraph) -> usize {
    let n = g.n();
    (0..=n)
        .find(|&k| {
            (0u64..1 << n).any(|mask| {
                mask.count_ones() as usize == k
                    && dominates(g, &(0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            })
        })
        .expect("the whole vertex set dominates")
}

/// All-pairs distances by Floyd-Warshall; None for unreachable pairs.
pub fn distance_matrix(g: &FiniteGraph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for i in 0..n {
        d[i][i] = Some(0);
        for j in 0..n {
            if g.has_edge(i, j) {
                d[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// (radius, diameter) of a connected graph.
pub fn radius_diameter_oracle(g: &FiniteGraph) -> (usize, usize) {
    let d = distance_matrix(g);
    let ecc: Vec<usize> = d.iter().map(|row| row.iter().map(|x| x.expect("connected")).max().unwrap_or(0)).collect();
    (*ecc.iter().min().unwrap_or(&0), *ecc.iter().max().unwrap_or(&0))
}

pub fn components_oracle(g: &FiniteGraph) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in 0..n {
                if !seen[w] && g.has_edge(v, w) {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    count
}
