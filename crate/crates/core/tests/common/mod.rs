//! Independent oracles and a shared corpus for the integration suites.
//!
//! Nothing here calls the library's linear algebra, conversion or graph
//! search; the oracles are deliberately naive.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use polydiam::constructions::{
    crosspolytope, cube, hirsch_sharp, klee_walkup, orthant, polygon, product, simplex, transportation,
};
use polydiam::{HPolyhedron, Rational};

/// Row-echelon rank by plain Gaussian elimination.
pub fn rank_oracle(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Unique solution of a square system, if the matrix is nonsingular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut().skip(c) {
            *x /= &piv;
        }
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Vertices of `{x : b + A x >= 0}` (no equations) by trying every
/// `d`-subset of rows as a tight system. Sorted, without duplicates.
pub fn brute_force_vertices(h: &HPolyhedron) -> Vec<Vec<Rational>> {
    assert!(h.linearity.is_empty(), "oracle handles inequalities only");
    let d = h.dim;
    let mut found = BTreeSet::new();
    for rows in combinations(h.rows.len(), d) {
        let a: Vec<Vec<Rational>> = rows.iter().map(|&i| h.rows[i].a.clone()).collect();
        let b: Vec<Rational> = rows.iter().map(|&i| -h.rows[i].b.clone()).collect();
        let Some(x) = solve_square(&a, &b) else { continue };
        let feasible = h.rows.iter().all(|r| {
            let s: Rational = r.a.iter().zip(&x).map(|(p, q)| p * q).sum::<Rational>() + &r.b;
            !s.is_negative()
        });
        if feasible {
            found.insert(x);
        }
    }
    found.into_iter().collect()
}

/// Vertex adjacency from the vertex list: `u ~ v` iff the rows tight at
/// both have rank `d - 1` and no third vertex is tight on all of them.
pub fn brute_force_edges(h: &HPolyhedron, vertices: &[Vec<Rational>]) -> BTreeSet<(usize, usize)> {
    let d = h.dim;
    let tight = |x: &Vec<Rational>| -> BTreeSet<usize> {
        h.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| (r.a.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>() + &r.b).is_zero())
            .map(|(i, _)| i)
            .collect()
    };
    let sets: Vec<BTreeSet<usize>> = vertices.iter().map(tight).collect();
    let mut edges = BTreeSet::new();
    for u in 0..vertices.len() {
        for v in u + 1..vertices.len() {
            let common: BTreeSet<usize> = sets[u].intersection(&sets[v]).copied().collect();
            let a: Vec<Vec<Rational>> = common.iter().map(|&i| h.rows[i].a.clone()).collect();
            if a.is_empty() || rank_oracle(&a) + 1 != d {
                continue;
            }
            let third = (0..vertices.len()).any(|w| w != u && w != v && common.is_subset(&sets[w]));
            if !third {
                edges.insert((u, v));
            }
        }
    }
    edges
}

/// All-pairs distances by Floyd-Warshall; `None` for unreachable.
pub fn floyd_diameter(n: usize, edges: &BTreeSet<(usize, usize)>) -> Option<usize> {
    const INF: usize = usize::MAX / 4;
    let mut dist = vec![vec![INF; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in edges {
        dist[a][b] = 1;
        dist[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    let max = dist.iter().flatten().copied().max().unwrap_or(0);
    (max < INF).then_some(max)
}

/// Largest diameter of a connected graph on 2-subsets of `{1..4}` in which
/// any two nodes are joined inside the nodes containing their intersection.
/// Enumerates node masks over the six subsets and edge masks over the
/// fifteen pairs of subsets, skipping edges that leave the node set.
pub fn extremal_subset_diameter_4_2() -> usize {
    let subsets: Vec<u8> = (0u8..16).filter(|m| m.count_ones() == 2).collect();
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
    let mut best = 0;
    for nodes in 1u32..64 {
        let inside = |i: usize| nodes >> i & 1 == 1;
        let allowed: u32 =
            pairs.iter().enumerate().filter(|(_, &(a, b))| inside(a) && inside(b)).fold(0, |acc, (k, _)| acc | 1 << k);
        // Iterate over submasks of `allowed`.
        let mut e = allowed;
        loop {
            let adj = |a: usize, b: usize| {
                pairs.iter().position(|&p| p == (a.min(b), a.max(b))).is_some_and(|k| e >> k & 1 == 1)
            };
            let members: Vec<usize> = (0..6).filter(|&i| inside(i)).collect();
            let reach = |from: usize, filter: u8| -> Vec<Option<usize>> {
                let mut dist = vec![None; 6];
                dist[from] = Some(0);
                let mut q = VecDeque::from([from]);
                while let Some(x) = q.pop_front() {
                    for &y in &members {
                        if dist[y].is_none() && subsets[y] & filter == filter && adj(x, y) {
                            dist[y] = Some(dist[x].unwrap() + 1);
                            q.push_back(y);
                        }
                    }
                }
                dist
            };
            let mut ok = true;
            let mut diam = 0;
            'pairs: for &u in &members {
                let all = reach(u, 0);
                for &v in &members {
                    match all[v] {
                        Some(dv) => diam = diam.max(dv),
                        None => {
                            ok = false;
                            break 'pairs;
                        }
                    }
                    if v > u && reach(u, subsets[u] & subsets[v])[v].is_none() {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            if ok {
                best = best.max(diam);
            }
            if e == 0 {
                break;
            }
            e = (e - 1) & allowed;
        }
    }
    best
}

/// Small named polytopes used across suites.
pub fn corpus() -> Vec<(String, HPolyhedron)> {
    let mut out: Vec<(String, HPolyhedron)> = Vec::new();
    for d in 2..=4 {
        out.push((format!("simplex{d}"), simplex(d)));
        out.push((format!("cube{d}"), cube(d)));
    }
    out.push(("crosspolytope3".into(), crosspolytope(3)));
    for n in [5, 6, 7] {
        out.push((format!("polygon{n}"), polygon(n).unwrap()));
    }
    out.push(("prism_triangle".into(), product(&simplex(2), &cube(1))));
    out.push(("prism_pentagon".into(), product(&polygon(5).unwrap(), &cube(1))));
    out.push(("simplex2xsimplex2".into(), product(&simplex(2), &simplex(2))));
    out.push(("q4".into(), klee_walkup().q4));
    out.push(("hirsch_sharp_4_7".into(), hirsch_sharp(4, 7).unwrap()));
    out.push(("orthant_3_2".into(), orthant(3, 2).unwrap()));
    out.push(("orthant_4_3".into(), orthant(4, 3).unwrap()));
    let t = transportation(&[q(3), q(2)], &[q(1), q(2), q(2)]).unwrap();
    out.push(("transportation_2x3".into(), t.reduced));
    out
}

pub fn q(x: i64) -> Rational {
    BigRational::from_integer(x.into())
}
