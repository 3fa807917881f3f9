//! Distances, diameters, non-revisiting paths and monotone paths.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith::{dot, Rational};
use crate::error::{Error, Result};
use crate::graph::PolyGraph;
use crate::par::{map_range, Execution};
use crate::polytope::Polyhedron;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathKind {
    Shortest,
    NonRevisiting,
    Monotone,
}

/// A path certificate, serialized as
/// `{source, target, length, path: [labels], kind}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub source: String,
    pub target: String,
    pub length: usize,
    pub path: Vec<String>,
    pub kind: PathKind,
}

impl PathReport {
    pub fn from_nodes(g: &PolyGraph, nodes: &[usize], kind: PathKind) -> Self {
        debug_assert!(nodes.windows(2).all(|w| g.has_edge(w[0], w[1])));
        PathReport {
            source: g.label(nodes[0]).to_string(),
            target: g.label(*nodes.last().expect("nonempty path")).to_string(),
            length: nodes.len() - 1,
            path: nodes.iter().map(|&i| g.label(i).to_string()).collect(),
            kind,
        }
    }
}

/// Breadth-first distances from `source`; `None` marks unreachable nodes.
pub fn bfs_distances(g: &PolyGraph, source: usize) -> Result<Vec<Option<usize>>> {
    if source >= g.len() {
        return Err(Error::OutOfRange { index: source, len: g.len() });
    }
    Ok(bfs(g, source))
}

fn bfs(g: &PolyGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes have a distance");
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Distance matrix, one BFS per source.
pub fn all_distances(g: &PolyGraph, exec: Execution) -> Vec<Vec<Option<usize>>> {
    map_range(g.len(), exec, |s| bfs(g, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diameter {
    pub value: usize,
    /// Lexicographically first pair at maximum distance.
    pub witness: (usize, usize),
}

pub fn diameter(g: &PolyGraph) -> Result<Diameter> {
    diameter_with(g, Execution::Parallel)
}

pub fn diameter_with(g: &PolyGraph, exec: Execution) -> Result<Diameter> {
    if g.is_empty() {
        return Err(Error::InvalidArgument("empty graph".into()));
    }
    let ecc: Vec<Option<(usize, usize)>> = map_range(g.len(), exec, |s| {
        let dist = bfs(g, s);
        let mut best = (0, s);
        for (t, d) in dist.iter().enumerate() {
            let d = (*d)?;
            if d > best.0 {
                best = (d, t);
            }
        }
        Some(best)
    });
    let mut out = Diameter { value: 0, witness: (0, 0) };
    for (s, e) in ecc.into_iter().enumerate() {
        let (d, t) = e.ok_or(Error::Disconnected)?;
        if d > out.value {
            out = Diameter { value: d, witness: (s.min(t), s.max(t)) };
        }
    }
    Ok(out)
}

/// A shortest path, ties broken toward lower node indices.
pub fn shortest_path(g: &PolyGraph, u: usize, v: usize) -> Result<Option<PathReport>> {
    let dist = bfs_distances(g, v)?;
    if u >= g.len() {
        return Err(Error::OutOfRange { index: u, len: g.len() });
    }
    let Some(mut left) = dist[u] else { return Ok(None) };
    let mut nodes = vec![u];
    let mut cur = u;
    while left > 0 {
        cur = *g.neighbors(cur).iter().find(|&&w| dist[w] == Some(left - 1)).expect("BFS layer has a predecessor");
        nodes.push(cur);
        left -= 1;
    }
    Ok(Some(PathReport::from_nodes(g, &nodes, PathKind::Shortest)))
}

/// Outcome of a bounded exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search was exhaustive and nothing exists.
    Absent,
    /// The expansion budget ran out first.
    Inconclusive,
}

/// Walks on a graph whose nodes carry label sets (facets through a vertex,
/// vertices of a simplex). A walk is non-revisiting when it never enters a
/// label it has previously left.
pub(crate) struct NonRevisitingWalk<'a> {
    pub graph: &'a PolyGraph,
    pub sets: &'a [FixedBitSet],
    /// No non-revisiting walk is longer than this.
    pub cap: usize,
}

impl NonRevisitingWalk<'_> {
    /// Shortest non-revisiting walk from `u` to `v`. `dist_to_v` are graph
    /// distances to `v`, used as an admissible lower bound.
    pub fn find(&self, u: usize, v: usize, dist_to_v: &[Option<usize>], budget: u64) -> Search<Vec<usize>> {
        let Some(lower) = dist_to_v[u] else { return Search::Absent };
        if lower > self.cap {
            return Search::Absent;
        }
        let mut memo: HashMap<(usize, FixedBitSet), usize> = HashMap::new();
        let mut spent = 0u64;
        let empty = FixedBitSet::with_capacity(self.sets[u].len());
        for limit in lower..=self.cap {
            let mut path = vec![u];
            match self.dfs(u, v, &empty, limit, dist_to_v, &mut memo, &mut path, &mut spent, budget) {
                Some(true) => return Search::Found(path),
                Some(false) => {}
                None => return Search::Inconclusive,
            }
        }
        Search::Absent
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        cur: usize,
        target: usize,
        left: &FixedBitSet,
        remaining: usize,
        dist: &[Option<usize>],
        memo: &mut HashMap<(usize, FixedBitSet), usize>,
        path: &mut Vec<usize>,
        spent: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if cur == target {
            return Some(true);
        }
        match dist[cur] {
            Some(d) if d <= remaining => {}
            _ => return Some(false),
        }
        let key = (cur, left.clone());
        if memo.get(&key).is_some_and(|&failed| failed >= remaining) {
            return Some(false);
        }
        *spent += 1;
        if *spent > budget {
            return None;
        }
        let mut next: Vec<usize> = self.graph.neighbors(cur).to_vec();
        next.sort_by_key(|&w| (dist[w].unwrap_or(usize::MAX), w));
        let here = &self.sets[cur];
        for w in next {
            let there = &self.sets[w];
            if there.difference(here).any(|f| left.contains(f)) {
                continue;
            }
            let mut new_left = left.clone();
            new_left.extend(here.difference(there));
            if self.sets[target].intersection(&new_left).next().is_some() {
                continue;
            }
            path.push(w);
            match self.dfs(w, target, &new_left, remaining - 1, dist, memo, path, spent, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            path.pop();
        }
        let e = memo.entry(key).or_insert(0);
        *e = (*e).max(remaining);
        Some(false)
    }
}

/// Default node-expansion budget per vertex pair.
pub const DEFAULT_SEARCH_BUDGET: u64 = 2_000_000;

fn hirsch_cap(p: &Polyhedron) -> usize {
    p.facet_count().saturating_sub(p.dim())
}

/// A shortest non-revisiting path from `u` to `v`, or proof that none
/// exists. Found paths never exceed `n - d`.
pub fn nonrevisiting_path(p: &Polyhedron, u: usize, v: usize, budget: u64) -> Result<Search<PathReport>> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    let g = p.graph();
    let sets = p.all_vertex_facets();
    let dist = bfs_distances(g, v)?;
    if u >= g.len() {
        return Err(Error::OutOfRange { index: u, len: g.len() });
    }
    let walk = NonRevisitingWalk { graph: g, sets: &sets, cap: hirsch_cap(p) };
    Ok(match walk.find(u, v, &dist, budget) {
        Search::Found(nodes) => {
            assert!(nodes.len() - 1 <= walk.cap, "non-revisiting path longer than n - d");
            Search::Found(PathReport::from_nodes(g, &nodes, PathKind::NonRevisiting))
        }
        Search::Absent => Search::Absent,
        Search::Inconclusive => Search::Inconclusive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PropertyOutcome {
    Holds,
    /// Exhaustive search found no valid path between these nodes.
    Fails {
        pair: (usize, usize),
    },
    /// Budget exhausted on this pair before a decision.
    Inconclusive {
        pair: (usize, usize),
    },
}

impl PropertyOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyOutcome::Holds)
    }
}

pub(crate) fn walk_property(walk: &NonRevisitingWalk<'_>, budget: u64, exec: Execution) -> PropertyOutcome {
    let n = walk.graph.len();
    let dist = all_distances(walk.graph, exec);
    let per_target: Vec<Option<PropertyOutcome>> = map_range(n, exec, |v| {
        for u in 0..v {
            match walk.find(u, v, &dist[v], budget) {
                Search::Found(_) => {}
                Search::Absent => return Some(PropertyOutcome::Fails { pair: (u, v) }),
                Search::Inconclusive => return Some(PropertyOutcome::Inconclusive { pair: (u, v) }),
            }
        }
        None
    });
    per_target.into_iter().flatten().next().unwrap_or(PropertyOutcome::Holds)
}

/// Whether every pair of vertices is joined by a non-revisiting path.
pub fn nonrevisiting_property(p: &Polyhedron, budget: u64) -> Result<PropertyOutcome> {
    nonrevisiting_property_with(p, budget, Execution::Parallel)
}

pub fn nonrevisiting_property_with(p: &Polyhedron, budget: u64, exec: Execution) -> Result<PropertyOutcome> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    let sets = p.all_vertex_facets();
    let walk = NonRevisitingWalk { graph: p.graph(), sets: &sets, cap: hirsch_cap(p) };
    Ok(walk_property(&walk, budget, exec))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    /// The unique maximizer of the functional.
    pub optimum: usize,
    /// Longest shortest monotone path to the optimum over all sources.
    pub worst_length: usize,
    pub worst_source: usize,
    /// Shortest monotone path length from the unique minimizer.
    pub from_minimum: usize,
    /// Sources with no monotone path to the optimum.
    pub unreachable: Vec<usize>,
}

/// Monotone distances to the maximizer of `c·x` along edges where `c`
/// strictly increases.
pub fn monotone_eccentricity(p: &Polyhedron, c: &[Rational]) -> Result<MonotoneReport> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if c.len() != p.dim() {
        return Err(Error::InvalidArgument(format!(
            "functional has {} coefficients, polytope dimension is {}",
            c.len(),
            p.dim()
        )));
    }
    let g = p.graph();
    let values: Vec<Rational> = p.v.vertices.iter().map(|v| dot(c, v)).collect();
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]).then(a.cmp(&b)));
    let optimum = order[0];
    if order.len() > 1 && values[order[1]] == values[optimum] {
        return Err(Error::NonUniqueOptimum(optimum.min(order[1]), optimum.max(order[1])));
    }
    let minimum = *order.last().expect("polytope has vertices");
    for (u, w) in g.edges() {
        if values[u] == values[w] {
            return Err(Error::TieOnEdge(u, w));
        }
    }
    // Reverse BFS: from x step to neighbors with smaller value.
    let mut dist: Vec<Option<usize>> = vec![None; g.len()];
    dist[optimum] = Some(0);
    let mut queue = VecDeque::from([optimum]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].expect("queued");
        for &y in g.neighbors(x) {
            if values[y] < values[x] && dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    let unreachable: Vec<usize> = (0..g.len()).filter(|&u| dist[u].is_none()).collect();
    let (worst_source, worst_length) = dist
        .iter()
        .enumerate()
        .filter_map(|(u, d)| d.map(|d| (u, d)))
        .fold((optimum, 0), |best, (u, d)| if d > best.1 { (u, d) } else { best });
    Ok(MonotoneReport {
        optimum,
        worst_length,
        worst_source,
        from_minimum: dist[minimum].unwrap_or(usize::MAX),
        unreachable,
    })
}
