//! Graphs on `d`-subsets of `{1..n}` with the connected-layer property:
//! any two nodes `u, v` are joined by a path whose nodes all contain
//! `u ∩ v`. Polytope graphs of simple polytopes are the model instances
//! (nodes are the facet sets of vertices).

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{kalai_kleitman_upper, subset_graph_bound, subset_graph_bounds_respected};
use crate::error::{Error, Result};
use crate::graph::PolyGraph;
use crate::par::{map_slice, Execution};
use crate::paths::diameter_with;
use crate::polytope::Polyhedron;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamilyGraph {
    n: usize,
    d: usize,
    nodes: Vec<Vec<usize>>,
    graph: PolyGraph,
}

fn node_label(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    parts.join(",")
}

impl SubsetFamilyGraph {
    /// Nodes are subsets of `{1..n}` of size `d`; edges index into `nodes`.
    pub fn new(n: usize, d: usize, nodes: Vec<Vec<usize>>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashMap::new();
        let mut sorted = Vec::with_capacity(nodes.len());
        for (i, mut s) in nodes.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.len() != d || s.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::InvalidArgument(format!("node {} is not a {d}-subset of 1..{n}", i + 1)));
            }
            if seen.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("node {} is repeated", i + 1)));
            }
            sorted.push(s);
        }
        let len = sorted.len();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= len || b >= len || a == b) {
            return Err(Error::InvalidArgument(format!("bad edge {} {}", a + 1, b + 1)));
        }
        let graph = PolyGraph::from_edges(sorted.iter().map(|s| node_label(s)).collect(), edges.iter().copied());
        Ok(SubsetFamilyGraph { n, d, nodes: sorted, graph })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn nodes(&self) -> &[Vec<usize>] {
        &self.nodes
    }

    pub fn graph(&self) -> &PolyGraph {
        &self.graph
    }

    /// Same graph with nodes in lexicographic order. Two graphs are equal
    /// as subset families iff their canonical forms are equal.
    pub fn canonical(&self) -> SubsetFamilyGraph {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| self.nodes[a].cmp(&self.nodes[b]));
        let mut pos = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let nodes = order.iter().map(|&i| self.nodes[i].clone()).collect();
        let edges: Vec<(usize, usize)> = self.graph.edges().map(|(a, b)| (pos[a], pos[b])).collect();
        SubsetFamilyGraph::new(self.n, self.d, nodes, &edges).expect("canonical form of a valid graph")
    }

    fn element_sets(&self) -> Vec<FixedBitSet> {
        self.nodes
            .iter()
            .map(|s| {
                let mut b = FixedBitSet::with_capacity(self.n + 1);
                b.extend(s.iter().copied());
                b
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerCheck {
    pub valid: bool,
    /// First pair (in lexicographic order) not joined inside its layer.
    pub witness: Option<(usize, usize)>,
}

/// Checks the connected-layer property for every node pair.
pub fn validate_layer_property(g: &SubsetFamilyGraph) -> LayerCheck {
    let sets = g.element_sets();
    let m = sets.len();
    let mut components: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
    for u in 0..m {
        for v in u + 1..m {
            let common: FixedBitSet = sets[u].intersection(&sets[v]).collect::<FixedBitSet>();
            let comp = components.entry(common.clone()).or_insert_with(|| layer_components(g, &sets, &common));
            if comp[u] != comp[v] {
                return LayerCheck { valid: false, witness: Some((u, v)) };
            }
        }
    }
    LayerCheck { valid: true, witness: None }
}

/// Component ids of the subgraph induced on nodes containing `common`
/// (`usize::MAX` for nodes outside it).
fn layer_components(g: &SubsetFamilyGraph, sets: &[FixedBitSet], common: &FixedBitSet) -> Vec<usize> {
    let inside: Vec<bool> = sets.iter().map(|s| common.is_subset(s)).collect();
    let mut comp = vec![usize::MAX; sets.len()];
    let mut next = 0;
    for start in 0..sets.len() {
        if !inside[start] || comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in g.graph.neighbors(x) {
                if inside[y] && comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Vertices labeled by the (1-based) facets through them; edges are the
/// skeleton edges.
pub fn from_simple_polytope(p: &Polyhedron) -> Result<SubsetFamilyGraph> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if !p.classify()?.simple {
        return Err(Error::NotSimple);
    }
    let nodes = (0..p.vertex_count()).map(|v| p.vertex_facets(v).ones().map(|f| f + 1).collect()).collect();
    let edges: Vec<(usize, usize)> = p.graph().edges().collect();
    SubsetFamilyGraph::new(p.facet_count(), p.dim(), nodes, &edges)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetDiameter {
    pub diameter: usize,
    pub witness: (usize, usize),
    /// `n^(1 + log2 d)`, rounded up.
    pub kalai_kleitman: f64,
    /// `n 2^(d-1)`, decimal.
    pub linear: String,
    /// Both bounds hold, decided exactly.
    pub within_bounds: bool,
}

pub fn subset_graph_diameter(g: &SubsetFamilyGraph) -> Result<SubsetDiameter> {
    subset_graph_diameter_with(g, Execution::Parallel)
}

pub fn subset_graph_diameter_with(g: &SubsetFamilyGraph, exec: Execution) -> Result<SubsetDiameter> {
    let diam = diameter_with(&g.graph, exec)?;
    Ok(SubsetDiameter {
        diameter: diam.value,
        witness: diam.witness,
        kalai_kleitman: kalai_kleitman_upper(g.n.max(1), g.d.max(1)),
        linear: subset_graph_bound(g.n, g.d).to_string(),
        within_bounds: subset_graph_bounds_respected(g.n.max(1), g.d.max(1), diam.value as u64),
    })
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: Option<SubsetFamilyGraph>,
    pub diameter: usize,
    /// Every candidate graph was examined.
    pub complete: bool,
    pub explored: u64,
}

/// Number of candidate graphs in the exhaustive order: for each nonempty
/// node set of size `k`, all `2^(k(k-1)/2)` edge sets. `None` on overflow.
pub fn exhaustive_count(n: usize, d: usize) -> Option<u64> {
    let total_nodes = binomial(n, d)?;
    let mut sum: u64 = 0;
    for k in 1..=total_nodes {
        let pairs = k * (k - 1) / 2;
        if pairs >= 64 {
            return None;
        }
        let term = (binomial(total_nodes as usize, k as usize)?).checked_mul(1u64 << pairs)?;
        sum = sum.checked_add(term)?;
    }
    Some(sum)
}

fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let mut r: u64 = 1;
    for i in 0..k as u64 {
        r = r.checked_mul(n as u64 - i)? / (i + 1);
    }
    Some(r)
}

fn all_subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, d, &mut Vec::new(), &mut out);
    out
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    all_subsets(m, k).into_iter().map(|c| c.into_iter().map(|x| x - 1).collect()).collect()
}

/// Diameter of a candidate if it is connected and valid.
fn evaluate(n: usize, d: usize, nodes: &[Vec<usize>], edges: &[(usize, usize)]) -> Option<usize> {
    let g = SubsetFamilyGraph::new(n, d, nodes.to_vec(), edges).ok()?;
    let diam = diameter_with(&g.graph, Execution::Sequential).ok()?;
    validate_layer_property(&g).valid.then_some(diam.value)
}

fn pairs_of(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

/// Largest diameter of a valid connected subset graph on `d`-subsets of
/// `{1..n}`.
///
/// When [`exhaustive_count`] is at most `budget`, every candidate is
/// examined: node sets by increasing size, lexicographically, and for each
/// node set the edge sets as bitmasks over the lexicographic pair list in
/// increasing order. Otherwise `budget` random candidates are drawn from
/// ChaCha8 seeded with `seed`: a uniform node-set size and node set, a
/// random spanning tree, and extra edges with a random density below 1/2.
/// The first graph reaching the best diameter is kept.
type Candidate = (usize, Vec<Vec<usize>>, Vec<(usize, usize)>);

pub fn search_max_diameter(n: usize, d: usize, budget: u64, seed: u64, exec: Execution) -> Result<SearchOutcome> {
    if n == 0 || n > 8 || d == 0 || d > 3 || d > n {
        return Err(Error::InvalidArgument("search needs 1 <= d <= 3, d <= n <= 8".into()));
    }
    let universe = all_subsets(n, d);
    let mut best: Option<Candidate> = None;
    let mut consider = |cand: Option<Candidate>| {
        if let Some(c) = cand {
            if best.as_ref().is_none_or(|b| c.0 > b.0) {
                best = Some(c);
            }
        }
    };
    let complete = exhaustive_count(n, d).is_some_and(|c| c <= budget);
    let mut explored = 0u64;
    if complete {
        for k in 1..=universe.len() {
            let pairs = pairs_of(k);
            let node_sets = combinations(universe.len(), k);
            let results = map_slice(&node_sets, exec, |idx| {
                let nodes: Vec<Vec<usize>> = idx.iter().map(|&i| universe[i].clone()).collect();
                let mut local: Option<(usize, u64)> = None;
                for mask in 0u64..(1u64 << pairs.len()) {
                    let edges: Vec<(usize, usize)> =
                        pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
                    if let Some(dm) = evaluate(n, d, &nodes, &edges) {
                        if local.is_none_or(|(bd, _)| dm > bd) {
                            local = Some((dm, mask));
                        }
                    }
                }
                local.map(|(dm, mask)| {
                    let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
                    (dm, nodes, edges)
                })
            });
            explored += node_sets.len() as u64 * (1u64 << pairs.len());
            for r in results {
                consider(r);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const CHUNK: u64 = 4096;
        while explored < budget {
            let take = CHUNK.min(budget - explored);
            let batch: Vec<_> = (0..take).map(|_| random_candidate(&universe, &mut rng)).collect();
            let results = map_slice(&batch, exec, |(nodes, edges)| {
                evaluate(n, d, nodes, edges).map(|dm| (dm, nodes.clone(), edges.clone()))
            });
            for r in results {
                consider(r);
            }
            explored += take;
        }
    }
    let (diameter, best) = match best {
        Some((dm, nodes, edges)) => (dm, Some(SubsetFamilyGraph::new(n, d, nodes, &edges)?)),
        None => (0, None),
    };
    Ok(SearchOutcome { best, diameter, complete, explored })
}

fn random_candidate(universe: &[Vec<usize>], rng: &mut ChaCha8Rng) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let k = rng.gen_range(1..=universe.len());
    let mut idx = rand::seq::index::sample(rng, universe.len(), k).into_vec();
    idx.sort_unstable();
    let nodes: Vec<Vec<usize>> = idx.iter().map(|&i| universe[i].clone()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..k)
        .map(|i| {
            let j = rng.gen_range(0..i);
            (order[i].min(order[j]), order[i].max(order[j]))
        })
        .collect();
    let density: f64 = rng.gen::<f64>() * 0.5;
    for (a, b) in pairs_of(k) {
        if rng.gen::<f64>() < density && !edges.contains(&(a, b)) {
            edges.push((a, b));
        }
    }
    (nodes, edges)
}

/// Header `n d`, one node per line (sorted elements), `edges:`, then one
/// 1-based node-index pair per line. `#` starts a comment.
pub fn parse_subset_graph(text: &str) -> Result<SubsetFamilyGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let nums = |no: usize, l: &str| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("line {no}: bad number '{t}'"))))
            .collect()
    };
    let (no, header) = lines.next().ok_or_else(|| Error::Parse("empty subset-graph file".into()))?;
    let h = nums(no, header)?;
    if h.len() != 2 {
        return Err(Error::Parse(format!("line {no}: expected 'n d'")));
    }
    let (n, d) = (h[0], h[1]);
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut in_edges = false;
    for (no, l) in lines {
        if l == "edges:" {
            if in_edges {
                return Err(Error::Parse(format!("line {no}: repeated 'edges:'")));
            }
            in_edges = true;
            continue;
        }
        let v = nums(no, l)?;
        if in_edges {
            match v[..] {
                [a, b] if a >= 1 && b >= 1 => edges.push((a - 1, b - 1)),
                _ => return Err(Error::Parse(format!("line {no}: expected a 1-based node pair"))),
            }
        } else {
            nodes.push(v);
        }
    }
    if !in_edges {
        return Err(Error::Parse("missing 'edges:' line".into()));
    }
    SubsetFamilyGraph::new(n, d, nodes, &edges).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_subset_graph(g: &SubsetFamilyGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", g.n, g.d);
    for s in &g.nodes {
        let parts: Vec<String> = s.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
    out.push_str("edges:\n");
    for (a, b) in g.graph.edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_d1(n: usize) -> SubsetFamilyGraph {
        let nodes = (1..=n).map(|i| vec![i]).collect();
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        SubsetFamilyGraph::new(n, 1, nodes, &edges).unwrap()
    }

    #[test]
    fn connected_graph_with_singletons_is_valid() {
        let g = path_d1(5);
        assert!(validate_layer_property(&g).valid);
        let r = subset_graph_diameter(&g).unwrap();
        assert_eq!(r.diameter, 4);
        assert!(r.within_bounds);
        assert_eq!(r.linear, "5");
    }

    #[test]
    fn broken_layer_is_reported() {
        // {1,2}-{2,3} and {1,4}-{3,4} joined only through {3,4}-{2,3}: the
        // pair {1,2},{1,4} shares 1 but its layer is disconnected.
        let nodes = vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]];
        let g = SubsetFamilyGraph::new(4, 2, nodes, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = validate_layer_property(&g);
        assert!(!c.valid);
        assert_eq!(c.witness, Some((0, 3)));
    }

    #[test]
    fn rejects_bad_nodes() {
        assert!(SubsetFamilyGraph::new(3, 2, vec![vec![1, 4]], &[]).is_err());
        assert!(SubsetFamilyGraph::new(3, 2, vec![vec![1, 2], vec![2, 1]], &[]).is_err());
        assert!(SubsetFamilyGraph::new(3, 2, vec![vec![1, 2]], &[(0, 1)]).is_err());
    }

    #[test]
    fn search_on_three_singletons_finds_a_path() {
        let r = search_max_diameter(3, 1, 1_000, 0, Execution::Sequential).unwrap();
        assert!(r.complete);
        assert_eq!(r.diameter, 2);
        assert!(validate_layer_property(r.best.as_ref().unwrap()).valid);
    }

    #[test]
    fn exhaustive_count_at_four_two() {
        assert_eq!(exhaustive_count(4, 2), Some(40_068));
    }

    #[test]
    fn random_mode_is_reproducible() {
        let a = search_max_diameter(5, 2, 500, 3, Execution::Parallel).unwrap();
        let b = search_max_diameter(5, 2, 500, 3, Execution::Sequential).unwrap();
        assert!(!a.complete);
        assert_eq!(a.diameter, b.diameter);
        assert_eq!(a.best, b.best);
    }

    #[test]
    fn file_round_trip_and_canonical_form() {
        let text = "# toy\n3 2\n2 3\n1 2\nedges:\n1 2\n";
        let g = parse_subset_graph(text).unwrap();
        assert_eq!(parse_subset_graph(&write_subset_graph(&g, &[])).unwrap(), g);
        let c = g.canonical();
        assert_eq!(c.nodes(), &[vec![1, 2], vec![2, 3]]);
        assert!(c.graph().has_edge(0, 1));
        assert!(parse_subset_graph("3 2\n1 2\n").is_err());
    }
}
