//! Pure simplicial complexes on labeled vertices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::PolyGraph;
use crate::par::Execution;
use crate::paths::{walk_property, NonRevisitingWalk, PropertyOutcome};
use crate::polytope::Polyhedron;

/// A pure complex: every facet has the same number of vertices. Facets are
/// stored as sorted vertex indices into `labels`, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut out = Vec::with_capacity(facets.len());
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if let Some(&bad) = f.iter().find(|&&x| x >= labels.len()) {
                return Err(Error::OutOfRange { index: bad, len: labels.len() });
            }
            if out.first().is_some_and(|g: &Vec<usize>| g.len() != f.len()) {
                return Err(Error::InvalidArgument("facets of a pure complex must have equal size".into()));
            }
            if seen.insert(f.clone(), ()).is_none() {
                out.push(f);
            }
        }
        Ok(SimplicialComplex { labels, facets: out })
    }

    /// Builds a complex from facets given by label names; labels are numbered
    /// in order of first appearance.
    pub fn from_named<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index = BTreeMap::new();
        let ids = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| {
                        let l = l.as_ref();
                        *index.entry(l.to_string()).or_insert_with(|| {
                            labels.push(l.to_string());
                            labels.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(labels, ids)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Vertices per facet (0 for the empty complex).
    pub fn facet_size(&self) -> usize {
        self.facets.first().map_or(0, Vec::len)
    }

    /// Name of a facet: its labels concatenated when all are single
    /// characters (`abcd`), comma-joined otherwise.
    pub fn facet_name(&self, i: usize) -> String {
        let parts: Vec<&str> = self.facets[i].iter().map(|&v| self.labels[v].as_str()).collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    pub fn facet_names(&self) -> Vec<String> {
        (0..self.facets.len()).map(|i| self.facet_name(i)).collect()
    }

    /// Index of the facet with exactly these vertex labels, in any order.
    pub fn facet_index<S: AsRef<str>>(&self, names: &[S]) -> Result<usize> {
        let mut ids = names.iter().map(|n| self.label_index(n.as_ref())).collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        self.facets.iter().position(|f| *f == ids).ok_or_else(|| {
            let joined: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
            Error::UnknownLabel(joined.join(" "))
        })
    }

    /// Index of a facet given by its [`facet_name`](Self::facet_name).
    pub fn facet_by_name(&self, name: &str) -> Result<usize> {
        (0..self.facets.len())
            .find(|&i| self.facet_name(i) == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn vertex_sets(&self) -> Vec<FixedBitSet> {
        self.facets
            .iter()
            .map(|f| {
                let mut s = FixedBitSet::with_capacity(self.labels.len());
                s.extend(f.iter().copied());
                s
            })
            .collect()
    }
}

/// Boundary complex of a simplicial polytope: one facet per facet row,
/// listing the labels of its vertices.
pub fn boundary_complex(p: &Polyhedron) -> Result<SimplicialComplex> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if !p.classify()?.simplicial {
        return Err(Error::NotSimplicial);
    }
    let facets = p.facets.iter().map(|&row| p.incidence.vertices_on(row)).collect();
    SimplicialComplex::new(p.labels.clone(), facets)
}

/// Facets adjacent when they share all but one vertex. Nodes are labeled by
/// [`SimplicialComplex::facet_name`].
pub fn ridge_graph(k: &SimplicialComplex) -> PolyGraph {
    let sets = k.vertex_sets();
    let size = k.facet_size();
    let mut g = PolyGraph::new(k.facet_names());
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a].intersection(&sets[b]).count() + 1 == size {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Facets not containing `label`, on the same label set.
pub fn anti_star(k: &SimplicialComplex, label: &str) -> Result<SimplicialComplex> {
    let v = k.label_index(label)?;
    let facets = k.facets.iter().filter(|f| !f.contains(&v)).cloned().collect();
    SimplicialComplex::new(k.labels.clone(), facets)
}

/// Facets containing `label`.
pub fn star(k: &SimplicialComplex, label: &str) -> Result<SimplicialComplex> {
    let v = k.label_index(label)?;
    let facets = k.facets.iter().filter(|f| f.contains(&v)).cloned().collect();
    SimplicialComplex::new(k.labels.clone(), facets)
}

/// Whether every pair of facets is joined by a ridge path that never
/// re-enters the star of a vertex it has left. Walks longer than
/// `#labels - facet size` are not considered.
pub fn dual_nonrevisiting_property(k: &SimplicialComplex, budget: u64) -> Result<PropertyOutcome> {
    dual_nonrevisiting_property_with(k, budget, Execution::Parallel)
}

pub fn dual_nonrevisiting_property_with(
    k: &SimplicialComplex,
    budget: u64,
    exec: Execution,
) -> Result<PropertyOutcome> {
    let g = ridge_graph(k);
    if crate::paths::diameter_with(&g, exec).is_err() {
        return Err(Error::Disconnected);
    }
    let sets = k.vertex_sets();
    let walk = NonRevisitingWalk { graph: &g, sets: &sets, cap: k.labels.len().saturating_sub(k.facet_size()) };
    Ok(walk_property(&walk, budget, exec))
}

/// One facet per line, space-separated labels; `#` starts a comment.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let facets: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().collect())
        .collect();
    if facets.is_empty() {
        return Err(Error::Parse("complex has no facets".into()));
    }
    SimplicialComplex::from_named(&facets)
}

pub fn write_complex(k: &SimplicialComplex, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for f in &k.facets {
        let names: Vec<&str> = f.iter().map(|&v| k.labels[v].as_str()).collect();
        let _ = writeln!(out, "{}", names.join(" "));
    }
    out
}
