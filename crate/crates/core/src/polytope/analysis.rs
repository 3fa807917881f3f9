//! Incidence, graphs and combinatorial type of a polyhedron given by a
//! consistent pair of representations.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use super::convert::{affine_dimension, hrep_to_vrep, reduce_to_full_dim, vrep_to_hrep, AffineMap};
use super::repr::{HPolyhedron, HRow, VPolyhedron};
use crate::arith::{QMatrix, Rational};
use crate::error::{Error, Result};
use crate::graph::PolyGraph;
use crate::par::{map_range, Execution};

/// Vertex/row and ray/row tightness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    rows: usize,
    vertex_rows: Vec<FixedBitSet>,
    ray_rows: Vec<FixedBitSet>,
}

impl Incidence {
    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_rows.len()
    }

    pub fn tight(&self, vertex: usize, row: usize) -> bool {
        self.vertex_rows[vertex].contains(row)
    }

    /// Rows tight at a vertex.
    pub fn vertex_rows(&self, vertex: usize) -> &FixedBitSet {
        &self.vertex_rows[vertex]
    }

    pub fn ray_rows(&self, ray: usize) -> &FixedBitSet {
        &self.ray_rows[ray]
    }

    pub fn tight_count(&self, vertex: usize) -> usize {
        self.vertex_rows[vertex].count_ones(..)
    }

    pub fn vertices_on(&self, row: usize) -> Vec<usize> {
        (0..self.vertex_rows.len()).filter(|&v| self.vertex_rows[v].contains(row)).collect()
    }

    pub fn rays_on(&self, row: usize) -> Vec<usize> {
        (0..self.ray_rows.len()).filter(|&r| self.ray_rows[r].contains(row)).collect()
    }
}

/// Exact tightness matrix. Fails if some vertex or ray violates a row.
pub fn incidence(h: &HPolyhedron, v: &VPolyhedron) -> Result<Incidence> {
    let n = h.len();
    let check = |vals: Vec<Rational>, idx: usize| -> Result<FixedBitSet> {
        let mut set = FixedBitSet::with_capacity(n);
        for (i, val) in vals.into_iter().enumerate() {
            let eq = h.linearity.contains(&i);
            if val.is_zero() {
                set.insert(i);
            } else if eq || val.is_negative() {
                return Err(Error::Inconsistent { vertex: idx, row: i });
            }
        }
        Ok(set)
    };
    let vertex_rows = v
        .vertices
        .iter()
        .enumerate()
        .map(|(k, p)| check(h.rows.iter().map(|r| r.eval(p)).collect(), k))
        .collect::<Result<Vec<_>>>()?;
    let ray_rows = v
        .rays
        .iter()
        .enumerate()
        .map(|(k, r)| check(h.rows.iter().map(|row| row.eval_direction(r)).collect(), k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Incidence { rows: n, vertex_rows, ray_rows })
}

fn homogeneous_rank(v: &VPolyhedron, verts: &[usize], rays: &[usize]) -> usize {
    if verts.is_empty() && rays.is_empty() {
        return 0;
    }
    let one = Rational::one();
    let rows: Vec<Vec<Rational>> = verts
        .iter()
        .map(|&i| std::iter::once(one.clone()).chain(v.vertices[i].iter().cloned()).collect())
        .chain(rays.iter().map(|&i| std::iter::once(Rational::zero()).chain(v.rays[i].iter().cloned()).collect()))
        .collect();
    QMatrix::from_rows(v.dim + 1, &rows).rank()
}

/// Indices of irredundant inequality rows. A row is a facet when its tight
/// generators span a hyperplane of the affine hull; among rows with the
/// same tight set only the first is kept.
pub fn facet_rows(h: &HPolyhedron, v: &VPolyhedron, inc: &Incidence) -> Vec<usize> {
    let all_v: Vec<usize> = (0..v.vertices.len()).collect();
    let all_r: Vec<usize> = (0..v.rays.len()).collect();
    let full = homogeneous_rank(v, &all_v, &all_r);
    let candidates: Vec<Option<(Vec<usize>, Vec<usize>)>> = map_range(h.len(), Execution::Parallel, |i| {
        if h.linearity.contains(&i) {
            return None;
        }
        let tv = inc.vertices_on(i);
        let tr = inc.rays_on(i);
        if tv.len() == all_v.len() && tr.len() == all_r.len() {
            return None;
        }
        (full > 0 && homogeneous_rank(v, &tv, &tr) + 1 == full).then_some((tv, tr))
    });
    let mut seen = std::collections::HashSet::new();
    candidates
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|key| (i, key)))
        .filter(|(_, key)| seen.insert(key.clone()))
        .map(|(i, _)| i)
        .collect()
}

/// Graph of vertices and bounded edges.
///
/// `{u, v}` is an edge iff the only generators tight on every row tight at
/// both `u` and `v` are `u` and `v` themselves. Nodes are labeled `1..=m`.
pub fn skeleton_graph(h: &HPolyhedron, v: &VPolyhedron, inc: &Incidence) -> PolyGraph {
    skeleton_graph_with(h.dim, v, inc, Execution::Parallel)
}

pub fn skeleton_graph_with(dim: usize, v: &VPolyhedron, inc: &Incidence, exec: Execution) -> PolyGraph {
    let m = v.vertices.len();
    let need = dim.saturating_sub(1);
    let lists: Vec<Vec<usize>> = map_range(m, exec, |u| {
        let mut out = Vec::new();
        for w in u + 1..m {
            let mut common = inc.vertex_rows[u].clone();
            common.intersect_with(&inc.vertex_rows[w]);
            if common.count_ones(..) < need {
                continue;
            }
            let blocked = (0..m).any(|x| x != u && x != w && common.is_subset(&inc.vertex_rows[x]))
                || inc.ray_rows.iter().any(|r| common.is_subset(r));
            if !blocked {
                out.push(w);
            }
        }
        out
    });
    let mut g = PolyGraph::with_nodes(m);
    for (u, nb) in lists.into_iter().enumerate() {
        for w in nb {
            g.add_edge(u, w);
        }
    }
    g
}

/// Facet adjacency: nodes are the irredundant rows (labeled by 1-based row
/// index), edges join facets meeting in a ridge.
pub fn dual_graph(h: &HPolyhedron, v: &VPolyhedron, inc: &Incidence) -> Result<PolyGraph> {
    if !v.is_bounded() {
        return Err(Error::Unbounded);
    }
    let d = h.dim;
    let dim = affine_dimension(&v.vertices, &[]).unwrap_or(0);
    if dim != d {
        return Err(Error::NotFullDimensional { dim, ambient: d });
    }
    let facets = facet_rows(h, v, inc);
    let f = facets.len();
    let on: Vec<Vec<usize>> = facets.iter().map(|&i| inc.vertices_on(i)).collect();
    let lists: Vec<Vec<usize>> = map_range(f, Execution::Parallel, |a| {
        (a + 1..f)
            .filter(|&b| {
                let shared: Vec<usize> = on[a].iter().copied().filter(|x| on[b].contains(x)).collect();
                d >= 2 && shared.len() + 1 >= d && homogeneous_rank(v, &shared, &[]) + 1 == d
            })
            .collect()
    });
    let mut g = PolyGraph::new(facets.iter().map(|i| (i + 1).to_string()).collect());
    for (a, nb) in lists.into_iter().enumerate() {
        for b in nb {
            g.add_edge(a, b);
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub simple: bool,
    pub simplicial: bool,
}

/// Simple: every vertex lies on exactly `d` facets. Simplicial: every facet
/// contains exactly `d` vertices.
pub fn classify(h: &HPolyhedron, v: &VPolyhedron, inc: &Incidence) -> Result<Classification> {
    if !v.is_bounded() {
        return Err(Error::Unbounded);
    }
    let facets = facet_rows(h, v, inc);
    let d = h.dim;
    let simple = (0..v.vertices.len()).all(|x| facets.iter().filter(|&&i| inc.tight(x, i)).count() == d);
    let simplicial = facets.iter().all(|&i| inc.vertices_on(i).len() == d);
    Ok(Classification { simple, simplicial })
}

/// Polar of a full-dimensional polytope given by points.
///
/// The points are translated by the negated centroid, then each translated
/// point `p` becomes the row `1 - p·x >= 0`. Returns the rows and the
/// translation that was applied.
pub fn polar(v: &VPolyhedron) -> Result<(HPolyhedron, Vec<Rational>)> {
    if !v.is_bounded() {
        return Err(Error::Unbounded);
    }
    let dim = affine_dimension(&v.vertices, &[]).unwrap_or(0);
    if v.vertices.is_empty() || dim != v.dim {
        return Err(Error::NotFullDimensional { dim, ambient: v.dim });
    }
    let m = Rational::from_integer(v.vertices.len().into());
    let mut translation = vec![Rational::zero(); v.dim];
    for p in &v.vertices {
        for (t, x) in translation.iter_mut().zip(p) {
            *t -= x;
        }
    }
    for t in &mut translation {
        *t /= &m;
    }
    let rows = v
        .vertices
        .iter()
        .map(|p| HRow::new(Rational::one(), p.iter().zip(&translation).map(|(x, t)| -(x + t)).collect()))
        .collect();
    Ok((HPolyhedron::new(v.dim, rows), translation))
}

/// A full-dimensional pointed polyhedron with both representations and the
/// derived combinatorics.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    pub h: HPolyhedron,
    pub v: VPolyhedron,
    pub labels: Vec<String>,
    pub incidence: Incidence,
    /// Irredundant rows, in row order.
    pub facets: Vec<usize>,
    /// Back-map to the original coordinates when the input had to be
    /// reduced to its affine hull.
    pub embedding: Option<AffineMap>,
    skeleton: OnceLock<PolyGraph>,
}

impl Polyhedron {
    /// Analyzes an H-polyhedron. Lower-dimensional input is first rewritten
    /// in coordinates of its affine hull.
    pub fn from_h(h: &HPolyhedron) -> Result<Self> {
        let v = hrep_to_vrep(h)?;
        let dim = affine_dimension(&v.vertices, &v.rays).unwrap_or(0);
        if dim == h.dim && h.linearity.is_empty() {
            return Self::from_parts(h.clone(), v, None, None);
        }
        let (reduced, map) = reduce_to_full_dim(h)?;
        let v = hrep_to_vrep(&reduced)?;
        Self::from_parts(reduced, v, None, Some(map))
    }

    /// Analyzes a full-dimensional V-polyhedron. Points that are not
    /// vertices are dropped; the remaining ones keep their order and labels.
    pub fn from_v(v: &VPolyhedron, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != v.vertices.len() {
                return Err(Error::InvalidArgument("one label per vertex required".into()));
            }
        }
        let h = vrep_to_hrep(v)?;
        if !h.linearity.is_empty() {
            let dim = affine_dimension(&v.vertices, &v.rays).unwrap_or(0);
            return Err(Error::NotFullDimensional { dim, ambient: v.dim });
        }
        let d = v.dim;
        let rank_of =
            |tight: Vec<&HRow>| QMatrix::from_rows(d, &tight.iter().map(|r| r.a.clone()).collect::<Vec<_>>()).rank();
        let keep: Vec<usize> = (0..v.vertices.len())
            .filter(|&i| rank_of(h.rows.iter().filter(|r| r.eval(&v.vertices[i]).is_zero()).collect()) == d)
            .collect();
        let mut rays: Vec<Vec<Rational>> = v
            .rays
            .iter()
            .filter(|r| rank_of(h.rows.iter().filter(|row| row.eval_direction(r).is_zero()).collect()) + 1 == d)
            .cloned()
            .collect();
        rays.dedup();
        let vertices = keep.iter().map(|&i| v.vertices[i].clone()).collect();
        let labels = labels.map(|l| keep.iter().map(|&i| l[i].clone()).collect());
        Self::from_parts(h, VPolyhedron::new(d, vertices, rays), labels, None)
    }

    fn from_parts(
        h: HPolyhedron,
        v: VPolyhedron,
        labels: Option<Vec<String>>,
        embedding: Option<AffineMap>,
    ) -> Result<Self> {
        let incidence = incidence(&h, &v)?;
        let facets = facet_rows(&h, &v, &incidence);
        let labels = labels.unwrap_or_else(|| (1..=v.vertices.len()).map(|i| i.to_string()).collect());
        Ok(Polyhedron { h, v, labels, incidence, facets, embedding, skeleton: OnceLock::new() })
    }

    pub fn dim(&self) -> usize {
        self.h.dim
    }

    /// Number of facets (irredundant rows).
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.v.vertices.len()
    }

    pub fn is_bounded(&self) -> bool {
        self.v.is_bounded()
    }

    /// Skeleton graph with this polyhedron's vertex labels.
    pub fn graph(&self) -> &PolyGraph {
        self.skeleton.get_or_init(|| {
            let g = skeleton_graph(&self.h, &self.v, &self.incidence);
            PolyGraph::from_edges(self.labels.clone(), g.edges())
        })
    }

    pub fn dual_graph(&self) -> Result<PolyGraph> {
        dual_graph(&self.h, &self.v, &self.incidence)
    }

    pub fn classify(&self) -> Result<Classification> {
        classify(&self.h, &self.v, &self.incidence)
    }

    /// Vertex is simple: on exactly `d` facets.
    pub fn is_simple_vertex(&self, v: usize) -> bool {
        self.vertex_facets(v).count_ones(..) == self.dim()
    }

    /// Facets through a vertex, as a set of facet ordinals `0..facet_count()`.
    pub fn vertex_facets(&self, v: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.facets.len());
        for (k, &row) in self.facets.iter().enumerate() {
            if self.incidence.tight(v, row) {
                s.insert(k);
            }
        }
        s
    }

    pub fn all_vertex_facets(&self) -> Vec<FixedBitSet> {
        (0..self.vertex_count()).map(|v| self.vertex_facets(v)).collect()
    }

    /// Ordinal of a row among the facets, if it is one.
    pub fn facet_ordinal(&self, row: usize) -> Option<usize> {
        self.facets.iter().position(|&f| f == row)
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn cube(d: usize) -> HPolyhedron {
        let mut rows = Vec::new();
        for i in 0..d {
            for s in [1, -1] {
                let mut a = vec![0i64; d];
                a[i] = s;
                rows.push(HRow::from_i64(1, &a));
            }
        }
        HPolyhedron::new(d, rows)
    }

    fn simplex(d: usize) -> HPolyhedron {
        let mut rows: Vec<HRow> = (0..d)
            .map(|i| {
                let mut a = vec![0i64; d];
                a[i] = 1;
                HRow::from_i64(0, &a)
            })
            .collect();
        rows.push(HRow::from_i64(1, &vec![-1; d]));
        HPolyhedron::new(d, rows)
    }

    #[test]
    fn cube_vertices_are_simple() {
        for d in 1..=4 {
            let p = Polyhedron::from_h(&cube(d)).unwrap();
            assert_eq!(p.vertex_count(), 1 << d);
            for v in 0..p.vertex_count() {
                assert_eq!(p.incidence.tight_count(v), d);
            }
        }
    }

    #[test]
    fn simplex_vertices_tight_on_d_rows() {
        let p = Polyhedron::from_h(&simplex(3)).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert!((0..4).all(|v| p.incidence.tight_count(v) == 3));
        assert_eq!(p.graph().edge_count(), 6);
    }

    #[test]
    fn duplicated_row_counts_in_incidence_not_in_facets() {
        let mut h = cube(2);
        h.rows.push(h.rows[0].clone());
        let p = Polyhedron::from_h(&h).unwrap();
        assert_eq!(p.facets, vec![0, 1, 2, 3]);
        let on_dup = p.incidence.vertices_on(4);
        assert_eq!(on_dup, p.incidence.vertices_on(0));
        assert!(on_dup.iter().all(|&v| p.incidence.tight_count(v) == 3));
    }

    #[test]
    fn inconsistent_pair_is_rejected() {
        let v = VPolyhedron::from_i64(2, &[&[5, 0]]);
        assert!(matches!(incidence(&cube(2), &v), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn cube_graph_is_hamming() {
        let p = Polyhedron::from_h(&cube(3)).unwrap();
        let g = p.graph();
        for (u, w) in g.edges() {
            let diff = p.v.vertices[u].iter().zip(&p.v.vertices[w]).filter(|(a, b)| a != b).count();
            assert_eq!(diff, 1);
        }
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn cube_dual_is_octahedron() {
        let p = Polyhedron::from_h(&cube(3)).unwrap();
        let g = p.dual_graph().unwrap();
        assert_eq!(g.len(), 6);
        assert!((0..6).all(|f| g.degree(f) == 4));
        // opposite facets 1+x1 and 1-x1 are not adjacent
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn dual_graph_rejects_unbounded() {
        let h = HPolyhedron::from_i64(2, &[(0, &[1, 0]), (0, &[0, 1])]);
        let p = Polyhedron::from_h(&h).unwrap();
        assert_eq!(p.dual_graph(), Err(Error::Unbounded));
    }

    #[test]
    fn classification() {
        let c = Polyhedron::from_h(&cube(3)).unwrap().classify().unwrap();
        assert_eq!(c, Classification { simple: true, simplicial: false });
        let s = Polyhedron::from_h(&simplex(3)).unwrap().classify().unwrap();
        assert_eq!(s, Classification { simple: true, simplicial: true });
    }

    #[test]
    fn polar_of_centered_triangle_is_triangle() {
        let v = VPolyhedron::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        let (h, t) = polar(&v).unwrap();
        assert!(t.iter().all(|x| x.is_zero()));
        let p = Polyhedron::from_h(&h).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.facet_count(), 3);
    }

    #[test]
    fn polar_translates_by_centroid() {
        let v = VPolyhedron::from_i64(1, &[&[2], &[4]]);
        let (h, t) = polar(&v).unwrap();
        assert_eq!(t, vec![int(-3)]);
        assert_eq!(h.rows[0], HRow::from_i64(1, &[1]));
        assert_eq!(h.rows[1], HRow::from_i64(1, &[-1]));
    }

    #[test]
    fn polar_rejects_flat_input() {
        let v = VPolyhedron::from_i64(2, &[&[0, 0], &[1, 1], &[2, 2]]);
        assert!(matches!(polar(&v), Err(Error::NotFullDimensional { dim: 1, .. })));
    }

    #[test]
    fn from_v_drops_interior_points() {
        let v = VPolyhedron::from_i64(2, &[&[0, 0], &[2, 0], &[1, 1], &[0, 2]]);
        let p = Polyhedron::from_v(&v, Some(vec!["a".into(), "b".into(), "c".into(), "d".into()])).unwrap();
        assert_eq!(p.labels, vec!["a", "b", "d"]);
        assert_eq!(p.facet_count(), 3);
    }

    #[test]
    fn lower_dimensional_h_is_reduced() {
        let mut h = HPolyhedron::from_i64(2, &[(0, &[1, 0]), (0, &[0, 1]), (-1, &[1, 1])]);
        h.linearity.insert(2);
        let p = Polyhedron::from_h(&h).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertex_count(), 2);
        assert!(p.embedding.is_some());
    }
}
