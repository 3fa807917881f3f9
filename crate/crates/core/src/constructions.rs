//! Generators and constructive operators: canonical polytopes, products,
//! wedges, vertex truncation, the Klee-Walkup polytope, projective
//! unbounding, transportation and 0/1 polytopes, and Hirsch-sharp families.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{dot, frac, int, parse_rational, QMatrix, Rational};
use crate::error::{Error, Result};
use crate::paths::diameter;
use crate::polytope::{
    affine_dimension, hrep_to_vrep, polar, reduce_to_full_dim, vrep_to_hrep, AffineMap, HPolyhedron, HRow, Polyhedron,
    VPolyhedron,
};

fn unit(d: usize, i: usize, s: i64) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); d];
    a[i] = int(s);
    a
}

/// `{x >= 0, 1 - sum x_i >= 0}`.
pub fn simplex(d: usize) -> HPolyhedron {
    let mut rows: Vec<HRow> = (0..d).map(|i| HRow::new(int(0), unit(d, i, 1))).collect();
    rows.push(HRow::new(int(1), vec![int(-1); d]));
    HPolyhedron::new(d, rows)
}

/// `{-1 <= x_i <= 1}`, rows ordered `1 + x_1, 1 - x_1, 1 + x_2, ...`.
pub fn cube(d: usize) -> HPolyhedron {
    let rows = (0..d).flat_map(|i| [HRow::new(int(1), unit(d, i, 1)), HRow::new(int(1), unit(d, i, -1))]).collect();
    HPolyhedron::new(d, rows)
}

/// Convex hull of `±e_i`, via conversion: `2^d` rows `1 ± x_1 ± ... >= 0`.
pub fn crosspolytope(d: usize) -> HPolyhedron {
    let pts = (0..d).flat_map(|i| [unit(d, i, 1), unit(d, i, -1)]).collect();
    vrep_to_hrep(&VPolyhedron::from_points(d, pts)).expect("cross polytope is full-dimensional")
}

/// Convex polygon with vertices `(i, i^2)`, `i = 0..n`.
pub fn polygon(n: usize) -> Result<HPolyhedron> {
    if n < 3 {
        return Err(Error::InvalidArgument("a polygon needs at least 3 vertices".into()));
    }
    let pts = (0..n as i64).map(|i| vec![int(i), int(i * i)]).collect();
    vrep_to_hrep(&VPolyhedron::from_points(2, pts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CanonicalKind {
    Simplex,
    Cube,
    Crosspolytope,
}

pub fn generate_canonical(kind: CanonicalKind, d: usize) -> Result<HPolyhedron> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    Ok(match kind {
        CanonicalKind::Simplex => simplex(d),
        CanonicalKind::Cube => cube(d),
        CanonicalKind::Crosspolytope => crosspolytope(d),
    })
}

/// Cartesian product: rows of `p` on the first coordinates, rows of `q` on
/// the rest.
pub fn product(p: &HPolyhedron, q: &HPolyhedron) -> HPolyhedron {
    let d = p.dim + q.dim;
    let zeros = |k: usize| vec![Rational::zero(); k];
    let mut rows = Vec::with_capacity(p.len() + q.len());
    for r in &p.rows {
        let mut a = r.a.clone();
        a.extend(zeros(q.dim));
        rows.push(HRow::new(r.b.clone(), a));
    }
    for r in &q.rows {
        let mut a = zeros(p.dim);
        a.extend(r.a.iter().cloned());
        rows.push(HRow::new(r.b.clone(), a));
    }
    let linearity = p.linearity.iter().copied().chain(q.linearity.iter().map(|i| i + p.len())).collect();
    HPolyhedron::with_linearity(d, rows, linearity)
}

/// Wedge over facet row `k` (0-based): in coordinates `(x, t)`, every other
/// row gets a zero `t` coefficient, row `k` becomes `b_k + a_k·x - t >= 0`,
/// and `t >= 0` is appended.
pub fn wedge(p: &Polyhedron, k: usize) -> Result<HPolyhedron> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if k >= p.h.len() {
        return Err(Error::OutOfRange { index: k, len: p.h.len() });
    }
    if !p.facets.contains(&k) {
        return Err(Error::RedundantRow(k));
    }
    let d = p.dim();
    let mut rows: Vec<HRow> =
        p.h.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = r.a.clone();
                a.push(if i == k { int(-1) } else { int(0) });
                HRow::new(r.b.clone(), a)
            })
            .collect();
    rows.push(HRow::new(int(0), unit(d + 1, d, 1)));
    Ok(HPolyhedron::with_linearity(d + 1, rows, p.h.linearity.clone()))
}

/// Cuts off a simple vertex with the hyperplane through the midpoints of
/// its `d` edges. The new row is appended.
pub fn truncate_vertex(p: &Polyhedron, v: usize) -> Result<HPolyhedron> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if v >= p.vertex_count() {
        return Err(Error::OutOfRange { index: v, len: p.vertex_count() });
    }
    let d = p.dim();
    let nb = p.graph().neighbors(v);
    if !p.is_simple_vertex(v) || nb.len() != d {
        return Err(Error::NonSimpleVertex(v));
    }
    let half = frac(1, 2);
    let apex = &p.v.vertices[v];
    let rows: Vec<Vec<Rational>> = nb
        .iter()
        .map(|&w| {
            std::iter::once(Rational::one())
                .chain(apex.iter().zip(&p.v.vertices[w]).map(|(a, b)| (a + b) * &half))
                .collect()
        })
        .collect();
    let ns = QMatrix::from_rows(d + 1, &rows).nullspace();
    if ns.len() != 1 {
        return Err(Error::NonSimpleVertex(v));
    }
    let mut cut = HRow::from_homogeneous(&ns[0]);
    if cut.eval(apex).is_positive() {
        cut = HRow::new(-cut.b, cut.a.into_iter().map(|x| -x).collect());
    }
    let mut h = p.h.clone();
    h.rows.push(cut.canonical());
    Ok(h)
}

/// The Klee-Walkup polytope in polar form (nine labeled points) and as
/// the nine inequalities `1 - v·x >= 0`.
#[derive(Clone, Debug)]
pub struct KleeWalkup {
    pub star: VPolyhedron,
    pub labels: Vec<String>,
    pub q4: HPolyhedron,
}

pub const KLEE_WALKUP_POINTS: [(&str, [i64; 4]); 9] = [
    ("a", [-3, 3, 1, 2]),
    ("b", [3, -3, 1, 2]),
    ("c", [2, -1, 1, 3]),
    ("d", [-2, 1, 1, 3]),
    ("e", [3, 3, -1, 2]),
    ("f", [-3, -3, -1, 2]),
    ("g", [-1, -2, -1, 3]),
    ("h", [1, 2, -1, 3]),
    ("w", [0, 0, 0, -2]),
];

pub fn klee_walkup() -> KleeWalkup {
    let pts: Vec<Vec<Rational>> = KLEE_WALKUP_POINTS.iter().map(|(_, c)| c.iter().map(|&x| int(x)).collect()).collect();
    let rows = pts.iter().map(|p| HRow::new(int(1), p.iter().map(|x| -x).collect())).collect();
    KleeWalkup {
        star: VPolyhedron::from_points(4, pts),
        labels: KLEE_WALKUP_POINTS.iter().map(|(l, _)| l.to_string()).collect(),
        q4: HPolyhedron::new(4, rows),
    }
}

/// Result of sending one facet of a polytope to infinity.
#[derive(Clone, Debug)]
pub struct Unbounded {
    pub h: HPolyhedron,
    /// Translation applied before the projective map (moves the vertex
    /// centroid to the origin).
    pub translation: Vec<Rational>,
    /// The dropped row, after translation.
    pub sent_to_infinity: HRow,
}

impl Unbounded {
    /// Image of a point of the original polytope; `None` on the dropped
    /// facet.
    pub fn map_point(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let shifted: Vec<Rational> = x.iter().zip(&self.translation).map(|(a, t)| a + t).collect();
        let s = self.sent_to_infinity.eval(&shifted);
        if s.is_zero() {
            return None;
        }
        Some(shifted.into_iter().map(|c| c / &s).collect())
    }
}

/// Projective transformation sending facet row `k` (0-based) to infinity:
/// with the vertex centroid moved to the origin, each row `i != k` becomes
/// `b_i + (b_k a_i - b_i a_k)·y >= 0` and row `k` is dropped.
pub fn unbound_at_facet(p: &Polyhedron, k: usize) -> Result<Unbounded> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if k >= p.h.len() || p.h.linearity.contains(&k) {
        return Err(Error::OutOfRange { index: k, len: p.h.len() });
    }
    let d = p.dim();
    let m = Rational::from_integer(p.vertex_count().into());
    let mut translation = vec![Rational::zero(); d];
    for v in &p.v.vertices {
        for (t, x) in translation.iter_mut().zip(v) {
            *t -= x;
        }
    }
    for t in &mut translation {
        *t /= &m;
    }
    // Row in shifted coordinates x' = x + t: b - a·t + a·x'.
    let shift = |r: &HRow| HRow::new(&r.b - dot(&r.a, &translation), r.a.clone());
    let rk = shift(&p.h.rows[k]);
    if !rk.b.is_positive() {
        return Err(Error::InvalidArgument(format!("row {} does not separate the centroid", k + 1)));
    }
    let rows =
        p.h.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, r)| {
                let r = shift(r);
                let a = r.a.iter().zip(&rk.a).map(|(ai, ak)| &rk.b * ai - &r.b * ak).collect();
                HRow::new(r.b, a).canonical()
            })
            .collect();
    Ok(Unbounded { h: HPolyhedron::new(d, rows), translation, sent_to_infinity: rk })
}

/// A `p x q` transportation polytope, both as the equality system in the
/// `pq` cell variables and reduced to its affine hull.
#[derive(Clone, Debug)]
pub struct Transportation {
    pub full: HPolyhedron,
    pub reduced: HPolyhedron,
    pub embedding: AffineMap,
}

/// Nonnegative `p x q` matrices with row sums `a` and column sums `b`.
/// Cell `(i, j)` is variable `i*q + j`.
pub fn transportation(a: &[Rational], b: &[Rational]) -> Result<Transportation> {
    let (p, q) = (a.len(), b.len());
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument("margins must be nonempty".into()));
    }
    if a.iter().chain(b).any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument("margins must be positive".into()));
    }
    let sa: Rational = a.iter().sum();
    let sb: Rational = b.iter().sum();
    if sa != sb {
        return Err(Error::InvalidArgument(format!("unbalanced margins: {sa} != {sb}")));
    }
    let n = p * q;
    let mut rows: Vec<HRow> = (0..n).map(|c| HRow::new(int(0), unit(n, c, 1))).collect();
    let mut linearity = BTreeSet::new();
    for (i, ai) in a.iter().enumerate() {
        let mut coef = vec![Rational::zero(); n];
        for j in 0..q {
            coef[i * q + j] = int(1);
        }
        linearity.insert(rows.len());
        rows.push(HRow::new(-ai.clone(), coef));
    }
    for (j, bj) in b.iter().enumerate() {
        let mut coef = vec![Rational::zero(); n];
        for i in 0..p {
            coef[i * q + j] = int(1);
        }
        linearity.insert(rows.len());
        rows.push(HRow::new(-bj.clone(), coef));
    }
    let full = HPolyhedron::with_linearity(n, rows, linearity);
    let (reduced, embedding) = reduce_to_full_dim(&full)?;
    Ok(Transportation { full, reduced, embedding })
}

/// Maximum number of redraws when a sample is not full-dimensional.
pub const ZERO_ONE_RETRIES: usize = 64;

/// `m` distinct 0/1 points in dimension `d` spanning `R^d`.
///
/// The stream is ChaCha8 seeded with `seed` (`seed_from_u64`). Each draw
/// samples `m` distinct integers below `2^d` with `rand::seq::index::sample`
/// and reads bit `i` of each as coordinate `i`; points are listed in
/// increasing integer order. Draws that are not full-dimensional are
/// repeated from the same stream, at most [`ZERO_ONE_RETRIES`] times.
pub fn random_01_polytope(d: usize, m: usize, seed: u64) -> Result<VPolyhedron> {
    if d == 0 || d > 20 {
        return Err(Error::InvalidArgument("dimension must be in 1..=20".into()));
    }
    let total = 1usize << d;
    if m < d + 1 || m > total {
        return Err(Error::InvalidArgument(format!("need d+1 <= m <= 2^d, got m = {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ZERO_ONE_RETRIES {
        let mut idx = rand::seq::index::sample(&mut rng, total, m).into_vec();
        idx.sort_unstable();
        let pts: Vec<Vec<Rational>> =
            idx.iter().map(|&k| (0..d).map(|i| int(((k >> i) & 1) as i64)).collect()).collect();
        if affine_dimension(&pts, &[]) == Some(d) {
            return Ok(VPolyhedron::from_points(d, pts));
        }
    }
    Err(Error::InvalidArgument(format!("could not reach full dimension after {ZERO_ONE_RETRIES} draws")))
}

/// Partition of `d` into `k` positive parts, largest part first:
/// `[d-k+1, 1, ..., 1]`.
pub fn simplex_partition(d: usize, k: usize) -> Vec<usize> {
    let mut parts = vec![1; k];
    parts[0] = d + 1 - k;
    parts
}

/// Product of simplices of the given dimensions.
pub fn simplex_product(parts: &[usize]) -> HPolyhedron {
    parts.iter().map(|&i| simplex(i)).reduce(|acc, s| product(&acc, &s)).expect("at least one part")
}

fn q4_reachable(d: usize, n: usize) -> bool {
    (d == 4 && n == 9) || (d > 4 && n > 2 * d && n <= 3 * d - 3)
}

/// Hirsch-sharp `d`-polytope with `n` facets.
///
/// For `d < n <= 2d`: product of simplices over [`simplex_partition`].
/// For `2d < n <= 3d - 3`: the wedge/truncate pipeline started at the
/// Klee-Walkup polytope ([`hirsch_sharp_from_q4`]).
pub fn hirsch_sharp(d: usize, n: usize) -> Result<HPolyhedron> {
    if d >= 1 && d < n && n <= 2 * d {
        return Ok(simplex_product(&simplex_partition(d, n - d)));
    }
    if d >= 4 && q4_reachable(d, n) {
        return hirsch_sharp_from_q4(d, n);
    }
    Err(Error::InvalidArgument(format!(
        "no Hirsch-sharp construction for d = {d}, n = {n}: need d < n <= 2d, or d >= 4 and 2d < n <= 3d - 3"
    )))
}

/// Hirsch-sharp polytopes descended from the Klee-Walkup polytope: `(4, 9)`
/// is Q4 itself; each dimension step wedges over the lowest-index facet
/// avoiding a diameter-witness pair and then truncates zero, one or two of
/// the witness copies on the `t = 0` side.
pub fn hirsch_sharp_from_q4(d: usize, n: usize) -> Result<HPolyhedron> {
    if d == 4 && n == 9 {
        return Ok(klee_walkup().q4);
    }
    if d < 5 {
        return Err(Error::InvalidArgument(format!("({d}, {n}) is not reachable from Q4")));
    }
    let prev = (1..=3)
        .map(|s| n.saturating_sub(s))
        .find(|&m| m > 2 * (d - 1) && q4_reachable(d - 1, m))
        .ok_or_else(|| Error::InvalidArgument(format!("({d}, {n}) is not reachable from Q4")))?;
    let base = hirsch_sharp_from_q4(d - 1, prev)?;
    wedge_and_truncate(&base, n - prev - 1)
}

/// One wedge step of the pipeline followed by `truncations` (0, 1 or 2)
/// vertex truncations.
pub fn wedge_and_truncate(h: &HPolyhedron, truncations: usize) -> Result<HPolyhedron> {
    if truncations > 2 {
        return Err(Error::InvalidArgument("at most two truncations".into()));
    }
    let p = Polyhedron::from_h(h)?;
    let diam = diameter(p.graph())?;
    let (u, v) = diam.witness;
    let facet = p
        .facets
        .iter()
        .copied()
        .find(|&f| !p.incidence.tight(u, f) && !p.incidence.tight(v, f))
        .ok_or_else(|| Error::InvalidArgument("no facet avoids the witness pair".into()))?;
    let mut out = wedge(&p, facet)?;
    let lifted = |x: &[Rational]| {
        let mut y = x.to_vec();
        y.push(int(0));
        y
    };
    for x in [u, v].into_iter().take(truncations) {
        let target = lifted(&p.v.vertices[x]);
        let w = Polyhedron::from_h(&out)?;
        let idx = w.v.vertices.iter().position(|y| *y == target).expect("wedge keeps the base vertex");
        out = truncate_vertex(&w, idx)?;
    }
    Ok(out)
}

/// Intersection of two affine orthants: `x_i >= 0` for all `i`, and for
/// `j < k` the rows `1 - x_j + eps_j * sum_{i >= k} x_i >= 0` with
/// `eps_j = (j + 1) / (d + 1)^2`, plus `k - sum x_i >= 0` in place of the
/// last functional so the result is bounded. All functionals vanish at
/// `(1, ..., 1, 0, ..., 0)` (first `k` ones) and are positive at the origin.
pub fn orthant(d: usize, k: usize) -> Result<HPolyhedron> {
    if k == 0 || k > d {
        return Err(Error::InvalidArgument("need 1 <= k <= d".into()));
    }
    let mut rows: Vec<HRow> = (0..d).map(|i| HRow::new(int(0), unit(d, i, 1))).collect();
    let denom = ((d + 1) * (d + 1)) as i64;
    for j in 0..k - 1 {
        let eps = frac(j as i64 + 1, denom);
        let mut a = vec![Rational::zero(); d];
        a[j] = int(-1);
        for x in a.iter_mut().skip(k) {
            *x = eps.clone();
        }
        rows.push(HRow::new(int(1), a));
    }
    rows.push(HRow::new(int(k as i64), vec![int(-1); d]));
    Ok(HPolyhedron::new(d, rows))
}

/// Output of a recipe.
#[derive(Clone, Debug)]
pub enum Generated {
    H(HPolyhedron),
    V { v: VPolyhedron, labels: Option<Vec<String>> },
}

impl Generated {
    pub fn to_h(&self) -> Result<HPolyhedron> {
        match self {
            Generated::H(h) => Ok(h.clone()),
            Generated::V { v, .. } => vrep_to_hrep(v),
        }
    }

    pub fn analyze(&self) -> Result<Polyhedron> {
        match self {
            Generated::H(h) => Polyhedron::from_h(h),
            Generated::V { v, labels } => Polyhedron::from_v(v, labels.clone()),
        }
    }
}

/// How a polytope was built. Replaying a recipe reproduces the same rows
/// in the same order. Facet and vertex indices are 1-based, as on the
/// command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Simplex {
        d: usize,
    },
    Cube {
        d: usize,
    },
    Crosspolytope {
        d: usize,
    },
    Polygon {
        n: usize,
    },
    Product {
        left: Box<Recipe>,
        right: Box<Recipe>,
    },
    Wedge {
        facet: usize,
        input: Box<Recipe>,
    },
    Truncate {
        vertex: usize,
        input: Box<Recipe>,
    },
    Kleewalkup,
    KleewalkupStar,
    Unbound {
        facet: usize,
        input: Box<Recipe>,
    },
    Polar {
        input: Box<Recipe>,
    },
    Transportation {
        rows: Vec<String>,
        cols: Vec<String>,
    },
    Zeroone {
        d: usize,
        m: usize,
        seed: u64,
    },
    HirschSharp {
        d: usize,
        n: usize,
    },
    Orthant {
        d: usize,
        k: usize,
    },
    /// Read from a file that carried no recipe; cannot be replayed.
    External,
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn one_based(i: usize, what: &str) -> Result<usize> {
    i.checked_sub(1).ok_or_else(|| Error::InvalidArgument(format!("{what} indices are 1-based")))
}

impl Recipe {
    pub fn replay(&self) -> Result<Generated> {
        use Generated::H;
        Ok(match self {
            Recipe::Simplex { d } => H(generate_canonical(CanonicalKind::Simplex, *d)?),
            Recipe::Cube { d } => H(generate_canonical(CanonicalKind::Cube, *d)?),
            Recipe::Crosspolytope { d } => H(generate_canonical(CanonicalKind::Crosspolytope, *d)?),
            Recipe::Polygon { n } => H(polygon(*n)?),
            Recipe::Product { left, right } => H(product(&left.replay()?.to_h()?, &right.replay()?.to_h()?)),
            Recipe::Wedge { facet, input } => H(wedge(&input.replay()?.analyze()?, one_based(*facet, "facet")?)?),
            Recipe::Truncate { vertex, input } => {
                H(truncate_vertex(&input.replay()?.analyze()?, one_based(*vertex, "vertex")?)?)
            }
            Recipe::Kleewalkup => H(klee_walkup().q4),
            Recipe::KleewalkupStar => {
                let kw = klee_walkup();
                Generated::V { v: kw.star, labels: Some(kw.labels) }
            }
            Recipe::Unbound { facet, input } => {
                H(unbound_at_facet(&input.replay()?.analyze()?, one_based(*facet, "facet")?)?.h)
            }
            Recipe::Polar { input } => {
                let v = match input.replay()? {
                    Generated::V { v, .. } => v,
                    Generated::H(h) => hrep_to_vrep(&h)?,
                };
                H(polar(&v)?.0)
            }
            Recipe::Transportation { rows, cols } => H(transportation(&parse_all(rows)?, &parse_all(cols)?)?.reduced),
            Recipe::Zeroone { d, m, seed } => Generated::V { v: random_01_polytope(*d, *m, *seed)?, labels: None },
            Recipe::HirschSharp { d, n } => H(hirsch_sharp(*d, *n)?),
            Recipe::Orthant { d, k } => H(orthant(*d, *k)?),
            Recipe::External => return Err(Error::InvalidArgument("external input cannot be replayed".into())),
        })
    }

    /// Human-readable trace of the applied steps, innermost last.
    pub fn provenance(&self) -> String {
        match self {
            Recipe::Simplex { d } => format!("simplex({d})"),
            Recipe::Cube { d } => format!("cube({d})"),
            Recipe::Crosspolytope { d } => format!("crosspolytope({d})"),
            Recipe::Polygon { n } => format!("polygon({n})"),
            Recipe::Product { left, right } => format!("product({}, {})", left.provenance(), right.provenance()),
            Recipe::Wedge { facet, input } => format!("wedge(facet {facet}) <- {}", input.provenance()),
            Recipe::Truncate { vertex, input } => format!("truncate(vertex {vertex}) <- {}", input.provenance()),
            Recipe::Kleewalkup => "kleewalkup".into(),
            Recipe::KleewalkupStar => "kleewalkup-star".into(),
            Recipe::Unbound { facet, input } => format!("unbound(facet {facet}) <- {}", input.provenance()),
            Recipe::Polar { input } => format!("polar <- {}", input.provenance()),
            Recipe::Transportation { rows, cols } => {
                format!("transportation(rows {}, cols {})", rows.join(","), cols.join(","))
            }
            Recipe::Zeroone { d, m, seed } => format!("zeroone(d {d}, m {m}, seed {seed})"),
            Recipe::HirschSharp { d, n } => format!("hirschsharp(d {d}, n {n})"),
            Recipe::Orthant { d, k } => format!("orthant(d {d}, k {k})"),
            Recipe::External => "external".into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("recipes serialize")
    }

    pub fn from_json(s: &str) -> Result<Recipe> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad recipe: {e}")))
    }
}

/// Margins as strings for [`Recipe::Transportation`].
pub fn margin_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Balanced positive integer margins from a random `p x q` table with
/// entries in `1..=max_entry` (ChaCha8, `seed_from_u64`).
pub fn random_margins(p: usize, q: usize, max_entry: u32, seed: u64) -> (Vec<Rational>, Vec<Rational>) {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table: Vec<Vec<i64>> = (0..p).map(|_| (0..q).map(|_| rng.gen_range(1..=max_entry) as i64).collect()).collect();
    let rows = table.iter().map(|r| int(r.iter().sum())).collect();
    let cols = (0..q).map(|j| int(table.iter().map(|r| r[j]).sum())).collect();
    (rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::diameter;

    fn diam(h: &HPolyhedron) -> usize {
        diameter(Polyhedron::from_h(h).unwrap().graph()).unwrap().value
    }

    #[test]
    fn canonical_row_counts_and_diameters() {
        assert_eq!(cube(3).len(), 6);
        assert_eq!(diam(&cube(3)), 3);
        for d in 1..=4 {
            assert_eq!(simplex(d).len(), d + 1);
            assert_eq!(diam(&simplex(d)), 1);
        }
        for d in 2..=4 {
            assert_eq!(crosspolytope(d).len(), 1 << d);
            assert_eq!(diam(&crosspolytope(d)), 2);
        }
        assert!(generate_canonical(CanonicalKind::Cube, 0).is_err());
    }

    #[test]
    fn product_of_segments_is_square() {
        let sq = product(&cube(1), &cube(1));
        assert_eq!(sq, cube(2));
    }

    #[test]
    fn wedge_of_square_is_prism() {
        let p = Polyhedron::from_h(&cube(2)).unwrap();
        let w = Polyhedron::from_h(&wedge(&p, 0).unwrap()).unwrap();
        assert_eq!(w.dim(), 3);
        assert_eq!(w.facet_count(), 5);
        assert_eq!(w.vertex_count(), 6);
    }

    #[test]
    fn wedge_rejects_redundant_row() {
        let mut h = cube(2);
        h.rows.push(HRow::from_i64(5, &[1, 0]));
        let p = Polyhedron::from_h(&h).unwrap();
        assert_eq!(wedge(&p, 4), Err(Error::RedundantRow(4)));
    }

    #[test]
    fn truncating_a_cube_corner() {
        let p = Polyhedron::from_h(&cube(3)).unwrap();
        let t = Polyhedron::from_h(&truncate_vertex(&p, 0).unwrap()).unwrap();
        assert_eq!(t.facet_count(), 7);
        assert_eq!(t.vertex_count(), 10);
    }

    #[test]
    fn truncation_needs_a_simple_vertex() {
        let p = Polyhedron::from_h(&crosspolytope(3)).unwrap();
        assert_eq!(truncate_vertex(&p, 0), Err(Error::NonSimpleVertex(0)));
    }

    #[test]
    fn unbounding_a_square_edge_gives_a_half_strip() {
        let p = Polyhedron::from_h(&cube(2)).unwrap();
        let u = unbound_at_facet(&p, 0).unwrap();
        assert_eq!(u.h.len(), 3);
        let v = hrep_to_vrep(&u.h).unwrap();
        assert_eq!(v.vertices.len(), 2);
        assert_eq!(v.rays.len(), 2);
        assert!(unbound_at_facet(&p, 9).is_err());
    }

    #[test]
    fn transportation_two_by_two() {
        let t = transportation(&[int(1), int(1)], &[int(1), int(1)]).unwrap();
        assert_eq!(t.reduced.dim, 1);
        let p = Polyhedron::from_h(&t.reduced).unwrap();
        assert_eq!(p.vertex_count(), 2);
        let mut mats: Vec<Vec<Rational>> = p.v.vertices.iter().map(|z| t.embedding.apply(z)).collect();
        mats.sort();
        assert_eq!(mats, vec![crate::arith::vec_from_i64(&[0, 1, 1, 0]), crate::arith::vec_from_i64(&[1, 0, 0, 1])]);
        assert!(transportation(&[int(1)], &[int(2)]).is_err());
    }

    #[test]
    fn random_01_is_deterministic() {
        let a = random_01_polytope(3, 5, 7).unwrap();
        let b = random_01_polytope(3, 5, 7).unwrap();
        assert_eq!(a, b);
        let all = random_01_polytope(3, 8, 1).unwrap();
        assert_eq!(all.vertices.len(), 8);
        assert!(random_01_polytope(3, 3, 1).is_err());
        assert!(random_01_polytope(3, 9, 1).is_err());
    }

    #[test]
    fn hirsch_sharp_rejects_outside_region() {
        assert!(hirsch_sharp(3, 7).is_err());
        assert!(hirsch_sharp(4, 10).is_err());
        assert!(hirsch_sharp(4, 4).is_err());
    }

    #[test]
    fn partition_is_largest_first() {
        assert_eq!(simplex_partition(5, 2), vec![4, 1]);
        assert_eq!(simplex_partition(4, 4), vec![1, 1, 1, 1]);
    }

    #[test]
    fn recipe_round_trip() {
        let r = Recipe::Wedge { facet: 2, input: Box::new(Recipe::Cube { d: 2 }) };
        let json = r.to_json();
        assert_eq!(Recipe::from_json(&json).unwrap(), r);
        assert_eq!(r.provenance(), "wedge(facet 2) <- cube(2)");
        let Generated::H(h) = r.replay().unwrap() else { panic!() };
        assert_eq!(h.dim, 3);
        assert!(Recipe::External.replay().is_err());
    }
}
