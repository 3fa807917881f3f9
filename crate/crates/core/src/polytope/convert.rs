//! Conversion between H- and V-representations, dimension and reduction to
//! a full-dimensional description.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd::{self, NotPointed};
use super::repr::{HPolyhedron, HRow, VPolyhedron};
use crate::arith::{cmp_lex, dot, primitive, primitive_integer, to_rationals, QMatrix, Rational};
use crate::error::{Error, Result};

/// Affine parametrization `x = origin + sum_j z_j * columns[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub origin: Vec<Rational>,
    pub columns: Vec<Vec<Rational>>,
}

impl AffineMap {
    pub fn identity(d: usize) -> Self {
        let columns = (0..d)
            .map(|j| {
                let mut e = vec![Rational::zero(); d];
                e[j] = Rational::one();
                e
            })
            .collect();
        AffineMap { origin: vec![Rational::zero(); d], columns }
    }

    pub fn source_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn target_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn apply(&self, z: &[Rational]) -> Vec<Rational> {
        let mut x = self.origin.clone();
        self.accumulate(z, &mut x);
        x
    }

    pub fn apply_direction(&self, z: &[Rational]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.target_dim()];
        self.accumulate(z, &mut x);
        x
    }

    fn accumulate(&self, z: &[Rational], x: &mut [Rational]) {
        assert_eq!(z.len(), self.columns.len());
        for (zj, col) in z.iter().zip(&self.columns) {
            if zj.is_zero() {
                continue;
            }
            for (xi, ci) in x.iter_mut().zip(col) {
                *xi += zj * ci;
            }
        }
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            origin: self.apply(&inner.origin),
            columns: inner.columns.iter().map(|c| self.apply_direction(c)).collect(),
        }
    }

    /// Pulls a row back through the map: the returned row evaluated at `z`
    /// equals `row` evaluated at `apply(z)`.
    pub fn pull_back(&self, row: &HRow) -> HRow {
        HRow::new(row.eval(&self.origin), self.columns.iter().map(|c| dot(&row.a, c)).collect())
    }
}

/// Parametrizes the solution set of the equations of `h` and pulls the
/// inequalities back. Returns the map and `(original index, row)` pairs.
fn eliminate_equations(h: &HPolyhedron) -> Result<(AffineMap, Vec<(usize, HRow)>)> {
    if h.linearity.is_empty() {
        return Ok((AffineMap::identity(h.dim), h.inequalities().map(|(i, r)| (i, r.clone())).collect()));
    }
    let eqs: Vec<&HRow> = h.equations().map(|(_, r)| r).collect();
    let a = QMatrix::from_rows(h.dim, &eqs.iter().map(|r| r.a.clone()).collect::<Vec<_>>());
    let rhs: Vec<Rational> = eqs.iter().map(|r| -r.b.clone()).collect();
    let origin = a.solve_affine(&rhs).ok_or(Error::Infeasible)?;
    let map = AffineMap { origin, columns: a.nullspace() };
    let rows = h.inequalities().map(|(i, r)| (i, map.pull_back(r))).collect();
    Ok((map, rows))
}

fn int_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}

/// Vertices and rays of `{z : b + a·z >= 0}` in `k` coordinates, which
/// must be pointed. Vertices come back unsorted.
type Generators = (Vec<Vec<Rational>>, Vec<Vec<Rational>>);

fn pointed_generators(rows: &[HRow], k: usize) -> Result<Generators> {
    let mut cons: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_integer(&r.homogeneous())).collect();
    cons.sort_by(|x, y| int_cmp(x, y));
    cons.dedup();
    let mut positivity = vec![BigInt::zero(); k + 1];
    positivity[0] = BigInt::one();
    cons.insert(0, positivity);

    let rays = dd::extreme_rays(&cons, k + 1).map_err(|NotPointed| Error::NotPointed)?;
    let mut verts = Vec::new();
    let mut dirs = Vec::new();
    for y in rays {
        if y[0].is_positive() {
            let d = Rational::from_integer(y[0].clone());
            verts.push(y[1..].iter().map(|c| Rational::from_integer(c.clone()) / &d).collect());
        } else {
            dirs.push(to_rationals(&y[1..]));
        }
    }
    if verts.is_empty() {
        return Err(Error::Infeasible);
    }
    Ok((verts, dirs))
}

fn sort_points(v: &mut Vec<Vec<Rational>>) {
    v.sort_by(|a, b| cmp_lex(a, b));
    v.dedup();
}

fn normalize_direction(r: &[Rational]) -> Vec<Rational> {
    to_rationals(&primitive_integer(r))
}

/// All vertices and one primitive integer representative per extreme ray.
///
/// Vertices are sorted lexicographically, rays likewise after scaling to
/// primitive integer vectors. Empty sets give [`Error::Infeasible`]; sets
/// containing a line give [`Error::NotPointed`].
pub fn hrep_to_vrep(h: &HPolyhedron) -> Result<VPolyhedron> {
    let (map, rows) = eliminate_equations(h)?;
    let rows: Vec<HRow> = rows.into_iter().map(|(_, r)| r).collect();
    let k = map.source_dim();
    if k > 0 {
        let a = QMatrix::from_rows(k, &rows.iter().map(|r| r.a.clone()).collect::<Vec<_>>());
        if a.rank() < k {
            return Err(Error::NotPointed);
        }
    }
    let (verts, dirs) = pointed_generators(&rows, k)?;
    let mut vertices: Vec<Vec<Rational>> = verts.iter().map(|z| map.apply(z)).collect();
    let mut rays: Vec<Vec<Rational>> = dirs.iter().map(|z| normalize_direction(&map.apply_direction(z))).collect();
    sort_points(&mut vertices);
    sort_points(&mut rays);
    Ok(VPolyhedron::new(h.dim, vertices, rays))
}

/// Irredundant inequality description of `conv(vertices) + cone(rays)`.
///
/// Facet rows are primitive integer rows sorted lexicographically; if the
/// input is not full-dimensional its affine hull is emitted as linearity
/// rows after the inequalities.
pub fn vrep_to_hrep(v: &VPolyhedron) -> Result<HPolyhedron> {
    if v.vertices.is_empty() {
        return Err(Error::InvalidArgument("V-representation has no vertices".into()));
    }
    let d = v.dim;
    let mut gens: Vec<Vec<BigInt>> = v.homogeneous_generators().iter().map(|g| primitive_integer(g)).collect();
    gens.sort_by(|x, y| int_cmp(x, y));
    gens.dedup();
    let gq: Vec<Vec<Rational>> = gens.iter().map(|g| to_rationals(g)).collect();
    let gm = QMatrix::from_rows(d + 1, &gq);
    let basis = gm.row_space_basis();
    let r = basis.len();

    // Inequalities live in the row space of the generator matrix.
    let ys: Vec<Vec<Rational>> = if r == d + 1 {
        dd::extreme_rays(&gens, d + 1)
            .expect("full-rank generator matrix gives a pointed polar cone")
            .iter()
            .map(|y| to_rationals(y))
            .collect()
    } else {
        let cons: Vec<Vec<BigInt>> =
            gq.iter().map(|g| primitive_integer(&basis.iter().map(|b| dot(b, g)).collect::<Vec<_>>())).collect();
        let mut cons_sorted = cons;
        cons_sorted.sort_by(|x, y| int_cmp(x, y));
        cons_sorted.dedup();
        dd::extreme_rays(&cons_sorted, r)
            .expect("restricted polar cone is pointed")
            .iter()
            .map(|z| {
                let mut y = vec![Rational::zero(); d + 1];
                for (zj, bj) in z.iter().zip(&basis) {
                    let zj = Rational::from_integer(zj.clone());
                    for (yi, bi) in y.iter_mut().zip(bj) {
                        *yi += &zj * bi;
                    }
                }
                y
            })
            .collect()
    };

    let mut rows: Vec<HRow> = ys
        .iter()
        .map(|y| HRow::from_homogeneous(y).canonical())
        .filter(|row| !row.is_trivial())
        .filter(|row| v.vertices.iter().any(|p| row.eval(p).is_zero()))
        .collect();
    rows.sort_by(|a, b| cmp_lex(&a.homogeneous(), &b.homogeneous()));
    rows.dedup();

    let mut linearity = BTreeSet::new();
    let mut eqs: Vec<HRow> = gm
        .nullspace()
        .iter()
        .map(|y| HRow::from_homogeneous(&to_rationals(&primitive(primitive_integer(y)))).canonical_equation())
        .collect();
    eqs.sort_by(|a, b| cmp_lex(&a.homogeneous(), &b.homogeneous()));
    for e in eqs {
        linearity.insert(rows.len());
        rows.push(e);
    }
    Ok(HPolyhedron::with_linearity(d, rows, linearity))
}

/// Dimension of the affine hull of a feasible H-polyhedron.
pub fn dimension(h: &HPolyhedron) -> Result<usize> {
    Ok(reduce_to_full_dim(h)?.1.source_dim())
}

/// Rewrites `h` in coordinates of its affine hull.
///
/// The returned map sends reduced coordinates back to ambient points.
/// When `h` is already full-dimensional without equations the map is the
/// identity and the rows are returned unchanged. Implicit equations and
/// rows that become constant are dropped.
pub fn reduce_to_full_dim(h: &HPolyhedron) -> Result<(HPolyhedron, AffineMap)> {
    let (map_eq, rows) = eliminate_equations(h)?;
    let k = map_eq.source_dim();
    let rows: Vec<HRow> = rows.into_iter().map(|(_, r)| r).collect();

    // Split off the lineality space so the remaining part is pointed.
    let a = QMatrix::from_rows(k, &rows.iter().map(|r| r.a.clone()).collect::<Vec<_>>());
    let lineality = if k == 0 { Vec::new() } else { a.nullspace() };
    let (pointed_map, pointed_rows) = if lineality.is_empty() {
        (AffineMap::identity(k), rows.clone())
    } else {
        let complement = a.row_space_basis();
        let m = AffineMap { origin: vec![Rational::zero(); k], columns: complement };
        let pr = rows.iter().map(|r| m.pull_back(r)).collect();
        (m, pr)
    };
    let m = pointed_map.source_dim();
    let (verts, dirs) = pointed_generators(&pointed_rows, m)?;

    // Affine hull of the pointed part, in pivot coordinates.
    let p0 = verts[0].clone();
    let diffs: Vec<Vec<Rational>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(&p0).map(|(a, b)| a - b).collect())
        .chain(dirs.iter().cloned())
        .collect();
    let hull_map = if diffs.is_empty() {
        AffineMap { origin: p0, columns: Vec::new() }
    } else {
        let e = QMatrix::from_rows(m, &diffs).rref();
        if e.pivots.len() == m {
            AffineMap::identity(m)
        } else {
            let basis: Vec<Vec<Rational>> = (0..e.pivots.len()).map(|i| e.matrix.row(i).to_vec()).collect();
            let mut origin = p0.clone();
            for (b, &piv) in basis.iter().zip(&e.pivots) {
                for (o, bi) in origin.iter_mut().zip(b) {
                    *o -= &p0[piv] * bi;
                }
            }
            AffineMap { origin, columns: basis }
        }
    };

    let mut inner = pointed_map.compose(&hull_map);
    inner.columns.extend(lineality);
    let total = map_eq.compose(&inner);

    let identity = total == AffineMap::identity(h.dim);
    if identity {
        return Ok((h.clone(), total));
    }
    let reduced_rows: Vec<HRow> =
        h.inequalities().map(|(_, r)| total.pull_back(r)).filter(|r| !r.is_trivial()).collect();
    Ok((HPolyhedron::new(total.source_dim(), reduced_rows), total))
}

/// Affine dimension of a point set together with directions.
pub fn affine_dimension(points: &[Vec<Rational>], directions: &[Vec<Rational>]) -> Option<usize> {
    let p0 = points.first()?;
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|v| v.iter().zip(p0).map(|(a, b)| a - b).collect())
        .chain(directions.iter().cloned())
        .collect();
    if rows.is_empty() {
        return Some(0);
    }
    Some(QMatrix::from_rows(p0.len(), &rows).rank())
}
