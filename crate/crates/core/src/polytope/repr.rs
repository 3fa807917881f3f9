use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{cmp_lex, dot, primitive_integer, to_rationals, Rational};

/// One inequality `b + a·x >= 0` (or equation, when listed as linearity).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HRow {
    pub b: Rational,
    pub a: Vec<Rational>,
}

impl HRow {
    pub fn new(b: Rational, a: Vec<Rational>) -> Self {
        HRow { b, a }
    }

    pub fn from_i64(b: i64, a: &[i64]) -> Self {
        HRow::new(crate::arith::int(b), crate::arith::vec_from_i64(a))
    }

    /// Value of `b + a·x`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.b + dot(&self.a, x)
    }

    /// Value of `a·r` for a direction `r`.
    pub fn eval_direction(&self, r: &[Rational]) -> Rational {
        dot(&self.a, r)
    }

    /// `(b, a1, ..., ad)` as one vector.
    pub fn homogeneous(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.a.len() + 1);
        v.push(self.b.clone());
        v.extend(self.a.iter().cloned());
        v
    }

    pub fn from_homogeneous(v: &[Rational]) -> Self {
        HRow::new(v[0].clone(), v[1..].to_vec())
    }

    pub fn is_trivial(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// Positive rescaling to a primitive integer row.
    pub fn canonical(&self) -> HRow {
        let ints = primitive_integer(&self.homogeneous());
        HRow::from_homogeneous(&to_rationals(&ints))
    }

    /// Canonical form for an equation: as [`HRow::canonical`], then the sign
    /// is fixed so the first nonzero coefficient of `(b, a)` is positive.
    pub fn canonical_equation(&self) -> HRow {
        let mut ints: Vec<BigInt> = primitive_integer(&self.homogeneous());
        if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in &mut ints {
                *x = -&*x;
            }
        }
        HRow::from_homogeneous(&to_rationals(&ints))
    }
}

/// Inequality representation: rows `b + a·x >= 0`; rows listed in
/// `linearity` are equations `b + a·x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    pub dim: usize,
    pub rows: Vec<HRow>,
    pub linearity: BTreeSet<usize>,
}

impl HPolyhedron {
    pub fn new(dim: usize, rows: Vec<HRow>) -> Self {
        for r in &rows {
            assert_eq!(r.a.len(), dim, "row length must equal the ambient dimension");
        }
        HPolyhedron { dim, rows, linearity: BTreeSet::new() }
    }

    pub fn with_linearity(dim: usize, rows: Vec<HRow>, linearity: BTreeSet<usize>) -> Self {
        let mut h = HPolyhedron::new(dim, rows);
        assert!(linearity.iter().all(|&i| i < h.rows.len()), "linearity index out of range");
        h.linearity = linearity;
        h
    }

    pub fn from_i64(dim: usize, rows: &[(i64, &[i64])]) -> Self {
        HPolyhedron::new(dim, rows.iter().map(|(b, a)| HRow::from_i64(*b, a)).collect())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn inequalities(&self) -> impl Iterator<Item = (usize, &HRow)> {
        self.rows.iter().enumerate().filter(|(i, _)| !self.linearity.contains(i))
    }

    pub fn equations(&self) -> impl Iterator<Item = (usize, &HRow)> {
        self.rows.iter().enumerate().filter(|(i, _)| self.linearity.contains(i))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            let v = r.eval(x);
            if self.linearity.contains(&i) {
                v.is_zero()
            } else {
                !v.is_negative()
            }
        })
    }

    /// Rows rescaled canonically and sorted, with linearity re-indexed.
    /// Two descriptions of the same system (up to positive row scaling and
    /// order) have equal canonical forms.
    pub fn canonical(&self) -> HPolyhedron {
        let mut tagged: Vec<(bool, HRow)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let eq = self.linearity.contains(&i);
                (eq, if eq { r.canonical_equation() } else { r.canonical() })
            })
            .collect();
        tagged.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| cmp_lex(&x.1.homogeneous(), &y.1.homogeneous())));
        tagged.dedup();
        let linearity = tagged.iter().enumerate().filter(|(_, (eq, _))| *eq).map(|(i, _)| i).collect();
        HPolyhedron { dim: self.dim, rows: tagged.into_iter().map(|(_, r)| r).collect(), linearity }
    }
}

/// Vertex and ray representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolyhedron {
    pub dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

impl VPolyhedron {
    pub fn new(dim: usize, vertices: Vec<Vec<Rational>>, rays: Vec<Vec<Rational>>) -> Self {
        for p in vertices.iter().chain(&rays) {
            assert_eq!(p.len(), dim, "point length must equal the ambient dimension");
        }
        VPolyhedron { dim, vertices, rays }
    }

    pub fn from_points(dim: usize, vertices: Vec<Vec<Rational>>) -> Self {
        VPolyhedron::new(dim, vertices, Vec::new())
    }

    pub fn from_i64(dim: usize, vertices: &[&[i64]]) -> Self {
        VPolyhedron::from_points(dim, vertices.iter().map(|v| crate::arith::vec_from_i64(v)).collect())
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Generators as homogeneous vectors: `(1, v)` for vertices, `(0, r)`
    /// for rays.
    pub fn homogeneous_generators(&self) -> Vec<Vec<Rational>> {
        let one = Rational::from_integer(1.into());
        let zero = Rational::zero();
        self.vertices
            .iter()
            .map(|v| std::iter::once(one.clone()).chain(v.iter().cloned()).collect())
            .chain(self.rays.iter().map(|r| std::iter::once(zero.clone()).chain(r.iter().cloned()).collect()))
            .collect()
    }
}
