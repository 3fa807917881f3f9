//! Double description method for pointed polyhedral cones.
//!
//! Input is a list of integer constraint rows `A`; output is the set of
//! extreme rays of `{y : A y >= 0}`, one primitive integer vector per ray.
//! Rows are inserted in the order given. Two rays are adjacent when no third
//! ray's zero set contains the intersection of their zero sets.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{int_rank, primitive, QMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NotPointed;

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Extreme rays of the cone `{y in R^dim : row·y >= 0 for all rows}`.
///
/// Fails with [`NotPointed`] when the rows have rank below `dim` (the cone
/// then contains a line).
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>, NotPointed> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    // Greedy basis in insertion order.
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    let mut basis_rows: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == dim {
            break;
        }
        basis_rows.push(r.clone());
        if int_rank(&basis_rows) == basis_rows.len() {
            basis.push(i);
        } else {
            basis_rows.pop();
        }
    }
    if basis.len() < dim {
        return Err(NotPointed);
    }

    // Columns of the inverse of the basis matrix span the initial cone.
    let b = QMatrix::from_rows(
        dim,
        &basis_rows.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect::<Vec<_>>(),
    );
    let nrows = rows.len();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut e = vec![Rational::zero(); dim];
            e[j] = Rational::from_integer(1.into());
            let col = b.solve_affine(&e).expect("basis is nonsingular");
            let coords = crate::arith::primitive_integer(&col);
            let mut zeros = FixedBitSet::with_capacity(nrows);
            for (k, &bi) in basis.iter().enumerate() {
                if k != j {
                    zeros.insert(bi);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    let mut processed = FixedBitSet::with_capacity(nrows);
    for &bi in &basis {
        processed.insert(bi);
    }

    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| int_dot(row, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        if !neg.is_empty() {
            for &p in &pos {
                for &n in &neg {
                    let mut common = rays[p].zeros.clone();
                    common.intersect_with(&rays[n].zeros);
                    if common.count_ones(..) + 2 < dim {
                        continue;
                    }
                    let adjacent =
                        rays.iter().enumerate().all(|(k, r)| k == p || k == n || !common.is_subset(&r.zeros));
                    if !adjacent {
                        continue;
                    }
                    let vp = &values[p];
                    let vn = -&values[n];
                    let coords: Vec<BigInt> =
                        rays[p].coords.iter().zip(&rays[n].coords).map(|(xp, xn)| &vn * xp + vp * xn).collect();
                    let mut zeros = common;
                    zeros.insert(i);
                    next.push(Ray { coords: primitive(coords), zeros });
                }
            }
        }
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        rays = next;
        processed.insert(i);
    }

    Ok(rays.into_iter().map(|r| r.coords).collect())
}
