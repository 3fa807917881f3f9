//! Closed-form diameter bounds, the table of known maximum diameters, and
//! the Hirsch status report.
//!
//! `n^(1 + log2 d)` is irrational for most inputs. Comparisons with
//! rationals are exact: powers of two are handled in integers, everything
//! else by rigorous interval bounds on `log2 d * log2 n - log2(k / n)`
//! refined until the sign is certain. The reported real is the smallest
//! `f64` not below the true value.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::paths::{
    diameter_with, monotone_eccentricity, nonrevisiting_property_with, MonotoneReport, PropertyOutcome,
};
use crate::polytope::{HPolyhedron, Polyhedron};

/// Largest supported dimension in [`bound_table`].
pub const MAX_TABLE_DIM: usize = 64;
/// Largest supported facet count in [`bound_table`].
pub const MAX_TABLE_FACETS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundTable {
    pub n: usize,
    pub d: usize,
    pub lower: i64,
    /// `n 2^(d-3)`, for `d >= 3`.
    pub larman: Option<u128>,
    /// `n^(1 + log2 d)`, rounded up to the next `f64`.
    pub kalai_kleitman: f64,
    pub known_exact: Option<u64>,
    pub hirsch_rhs: i64,
}

fn check_domain(n: usize, d: usize) -> Result<()> {
    if d < 2 || n <= d {
        return Err(Error::InvalidArgument(format!("need n > d >= 2, got n = {n}, d = {d}")));
    }
    if d > MAX_TABLE_DIM || n > MAX_TABLE_FACETS {
        return Err(Error::InvalidArgument(format!(
            "supported range is d <= {MAX_TABLE_DIM}, n <= {MAX_TABLE_FACETS}"
        )));
    }
    Ok(())
}

pub fn bound_table(n: usize, d: usize) -> Result<BoundTable> {
    check_domain(n, d)?;
    Ok(BoundTable {
        n,
        d,
        lower: lower_bound(n, d),
        larman: larman_bound(n, d),
        kalai_kleitman: kalai_kleitman_upper(n, d),
        known_exact: known_exact(n, d),
        hirsch_rhs: n as i64 - d as i64,
    })
}

/// `floor((d-1) n / d) - (d - 2)`.
pub fn lower_bound(n: usize, d: usize) -> i64 {
    ((d - 1) * n / d) as i64 - (d as i64 - 2)
}

/// `n 2^(d-3)` for `3 <= d <= 64`.
pub fn larman_bound(n: usize, d: usize) -> Option<u128> {
    if !(3..=MAX_TABLE_DIM).contains(&d) {
        return None;
    }
    (n as u128).checked_mul(1u128 << (d - 3))
}

/// `n 2^(d-1)`.
pub fn subset_graph_bound(n: usize, d: usize) -> BigUint {
    BigUint::from(n) << d.saturating_sub(1)
}

/// Maximum diameters known exactly: `H(n,2)`, `H(n,3)` and a finite list
/// for `d = 4, 5, 6`.
pub fn known_exact(n: usize, d: usize) -> Option<u64> {
    if n <= d {
        return None;
    }
    let n64 = n as u64;
    match (n, d) {
        (_, 2) => Some(n64 / 2),
        (_, 3) => Some(2 * n64 / 3 - 1),
        (8, 4) => Some(4),
        (9, 4) => Some(5),
        (10, 4) => Some(5),
        (11, 4) => Some(6),
        (12, 4) => Some(7),
        (10, 5) => Some(5),
        (11, 5) => Some(6),
        (12, 6) => Some(6),
        _ => None,
    }
}

/// Exact comparison of `n^(1 + log2 d)` with a nonnegative rational `k`.
pub fn kalai_kleitman_cmp(n: usize, d: usize, k: &Rational) -> Ordering {
    assert!(n >= 1 && d >= 1, "n and d must be positive");
    if !k.is_positive() {
        return Ordering::Greater;
    }
    let a = k.numer().abs().to_biguint().expect("nonnegative");
    let b = k.denom().to_biguint().expect("positive");
    let nn = BigUint::from(n);
    let dd = BigUint::from(d);
    if n == 1 {
        return b.cmp(&a);
    }
    if d.is_power_of_two() {
        let e = d.trailing_zeros() + 1;
        return (nn.pow(e) * &b).cmp(&a);
    }
    if n.is_power_of_two() {
        // n^(log2 d) = d^(log2 n).
        let e = n.trailing_zeros();
        return (&nn * dd.pow(e) * &b).cmp(&a);
    }
    // Otherwise compare log2 d * log2 n with log2(k / n) using interval
    // bounds of increasing precision.
    let num = a;
    let den = b * &nn;
    let mut prec: u32 = 64;
    while prec <= 1 << 14 {
        let (al, ah) = log2_bounds(&dd, &BigUint::from(1u32), prec);
        let (bl, bh) = log2_bounds(&nn, &BigUint::from(1u32), prec);
        let (cl, ch) = log2_bounds(&num, &den, prec);
        let scale = BigInt::from(1) << prec;
        if &al * &bl > &ch * &scale {
            return Ordering::Greater;
        }
        if &ah * &bh < &cl * &scale {
            return Ordering::Less;
        }
        prec *= 2;
    }
    panic!("comparison of {n}^(1 + log2 {d}) with {k} did not separate");
}

/// Integers `lo, hi` with `lo / 2^prec <= log2(num / den) <= hi / 2^prec`.
///
/// Binary digits of the mantissa's logarithm come from repeated squaring,
/// run twice on fixed-point values rounded down and up respectively.
fn log2_bounds(num: &BigUint, den: &BigUint, prec: u32) -> (BigInt, BigInt) {
    assert!(!num.is_zero() && !den.is_zero(), "log2 of a positive rational");
    let mut e = num.bits() as i64 - den.bits() as i64;
    let (mut x, mut y) = (num.clone(), den.clone());
    if e >= 0 {
        y <<= e as u64;
    } else {
        x <<= (-e) as u64;
    }
    if x < y {
        x <<= 1u32;
        e -= 1;
    }
    // x / y in [1, 2).
    let w = u64::from(prec) + 16;
    let two = BigUint::from(1u32) << (w + 1);
    let scaled = &x << w;
    let mut lo = &scaled / &y;
    let mut hi = (&scaled + &y - 1u32) / &y;
    let (mut flo, mut fhi) = (BigInt::zero(), BigInt::zero());
    for _ in 0..prec {
        lo = (&lo * &lo) >> w;
        let sq = &hi * &hi;
        hi = (&sq >> w) + u32::from(!(sq.trailing_zeros().unwrap_or(w) >= w));
        flo <<= 1u32;
        fhi <<= 1u32;
        if lo >= two {
            lo >>= 1u32;
            flo += 1;
        }
        if hi >= two {
            hi = (&hi + 1u32) >> 1u32;
            fhi += 1;
        }
    }
    let base = BigInt::from(e) << prec;
    (&base + flo, base + fhi + 1)
}

/// `n^(1 + log2 d) >= k`, decided exactly.
pub fn kalai_kleitman_at_least(n: usize, d: usize, k: &Rational) -> bool {
    kalai_kleitman_cmp(n, d, k) != Ordering::Less
}

/// `n^(1 + log2 d) >= k` for an integer `k`.
pub fn kalai_kleitman_respects(n: usize, d: usize, k: u64) -> bool {
    kalai_kleitman_at_least(n, d, &Rational::from_integer(BigInt::from(k)))
}

/// Smallest `f64` that is at least `n^(1 + log2 d)`.
pub fn kalai_kleitman_upper(n: usize, d: usize) -> f64 {
    let approx = (n as f64).powf(1.0 + (d as f64).log2());
    if !approx.is_finite() {
        return f64::INFINITY;
    }
    let exceeds = |x: f64| {
        let r = BigRational::from_float(x).expect("finite");
        kalai_kleitman_cmp(n, d, &r) == Ordering::Greater
    };
    let mut x = approx;
    while exceeds(x) {
        x = next_up(x);
    }
    loop {
        let below = next_down(x);
        if exceeds(below) {
            return x;
        }
        x = below;
    }
}

fn next_up(x: f64) -> f64 {
    debug_assert!(x.is_finite() && x > 0.0);
    f64::from_bits(x.to_bits() + 1)
}

fn next_down(x: f64) -> f64 {
    debug_assert!(x.is_finite() && x > 0.0);
    f64::from_bits(x.to_bits() - 1)
}

/// Whether `diam` respects both subset-graph bounds
/// `n^(1 + log2 d)` and `n 2^(d-1)`.
pub fn subset_graph_bounds_respected(n: usize, d: usize, diam: u64) -> bool {
    kalai_kleitman_respects(n, d, diam) && BigUint::from(diam) <= subset_graph_bound(n, d)
}

/// Whether `diam` respects every unconditional upper bound available for
/// `(n, d)`: `n^(1 + log2 d)`, and `n 2^(d-3)` when `d >= 3`.
pub fn polytope_bounds_respected(n: usize, d: usize, diam: u64) -> bool {
    let larman = if d >= 3 { BigUint::from(diam) <= BigUint::from(n) << (d - 3) } else { true };
    larman && kalai_kleitman_respects(n, d, diam)
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    /// Run the non-revisiting search with this budget per pair.
    pub nonrevisiting: Option<u64>,
    /// Linear functional for the monotone path report.
    pub monotone: Option<Vec<Rational>>,
    pub exec: Execution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirschReport {
    pub n: usize,
    pub d: usize,
    pub bounded: bool,
    pub vertex_count: usize,
    /// Diameter of the graph of vertices and bounded edges.
    pub diameter: usize,
    pub n_minus_d: i64,
    pub satisfies_hirsch: bool,
    pub hirsch_sharp: bool,
    pub simple: bool,
    pub simplicial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonrevisiting: Option<PropertyOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monotone: Option<MonotoneReport>,
    pub witness_pair: (String, String),
}

pub fn hirsch_report(h: &HPolyhedron, opts: &ReportOptions) -> Result<HirschReport> {
    report_for(&Polyhedron::from_h(h)?, opts)
}

/// Report for an already analyzed polyhedron (keeps vertex labels).
pub fn report_for(p: &Polyhedron, opts: &ReportOptions) -> Result<HirschReport> {
    let g = p.graph();
    let diam = diameter_with(g, opts.exec)?;
    let n = p.facet_count();
    let d = p.dim();
    let rhs = n as i64 - d as i64;
    let class = if p.is_bounded() {
        p.classify()?
    } else {
        let simple = (0..p.vertex_count()).all(|v| p.is_simple_vertex(v));
        crate::polytope::Classification { simple, simplicial: false }
    };
    let nonrevisiting = match opts.nonrevisiting {
        Some(budget) => Some(nonrevisiting_property_with(p, budget, opts.exec)?),
        None => None,
    };
    let monotone = match &opts.monotone {
        Some(c) => Some(monotone_eccentricity(p, c)?),
        None => None,
    };
    let (u, v) = diam.witness;
    Ok(HirschReport {
        n,
        d,
        bounded: p.is_bounded(),
        vertex_count: p.vertex_count(),
        diameter: diam.value,
        n_minus_d: rhs,
        satisfies_hirsch: (diam.value as i64) <= rhs,
        hirsch_sharp: diam.value as i64 == rhs,
        simple: class.simple,
        simplicial: class.simplicial,
        nonrevisiting,
        monotone,
        witness_pair: (g.label(u).to_string(), g.label(v).to_string()),
    })
}

/// Aligned `key value` lines.
pub fn format_table(t: &BoundTable) -> String {
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let rows = [
        ("n", t.n.to_string()),
        ("d", t.d.to_string()),
        ("lower", t.lower.to_string()),
        ("larman", opt(t.larman.map(|x| x.to_string()))),
        ("kalai_kleitman", format_real(t.kalai_kleitman)),
        ("known_exact", opt(t.known_exact.map(|x| x.to_string()))),
        ("hirsch_rhs", t.hirsch_rhs.to_string()),
    ];
    rows.iter().map(|(k, v)| format!("{k:<15}{v}\n")).collect()
}

fn format_real(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x.to_i64().expect("in range"))
    } else {
        format!("{x}")
    }
}
