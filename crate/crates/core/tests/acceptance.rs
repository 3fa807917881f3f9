//! Acceptance criteria, run as a plain binary so that every criterion prints
//! one PASS/FAIL line. All comparisons are exact.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use polydiam::abstraction::{
    from_simple_polytope, search_max_diameter, subset_graph_diameter, validate_layer_property,
};
use polydiam::bounds::{
    bound_table, known_exact, lower_bound, polytope_bounds_respected, subset_graph_bounds_respected,
};
use polydiam::constructions::{
    crosspolytope, cube, hirsch_sharp, hirsch_sharp_from_q4, klee_walkup, polygon, product, random_01_polytope,
    random_margins, simplex, transportation, unbound_at_facet, wedge,
};
use polydiam::paths::{bfs_distances, diameter, nonrevisiting_path, nonrevisiting_property, Search};
use polydiam::polytope::hrep_to_vrep;
use polydiam::simplicial::{anti_star, boundary_complex, ridge_graph};
use polydiam::{Execution, HPolyhedron, Polyhedron};

use common::{brute_force_vertices, corpus, extremal_subset_diameter_4_2};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Largest diameter of a valid subset graph on 2-subsets of {1..4}, from
/// complete enumeration.
const EXTREMAL_SUBSET_DIAMETER_4_2: usize = 3;

const ANTI_STAR_W: [&str; 15] = [
    "abcd", "acde", "adeh", "cdeh", "bceh", "begh", "efgh", "adgh", "cdgh", "bcgh", "afgh", "adfg", "cdfg", "bcfg",
    "bcdf",
];

const ANTI_STAR_W_EDGES: [(&str, &str); 24] = [
    ("abcd", "acde"),
    ("acde", "adeh"),
    ("acde", "cdeh"),
    ("adeh", "cdeh"),
    ("cdeh", "bceh"),
    ("bceh", "begh"),
    ("begh", "efgh"),
    ("adeh", "adgh"),
    ("cdeh", "cdgh"),
    ("bceh", "bcgh"),
    ("bcgh", "begh"),
    ("adgh", "cdgh"),
    ("cdgh", "bcgh"),
    ("afgh", "adgh"),
    ("adgh", "adfg"),
    ("cdgh", "cdfg"),
    ("bcgh", "bcfg"),
    ("efgh", "afgh"),
    ("afgh", "adfg"),
    ("adfg", "cdfg"),
    ("cdfg", "bcfg"),
    ("cdfg", "bcdf"),
    ("bcfg", "bcdf"),
    ("bcdf", "abcd"),
];

fn diam(p: &Polyhedron) -> usize {
    diameter(p.graph()).expect("connected graph").value
}

fn analyze(h: &HPolyhedron) -> Polyhedron {
    Polyhedron::from_h(h).expect("valid polytope")
}

fn unordered(a: &str, b: &str) -> (String, String) {
    if a < b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

fn klee_walkup_verification() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = polydiam::cli::execute(&["polydiam", "gen", "kleewalkup"], &mut std::io::empty(), &mut out, &mut err);
    ensure!(code == 0, "gen kleewalkup exited {code}");
    let mut report = Vec::new();
    let code = polydiam::cli::execute(&["polydiam", "check", "--json"], &mut out.as_slice(), &mut report, &mut err);
    ensure!(code == 0, "check exited {code}: {}", String::from_utf8_lossy(&err));
    let json: serde_json::Value = serde_json::from_slice(&report).map_err(|e| e.to_string())?;
    ensure!(json["d"] == 4 && json["n"] == 9 && json["diameter"] == 5, "report {json}");

    let kw = klee_walkup();
    let star = Polyhedron::from_v(&kw.star, Some(kw.labels.clone())).map_err(|e| e.to_string())?;
    let boundary = boundary_complex(&star).map_err(|e| e.to_string())?;
    let g = ridge_graph(&boundary);
    let (a, b) = (
        boundary.facet_by_name("abcd").map_err(|e| e.to_string())?,
        boundary.facet_by_name("efgh").map_err(|e| e.to_string())?,
    );
    let dist = bfs_distances(&g, a).map_err(|e| e.to_string())?[b];
    ensure!(dist == Some(5), "ridge distance abcd-efgh is {dist:?}");

    let k = anti_star(&boundary, "w").map_err(|e| e.to_string())?;
    let names: BTreeSet<String> = k.facet_names().into_iter().collect();
    let expected: BTreeSet<String> = ANTI_STAR_W.iter().map(|s| s.to_string()).collect();
    ensure!(names == expected, "anti-star facets {names:?}");
    let edges = ridge_graph(&k).labeled_edges();
    let edges: BTreeSet<(String, String)> = edges.iter().map(|(a, b)| unordered(a, b)).collect();
    let expected: BTreeSet<(String, String)> = ANTI_STAR_W_EDGES.iter().map(|(a, b)| unordered(a, b)).collect();
    ensure!(expected.len() == 24, "expected edge list has duplicates");
    ensure!(
        edges == expected,
        "anti-star dual graph differs: extra {:?}, missing {:?}",
        edges.difference(&expected).collect::<Vec<_>>(),
        expected.difference(&edges).collect::<Vec<_>>()
    );
    Ok(())
}

fn canonical_diameters() -> Outcome {
    for d in 2..=6 {
        ensure!(diam(&analyze(&simplex(d))) == 1, "simplex {d}");
        ensure!(diam(&analyze(&cube(d))) == d, "cube {d}");
        ensure!(diam(&analyze(&crosspolytope(d))) == 2, "crosspolytope {d}");
    }
    for n in 3..=12 {
        let p = analyze(&polygon(n).map_err(|e| e.to_string())?);
        ensure!(p.vertex_count() == n, "polygon {n} has {} vertices", p.vertex_count());
        ensure!(diam(&p) == n / 2, "polygon {n}");
    }
    Ok(())
}

fn wedge_law() -> Outcome {
    for (name, h) in corpus() {
        let p = analyze(&h);
        let base = diam(&p);
        for &f in &p.facets {
            let w = analyze(&wedge(&p, f).map_err(|e| format!("{name}: {e}"))?);
            ensure!(w.dim() == p.dim() + 1, "{name} facet {f}: dim {}", w.dim());
            ensure!(w.facet_count() == p.facet_count() + 1, "{name} facet {f}: {} facets", w.facet_count());
            ensure!(diam(&w) >= base, "{name} facet {f}: diameter dropped");
        }
    }
    Ok(())
}

fn product_law() -> Outcome {
    let gens: Vec<(String, HPolyhedron)> = vec![
        ("simplex1".into(), simplex(1)),
        ("simplex2".into(), simplex(2)),
        ("simplex3".into(), simplex(3)),
        ("cube2".into(), cube(2)),
        ("cube3".into(), cube(3)),
        ("polygon5".into(), polygon(5).unwrap()),
        ("polygon6".into(), polygon(6).unwrap()),
        ("crosspolytope3".into(), crosspolytope(3)),
    ];
    let pairs: Vec<(usize, usize)> =
        (0..gens.len()).flat_map(|a| (a..gens.len()).map(move |b| (a, b))).take(20).collect();
    ensure!(pairs.len() == 20, "need 20 pairs");
    for (a, b) in pairs {
        let (pa, pb) = (analyze(&gens[a].1), analyze(&gens[b].1));
        let pp = analyze(&product(&gens[a].1, &gens[b].1));
        let tag = format!("{} x {}", gens[a].0, gens[b].0);
        ensure!(pp.dim() == pa.dim() + pb.dim(), "{tag}: dim");
        ensure!(pp.facet_count() == pa.facet_count() + pb.facet_count(), "{tag}: facets");
        ensure!(diam(&pp) == diam(&pa) + diam(&pb), "{tag}: diameter");
    }
    Ok(())
}

fn unbounded_counterexample() -> Outcome {
    let q4 = analyze(&klee_walkup().q4);
    let d = diameter(q4.graph()).map_err(|e| e.to_string())?;
    ensure!(d.value == 5, "Q4 diameter {}", d.value);
    let (u, v) = d.witness;
    let k = *q4
        .facets
        .iter()
        .find(|&&f| !q4.incidence.tight(u, f) && !q4.incidence.tight(v, f))
        .ok_or("no facet avoids the witness pair")?;
    let ub = unbound_at_facet(&q4, k).map_err(|e| e.to_string())?;
    let p = analyze(&ub.h);
    ensure!(!p.is_bounded(), "result is bounded");
    ensure!(p.dim() == 4 && p.facet_count() == 8, "d={} n={}", p.dim(), p.facet_count());
    let find = |x: usize| {
        let y = ub.map_point(&q4.v.vertices[x]).expect("witness off the dropped facet");
        p.v.vertices.iter().position(|z| *z == y).expect("image is a vertex")
    };
    let (iu, iv) = (find(u), find(v));
    let dist = bfs_distances(p.graph(), iu).map_err(|e| e.to_string())?[iv];
    ensure!(dist.is_some_and(|x| x >= 5), "witness distance {dist:?}");
    ensure!(diam(&p) > p.facet_count() - p.dim(), "diameter within n - d");
    Ok(())
}

fn hirsch_sharp_generators() -> Outcome {
    let mut cases: Vec<(usize, usize)> = (2..=6).flat_map(|d| (d + 1..=2 * d).map(move |n| (d, n))).collect();
    cases.extend([(4, 9), (5, 10), (5, 11), (5, 12)]);
    for (d, n) in cases {
        let p = analyze(&hirsch_sharp(d, n).map_err(|e| format!("({d},{n}): {e}"))?);
        ensure!(p.dim() == d && p.facet_count() == n, "({d},{n}) built d={} n={}", p.dim(), p.facet_count());
        let value = diam(&p);
        ensure!(value == n - d, "({d},{n}) diameter {value}");
        if let Some(h) = known_exact(n, d) {
            ensure!(value as u64 == h, "({d},{n}) known value {h}");
        }
    }
    let via_q4 = analyze(&hirsch_sharp_from_q4(5, 10).map_err(|e| e.to_string())?);
    ensure!(diam(&via_q4) == 5 && via_q4.facet_count() == 10, "(5,10) via Q4");
    ensure!(known_exact(9, 4) == Some(5) && known_exact(10, 5) == Some(5), "known table");
    Ok(())
}

fn zero_one_polytopes() -> Outcome {
    for seed in 0..100u64 {
        let d = 2 + (seed % 4) as usize;
        let m = d + 1 + (seed as usize * 7) % ((1 << d) - d);
        let v = random_01_polytope(d, m, seed).map_err(|e| format!("seed {seed}: {e}"))?;
        let p = Polyhedron::from_v(&v, None).map_err(|e| e.to_string())?;
        let value = diam(&p);
        ensure!(value <= p.facet_count() - d, "seed {seed}: diameter {value} > n - d");
        ensure!(value <= d, "seed {seed}: diameter {value} > d");
    }
    Ok(())
}

fn transportation_polytopes() -> Outcome {
    for seed in 0..20u64 {
        let p = 2 + (seed % 3) as usize;
        let q = 2 + (seed / 3 % 3) as usize;
        let (a, b) = random_margins(p, q, 9, seed);
        let t = transportation(&a, &b).map_err(|e| e.to_string())?;
        let poly = analyze(&t.reduced);
        ensure!(poly.dim() == (p - 1) * (q - 1), "seed {seed}: dim {}", poly.dim());
        ensure!(poly.facet_count() <= p * q, "seed {seed}: {} facets", poly.facet_count());
        let value = diam(&poly);
        ensure!(value < p + q, "seed {seed}: diameter {value} > p + q - 1");
        ensure!(value <= 3 * (p + q - 1), "seed {seed}");
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for (name, h) in corpus() {
        if h.len() > 12 || h.dim > 5 || !h.linearity.is_empty() {
            continue;
        }
        let v = hrep_to_vrep(&h).map_err(|e| format!("{name}: {e}"))?;
        ensure!(v.rays.is_empty(), "{name}: unexpected rays");
        ensure!(v.vertices == brute_force_vertices(&h), "{name}: vertex sets differ");
        checked += 1;
    }
    ensure!(checked >= 10, "only {checked} instances checked");
    Ok(())
}

fn abstraction() -> Outcome {
    for (name, h) in corpus() {
        let p = analyze(&h);
        if !p.classify().map_err(|e| e.to_string())?.simple {
            continue;
        }
        let g = from_simple_polytope(&p).map_err(|e| e.to_string())?;
        ensure!(validate_layer_property(&g).valid, "{name}: layer property fails");
        let r = subset_graph_diameter(&g).map_err(|e| e.to_string())?;
        ensure!(r.diameter == diam(&p), "{name}: subset diameter differs");
        ensure!(subset_graph_bounds_respected(g.n(), g.d(), r.diameter as u64), "{name}: bound violated");
    }
    let s = search_max_diameter(4, 2, 50_000, 0, Execution::Parallel).map_err(|e| e.to_string())?;
    ensure!(s.complete, "enumeration at (4,2) incomplete");
    ensure!(s.diameter == EXTREMAL_SUBSET_DIAMETER_4_2, "search found {}", s.diameter);
    ensure!(s.diameter == extremal_subset_diameter_4_2(), "oracle disagrees");
    let best = s.best.ok_or("no graph")?;
    ensure!(validate_layer_property(&best).valid, "best graph invalid");
    ensure!(subset_graph_bounds_respected(4, 2, s.diameter as u64), "bounds at (4,2)");
    Ok(())
}

fn bounds_consistency() -> Outcome {
    let table: [(usize, usize, u64); 10] = [
        (8, 4, 4),
        (9, 4, 5),
        (10, 4, 5),
        (11, 4, 6),
        (12, 4, 7),
        (10, 5, 5),
        (11, 5, 6),
        (12, 6, 6),
        (9, 3, 5),
        (7, 2, 3),
    ];
    for (n, d, h) in table {
        let t = bound_table(n, d).map_err(|e| e.to_string())?;
        ensure!(t.known_exact == Some(h), "H({n},{d})");
        ensure!(t.lower <= h as i64 && h as i64 <= t.hirsch_rhs, "({n},{d}) ordering");
    }
    for n in 4..=30 {
        ensure!(lower_bound(n, 3) == (2 * n / 3) as i64 - 1, "lower({n},3)");
    }
    for (name, h) in corpus() {
        let p = analyze(&h);
        let value = diam(&p) as u64;
        ensure!(polytope_bounds_respected(p.facet_count(), p.dim(), value), "{name} exceeds an upper bound");
    }
    Ok(())
}

fn nonrevisiting() -> Outcome {
    let mut polys: Vec<(String, Polyhedron)> = (2..=4).map(|d| (format!("cube{d}"), analyze(&cube(d)))).collect();
    polys.push(("q4".into(), analyze(&klee_walkup().q4)));
    let mut cases: Vec<(usize, usize)> = (2..=6).flat_map(|d| (d + 1..=2 * d).map(move |n| (d, n))).collect();
    cases.extend([(4, 9), (5, 10), (5, 11), (5, 12)]);
    for (d, n) in cases {
        let p = analyze(&hirsch_sharp(d, n).map_err(|e| e.to_string())?);
        if p.vertex_count() <= 400 {
            polys.push((format!("hirsch_sharp({d},{n})"), p));
        }
    }
    for (name, p) in &polys {
        let cap = p.facet_count() - p.dim();
        let outcome = nonrevisiting_property(p, 2_000_000).map_err(|e| e.to_string())?;
        ensure!(outcome.holds(), "{name}: {outcome:?}");
        let last = p.vertex_count() - 1;
        match nonrevisiting_path(p, 0, last, 2_000_000).map_err(|e| e.to_string())? {
            Search::Found(path) => ensure!(path.length <= cap, "{name}: path length {}", path.length),
            other => return Err(format!("{name}: no path found ({other:?})")),
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 Klee-Walkup verification", klee_walkup_verification, 5),
        ("2 canonical diameters", canonical_diameters, 10),
        ("3 wedge law", wedge_law, 60),
        ("4 product law", product_law, 30),
        ("5 unbounded counterexample", unbounded_counterexample, 5),
        ("6 Hirsch-sharp generators", hirsch_sharp_generators, 120),
        ("7 0/1 polytopes", zero_one_polytopes, 120),
        ("8 transportation polytopes", transportation_polytopes, 60),
        ("9 oracle equivalence", oracle_equivalence, 120),
        ("10 subset-graph abstraction", abstraction, 120),
        ("11 bounds consistency", bounds_consistency, 10),
        ("12 non-revisiting paths", nonrevisiting, 300),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(()) if elapsed > Duration::from_secs(limit) => Err(format!("exceeded {limit} s")),
            r => r,
        };
        match result {
            Ok(()) => println!("PASS criterion {name} ({:.2} s)", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({:.2} s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
