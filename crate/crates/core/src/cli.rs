//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors (infeasible input, bad
//! parameters, unreadable files), 2 on usage errors. Data goes to the output
//! stream, diagnostics to the error stream. Facet and vertex indices in
//! flags are 1-based. Every polytope written carries a `# recipe:` header.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::abstraction::{
    from_simple_polytope, parse_subset_graph, search_max_diameter, subset_graph_diameter_with, validate_layer_property,
    write_subset_graph,
};
use crate::arith::parse_rational;
use crate::bounds::{bound_table, format_table, report_for, ReportOptions};
use crate::constructions::{margin_strings, product, truncate_vertex, unbound_at_facet, wedge, Generated, Recipe};
use crate::error::{Error, Result};
use crate::graph::PolyGraph;
use crate::par::Execution;
use crate::paths::{diameter_with, shortest_path, DEFAULT_SEARCH_BUDGET};
use crate::polytope::io::{parse_document, write_h, write_v, PolyFile};
use crate::polytope::{hrep_to_vrep, polar, vrep_to_hrep, Polyhedron};
use crate::simplicial::{
    anti_star, boundary_complex, dual_nonrevisiting_property_with, parse_complex, ridge_graph, write_complex,
};

#[derive(Parser, Debug)]
#[command(name = "polydiam", version, about = "Exact polytope graphs, diameters and Hirsch constructions")]
struct Cli {
    /// Run graph computations on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Io {
    /// Input file (`-` or absent: standard input).
    input: Option<PathBuf>,
    /// Output file (absent: standard output).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    H,
    V,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Convert between H- and V-representation.
    Convert {
        #[arg(long, value_enum)]
        to: Form,
        #[command(flatten)]
        io: Io,
    },
    /// Vertex-edge graph (bounded edges).
    Graph {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Facet-ridge graph of a polytope.
    Dualgraph {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Graph diameter.
    Diameter {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Distance and a shortest path between two vertices (by label).
    Distance {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Wedge over a facet (1-based row index).
    Wedge {
        #[arg(long)]
        facet: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Cartesian product of two polytopes.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Cut off a simple vertex (by label).
    Truncate {
        #[arg(long)]
        vertex: String,
        #[command(flatten)]
        io: Io,
    },
    /// Polar of the vertex set, centered at the vertex centroid.
    Polar {
        #[command(flatten)]
        io: Io,
    },
    /// Send a facet (1-based row index) to infinity.
    Unbound {
        #[arg(long)]
        facet: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Generate a polytope.
    Gen {
        #[command(subcommand)]
        what: Gen,
        /// Output file (absent: standard output).
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Hirsch status report.
    Check {
        /// Also test the non-revisiting property.
        #[arg(long)]
        nonrevisiting: bool,
        /// Linear functional `c1,c2,...` for monotone paths.
        #[arg(long)]
        monotone: Option<String>,
        /// Node expansions allowed per vertex pair.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Diameter bounds for `n` facets in dimension `d`.
    Bounds {
        n: usize,
        d: usize,
        #[arg(long)]
        json: bool,
    },
    /// Subset-graph abstraction.
    Abstraction {
        #[command(subcommand)]
        op: AbstractionOp,
    },
    /// Simplicial complexes (one facet per line).
    Complex {
        #[command(subcommand)]
        op: ComplexOp,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// Standard d-simplex.
    Simplex { d: usize },
    /// Cube [-1, 1]^d.
    Cube { d: usize },
    /// Convex hull of the points ±e_i.
    Crosspolytope { d: usize },
    /// Polygon with vertices `(i, i^2)`.
    Polygon { n: usize },
    /// Klee-Walkup polytope (`--star`: its nine-point polar).
    Kleewalkup {
        #[arg(long)]
        star: bool,
    },
    /// Transportation polytope for the given row and column margins.
    Transportation {
        #[arg(long, value_delimiter = ',', required = true)]
        rows: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<String>,
    },
    /// Random 0/1 polytope from a seeded ChaCha8 stream.
    Zeroone {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Polytope with diameter exactly facets - dim.
    Hirschsharp {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        facets: usize,
    },
    /// Bounded intersection of two orthants.
    Orthant {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: usize,
    },
    /// Replay a recipe given as JSON.
    Replay { recipe: String },
}

#[derive(Subcommand, Debug)]
enum AbstractionOp {
    /// Check the connected-layer property.
    Validate {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Diameter and both upper bounds.
    Diameter {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Largest diameter found on d-subsets of 1..n.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Subset graph of a simple polytope.
    FromPolytope {
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexOp {
    /// Boundary complex of a simplicial polytope.
    Boundary {
        #[command(flatten)]
        io: Io,
    },
    /// Facets not containing a vertex.
    Antistar {
        #[arg(long)]
        label: String,
        #[command(flatten)]
        io: Io,
    },
    /// Ridge graph.
    Dualgraph {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        io: Io,
    },
    /// Ridge distance between two facets named like `abcd` or `a,b,c,d`.
    Distance {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        io: Io,
    },
    /// Dual non-revisiting property.
    Nonrevisiting {
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[command(flatten)]
        io: Io,
    },
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn execute<S: AsRef<str>>(argv: &[S], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(AsRef::as_ref)) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let mut ctx = Ctx { stdin, stdout, exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel } };
    match run(cli.verb, &mut ctx) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    exec: Execution,
}

impl Ctx<'_> {
    fn read(&mut self, path: Option<&Path>) -> Result<String> {
        match path {
            Some(p) if p != Path::new("-") => {
                std::fs::read_to_string(p).map_err(|e| Error::Io(format!("cannot read {}: {e}", p.display())))
            }
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|e| Error::Io(format!("cannot read input: {e}")))?;
                Ok(s)
            }
        }
    }

    fn write(&mut self, out: Option<&Path>, text: &str) -> Result<()> {
        match out {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display()))),
            None => self.stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(format!("cannot write output: {e}"))),
        }
    }

    fn load(&mut self, path: Option<&Path>) -> Result<Loaded> {
        let text = self.read(path)?;
        let doc = parse_document(&text)?;
        let recipe = match &doc.recipe {
            Some(r) => Recipe::from_json(r)?,
            None => Recipe::External,
        };
        Ok(Loaded { body: doc.body, labels: doc.labels, recipe })
    }
}

struct Loaded {
    body: PolyFile,
    labels: Option<Vec<String>>,
    recipe: Recipe,
}

impl Loaded {
    fn analyze(&self) -> Result<Polyhedron> {
        match &self.body {
            PolyFile::H(h) => Polyhedron::from_h(h),
            PolyFile::V(v) => Polyhedron::from_v(v, self.labels.clone()),
        }
    }
}

fn recipe_comments(r: &Recipe) -> Vec<String> {
    vec![format!("recipe: {}", r.to_json()), format!("provenance: {}", r.provenance())]
}

fn emit(ctx: &mut Ctx<'_>, out: Option<&Path>, g: &Generated, recipe: &Recipe) -> Result<()> {
    let comments = recipe_comments(recipe);
    let text = match g {
        Generated::H(h) => write_h(h, &comments),
        Generated::V { v, labels } => write_v(v, labels.as_deref(), &comments),
    };
    ctx.write(out, &text)
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct GraphJson<'a> {
    nodes: &'a [String],
    edges: Vec<(&'a str, &'a str)>,
}

fn format_graph(g: &PolyGraph, json: bool) -> String {
    if json {
        let edges = g.edges().map(|(a, b)| (g.label(a), g.label(b))).collect();
        return to_json(&GraphJson { nodes: g.labels(), edges });
    }
    let mut s = format!("nodes {}\nedges {}\n", g.len(), g.edge_count());
    for (a, b) in g.edges() {
        s.push_str(&format!("{} {}\n", g.label(a), g.label(b)));
    }
    s
}

fn one_based(k: usize, what: &str) -> Result<usize> {
    k.checked_sub(1).ok_or_else(|| Error::InvalidArgument(format!("{what} indices are 1-based")))
}

fn run(verb: Verb, ctx: &mut Ctx<'_>) -> Result<()> {
    match verb {
        Verb::Convert { to, io } => {
            let l = ctx.load(io.input.as_deref())?;
            let g = match (to, l.body) {
                (Form::V, PolyFile::H(h)) => Generated::V { v: hrep_to_vrep(&h)?, labels: None },
                (Form::V, PolyFile::V(v)) => Generated::V { v, labels: l.labels },
                (Form::H, PolyFile::V(v)) => Generated::H(vrep_to_hrep(&v)?),
                (Form::H, PolyFile::H(h)) => Generated::H(h),
            };
            emit(ctx, io.out.as_deref(), &g, &l.recipe)
        }
        Verb::Graph { json, io } => {
            let p = ctx.load(io.input.as_deref())?.analyze()?;
            let text = format_graph(p.graph(), json);
            ctx.write(io.out.as_deref(), &text)
        }
        Verb::Dualgraph { json, io } => {
            let p = ctx.load(io.input.as_deref())?.analyze()?;
            let text = format_graph(&p.dual_graph()?, json);
            ctx.write(io.out.as_deref(), &text)
        }
        Verb::Diameter { json, io } => {
            let p = ctx.load(io.input.as_deref())?.analyze()?;
            let g = p.graph();
            let d = diameter_with(g, ctx.exec)?;
            let text = if json {
                #[derive(Serialize)]
                struct J<'a> {
                    diameter: usize,
                    witness: (&'a str, &'a str),
                }
                to_json(&J { diameter: d.value, witness: (g.label(d.witness.0), g.label(d.witness.1)) })
            } else {
                format!("{}\n", d.value)
            };
            ctx.write(io.out.as_deref(), &text)
        }
        Verb::Distance { from, to, json, io } => {
            let p = ctx.load(io.input.as_deref())?.analyze()?;
            let g = p.graph();
            let (u, v) = (g.index_of(&from)?, g.index_of(&to)?);
            let path = shortest_path(g, u, v)?.ok_or(Error::Disconnected)?;
            let text = if json { to_json(&path) } else { format!("{}\n{}\n", path.length, path.path.join(" ")) };
            ctx.write(io.out.as_deref(), &text)
        }
        Verb::Wedge { facet, io } => {
            let l = ctx.load(io.input.as_deref())?;
            let h = wedge(&l.analyze()?, one_based(facet, "facet")?)?;
            let r = Recipe::Wedge { facet, input: Box::new(l.recipe) };
            emit(ctx, io.out.as_deref(), &Generated::H(h), &r)
        }
        Verb::Product { left, right, out } => {
            let a = ctx.load(Some(&left))?;
            let b = ctx.load(Some(&right))?;
            let h = product(&a.analyze()?.h, &b.analyze()?.h);
            let r = Recipe::Product { left: Box::new(a.recipe), right: Box::new(b.recipe) };
            emit(ctx, out.as_deref(), &Generated::H(h), &r)
        }
        Verb::Truncate { vertex, io } => {
            let l = ctx.load(io.input.as_deref())?;
            let p = l.analyze()?;
            let v = p.vertex_index(&vertex)?;
            let h = truncate_vertex(&p, v)?;
            let r = Recipe::Truncate { vertex: v + 1, input: Box::new(l.recipe) };
            emit(ctx, io.out.as_deref(), &Generated::H(h), &r)
        }
        Verb::Polar { io } => {
            let l = ctx.load(io.input.as_deref())?;
            let v = match &l.body {
                PolyFile::V(v) => v.clone(),
                PolyFile::H(h) => hrep_to_vrep(h)?,
            };
            let (h, _) = polar(&v)?;
            let r = Recipe::Polar { input: Box::new(l.recipe) };
            emit(ctx, io.out.as_deref(), &Generated::H(h), &r)
        }
        Verb::Unbound { facet, io } => {
            let l = ctx.load(io.input.as_deref())?;
            let u = unbound_at_facet(&l.analyze()?, one_based(facet, "facet")?)?;
            let r = Recipe::Unbound { facet, input: Box::new(l.recipe) };
            emit(ctx, io.out.as_deref(), &Generated::H(u.h), &r)
        }
        Verb::Gen { what, out } => {
            let r = match what {
                Gen::Simplex { d } => Recipe::Simplex { d },
                Gen::Cube { d } => Recipe::Cube { d },
                Gen::Crosspolytope { d } => Recipe::Crosspolytope { d },
                Gen::Polygon { n } => Recipe::Polygon { n },
                Gen::Kleewalkup { star: false } => Recipe::Kleewalkup,
                Gen::Kleewalkup { star: true } => Recipe::KleewalkupStar,
                Gen::Transportation { rows, cols } => {
                    let parse = |v: &[String]| v.iter().map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>>>();
                    Recipe::Transportation {
                        rows: margin_strings(&parse(&rows)?),
                        cols: margin_strings(&parse(&cols)?),
                    }
                }
                Gen::Zeroone { dim, points, seed } => Recipe::Zeroone { d: dim, m: points, seed },
                Gen::Hirschsharp { dim, facets } => Recipe::HirschSharp { d: dim, n: facets },
                Gen::Orthant { dim, k } => Recipe::Orthant { d: dim, k },
                Gen::Replay { recipe } => Recipe::from_json(&recipe)?,
            };
            let g = r.replay()?;
            emit(ctx, out.as_deref(), &g, &r)
        }
        Verb::Check { nonrevisiting, monotone, budget, json, io } => {
            let p = ctx.load(io.input.as_deref())?.analyze()?;
            let monotone = monotone
                .map(|c| c.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>>>())
                .transpose()?;
            let opts = ReportOptions { nonrevisiting: nonrevisiting.then_some(budget), monotone, exec: ctx.exec };
            let rep = report_for(&p, &opts)?;
            let text = if json {
                to_json(&rep)
            } else {
                let mut s = String::new();
                let value = serde_json::to_value(&rep).expect("report serializes");
                for (k, v) in value.as_object().expect("object") {
                    s.push_str(&format!("{k:<17}{}\n", plain(v)));
                }
                s
            };
            ctx.write(io.out.as_deref(), &text)
        }
        Verb::Bounds { n, d, json } => {
            let t = bound_table(n, d)?;
            let text = if json { to_json(&t) } else { format_table(&t) };
            ctx.write(None, &text)
        }
        Verb::Abstraction { op } => run_abstraction(op, ctx),
        Verb::Complex { op } => run_complex(op, ctx),
    }
}

fn plain(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(a) => a.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn run_abstraction(op: AbstractionOp, ctx: &mut Ctx<'_>) -> Result<()> {
    match op {
        AbstractionOp::Validate { json, io } => {
            let g = parse_subset_graph(&ctx.read(io.input.as_deref())?)?;
            let c = validate_layer_property(&g);
            let text = if json {
                to_json(&c)
            } else {
                match c.witness {
                    None => "valid\n".to_string(),
                    Some((a, b)) => {
                        format!("invalid: nodes {} and {} are not joined inside their layer\n", a + 1, b + 1)
                    }
                }
            };
            ctx.write(io.out.as_deref(), &text)
        }
        AbstractionOp::Diameter { json, io } => {
            let g = parse_subset_graph(&ctx.read(io.input.as_deref())?)?;
            let r = subset_graph_diameter_with(&g, ctx.exec)?;
            let text = if json {
                to_json(&r)
            } else {
                format!(
                    "diameter       {}\nkalai_kleitman {}\nlinear         {}\nwithin_bounds  {}\n",
                    r.diameter, r.kalai_kleitman, r.linear, r.within_bounds
                )
            };
            ctx.write(io.out.as_deref(), &text)
        }
        AbstractionOp::Search { n, d, budget, seed, out } => {
            let r = search_max_diameter(n, d, budget, seed, ctx.exec)?;
            let comments = vec![
                format!("search n={n} d={d} budget={budget} seed={seed}"),
                format!("diameter: {}", r.diameter),
                format!("complete: {}", r.complete),
                format!("explored: {}", r.explored),
            ];
            let text = match &r.best {
                Some(g) => write_subset_graph(g, &comments),
                None => return Err(Error::InvalidArgument("no valid connected graph found".into())),
            };
            ctx.write(out.as_deref(), &text)
        }
        AbstractionOp::FromPolytope { io } => {
            let p = ctx.load(io.input.as_deref())?.analyze()?;
            let g = from_simple_polytope(&p)?;
            ctx.write(io.out.as_deref(), &write_subset_graph(&g, &[]))
        }
    }
}

fn run_complex(op: ComplexOp, ctx: &mut Ctx<'_>) -> Result<()> {
    match op {
        ComplexOp::Boundary { io } => {
            let l = ctx.load(io.input.as_deref())?;
            let k = boundary_complex(&l.analyze()?)?;
            let comments = vec![format!("boundary of {}", l.recipe.provenance())];
            ctx.write(io.out.as_deref(), &write_complex(&k, &comments))
        }
        ComplexOp::Antistar { label, io } => {
            let k = parse_complex(&ctx.read(io.input.as_deref())?)?;
            let a = anti_star(&k, &label)?;
            ctx.write(io.out.as_deref(), &write_complex(&a, &[format!("anti-star of {label}")]))
        }
        ComplexOp::Dualgraph { json, io } => {
            let k = parse_complex(&ctx.read(io.input.as_deref())?)?;
            ctx.write(io.out.as_deref(), &format_graph(&ridge_graph(&k), json))
        }
        ComplexOp::Distance { from, to, io } => {
            let k = parse_complex(&ctx.read(io.input.as_deref())?)?;
            let g = ridge_graph(&k);
            let find = |name: &str| {
                if name.contains(',') {
                    k.facet_index(&name.split(',').collect::<Vec<_>>())
                } else {
                    k.facet_index(&name.chars().map(String::from).collect::<Vec<_>>())
                }
            };
            let (u, v) = (find(&from)?, find(&to)?);
            let path = shortest_path(&g, u, v)?.ok_or(Error::Disconnected)?;
            ctx.write(io.out.as_deref(), &format!("{}\n{}\n", path.length, path.path.join(" ")))
        }
        ComplexOp::Nonrevisiting { budget, io } => {
            let k = parse_complex(&ctx.read(io.input.as_deref())?)?;
            let names = k.facet_names();
            let out = dual_nonrevisiting_property_with(&k, budget, ctx.exec)?;
            let text = match out {
                crate::paths::PropertyOutcome::Holds => "holds\n".to_string(),
                crate::paths::PropertyOutcome::Fails { pair: (a, b) } => {
                    format!("fails: {} {}\n", names[a], names[b])
                }
                crate::paths::PropertyOutcome::Inconclusive { pair: (a, b) } => {
                    format!("inconclusive: {} {}\n", names[a], names[b])
                }
            };
            ctx.write(io.out.as_deref(), &text)
        }
    }
}
