use std::fmt;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use steinberg_core::bisect::{self, classify_complement, Complement};
use steinberg_core::graph::{Graph, GraphError};
use steinberg_core::invariants::{self, ProjectionSearch};
use steinberg_core::leavitt::LeavittElement;
use steinberg_core::scalars::ScalarRing;
use steinberg_core::steinberg::disjointify;
use steinberg_core::syntax::{self, ParseError};
use steinberg_core::tensor::{pi, sigma};
use steinberg_core::verify;
use steinberg_core::{AlgebraElement, ProductAlgebraElement};

/// Exact computations in Steinberg algebras of graph groupoids.
#[derive(Parser)]
#[command(name = "steinberg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Graph file (`vertex <id>` / `edge <id> <src> <rng>` lines); repeat for tensor commands
    #[arg(long = "graph", value_name = "FILE")]
    graph: Vec<String>,
    /// Use the Cuntz graph with n loops; repeat for tensor commands
    #[arg(long = "cuntz", value_name = "N")]
    cuntz: Vec<usize>,
    /// Coefficient ring
    #[arg(long, default_value = "Z", value_name = "Z|Zi|Q|Z-half")]
    ring: ScalarRing,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    coeff: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an element
    Normalize { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Convolution product of two elements
    Mul { #[arg(allow_hyphen_values = true)] left: String, #[arg(allow_hyphen_values = true)] right: String, #[command(flatten)] common: Common },
    /// The involution f*(x) = conj(f(x^-1))
    Star { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Value of an element at a groupoid point `[x; k; y]`
    Eval { #[arg(allow_hyphen_values = true)] expr: String, #[arg(allow_hyphen_values = true)] point: String, #[command(flatten)] common: Common },
    /// Whether an element lies in the diagonal subalgebra
    Diagonal { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Rewrite a term list over pairwise disjoint cylinders
    Disjointify { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Relative complement a \ b of two bisections
    Relcomp { #[arg(allow_hyphen_values = true)] a: String, #[arg(allow_hyphen_values = true)] b: String, #[command(flatten)] common: Common },
    /// Product of two tensors `(f) (x) (g) + ...`
    TensorMul { #[arg(allow_hyphen_values = true)] left: String, #[arg(allow_hyphen_values = true)] right: String, #[command(flatten)] common: Common },
    /// Map a tensor into the product groupoid algebra
    Sigma { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Map a product groupoid element back to a tensor
    Pi { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Normal form of a Leavitt expression
    LeavittReduce { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Image of a Leavitt expression in the Cuntz groupoid algebra
    ToSteinberg { #[arg(allow_hyphen_values = true)] expr: String, #[command(flatten)] common: Common },
    /// Bowen-Franks group of [n]
    Bf { n: u64 },
    /// Compare tensor products of Cuntz groupoid algebras, e.g. `decide 2,3 2,2`
    Decide { ns: String, ms: String },
    /// Enumerate projections; random sampling when --iters is given
    SearchProjections {
        #[command(flatten)]
        common: Common,
    },
    /// Whether every cycle of the graph has an exit
    IsEffective {
        #[command(flatten)]
        common: Common,
    },
    /// Run the seeded property suites
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Syntax(String),
    Semantic(String),
    Property(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        if e.is_syntax() {
            Failure::Syntax(e.to_string())
        } else {
            Failure::Semantic(e.to_string())
        }
    }
}

fn semantic(e: impl fmt::Display) -> Failure {
    Failure::Semantic(e.to_string())
}

type Outcome = Result<Vec<String>, Failure>;

/// Graph sources in command-line order.
fn graphs(common: &Common, matches: &ArgMatches) -> Result<Vec<Arc<Graph>>, Failure> {
    let mut sources: Vec<(usize, Result<Graph, Failure>)> = Vec::new();
    let files = matches.indices_of("graph").into_iter().flatten().zip(&common.graph);
    for (i, path) in files {
        let graph = std::fs::read_to_string(path)
            .map_err(|e| Failure::Semantic(format!("{path}: {e}")))
            .and_then(|text| {
                Graph::parse(&text).map_err(|e| match e {
                    GraphError::Syntax { .. } => Failure::Syntax(format!("{path}: {e}")),
                    _ => Failure::Semantic(format!("{path}: {e}")),
                })
            });
        sources.push((i, graph));
    }
    for (i, &n) in matches.indices_of("cuntz").into_iter().flatten().zip(&common.cuntz) {
        sources.push((i, Graph::cuntz(n).map_err(semantic)));
    }
    sources.sort_by_key(|(i, _)| *i);
    sources.into_iter().map(|(_, g)| g.map(Arc::new)).collect()
}

fn one_graph(common: &Common, matches: &ArgMatches) -> Result<Arc<Graph>, Failure> {
    match graphs(common, matches)?.as_slice() {
        [g] => Ok(g.clone()),
        [] => Err(Failure::Semantic("missing graph: pass --graph FILE or --cuntz N".into())),
        _ => Err(Failure::Semantic("expected exactly one graph".into())),
    }
}

fn two_graphs(common: &Common, matches: &ArgMatches) -> Result<(Arc<Graph>, Arc<Graph>), Failure> {
    match graphs(common, matches)?.as_slice() {
        [g, h] => Ok((g.clone(), h.clone())),
        _ => Err(Failure::Semantic("tensor commands need two graphs".into())),
    }
}

fn cuntz_n(common: &Common, matches: &ArgMatches) -> Result<usize, Failure> {
    let g = one_graph(common, matches)?;
    if !g.is_single_vertex() || g.edge_count() < 2 {
        return Err(Failure::Semantic("Leavitt expressions need --cuntz N".into()));
    }
    Ok(g.edge_count())
}

fn element(text: &str, g: &Arc<Graph>, ring: ScalarRing) -> Result<AlgebraElement, Failure> {
    Ok(syntax::parse_element(text, g, ring)?)
}

fn tuple(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Failure::Syntax(format!("expected integers, found `{s}`"))))
        .collect()
}

fn report_search<E: fmt::Display>(search: &ProjectionSearch<E>) -> Outcome {
    let mut out = vec![format!("candidates: {}", search.candidates), format!("projections: {}", search.projections.len())];
    for (p, diagonal) in &search.projections {
        out.push(format!("{} {p}", if *diagonal { "diagonal" } else { "non-diagonal" }));
    }
    match search.kind_assertion {
        Some(true) => out.push("kind ring: every projection is diagonal".into()),
        Some(false) => {
            let mut lines = out;
            lines.push("kind ring: found a non-diagonal projection".into());
            return Err(Failure::Property(lines.join("\n")));
        }
        None => out.push("ring is not kind: no diagonality claim".into()),
    }
    Ok(out)
}

fn run(command: Command, matches: &ArgMatches) -> Outcome {
    match command {
        Command::Normalize { expr, common } => {
            let g = one_graph(&common, matches)?;
            Ok(vec![element(&expr, &g, common.ring)?.to_string()])
        }
        Command::Mul { left, right, common } => {
            let g = one_graph(&common, matches)?;
            let f = element(&left, &g, common.ring)?;
            let h = element(&right, &g, common.ring)?;
            Ok(vec![f.convolve(&h).map_err(semantic)?.to_string()])
        }
        Command::Star { expr, common } => {
            let g = one_graph(&common, matches)?;
            Ok(vec![element(&expr, &g, common.ring)?.star().to_string()])
        }
        Command::Eval { expr, point, common } => {
            let g = one_graph(&common, matches)?;
            let f = element(&expr, &g, common.ring)?;
            let x = syntax::parse_groupoid_point(&point, &g)?;
            Ok(vec![f.evaluate(&x).to_string()])
        }
        Command::Diagonal { expr, common } => {
            let g = one_graph(&common, matches)?;
            Ok(vec![element(&expr, &g, common.ring)?.is_diagonal().to_string()])
        }
        Command::Disjointify { expr, common } => {
            let g = one_graph(&common, matches)?;
            let terms = syntax::parse_terms(&expr, &g, common.ring)?;
            let out = disjointify(&g, common.ring, &terms).map_err(semantic)?;
            if out.is_empty() {
                return Ok(vec!["0".into()]);
            }
            Ok(out.iter().map(|(r, b)| format!("{}*{}", syntax::fmt_coefficient(r), b.display(&g))).collect())
        }
        Command::Relcomp { a, b, common } => {
            let g = one_graph(&common, matches)?;
            let a = syntax::parse_bisection(&a, &g)?;
            let b = syntax::parse_bisection(&b, &g)?;
            let case = classify_complement(&g, &a, &b);
            let pieces = match &case {
                Complement::Empty => Vec::new(),
                Complement::Whole => vec![a.clone()],
                Complement::ExcludedExtension(v) | Complement::KappaChain(v) => v.clone(),
            };
            let mut out = vec![format!("case: {}", case.name())];
            if pieces.is_empty() {
                out.push("empty".into());
            }
            out.extend(pieces.iter().map(|p| p.display(&g).to_string()));
            let cylinders: Vec<String> =
                bisect::relative_complement(&g, &a, &b).iter().map(|p| p.display(&g).to_string()).collect();
            out.push(format!("expanded: {}", if cylinders.is_empty() { "empty".into() } else { cylinders.join(", ") }));
            Ok(out)
        }
        Command::TensorMul { left, right, common } => {
            let (g, h) = two_graphs(&common, matches)?;
            let a = syntax::parse_tensor(&left, &g, &h, common.ring)?;
            let b = syntax::parse_tensor(&right, &g, &h, common.ring)?;
            Ok(vec![a.try_mul(&b).map_err(semantic)?.to_string()])
        }
        Command::Sigma { expr, common } => {
            let (g, h) = two_graphs(&common, matches)?;
            Ok(vec![sigma(&syntax::parse_tensor(&expr, &g, &h, common.ring)?).to_string()])
        }
        Command::Pi { expr, common } => {
            let (g, h) = two_graphs(&common, matches)?;
            let p: ProductAlgebraElement = syntax::parse_product(&expr, &g, &h, common.ring)?;
            Ok(vec![pi(&p).to_string()])
        }
        Command::LeavittReduce { expr, common } => {
            let n = cuntz_n(&common, matches)?;
            Ok(vec![syntax::parse_leavitt(&expr, n, common.ring)?.to_string()])
        }
        Command::ToSteinberg { expr, common } => {
            let n = cuntz_n(&common, matches)?;
            let a: LeavittElement = syntax::parse_leavitt(&expr, n, common.ring)?;
            Ok(vec![a.to_steinberg().to_string()])
        }
        Command::Bf { n } => Ok(vec![invariants::bowen_franks(n).map_err(semantic)?.to_string()]),
        Command::Decide { ns, ms } => {
            let verdict = invariants::decide_tensor_tuples(&tuple(&ns)?, &tuple(&ms)?).map_err(semantic)?;
            Ok(verdict.to_string().lines().map(str::to_string).collect())
        }
        Command::SearchProjections { common } => {
            let graphs = graphs(&common, matches)?;
            let g = match graphs.as_slice() {
                [] => Arc::new(Graph::cuntz(2).map_err(semantic)?),
                [g] => g.clone(),
                _ => return Err(Failure::Semantic("expected at most one graph".into())),
            };
            let search = match common.iters {
                Some(samples) => invariants::random_projection_search(
                    &g,
                    common.ring,
                    common.depth,
                    common.coeff,
                    samples as u64,
                    common.seed,
                ),
                None => {
                    let basis = invariants::cylinders_up_to(&g, common.depth).len() as u32;
                    let width = 2 * common.coeff as u64 + 1;
                    if width.checked_pow(basis).is_none_or(|n| n > 50_000_000) {
                        return Err(Failure::Semantic(format!(
                            "{width}^{basis} candidates is too many for an exhaustive search; pass --iters to sample"
                        )));
                    }
                    invariants::search_projections(&g, common.ring, common.depth, common.coeff)
                }
            };
            report_search(&search)
        }
        Command::IsEffective { common } => {
            let g = one_graph(&common, matches)?;
            Ok(vec![invariants::is_effective(&g).to_string()])
        }
        Command::Verify { common } => {
            let reports = verify::run_all(common.seed, common.iters.unwrap_or(100));
            let lines: Vec<String> = reports
                .iter()
                .flat_map(|r| {
                    let status = if r.passed() { "PASS" } else { "FAIL" };
                    std::iter::once(format!("{status} {} ({} cases)", r.name, r.cases))
                        .chain(r.failures.iter().map(|f| format!("  {f}")))
                })
                .collect();
            if reports.iter().all(|r| r.passed()) {
                Ok(lines)
            } else {
                Err(Failure::Property(lines.join("\n")))
            }
        }
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let sub = matches.subcommand().map(|(_, m)| m.clone()).expect("subcommand required");
    match run(cli.command, &sub) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Property(text)) => {
            println!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Syntax(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Semantic(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
