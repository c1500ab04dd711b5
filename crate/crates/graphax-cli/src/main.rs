//! Command-line front end: build, inspect, and verify graph algebras.
//!
//! Exit codes: 0 = success / all checks passed, 1 = a mathematical check
//! failed (the report carries the witness), 2 = usage or input error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use graphax_core::algebra::{GraphAlgebra, Side};
use graphax_core::autgrp::{
    automorphism_group, enumerate_idempotents, verify_axes_recoverable, EnumerationBudget,
    EnumerationMode,
};
use graphax_core::field::{FieldCtx, Scalar};
use graphax_core::frucht::{
    build_algebra_with_aut, prescribe_automorphism_group, CayleyTable, FruchtOptions, GroupSpec,
    LabelScheme,
};
use graphax_core::fusion::{check_fusion, natural_law, FusionLaw, FusionReport};
use graphax_core::graph::{
    cayley_graph, incidence_graph, validate, LabeledDigraph, PartialLinearSpace, RawGraph, RawPls,
};
use graphax_core::perm::Perm;
use graphax_core::structure::{quotient_algebra, quotient_matches_contraction, simplicity_verdict};

#[derive(Parser)]
#[command(
    name = "graphax",
    version,
    about = "algebras from edge-labeled directed graphs"
)]
struct Cli {
    /// Worker threads for the parallel sweeps (output is independent of this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the primary report or artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Args)]
struct InputGraph {
    /// Path to a graph JSON file.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file for loops, repeated edges, and zero labels.
    Validate(InputGraph),
    /// Symmetry, connectivity, girth, and degree data.
    Profile {
        #[command(flatten)]
        graph: InputGraph,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify the algebra as simple or not, with witnessing ideals.
    Simplicity {
        #[command(flatten)]
        graph: InputGraph,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check the graph-type fusion law on every axis.
    Fusion {
        #[command(flatten)]
        graph: InputGraph,
        /// Eigenvalue set, comma-separated (default: 0, 1, and all labels).
        #[arg(long)]
        law: Option<String>,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Automorphism group of the labeled graph.
    Aut {
        #[command(flatten)]
        graph: InputGraph,
    },
    /// Enumerate all idempotents over a finite field.
    Idempotents {
        #[command(flatten)]
        graph: InputGraph,
        /// Bound the support size instead of sweeping every vector.
        #[arg(long)]
        support: Option<usize>,
        /// Candidate cap for the sweep.
        #[arg(long, default_value_t = EnumerationBudget::DEFAULT_CAP)]
        cap: u64,
    },
    /// Sweep idempotents and verify that the vertex axes are recoverable.
    RecoverAxes {
        #[command(flatten)]
        graph: InputGraph,
        /// Incidence structure the graph was built from, for the incidence
        /// criteria.
        #[arg(long)]
        origin: Option<PathBuf>,
        #[arg(long)]
        support: Option<usize>,
        #[arg(long, default_value_t = EnumerationBudget::DEFAULT_CAP)]
        cap: u64,
    },
    /// Build the labeled incidence digraph of a partial linear space
    /// (a graph is the special case of 2-point lines).
    Incidence {
        /// Path to a points/lines JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        field: String,
        /// Label on point-to-line edges.
        #[arg(long)]
        alpha: String,
        /// Label on line-to-point edges.
        #[arg(long)]
        beta: String,
        /// Also write a DOT rendering here.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Build the Cayley graph of a finite group.
    Cayley {
        /// Group: "trivial", "zN", "s3", or @file with a group JSON.
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        /// Generator labels, e.g. "1=2" (cyclic) or "(0 1)=2,(0 1 2)=3".
        #[arg(long)]
        labels: String,
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Build a graph and a simple axial algebra with a prescribed finite
    /// automorphism group, verified by search.
    Frucht {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        /// "commutative:A", "noncommutative:A,B", "all-ones", or "none" for
        /// the graph stage only.
        #[arg(long)]
        scheme: String,
        /// Tag-height offset; different offsets give non-isomorphic outputs.
        #[arg(long, default_value_t = 0)]
        offset: u32,
        /// Write the verification certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Write the underlying graph (points/lines JSON) here.
        #[arg(long)]
        emit_delta: Option<PathBuf>,
    },
    /// Quotient by the zero-sum ideal of an ideal subgraph and compare with
    /// the contracted graph's algebra.
    Quotient {
        #[command(flatten)]
        graph: InputGraph,
        /// Comma-separated vertices of the ideal subgraph; defaults to the
        /// first maximal one found.
        #[arg(long)]
        subgraph: Option<String>,
    },
}

#[derive(Debug)]
struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl fmt::Display) -> Self {
        CliError {
            message: message.to_string(),
            code: 2,
        }
    }

    fn check_failed(message: impl fmt::Display) -> Self {
        CliError {
            message: message.to_string(),
            code: 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

macro_rules! usage_from {
    ($($ty:ty),* $(,)?) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::usage(e)
            }
        }
    )*};
}

usage_from!(
    std::io::Error,
    graphax_core::graph::GraphError,
    graphax_core::field::FieldError,
    graphax_core::algebra::AlgebraError,
    graphax_core::autgrp::AutError,
    serde_json::Error,
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

fn read_graph(path: &PathBuf) -> Result<LabeledDigraph, CliError> {
    let text = fs::read_to_string(path)?;
    LabeledDigraph::from_json(&text).map_err(CliError::usage)
}

fn read_pls(path: &PathBuf) -> Result<PartialLinearSpace, CliError> {
    let text = fs::read_to_string(path)?;
    let raw: RawPls = serde_json::from_str(&text)?;
    PartialLinearSpace::from_raw(&raw).map_err(CliError::usage)
}

fn parse_field(text: &str) -> Result<FieldCtx, CliError> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("q") {
        return Ok(FieldCtx::rationals());
    }
    let digits = text
        .strip_prefix('F')
        .or_else(|| text.strip_prefix('f'))
        .ok_or_else(|| CliError::usage(format!("bad field {text:?}; use Q or F<p>")))?;
    let p: u64 = digits
        .trim_start_matches('_')
        .parse()
        .map_err(|_| CliError::usage(format!("bad field {text:?}")))?;
    Ok(FieldCtx::prime(p)?)
}

fn parse_group(spec: &str) -> Result<(CayleyTable, Vec<usize>), CliError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(path)?;
        let parsed: GroupSpec = serde_json::from_str(&text)?;
        return parsed.build().map_err(CliError::usage);
    }
    let lower = spec.to_ascii_lowercase();
    if lower == "trivial" {
        return Ok(CayleyTable::trivial());
    }
    if let Some(n) = lower.strip_prefix('z') {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::usage(format!("bad group {spec:?}")))?;
        if n == 0 {
            return Err(CliError::usage("cyclic group order must be positive"));
        }
        return Ok(CayleyTable::cyclic(n));
    }
    if lower == "s3" {
        let gens = vec![
            Perm::from_cycles(3, &[vec![0, 1]]).expect("valid cycles"),
            Perm::from_cycles(3, &[vec![0, 1, 2]]).expect("valid cycles"),
        ];
        return CayleyTable::from_permutation_generators(3, &gens).map_err(CliError::usage);
    }
    Err(CliError::usage(format!(
        "unknown group {spec:?}; use trivial, zN, s3, or @file.json"
    )))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = writeln!(stdout, "{content}") {
                // a consumer that stopped reading is not an error
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    std::process::exit(0);
                }
                return Err(e.into());
            }
        }
    }
    Ok(())
}

fn emit_json(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<(), CliError> {
    emit(out, &serde_json::to_string_pretty(value)?)
}

fn budget(support: Option<usize>, cap: u64) -> EnumerationBudget {
    EnumerationBudget {
        mode: match support {
            Some(k) => EnumerationMode::SupportBounded(k),
            None => EnumerationMode::Exhaustive,
        },
        cap,
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate(input) => {
            let text = fs::read_to_string(&input.input)?;
            let raw: RawGraph = serde_json::from_str(&text)?;
            let report = validate(&raw);
            emit_json(&cli.out, &serde_json::to_value(&report)?)?;
            if report.valid {
                Ok(())
            } else {
                Err(CliError::usage("graph file is invalid"))
            }
        }
        Command::Profile { graph, format } => {
            let g = read_graph(&graph.input)?;
            let profile = g.profile();
            match format {
                Format::Json => emit_json(&cli.out, &serde_json::to_value(&profile)?)?,
                Format::Text => {
                    let s = format!(
                        "vertices: {}\nedges: {}\nsymmetric: {}\nweakly connected: {}\n\
                         girth: {}\nk_min: {}\nk_max: {}",
                        g.vertex_count(),
                        g.edge_count(),
                        profile.is_symmetric,
                        profile.weakly_connected,
                        profile.girth,
                        profile.k_min,
                        profile.k_max
                    );
                    emit(&cli.out, &s)?;
                }
            }
            Ok(())
        }
        Command::Simplicity { graph, format } => {
            let g = read_graph(&graph.input)?;
            let report = simplicity_verdict(&g).map_err(CliError::usage)?;
            match format {
                Format::Json => emit_json(&cli.out, &report.to_json(&g))?,
                Format::Text => {
                    let line = match report.theorem_case.as_deref() {
                        None => "simple: no ideal subgraph, not the uniform complete case".into(),
                        Some(case) => format!(
                            "not simple: case {case}, {} ideal(s) attached",
                            report.ideals_found.len()
                        ),
                    };
                    emit(&cli.out, &line)?;
                }
            }
            if report.is_simple() {
                Ok(())
            } else {
                Err(CliError::check_failed("algebra is not simple (see report)"))
            }
        }
        Command::Fusion {
            graph,
            law,
            side,
            format,
        } => {
            let g = read_graph(&graph.input)?;
            let algebra = GraphAlgebra::new(g);
            let law = match law {
                None => natural_law(&algebra).map_err(CliError::usage)?,
                Some(values) => {
                    let ctx = algebra.field();
                    let parsed = values
                        .split(',')
                        .map(|v| ctx.parse(v.trim()))
                        .collect::<Result<BTreeSet<Scalar>, _>>()?;
                    FusionLaw::graph_type(&parsed).map_err(CliError::usage)?
                }
            };
            let axes: Vec<usize> = (0..algebra.dim()).collect();
            let sides: &[Side] = match side {
                SideArg::Left => &[Side::Left],
                SideArg::Right => &[Side::Right],
                SideArg::Both => &[Side::Left, Side::Right],
            };
            let mut reports: Vec<FusionReport> = Vec::new();
            for &s in sides {
                reports.push(check_fusion(&algebra, &axes, &law, s).map_err(CliError::usage)?);
            }
            let ok = reports.iter().all(|r| r.law_satisfied);
            match format {
                Format::Json => emit_json(
                    &cli.out,
                    &serde_json::json!({
                        "law": law.to_json(),
                        "reports": reports,
                        "law_satisfied": ok,
                    }),
                )?,
                Format::Text => {
                    let mut s = String::new();
                    for report in &reports {
                        s.push_str(&format!(
                            "side {:?}: {}\n",
                            report.side,
                            if report.law_satisfied {
                                "law holds"
                            } else {
                                "VIOLATED"
                            }
                        ));
                        let axis = &report.per_axis[0];
                        s.push_str(&format!("observed table at axis {}:\n", axis.axis));
                        for cell in &axis.cells {
                            s.push_str(&format!(
                                "  {} * {} -> {{{}}} (allowed {{{}}}) {}\n",
                                cell.lambda,
                                cell.mu,
                                cell.observed.join(","),
                                cell.allowed.join(","),
                                if cell.ok { "ok" } else { "VIOLATION" }
                            ));
                        }
                    }
                    emit(&cli.out, s.trim_end())?;
                }
            }
            if ok {
                Ok(())
            } else {
                Err(CliError::check_failed("fusion law violated (see report)"))
            }
        }
        Command::Aut { graph } => {
            let g = read_graph(&graph.input)?;
            let group = automorphism_group(&g);
            let json = group.to_json(|v| g.vertex_name(v).to_string());
            emit_json(&cli.out, &json)?;
            Ok(())
        }
        Command::Idempotents {
            graph,
            support,
            cap,
        } => {
            let g = read_graph(&graph.input)?;
            let algebra = GraphAlgebra::new(g);
            let found = enumerate_idempotents(&algebra, &budget(*support, *cap))?;
            let json = serde_json::json!({
                "count": found.len(),
                "idempotents": found
                    .iter()
                    .map(|e| algebra.element_to_json(e))
                    .collect::<Vec<_>>(),
            });
            emit_json(&cli.out, &json)?;
            Ok(())
        }
        Command::RecoverAxes {
            graph,
            origin,
            support,
            cap,
        } => {
            let g = read_graph(&graph.input)?;
            let origin = origin.as_ref().map(read_pls).transpose()?;
            let algebra = GraphAlgebra::new(g);
            let report =
                verify_axes_recoverable(&algebra, origin.as_ref(), &budget(*support, *cap))?;
            emit_json(&cli.out, &report.to_json(&algebra))?;
            if !report.theorem_applies {
                Err(CliError::check_failed(
                    "no recovery criterion applies; no claim made",
                ))
            } else if !report.exotic.is_empty() {
                Err(CliError::check_failed(format!(
                    "{} exotic idempotent(s) found",
                    report.exotic.len()
                )))
            } else {
                Ok(())
            }
        }
        Command::Incidence {
            input,
            field,
            alpha,
            beta,
            emit_dot,
        } => {
            let pls = read_pls(input)?;
            let ctx = parse_field(field)?;
            let alpha = ctx.parse(alpha)?;
            let beta = ctx.parse(beta)?;
            let g = incidence_graph(&pls, &alpha, &beta)?;
            if let Some(path) = emit_dot {
                fs::write(path, g.to_dot())?;
            }
            emit(&cli.out, &g.to_json())?;
            Ok(())
        }
        Command::Cayley {
            group,
            field,
            labels,
            emit_dot,
        } => {
            let (table, gens) = parse_group(group)?;
            let ctx = parse_field(field)?;
            let mut label_map: BTreeMap<usize, Scalar> = BTreeMap::new();
            for item in labels.split(',') {
                let (name, value) = item
                    .split_once('=')
                    .ok_or_else(|| CliError::usage("labels must look like gen=scalar"))?;
                let idx = table
                    .element_index(name.trim())
                    .ok_or_else(|| CliError::usage(format!("unknown generator {name:?}")))?;
                label_map.insert(idx, ctx.parse(value.trim())?);
            }
            for &s in &gens {
                if !label_map.contains_key(&s) {
                    return Err(CliError::usage(format!(
                        "no label for generator {:?}",
                        table.element_name(s)
                    )));
                }
            }
            let g = cayley_graph(&table, &gens, &label_map)?;
            if let Some(path) = emit_dot {
                fs::write(path, g.to_dot())?;
            }
            emit(&cli.out, &g.to_json())?;
            Ok(())
        }
        Command::Frucht {
            group,
            field,
            scheme,
            offset,
            cert,
            emit_delta,
        } => {
            let (table, gens) = parse_group(group)?;
            let ctx = parse_field(field)?;
            let scheme = parse_scheme(scheme, ctx)?;
            let opts = FruchtOptions {
                tag_offset: *offset,
                ..FruchtOptions::default()
            };
            match scheme {
                None => {
                    let built = prescribe_automorphism_group(&table, &gens, &opts)
                        .map_err(CliError::check_failed)?;
                    emit_json(
                        &cli.out,
                        &serde_json::json!({
                            "vertices": built.delta.vertex_count(),
                            "edges": built.delta.edge_count(),
                            "aut_order": built.aut_order.to_string(),
                            "min_degree": built.min_degree,
                            "verified": built.verified,
                        }),
                    )?;
                    Ok(())
                }
                Some(scheme) => {
                    let built = build_algebra_with_aut(&table, &gens, ctx, &scheme, &opts)
                        .map_err(CliError::check_failed)?;
                    if let Some(path) = emit_delta {
                        fs::write(path, serde_json::to_string_pretty(&built.pls.to_raw())?)?;
                    }
                    if let Some(path) = cert {
                        let cert_json = serde_json::json!({
                            "group_order": table.order(),
                            "aut_order": built.aut_order.to_string(),
                            "aut_generators": built
                                .gamma_aut
                                .generators()
                                .iter()
                                .map(|p| {
                                    p.to_cycles_with(|v| built.gamma.vertex_name(v).to_string())
                                })
                                .collect::<Vec<_>>(),
                            "delta_vertices": built.graph_part.delta.vertex_count(),
                            "delta_min_degree": built.graph_part.min_degree,
                            "dimension": built.gamma.vertex_count(),
                            "hypothesis": built.hypothesis,
                            "simplicity": built.simplicity.to_json(&built.gamma),
                            "fusion_checked": built.fusion_checked,
                            "fusion_ok": built.fusion_ok,
                            "verified": built.verified,
                        });
                        fs::write(path, serde_json::to_string_pretty(&cert_json)?)?;
                    }
                    emit(&cli.out, &built.gamma.to_json())?;
                    if built.verified {
                        Ok(())
                    } else {
                        Err(CliError::check_failed("construction not verified"))
                    }
                }
            }
        }
        Command::Quotient { graph, subgraph } => {
            let g = read_graph(&graph.input)?;
            let y: BTreeSet<usize> = match subgraph {
                Some(list) => list
                    .split(',')
                    .map(|name| {
                        g.vertex_index(name.trim())
                            .ok_or_else(|| CliError::usage(format!("unknown vertex {name:?}")))
                    })
                    .collect::<Result<_, _>>()?,
                None => {
                    let found = graphax_core::structure::find_ideal_subgraphs(&g);
                    match found.into_iter().next() {
                        Some(w) => w.vertices,
                        None => return Err(CliError::check_failed("no ideal subgraph found")),
                    }
                }
            };
            let witness = graphax_core::structure::check_ideal_subgraph(&g, &y)
                .map_err(CliError::check_failed)?;
            let algebra = GraphAlgebra::new(g.clone());
            let ideal = witness.ideal_basis(&g);
            let quotient = quotient_algebra(&algebra, &ideal).map_err(CliError::check_failed)?;
            let matches = quotient_matches_contraction(&g, &y).map_err(CliError::check_failed)?;
            let contracted = g.contract_ideal_subgraph(&y)?;
            let names = &quotient.class_names;
            let products: Vec<serde_json::Value> = (0..quotient.dim())
                .flat_map(|i| {
                    (0..quotient.dim())
                        .map(|j| {
                            let coords: BTreeMap<String, String> = quotient
                                .product(i, j)
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(k, c)| (names[k].clone(), c.to_string()))
                                .collect();
                            serde_json::json!({
                                "left": names[i],
                                "right": names[j],
                                "product": coords,
                            })
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            emit_json(
                &cli.out,
                &serde_json::json!({
                    "subgraph": witness.vertex_names(&g),
                    "quotient_dimension": quotient.dim(),
                    "classes": quotient.class_names,
                    "products": products,
                    "contracted_graph": serde_json::from_str::<serde_json::Value>(
                        &contracted.to_json()
                    )?,
                    "matches_contraction": matches,
                }),
            )?;
            if matches {
                Ok(())
            } else {
                Err(CliError::check_failed(
                    "quotient does not match the contracted graph's algebra",
                ))
            }
        }
    }
}

fn parse_scheme(text: &str, ctx: FieldCtx) -> Result<Option<LabelScheme>, CliError> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("none") || text.eq_ignore_ascii_case("graph-only") {
        return Ok(None);
    }
    if text.eq_ignore_ascii_case("all-ones") {
        return Ok(Some(LabelScheme::AllOnesF2));
    }
    if let Some(value) = text.strip_prefix("commutative:") {
        return Ok(Some(LabelScheme::Commutative {
            alpha: ctx.parse(value.trim())?,
        }));
    }
    if let Some(values) = text.strip_prefix("noncommutative:") {
        let (a, b) = values
            .split_once(',')
            .ok_or_else(|| CliError::usage("noncommutative scheme needs two labels"))?;
        return Ok(Some(LabelScheme::NonCommutative {
            alpha: ctx.parse(a.trim())?,
            beta: ctx.parse(b.trim())?,
        }));
    }
    Err(CliError::usage(format!(
        "unknown scheme {text:?}; use commutative:A, noncommutative:A,B, all-ones, or none"
    )))
}
