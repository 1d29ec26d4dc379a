use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use starlike_core::bracket::{bracket_st, chi_poly, v_st};
use starlike_core::complex::Diff;
use starlike_core::homology::{cohomology_table, collapse_grading, homology_table, verify_duality};
use starlike_core::khovanov::kh_table;
use starlike_core::moves::{apply_move, random_sequence, trajectory_json, MoveSite};
use starlike_core::{parse_diagram, Error, LinkDiagram};

mod checks;

#[derive(Parser)]
#[command(name = "starlike", version, about = "Star-like Kauffman bracket and trigraded homologies of link diagrams")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Diagram file (JSON or PD text); `-` or absent reads stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Inline diagram text, instead of `--input`.
    #[arg(long, global = true, conflicts_with = "input")]
    diagram: Option<String>,
    /// Largest crossing count a computation accepts.
    #[arg(long, global = true, env = "STARLIKE_CAP", default_value_t = 12)]
    cap: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Differential: `d` (lowers i) or `d'` (raises i).
    #[arg(long, global = true, default_value = "d", value_parser = parse_diff)]
    diff: Diff,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn parse_diff(s: &str) -> Result<Diff, String> {
    match s {
        "d" => Ok(Diff::D),
        "d'" | "dprime" => Ok(Diff::DPrime),
        _ => Err(format!("expected `d` or `d'`, got `{s}`")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the diagram; print its basic data.
    Validate,
    /// Unnormalized star-like bracket.
    Bracket,
    /// Normalized invariant V_st.
    Vst,
    /// χ specialization of V_st.
    Chi,
    /// Trigraded homology of the selected differential.
    Homology,
    /// Cohomology of d.
    Cohomology,
    /// Standard Khovanov homology, graded by (i, q).
    Khovanov,
    /// Homology with (j, k) collapsed to q = j + k.
    Collapse,
    /// Duality and mirror checks.
    Duality,
    #[command(subcommand)]
    Moves(MovesCommand),
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Subcommand)]
enum MovesCommand {
    /// Apply one move given as JSON, e.g. `{"kind":"R2Remove","edges":[0,5]}`.
    Apply {
        #[arg(long = "move")]
        site: String,
    },
    /// A seeded random move trajectory.
    Random {
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// V_st and both homologies stay constant along a random trajectory.
    Invariance {
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Homology Euler characteristic equals the χ specialization.
    Euler,
    /// Homology does not depend on the crossing labels.
    Ordering {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Bracket recursion and the oriented-smoothing skein identity.
    Skein,
    /// Local action of d_v against the j,k-preservation rule.
    Fig8,
    /// Type law for merging and splitting circles.
    MergeLaw,
}

enum Failure {
    Input(String, String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// A result to print, and whether the property it reports held.
struct Output {
    json: Value,
    table: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, table: impl ToString) -> Self {
        Output {
            json,
            table: table.to_string(),
            ok: true,
        }
    }
}

fn read_diagram(opts: &Options) -> Result<LinkDiagram, Failure> {
    let text = match (&opts.diagram, &opts.input) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Input("io".into(), format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input("io".into(), e.to_string()))?;
            s
        }
    };
    parse_diagram(&text).map_err(|e| Failure::Core(e.into()))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let opts = &cli.opts;
    let d = read_diagram(opts)?;
    let cap = opts.cap;
    let out = match &cli.command {
        Command::Validate => {
            let json = json!({
                "valid": true,
                "crossings": d.num_crossings(),
                "edges": d.num_edges(),
                "free_loops": d.free_loops(),
                "components": d.num_components(),
                "writhe": d.writhe(),
                "faces": d.faces().len(),
                "hash": d.canonical_hash(),
            });
            let table = format!(
                "valid diagram: {} crossings, {} edges, {} components, writhe {}, hash {}",
                d.num_crossings(),
                d.num_edges(),
                d.num_components(),
                d.writhe(),
                d.canonical_hash()
            );
            Output::new(json, table)
        }
        Command::Bracket => {
            let b = bracket_st(&d, cap)?;
            Output::new(serde_json::to_value(&b).unwrap(), &b)
        }
        Command::Vst => {
            let v = v_st(&d, cap)?;
            Output::new(serde_json::to_value(&v).unwrap(), &v)
        }
        Command::Chi => {
            let c = chi_poly(&v_st(&d, cap)?);
            Output::new(serde_json::to_value(&c).unwrap(), &c)
        }
        Command::Homology => {
            let h = homology_table(&d, opts.diff, cap)?;
            Output::new(h.to_json(), &h)
        }
        Command::Cohomology => {
            let h = cohomology_table(&d, cap)?;
            Output::new(h.to_json(), &h)
        }
        Command::Khovanov => {
            let k = kh_table(&d, cap)?;
            Output::new(k.to_json(), &k)
        }
        Command::Collapse => {
            let c = collapse_grading(&homology_table(&d, opts.diff, cap)?);
            let rows: Vec<Value> = c
                .iter()
                .map(|(&(i, q), g)| json!({"i": i, "q": q, "rank": g.rank, "torsion": g.torsion}))
                .collect();
            let table: String = c.iter().map(|(&(i, q), g)| format!("(i={i}, q={q}): {g}\n")).collect();
            Output::new(Value::Array(rows), table.trim_end())
        }
        Command::Duality => {
            let r = verify_duality(&d, cap)?;
            let json = serde_json::to_value(&r).unwrap();
            let table = format!("{json:#}");
            Output {
                ok: r.passed(),
                ..Output::new(json, table)
            }
        }
        Command::Moves(MovesCommand::Apply { site }) => {
            let site: MoveSite = serde_json::from_str(site)
                .map_err(|e| Failure::Input("malformed_move".into(), e.to_string()))?;
            let e = apply_move(&d, &site)?;
            let table = format!("{} crossings, hash {}\n{}", e.num_crossings(), e.canonical_hash(), e.to_json_string());
            Output::new(serde_json::to_value(e.to_json()).unwrap(), table)
        }
        Command::Moves(MovesCommand::Random { steps }) => {
            let t = random_sequence(&d, *steps, opts.seed, cap)?;
            let json = trajectory_json(&t);
            let table: String = t
                .iter()
                .enumerate()
                .map(|(k, s)| format!("{k:>3} {:<9} {}\n", format!("{:?}", s.site.kind()), s.diagram.canonical_hash()))
                .collect();
            Output::new(json, table.trim_end())
        }
        Command::Check(c) => {
            let v = match c {
                CheckCommand::Invariance { steps } => checks::invariance(&d, *steps, opts.seed, cap)?,
                CheckCommand::Euler => checks::euler(&d, cap)?,
                CheckCommand::Ordering { count } => checks::ordering(&d, *count, opts.seed, cap)?,
                CheckCommand::Skein => checks::skein(&d, cap)?,
                CheckCommand::Fig8 => checks::fig8(&d, cap)?,
                CheckCommand::MergeLaw => checks::merge_law(&d, cap)?,
            };
            let table = format!("{}: {}", v.report["check"].as_str().unwrap_or("check"), if v.ok { "ok" } else { "VIOLATED" });
            Output {
                ok: v.ok,
                ..Output::new(v.report, table)
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.opts.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error[jobs]: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.opts.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
                Format::Table => println!("{}", out.table),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(code, msg) => (code, msg),
                Failure::Core(e) => (e.code().to_string(), e.to_string()),
            };
            eprintln!("{}", json!({"error": code, "message": msg}));
            ExitCode::from(2)
        }
    }
}
