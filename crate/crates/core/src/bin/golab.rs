use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use golab::config::SpaceConfig;
use golab::flagstruct::PaintedDiagram;
use golab::gometric::{check_normal, is_go_linear_seeded, necform_check};
use golab::lemmalab;
use golab::rootsys::{RootSystem, RootType};
use golab::Error;

#[derive(Parser)]
#[command(name = "golab", version, about = "Exact workbench for geodesic orbit metrics on G/S with toral S")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Root system queries.
    Rootsys {
        #[command(subcommand)]
        cmd: RootsysCmd,
    },
    /// Painted Dynkin diagrams.
    Flag {
        #[command(subcommand)]
        cmd: FlagCmd,
    },
    /// Homogeneous spaces defined by a config file.
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// Exhaustive root lemma sweeps.
    Lemmas {
        #[command(subcommand)]
        cmd: LemmasCmd,
    },
}

#[derive(Subcommand)]
enum RootsysCmd {
    /// Simple roots, positive roots and Cartan matrix.
    Show {
        #[arg(value_name = "TYPE")]
        type_label: String,
        rank: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FlagCmd {
    /// Root partition and isotropy split of a painted diagram (JSON).
    Describe {
        #[arg(value_name = "TYPE")]
        type_label: String,
        rank: usize,
        /// Painted nodes, numbered from 1.
        #[arg(long, num_args = 1.., required = true)]
        painted: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// Decomposition of the tangent space with all dimensions (JSON).
    Decompose { config: PathBuf },
    /// Runs deciders on the configured metric; exit 0 if all hold, 1 otherwise.
    Check(CheckArgs),
}

#[derive(Args)]
#[group(id = "which", required = true, multiple = true)]
struct Which {
    #[arg(long)]
    go: bool,
    #[arg(long)]
    natred: bool,
    #[arg(long)]
    normal: bool,
    #[arg(long)]
    necform: bool,
}

#[derive(Args)]
struct CheckArgs {
    config: PathBuf,
    #[command(flatten)]
    which: Which,
    /// Seed of the random part of the witness search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random vectors tried by the witness search.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Subcommand)]
enum LemmasCmd {
    /// Runs every lemma verifier; exit 0 iff there are no violations.
    Verify {
        #[arg(long, default_value_t = 5)]
        rank_max: usize,
    },
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn root_system(t: &str, rank: usize) -> Result<RootSystem, Error> {
    RootSystem::build(RootType::parse(t)?, rank)
}

fn rootsys_show(t: &str, rank: usize, as_json: bool) -> Result<bool, Error> {
    let rs = root_system(t, rank)?;
    let rep = rs.to_report();
    if as_json {
        print_json(&rep);
        return Ok(true);
    }
    println!("{}{}: {} positive roots", rs.type_label.label(), rs.rank, rs.num_positive());
    println!("simple roots (ambient):");
    for (i, s) in rep.simple_roots.iter().enumerate() {
        println!("  a{} = ({})", i + 1, s.join(", "));
    }
    println!("positive roots:");
    for r in 0..rs.num_positive() {
        println!("  {}", rs.label(r));
    }
    println!("Cartan matrix:");
    for row in &rs.cartan {
        println!("  {}", row.iter().map(|c| format!("{c:>3}")).collect::<String>());
    }
    Ok(true)
}

fn space_check(args: &CheckArgs) -> Result<bool, Error> {
    let cfg = SpaceConfig::load(&args.config)?;
    let space = cfg.space()?;
    let a = cfg.metric(&space)?;
    let mut results = Vec::new();
    let mut all = true;
    let w = &args.which;
    if w.go || w.natred {
        // linear equivariant graphs: complete for g.o. when S is abelian and
        // exactly natural reductivity in general
        let v = is_go_linear_seeded(&space, &a, args.seed, args.samples);
        all &= v.is_go();
        let rep = serde_json::to_value(v.report()).expect("reports serialize");
        if w.go {
            results.push(json!({ "check": "go", "holds": v.is_go(), "report": rep }));
        }
        if w.natred {
            results.push(json!({ "check": "natred", "holds": v.is_go(), "report": rep }));
        }
    }
    if w.normal {
        let v = check_normal(&space, &a);
        all &= v.is_normal();
        results.push(json!({ "check": "normal", "holds": v.is_normal(), "report": v.report() }));
    }
    if w.necform {
        let v = necform_check(&space, &a);
        all &= v.holds;
        results.push(json!({ "check": "necform", "holds": v.holds, "report": v }));
    }
    let out: Value = json!({
        "config": args.config.display().to_string(),
        "dim_m": space.dim_m(),
        "dim_s": space.dim_s(),
        "seed": args.seed,
        "samples": args.samples,
        "results": results,
    });
    print_json(&out);
    Ok(all)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.cmd {
        Cmd::Rootsys { cmd: RootsysCmd::Show { type_label, rank, json } } => rootsys_show(&type_label, rank, json),
        Cmd::Flag { cmd: FlagCmd::Describe { type_label, rank, painted } } => {
            let rs = root_system(&type_label, rank)?;
            print_json(&PaintedDiagram::from_one_based(&rs, &painted)?.report());
            Ok(true)
        }
        Cmd::Space { cmd: SpaceCmd::Decompose { config } } => {
            print_json(&SpaceConfig::load(&config)?.space()?.report());
            Ok(true)
        }
        Cmd::Space { cmd: SpaceCmd::Check(args) } => space_check(&args),
        Cmd::Lemmas { cmd: LemmasCmd::Verify { rank_max } } => {
            let rep = lemmalab::sweep(rank_max)?;
            print_json(&rep);
            Ok(rep.total_violations == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("GO_LAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // an already initialized pool is not an error worth failing on
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
