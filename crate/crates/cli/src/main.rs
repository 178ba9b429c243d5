//! `spinmod`: enumeration, crystal and spin-character queries, module
//! construction, and the verification suites.
//!
//! Exit status: 0 when every requested suite passes, 1 when a suite fails,
//! 2 on errors (bad input, resource guard, uncertified meataxe run).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spinmod::crystal::{e_tilde, f_tilde, is_js, signature};
use spinmod::gf2::io;
use spinmod::modrep::{alt_irreducibles_cached, irreducible_head_cached};
use spinmod::partition::{enumerate, FamilyKind, Partition, PartitionFamily};
use spinmod::spin_chars::spin_value;
use spinmod::verify::{self, Options, Report};

#[derive(Parser)]
#[command(name = "spinmod", version, about = "Characteristic-2 modules of symmetric and alternating groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory for serialized representations.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Lift the size guards.
    #[arg(long, global = true)]
    force: bool,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of a family.
    Enum {
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Signatures, normal nodes and crystal operators of a partition.
    Crystal {
        lambda: Partition,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// A spin character value.
    Spinchar {
        lambda: Partition,
        alpha: Partition,
        /// Only the sign-free data (parity and valuation bound).
        #[arg(long)]
        unsigned: bool,
    },
    /// Build and store modules.
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Surviving character-level candidates for an irreducible product with
    /// basic spin.
    Filter {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum RepCommand {
    /// D^lambda for S_n, or its A_n constituents with --alt.
    Build {
        lambda: Partition,
        #[arg(long)]
        alt: bool,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Clone)]
struct OutArgs {
    /// Write the JSON report here (stdout otherwise).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the TSV summary here.
    #[arg(long)]
    tsv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Suite {
    /// Products with basic spin constituents, n = 5..max-n.
    Mt {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All pairs of simple A_n-modules, n = 5..max-n.
    Scan {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Splitting on restriction to A_n against the criterion.
    Benson {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Endomorphism dimensions and multiplicities of restrictions to S_{n-1}.
    Branching {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dimension and restriction of the basic spin module.
    Basic {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Permutation modules M_1, M_2, M_{1^2} for odd n.
    Perm {
        #[arg(long, value_delimiter = ',', default_values_t = [5, 7, 9])]
        n: Vec<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Spin character parity, divisibility and magnitude checks.
    Spinchar {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    All,
    TwoRegular,
    Odd,
    OddDistinct,
    BensonSplit,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::All => FamilyKind::All,
            Family::TwoRegular => FamilyKind::TwoRegular,
            Family::Odd => FamilyKind::OddParts,
            Family::OddDistinct => FamilyKind::OddDistinct,
            Family::BensonSplit => FamilyKind::BensonSplit,
        }
    }
}

fn emit(report: &Report, out: &OutArgs) -> Result<bool, String> {
    let text = report.to_json() + "\n";
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
        }
    }
    if let Some(path) = &out.tsv {
        let tsv = format!("{}\n{}", Report::tsv_header(), report.to_tsv());
        fs::write(path, tsv).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let failed = report.failures().count();
    eprintln!("{}: {} ({} cases, {failed} failed)", report.suite, if report.pass { "PASS" } else { "FAIL" }, report.cases.len());
    Ok(report.pass)
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn say(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_json(v: &serde_json::Value) {
    say(&serde_json::to_string_pretty(v).expect("json"));
}

fn run(cli: Cli) -> Result<bool, String> {
    let opts = Options { seed: cli.global.seed, cache_dir: cli.global.cache_dir.clone(), force: cli.global.force };
    let e = |err: spinmod::Error| err.to_string();
    match cli.command {
        Command::Enum { family, n } => {
            for p in enumerate(PartitionFamily::new(family.into(), n)) {
                say(&p.to_string());
            }
            Ok(true)
        }
        Command::Crystal { lambda, p } => {
            if !lambda.is_p_regular(p) {
                return Err(spinmod::Error::NotPRegular { partition: lambda, p }.to_string());
            }
            let residues: Vec<_> = (0..p)
                .map(|i| {
                    let sig = signature(&lambda, i, p);
                    json!({
                        "residue": i,
                        "eps": sig.eps(),
                        "phi": sig.phi(),
                        "normal": sig.normal,
                        "good": sig.good(),
                        "conormal": sig.conormal,
                        "cogood": sig.cogood(),
                        "e_tilde": e_tilde(&lambda, i, 1, p).ok().flatten().map(|m| m.to_string()),
                        "f_tilde": f_tilde(&lambda, i, 1, p).ok().flatten().map(|m| m.to_string()),
                    })
                })
                .collect();
            print_json(&json!({ "lambda": lambda.to_string(), "p": p, "js": is_js(&lambda, p).map_err(e)?, "residues": residues }));
            Ok(true)
        }
        Command::Spinchar { lambda, alpha, unsigned } => {
            let v = spin_value(&lambda, &alpha, !unsigned).map_err(e)?;
            print_json(&json!({ "lambda": lambda.to_string(), "alpha": alpha.to_string(), "value": v }));
            Ok(true)
        }
        Command::Rep { command: RepCommand::Build { lambda, alt, out } } => {
            fs::create_dir_all(&out).map_err(|err| err.to_string())?;
            let cache = opts.cache_dir.as_deref();
            let n = lambda.n();
            let reps = if alt {
                let all = alt_irreducibles_cached(n, opts.seed, cache).map_err(e)?;
                all.into_iter().filter(|x| x.label.partition == lambda).map(|x| (x.label, x.rep)).collect()
            } else {
                let d = irreducible_head_cached(&lambda, cache).map_err(e)?;
                vec![(d.label, d.rep)]
            };
            for (label, rep) in reps {
                let group = if alt { format!("A{n}") } else { format!("S{n}") };
                let parts: Vec<String> = label.partition.parts().iter().map(|x| x.to_string()).collect();
                let sign = label.sign.map_or("", |s| if s == spinmod::gf2::Sign::Plus { "+" } else { "-" });
                let path = out.join(format!("{group}_{}{sign}.rep", parts.join(".")));
                io::save(&path, &rep).map_err(e)?;
                say(&format!("{group}\t{label}\t{}\t{}", rep.field_dim(), path.display()));
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let (report, out) = match suite {
                Suite::Mt { max_n, out } => (verify::verify_mt(max_n, &opts), out),
                Suite::Scan { max_n, out } => (verify::verify_pair_scan(max_n, &opts), out),
                Suite::Benson { max_n, out } => (verify::verify_benson(max_n, &opts), out),
                Suite::Branching { max_n, out } => (verify::verify_branching(max_n, &opts), out),
                Suite::Basic { max_n, out } => (verify::verify_basic_spin(max_n, &opts), out),
                Suite::Perm { n, out } => (verify::verify_perm_structure(&n, &opts), out),
                Suite::Spinchar { max_n, out } => (verify::verify_spinchar(max_n, &opts), out),
            };
            emit(&report.map_err(e)?, &out)
        }
        Command::Filter { n, out } => emit(&verify::filter_candidates(n, &opts).map_err(e)?, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
