use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use percol::{
    brute_force_enumerate_jobs, catalog_diff, classify, conjugate_semicolorings,
    disjunctive_multipath, equivalence_partition, glue, lift_block_monochrome, propagate,
    series_cyclic, series_mirror, summary_csv, theorem_enumerate, three_periodic_complete,
    BlockKind, BlockProfile, Bounds, Catalog, ClassifyError, EnumerationError, Evidence, Family,
    MirrorType, ParameterMatrix, PeriodicColoring, PropagateOutcome, SearchBudget, Semicoloring,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "percol", about = "Perfect colorings of infinite multipath graphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a periodic coloring and print its parameter matrix
    Verify {
        /// Coloring JSON file
        file: PathBuf,
    },
    /// Enumerate perfect colorings within bounds and write a catalog
    Enumerate(EnumerateArgs),
    /// Classify a perfect coloring into the theorem classes
    Classify {
        /// Coloring JSON file
        file: PathBuf,
    },
    /// Glue semantically equivalent colors and print the quotient coloring
    Glue {
        /// Coloring JSON file
        file: PathBuf,
    },
    /// Compare two catalog files
    Diff {
        a: PathBuf,
        b: PathBuf,
    },
    /// Build colorings from the constructive families
    #[command(subcommand)]
    Construct(ConstructCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Empty,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Oracle,
    Theorem,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Block kind
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Block size
    #[arg(long)]
    n: usize,
    /// Maximum number of colors
    #[arg(long)]
    colors: usize,
    /// Maximum primitive period
    #[arg(long)]
    max_period: usize,
    /// Oracle search or theorem-driven generation
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Output file (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Catalog format: json lines or csv summary
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Worker threads for the oracle
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// The cyclic series S(k)
    Cyclic {
        #[arg(long)]
        k: usize,
    },
    /// The mirror series S11(k), S12(k), S22(k)
    Mirror {
        #[arg(long)]
        k: usize,
        /// Mirror type: 11, 12, or 22
        #[arg(long = "type")]
        ty: String,
    },
    /// Lift a path coloring to block-monochrome blocks of size n
    Lift {
        /// Path coloring JSON file
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
    },
    /// Disjunctive product of a path coloring with per-color profiles
    Disjunctive {
        /// Path coloring JSON file
        file: PathBuf,
        /// Profiles as inline JSON, e.g. "[[2,0],[0,1]]"
        #[arg(long)]
        profiles: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
    },
    /// Conjugate an even and an odd semicoloring
    Conjugate {
        /// Even semicoloring JSON file
        even: PathBuf,
        /// Odd semicoloring JSON file
        odd: PathBuf,
    },
    /// A 3-periodic coloring over complete blocks
    ThreePeriodic {
        /// The three blocks as inline JSON, e.g. "[[1,1],[2,0],[0,2]]"
        #[arg(long)]
        blocks: String,
        #[arg(long)]
        n: usize,
    },
    /// Restore a coloring from a matrix and two seed blocks
    Propagate {
        /// Parameter matrix JSON file
        matrix: PathBuf,
        /// First seed block, inline JSON
        #[arg(long)]
        b0: String,
        /// Second seed block, inline JSON
        #[arg(long)]
        b1: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
    },
}

fn family(kind: KindArg, n: usize) -> Result<Family, u8> {
    let kind = match kind {
        KindArg::Empty => BlockKind::Empty,
        KindArg::Complete => BlockKind::Complete,
    };
    Family::new(kind, n).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn read_file(path: &PathBuf) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, u8> {
    serde_json::from_str(text).map_err(|e| {
        eprintln!("error: invalid {what}: {e}");
        EXIT_USAGE
    })
}

fn read_coloring(path: &PathBuf) -> Result<PeriodicColoring, u8> {
    parse_json(&read_file(path)?, "coloring")
}

fn print_coloring(c: &PeriodicColoring) {
    if let Some(colors) = c.block_colors() {
        let words: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
        println!("[{}]", words.join(" "));
    }
    println!("{}", serde_json::to_string(c).expect("colorings serialize"));
}

fn budget() -> SearchBudget {
    match std::env::var("PERCOL_BUDGET") {
        Ok(v) => match v.parse::<u64>() {
            Ok(limit) => SearchBudget(limit),
            Err(_) => {
                eprintln!("warning: ignoring unparsable PERCOL_BUDGET");
                SearchBudget::default()
            }
        },
        Err(_) => SearchBudget::default(),
    }
}

fn cmd_verify(file: &PathBuf) -> Result<u8, u8> {
    let coloring = read_coloring(file)?;
    match coloring.infer_matrix() {
        Ok(matrix) => {
            println!("perfect coloring with {} colors, period {}", coloring.colors(),
                coloring.period_len());
            println!("{matrix}");
            Ok(EXIT_OK)
        }
        Err(witness) => {
            println!("not perfect: {witness}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<u8, u8> {
    let family = family(args.kind, args.n)?;
    let bounds = Bounds::new(args.colors, args.max_period).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })?;
    let result = match args.method {
        MethodArg::Oracle => brute_force_enumerate_jobs(family, bounds, budget(), args.jobs),
        MethodArg::Theorem => theorem_enumerate(family, bounds, budget()),
    };
    let catalog = result.map_err(|e| {
        eprintln!("error: {e}");
        match e {
            EnumerationError::BudgetExceeded { .. } => EXIT_BUDGET,
            EnumerationError::DomainError => EXIT_USAGE,
            _ => EXIT_NEGATIVE,
        }
    })?;
    let rows = catalog.summary();
    println!("colors period class count");
    for row in &rows {
        println!("{:>6} {:>6} {} {}", row.colors, row.period, row.label, row.count);
    }
    println!("total {}", catalog.len());
    let payload = match args.format {
        FormatArg::Json => catalog.to_jsonl(),
        FormatArg::Csv => summary_csv(&rows),
    };
    match &args.out {
        Some(path) => fs::write(path, payload).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_USAGE
        })?,
        None => print!("{payload}"),
    }
    Ok(EXIT_OK)
}

fn cmd_classify(file: &PathBuf) -> Result<u8, u8> {
    let coloring = read_coloring(file)?;
    match classify(&coloring) {
        Ok(class) => {
            println!("class: {}", class.label);
            match &class.evidence {
                Evidence::Disjunctive { path, profiles } => {
                    let base: Vec<String> = path
                        .block_colors()
                        .unwrap_or_default()
                        .iter()
                        .map(|c| c.to_string())
                        .collect();
                    println!("base path coloring: [{}]", base.join(" "));
                    println!(
                        "profiles: {}",
                        serde_json::to_string(profiles).expect("profiles serialize")
                    );
                }
                Evidence::Conjugation { even, odd } => {
                    println!(
                        "even semicoloring: {}",
                        serde_json::to_string(even).expect("semicolorings serialize")
                    );
                    println!(
                        "odd semicoloring: {}",
                        serde_json::to_string(odd).expect("semicolorings serialize")
                    );
                }
                Evidence::ThreePeriodic { blocks } => {
                    println!(
                        "period blocks: {}",
                        serde_json::to_string(blocks).expect("blocks serialize")
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Err(ClassifyError::NotPerfect(w)) => {
            println!("not perfect: {w}");
            Ok(EXIT_NEGATIVE)
        }
        Err(ClassifyError::Unclassifiable) => {
            println!("unclassifiable within the theorem classes");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_glue(file: &PathBuf) -> Result<u8, u8> {
    let coloring = read_coloring(file)?;
    let classes = equivalence_partition(&coloring).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_NEGATIVE
    })?;
    let glued = glue(&coloring).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_NEGATIVE
    })?;
    let rendered: Vec<String> = classes
        .iter()
        .map(|class| {
            let members: Vec<String> = class.iter().map(|c| c.to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    println!("classes: {}", rendered.join(" "));
    print_coloring(&glued);
    Ok(EXIT_OK)
}

fn cmd_diff(a: &PathBuf, b: &PathBuf) -> Result<u8, u8> {
    let cat_a = Catalog::from_jsonl(&read_file(a)?).map_err(|e| {
        eprintln!("error: {}: {e}", a.display());
        EXIT_USAGE
    })?;
    let cat_b = Catalog::from_jsonl(&read_file(b)?).map_err(|e| {
        eprintln!("error: {}: {e}", b.display());
        EXIT_USAGE
    })?;
    let (only_a, only_b) = catalog_diff(&cat_a, &cat_b).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })?;
    if only_a.is_empty() && only_b.is_empty() {
        println!("identical ({} entries)", cat_a.len());
        return Ok(EXIT_OK);
    }
    for c in &only_a {
        println!("only in {}: {}", a.display(), serde_json::to_string(c).unwrap());
    }
    for c in &only_b {
        println!("only in {}: {}", b.display(), serde_json::to_string(c).unwrap());
    }
    Ok(EXIT_NEGATIVE)
}

fn cmd_construct(cmd: &ConstructCmd) -> Result<u8, u8> {
    match cmd {
        ConstructCmd::Cyclic { k } => {
            let c = series_cyclic(*k).map_err(usage)?;
            print_coloring(&c);
            Ok(EXIT_OK)
        }
        ConstructCmd::Mirror { k, ty } => {
            let ty = match ty.as_str() {
                "11" => MirrorType::OneOne,
                "12" => MirrorType::OneTwo,
                "22" => MirrorType::TwoTwo,
                other => {
                    eprintln!("error: unknown mirror type {other} (expected 11, 12, or 22)");
                    return Err(EXIT_USAGE);
                }
            };
            let c = series_mirror(*k, ty).map_err(usage)?;
            print_coloring(&c);
            Ok(EXIT_OK)
        }
        ConstructCmd::Lift { file, kind, n } => {
            let path = read_coloring(file)?;
            let fam = family(*kind, *n)?;
            let c = lift_block_monochrome(&path, fam).map_err(negative)?;
            print_coloring(&c);
            Ok(EXIT_OK)
        }
        ConstructCmd::Disjunctive { file, profiles, kind, n } => {
            let path = read_coloring(file)?;
            let profiles: Vec<BlockProfile> = parse_json(profiles, "profiles")?;
            let fam = family(*kind, *n)?;
            let c = disjunctive_multipath(&path, &profiles, fam).map_err(negative)?;
            print_coloring(&c);
            Ok(EXIT_OK)
        }
        ConstructCmd::Conjugate { even, odd } => {
            let even: Semicoloring = parse_json(&read_file(even)?, "semicoloring")?;
            let odd: Semicoloring = parse_json(&read_file(odd)?, "semicoloring")?;
            let c = conjugate_semicolorings(&even, &odd).map_err(negative)?;
            print_coloring(&c);
            Ok(EXIT_OK)
        }
        ConstructCmd::ThreePeriodic { blocks, n } => {
            let blocks: Vec<BlockProfile> = parse_json(blocks, "blocks")?;
            if blocks.len() != 3 {
                eprintln!("error: expected exactly 3 blocks, got {}", blocks.len());
                return Err(EXIT_USAGE);
            }
            let c = three_periodic_complete(
                blocks[0].clone(),
                blocks[1].clone(),
                blocks[2].clone(),
                *n,
            )
            .map_err(negative)?;
            print_coloring(&c);
            Ok(EXIT_OK)
        }
        ConstructCmd::Propagate { matrix, b0, b1, kind, n } => {
            let matrix: ParameterMatrix = parse_json(&read_file(matrix)?, "matrix")?;
            let b0: BlockProfile = parse_json(b0, "block")?;
            let b1: BlockProfile = parse_json(b1, "block")?;
            let fam = family(*kind, *n)?;
            match propagate(&matrix, b0, b1, fam).map_err(usage)? {
                PropagateOutcome::Periodic(c) => {
                    println!("periodic");
                    print_coloring(&c);
                    Ok(EXIT_OK)
                }
                PropagateOutcome::NotBiInfinite => {
                    println!("no bi-infinite extension");
                    Ok(EXIT_NEGATIVE)
                }
                PropagateOutcome::Contradiction { block, reason } => {
                    println!("contradiction at block {block}: {reason:?}");
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> u8 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

fn negative<E: std::fmt::Display>(e: E) -> u8 {
    eprintln!("error: {e}");
    EXIT_NEGATIVE
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { file } => cmd_verify(file),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Classify { file } => cmd_classify(file),
        Command::Glue { file } => cmd_glue(file),
        Command::Diff { a, b } => cmd_diff(a, b),
        Command::Construct(cmd) => cmd_construct(cmd),
    };
    ExitCode::from(match result {
        Ok(code) => code,
        Err(code) => code,
    })
}
