//! `avoider-lab`: counting, mapping and exhaustive verification from the command line.

use std::process::ExitCode;

use avoider_lab::bijection::{analyze, forward_map, inverse_map_heights, Analysis};
use avoider_lab::paths::{heights_to_path, parse_heights, path_to_heights, LatticePath};
use avoider_lab::series::{catalan_series, f_series, g_series, u_by_formula};
use avoider_lab::verify::{run_verification, VerifyConfig};
use avoider_lab::{count_avoiders, enumerate_avoiders, ListOrder, PatternSet, Permutation};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

const COUNT_LIMIT: usize = 12;
const VERIFY_LIMIT: usize = 10;

#[derive(Parser)]
#[command(name = "avoider-lab", version, about = "Indecomposable {4321, 3241}-avoiders and their bijection")]
struct Cli {
    /// Worker threads (defaults to the machine's parallelism).
    #[arg(long, global = true, env = "AVOIDER_LAB_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Bfile,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DumpFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    Catalan,
    /// u_n from the summation formula
    U,
}

#[derive(Subcommand)]
enum Command {
    /// Count pattern avoiders of each length 0..=max-n.
    Count {
        #[arg(long, default_value = "4321,3241")]
        patterns: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        indecomposable: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// First index printed in b-file output.
        #[arg(long, default_value_t = 0)]
        offset: i64,
        #[arg(long)]
        unsafe_no_limit: bool,
    },
    /// List the avoiders of one length in lexicographic order.
    Enumerate {
        #[arg(long, default_value = "4321,3241")]
        patterns: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        indecomposable: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: DumpFormat,
        #[arg(long)]
        unsafe_no_limit: bool,
    },
    /// Image (q, heights) of an avoider.
    Map {
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "text")]
        format: DumpFormat,
    },
    /// Rebuild the avoider from (q, heights).
    Unmap {
        #[arg(long)]
        perm: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        heights: String,
        #[arg(long, value_enum, default_value = "text")]
        format: DumpFormat,
    },
    /// Blue entries, peak blue, triple, insertion list and image of an avoider.
    Analyze {
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "json")]
        format: DumpFormat,
    },
    /// Convert between nonnegative paths and height sequences.
    Paths {
        #[arg(long, conflicts_with_all = ["from_heights", "classify"])]
        to_heights: Option<String>,
        #[arg(long, requires = "ups")]
        from_heights: Option<String>,
        /// Surplus up steps for --from-heights.
        #[arg(long)]
        ups: Option<usize>,
        #[arg(long, conflicts_with = "from_heights")]
        classify: Option<String>,
    },
    /// Print series coefficients.
    Series {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        offset: i64,
    },
    /// Run every invariant suite and print a JSON report.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        unsafe_no_limit: bool,
        /// Negative control: use a wrong insertion-list order.
        #[arg(long, hide = true)]
        corrupt_ordering: bool,
    },
}

enum Failure {
    /// Bad arguments; exit code 2.
    Usage(String),
    /// Well-formed request that failed; exit code 1.
    Failed(String),
}

impl From<avoider_lab::Error> for Failure {
    fn from(e: avoider_lab::Error) -> Self {
        match e {
            avoider_lab::Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn guard(value: usize, limit: usize, flag: &str, escape: bool) -> Result<(), Failure> {
    if value > limit && !escape {
        return Err(Failure::Usage(format!(
            "{flag} {value} exceeds the limit of {limit}; pass --unsafe-no-limit to run anyway"
        )));
    }
    Ok(())
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    s.parse().map_err(|e: avoider_lab::Error| Failure::Usage(e.to_string()))
}

fn parse_patterns(s: &str) -> Result<PatternSet, Failure> {
    s.parse().map_err(|e: avoider_lab::Error| Failure::Usage(e.to_string()))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn print_sequence(values: &[String], format: Format, offset: i64, extra: serde_json::Value) {
    match format {
        Format::Csv => println!("{}", values.join(",")),
        Format::Bfile => print!("{}", avoider_lab::series::bfile(values, offset)),
        Format::Json => {
            let mut doc = json!({ "schema": "v1", "offset": offset });
            let numbers: Vec<serde_json::Value> = values
                .iter()
                .map(|v| serde_json::from_str(v).expect("integers are valid JSON numbers"))
                .collect();
            doc["values"] = serde_json::Value::Array(numbers);
            if let serde_json::Value::Object(extra) = extra {
                doc.as_object_mut().unwrap().extend(extra);
            }
            print_json(&doc);
        }
    }
}

fn print_analysis_text(a: &Analysis) {
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    println!("permutation={}", a.permutation);
    println!("blue={}", list(&a.blue));
    println!("peak_blue={}", a.peak_blue.map_or("none".to_string(), |y| y.to_string()));
    println!("triple={}", a.triple);
    println!("insertion_set={}", list(&a.insertion_set));
    println!("insertion_list={}", list(&a.insertion_list));
    println!("{}", image_line(&a.image));
}

fn image_line(img: &avoider_lab::MapImage) -> String {
    let heights = if img.heights.is_empty() { "()".to_string() } else { img.heights.to_string() };
    format!("q={} heights={heights}", img.q)
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Count { patterns, max_n, indecomposable, format, offset, unsafe_no_limit } => {
            guard(max_n, COUNT_LIMIT, "--max-n", unsafe_no_limit)?;
            let set = parse_patterns(&patterns)?;
            let counts: Vec<String> = (0..=max_n)
                .map(|n| count_avoiders(n, &set, indecomposable).to_string())
                .collect();
            print_sequence(
                &counts,
                format,
                offset,
                json!({ "patterns": set.to_string(), "indecomposable": indecomposable }),
            );
        }
        Command::Enumerate { patterns, n, indecomposable, format, unsafe_no_limit } => {
            guard(n, COUNT_LIMIT, "--n", unsafe_no_limit)?;
            let set = parse_patterns(&patterns)?;
            let perms = enumerate_avoiders(n, &set, indecomposable);
            match format {
                DumpFormat::Text => {
                    for p in &perms {
                        println!("{p}");
                    }
                }
                DumpFormat::Json => print_json(&json!({
                    "schema": "v1",
                    "n": n,
                    "patterns": set.to_string(),
                    "indecomposable": indecomposable,
                    "count": perms.len(),
                    "permutations": perms,
                })),
            }
        }
        Command::Map { perm, format } => {
            let p = parse_perm(&perm)?;
            match format {
                DumpFormat::Text => println!("{}", image_line(&forward_map(&p)?)),
                DumpFormat::Json => print_json(&analysis_json(&analyze(&p)?)),
            }
        }
        Command::Unmap { perm, heights, format } => {
            let q = parse_perm(&perm)?;
            let h = parse_heights(&heights)?;
            let p = inverse_map_heights(&q, &h)?;
            match format {
                DumpFormat::Text => println!("{p}"),
                DumpFormat::Json => print_json(&json!({ "schema": "v1", "permutation": p })),
            }
        }
        Command::Analyze { perm, format } => {
            let a = analyze(&parse_perm(&perm)?)?;
            match format {
                DumpFormat::Text => print_analysis_text(&a),
                DumpFormat::Json => print_json(&analysis_json(&a)),
            }
        }
        Command::Paths { to_heights, from_heights, ups, classify } => {
            if let Some(path) = to_heights {
                let path: LatticePath = path.parse()?;
                println!("{}", path_to_heights(&path)?);
            } else if let Some(heights) = from_heights {
                let h = parse_heights(&heights)?;
                println!("{}", heights_to_path(&h, ups.expect("clap enforces --ups"))?);
            } else if let Some(path) = classify {
                let c = path.parse::<LatticePath>()?.classify();
                println!(
                    "nonnegative={} dyck={} components={}",
                    c.nonnegative, c.dyck, c.component_count
                );
            } else {
                return Err(Failure::Usage(
                    "paths needs one of --to-heights, --from-heights or --classify".into(),
                ));
            }
        }
        Command::Series { which, terms, format, offset } => {
            let values: Vec<String> = if terms == 0 {
                Vec::new()
            } else {
                let order = terms - 1;
                let coeffs: Vec<BigInt> = match which {
                    Which::F => f_series(order).into_coefficients(),
                    Which::G => g_series(order).into_coefficients(),
                    Which::Catalan => catalan_series(order).into_coefficients(),
                    Which::U => (0..terms as u64).map(|n| BigInt::from(u_by_formula(n))).collect(),
                };
                coeffs.iter().map(BigInt::to_string).collect()
            };
            let name = match which {
                Which::F => "F",
                Which::G => "G",
                Which::Catalan => "catalan",
                Which::U => "u",
            };
            print_sequence(&values, format, offset, json!({ "series": name }));
        }
        Command::Verify { max_n, unsafe_no_limit, corrupt_ordering } => {
            guard(max_n, VERIFY_LIMIT, "--max-n", unsafe_no_limit)?;
            let order = if corrupt_ordering { ListOrder::Reversed } else { ListOrder::Standard };
            let report = run_verification(VerifyConfig { max_n, order });
            print_json(&serde_json::to_value(&report).expect("report serializes"));
            if !report.passed {
                for (name, suite) in report.suites.iter().filter(|(_, s)| !s.passed) {
                    eprintln!("suite {name}: {} failures", suite.failure_count);
                    for f in &suite.failures {
                        eprintln!("  {f}");
                    }
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn analysis_json(a: &Analysis) -> serde_json::Value {
    let mut v = serde_json::to_value(a).expect("analysis serializes");
    v.as_object_mut().unwrap().insert("schema".into(), json!("v1"));
    v
}
