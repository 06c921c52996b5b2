//! `rpf`: restricted partition counts, quasi-polynomial certificates, and
//! the property harness.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rpf_core::oracle::DEFAULT_GUARD_LIMIT;
use rpf_core::verify::{certificate, verify_corpus, Method, Property, VerifyConfig};
use rpf_core::{count_dp, verify, Error, PartList, QuasiPoly};

mod range;

use range::NRange;

#[derive(Parser, Debug)]
#[command(name = "rpf", version, about = "Exact restricted partition function toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Explicit,
    Recursive,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Explicit => Method::Explicit,
            MethodArg::Recursive => Method::Recursive,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print p(n, parts) for a single n or an inclusive range a..b
    Eval {
        #[arg(long)]
        parts: String,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "explicit")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Emit the quasi-polynomial certificate
    Cert {
        #[arg(long)]
        parts: String,
        #[arg(long, value_enum, default_value = "explicit")]
        method: MethodArg,
        /// Re-tabulate at this multiple of the natural period
        #[arg(long)]
        period: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check structural properties of the certificates
    Verify {
        #[arg(long)]
        parts: String,
        /// Comma-separated: oracle, recurrence, parity, zeros, path-agreement, mean-value, all
        #[arg(long, default_value = "all")]
        props: String,
        #[arg(long)]
        n_max: Option<u64>,
        /// Restrict to one construction (default: both)
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Time certificate construction and evaluation against the DP count
    Bench {
        #[arg(long)]
        parts: String,
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "explicit")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Verify every multiset of at most max-m parts from 1..=max-part
    Corpus {
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        max_part: u64,
        #[arg(long, default_value = "all")]
        props: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

/// Outcome of a subcommand that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(Error::Integrality { n, value }) => {
            eprintln!("error: certificate value at n = {n} is {value}, not a nonnegative integer");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> rpf_core::Result<Status> {
    match command {
        Command::Eval { parts, n, method, format } => cmd_eval(&parts.parse()?, &n.parse()?, method.into(), format),
        Command::Cert { parts, method, period, format } => cmd_cert(&parts.parse()?, method.into(), period, format),
        Command::Verify { parts, props, n_max, method, format } => {
            let config = VerifyConfig {
                properties: Property::parse_list(&props)?,
                methods: match method {
                    Some(m) => vec![closed_form(m.into())?],
                    None => vec![Method::Explicit, Method::Recursive],
                },
                n_max,
                enum_guard: guard_limit()?,
            };
            cmd_verify(&parts.parse()?, &config, format)
        }
        Command::Bench { parts, n, method, format } => {
            let range: NRange = n.parse()?;
            cmd_bench(&parts.parse()?, range.end(), closed_form(method.into())?, format)
        }
        Command::Corpus { max_m, max_part, props, format } => {
            let config = VerifyConfig {
                properties: Property::parse_list(&props)?,
                enum_guard: guard_limit()?,
                ..VerifyConfig::default()
            };
            cmd_corpus(max_m, max_part, &config, format)
        }
    }
}

fn closed_form(method: Method) -> rpf_core::Result<Method> {
    match method {
        Method::Oracle => Err(Error::InvalidInput("this command needs --method explicit or recursive".into())),
        m => Ok(m),
    }
}

/// `RPF_GUARD_LIMIT` overrides the enumeration work limit.
fn guard_limit() -> rpf_core::Result<u128> {
    match std::env::var("RPF_GUARD_LIMIT") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("RPF_GUARD_LIMIT={v:?}: {e}"))),
        Err(_) => Ok(DEFAULT_GUARD_LIMIT),
    }
}

fn cmd_eval(d: &PartList, range: &NRange, method: Method, format: Format) -> rpf_core::Result<Status> {
    let counts: Vec<String> = match method {
        Method::Oracle => {
            let table = count_dp(d, range.end() as usize);
            range.iter().map(|n| table.get(n as i64).to_string()).collect()
        }
        m => {
            let q = certificate(d, m)?;
            range
                .iter()
                .map(|n| q.count(n as i64).map(|c| c.to_string()))
                .collect::<rpf_core::Result<_>>()?
        }
    };
    match format {
        Format::Plain => println!("{}", counts.join(" ")),
        Format::Csv => {
            println!("n,count");
            for (n, c) in range.iter().zip(&counts) {
                println!("{n},{c}");
            }
        }
        Format::Json => {
            let rows: Vec<_> = range.iter().zip(&counts).map(|(n, c)| json!({ "n": n, "count": c })).collect();
            let doc = json!({ "parts": d.parts(), "method": method.name(), "counts": rows });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(Status::Ok)
}

fn cmd_cert(d: &PartList, method: Method, period: Option<u64>, format: Format) -> rpf_core::Result<Status> {
    let mut q: QuasiPoly = certificate(d, closed_form(method)?)?;
    if let Some(p) = period {
        q = q.align(p)?;
    }
    match format {
        Format::Json => println!("{}", q.to_json_string()),
        Format::Plain => print!("{q}"),
        Format::Csv => return Err(Error::InvalidInput("certificates are emitted as json or plain".into())),
    }
    Ok(Status::Ok)
}

fn cmd_verify(d: &PartList, config: &VerifyConfig, format: Format) -> rpf_core::Result<Status> {
    let report = verify(d, config);
    match format {
        Format::Json => {
            let mut doc = serde_json::to_value(&report).expect("serializable");
            doc["passed"] = json!(report.passed());
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Plain => {
            print!("{report}");
            println!("{}", if report.passed() { "PASS" } else { "FAIL" });
        }
        Format::Csv => return Err(Error::InvalidInput("verify reports are plain or json".into())),
    }
    Ok(if report.passed() { Status::Ok } else { Status::Failed })
}

/// Median of `reps` timed runs of `f`.
fn median_time<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let out = f();
        times.push(start.elapsed());
        last = Some(out);
    }
    times.sort();
    (times[reps / 2], last.expect("reps > 0"))
}

fn micros(d: Duration) -> String {
    format!("{:.1}", d.as_secs_f64() * 1e6)
}

fn cmd_bench(d: &PartList, n: u64, method: Method, format: Format) -> rpf_core::Result<Status> {
    let (build, q) = median_time(3, || certificate(d, method).expect("closed-form method"));
    let (eval, value) = median_time(101, || q.count(n as i64));
    let value = value?;
    let (eval_small, _) = median_time(101, || q.count(1));
    let (dp, table) = median_time(1, || count_dp(d, n as usize));
    let dp_value = table.get(n as i64);
    let agree = value == dp_value.clone().into();
    let rows = [
        ("certificate_build", build, String::new()),
        ("certificate_eval_n1", eval_small, String::new()),
        ("certificate_eval", eval, value.to_string()),
        ("dp_to_n", dp, dp_value.to_string()),
    ];
    match format {
        Format::Csv => {
            println!("stage,micros,value");
            for (stage, t, v) in &rows {
                println!("{stage},{},{v}", micros(*t));
            }
        }
        Format::Plain => {
            println!("parts {d}  n = {n}  method {method}");
            for (stage, t, v) in &rows {
                println!("{stage:<20} {:>14} us  {v}", micros(*t));
            }
            println!("{:<20} {}", "agreement", if agree { "yes" } else { "NO" });
        }
        Format::Json => {
            let stages: Vec<_> = rows
                .iter()
                .map(|(stage, t, v)| json!({ "stage": stage, "micros": micros(*t), "value": v }))
                .collect();
            let doc = json!({ "parts": d.parts(), "n": n, "method": method.name(), "stages": stages, "agree": agree });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(if agree { Status::Ok } else { Status::Failed })
}

fn cmd_corpus(max_m: usize, max_part: u64, config: &VerifyConfig, format: Format) -> rpf_core::Result<Status> {
    let corpus = verify_corpus(max_m, max_part, config)?;
    match format {
        Format::Json => {
            let mut doc = serde_json::to_value(&corpus).expect("serializable");
            doc["passed"] = json!(corpus.passed());
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Plain => {
            for report in &corpus.reports {
                let cells: Vec<String> = report
                    .outcomes
                    .iter()
                    .map(|o| format!("{}:{}", o.property, if o.passed { "PASS" } else { "FAIL" }))
                    .collect();
                println!("{:<16} {}", report.parts.to_string(), cells.join(" "));
            }
            for report in corpus.failures() {
                print!("{report}");
            }
            let failed = corpus.failures().count();
            println!("{} sets checked, {} failed", corpus.reports.len(), failed);
        }
        Format::Csv => return Err(Error::InvalidInput("corpus reports are plain or json".into())),
    }
    Ok(if corpus.passed() { Status::Ok } else { Status::Failed })
}
