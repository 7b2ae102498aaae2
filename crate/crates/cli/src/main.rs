use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use overrank_core::combinat::{nbar_class, nbar_class_series, pbar_series};
use overrank_core::lambert::s_bar;
use overrank_core::rankdiff::{rank_diff_formula, rank_diff_oracle, RankDiffKey};
use overrank_core::registry::{Registry, SuiteOptions};
use overrank_core::{Error, IdentityReport, LaurentSeries};

#[derive(Parser)]
#[command(name = "overrank")]
#[command(about = "Exact q-series verification of overpartition rank-difference identities")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one registered identity
    Verify {
        #[arg(long)]
        id: String,
        /// Truncation order: coefficients of q^0 .. q^(order-1) are compared
        #[arg(long)]
        order: i64,
        #[arg(long)]
        json: bool,
    },
    /// Run every registered identity at its default order
    Suite(SuiteArgs),
    /// Print the coefficients of a named series
    Series {
        /// pbar | nbar:s,m | rankdiff-oracle:KEY | rankdiff-formula:KEY | sbar:b,ell
        #[arg(long)]
        name: String,
        #[arg(long)]
        order: i64,
        #[arg(long)]
        csv: bool,
    },
    /// Tabulate N̄(s, M, n) by enumeration for 0 <= n <= N
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long = "mod")]
        modulus: i64,
    },
    /// List the registry
    List,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 1.0)]
    order_scale: f64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    /// Report runtime_ms as 0 so that repeated runs are byte-identical
    #[arg(long)]
    no_timing: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    let mut out = io::stdout().lock();
    match command {
        Command::Verify { id, order, json } => {
            if order < 1 {
                return Err(Error::InvalidArgument("--order must be positive".into()));
            }
            let report = Registry::standard().verify(&id, order)?;
            if json {
                writeln!(out, "{}", to_json(&report)).ok();
            } else {
                write_human(&mut out, &report);
            }
            Ok(status(report.pass))
        }
        Command::Suite(args) => {
            if args.order_scale.is_nan() || args.order_scale <= 0.0 {
                return Err(Error::InvalidArgument("--order-scale must be positive".into()));
            }
            let registry = Registry::standard();
            let reports = registry.run_suite(SuiteOptions {
                order_scale: args.order_scale,
                jobs: args.jobs,
                timing: !args.no_timing,
            });
            if args.json {
                let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
                writeln!(out, "{text}").ok();
            } else if args.csv {
                writeln!(out, "id,pass,checked_order,mismatch_exp,lhs,rhs,runtime_ms").ok();
                for r in &reports {
                    let (exp, lhs, rhs) = match &r.first_mismatch {
                        Some(m) => (m.exp.to_string(), m.lhs.clone(), m.rhs.clone()),
                        None => Default::default(),
                    };
                    writeln!(
                        out,
                        "{},{},{},{exp},{lhs},{rhs},{}",
                        csv_field(&r.id),
                        r.pass,
                        r.checked_order,
                        r.runtime_ms
                    )
                    .ok();
                }
            } else {
                for r in &reports {
                    let verdict = if r.pass { "PASS" } else { "FAIL" };
                    let at = r
                        .mismatch_exp()
                        .map(|e| format!("  first mismatch at q^{e}"))
                        .unwrap_or_default();
                    writeln!(
                        out,
                        "{verdict}  {:<44} order {:>4}  {:>6} ms{at}",
                        r.id, r.checked_order, r.runtime_ms
                    )
                    .ok();
                }
                let failed = reports.iter().filter(|r| !r.pass).count();
                writeln!(
                    out,
                    "{} identities, {} failed (seed {})",
                    reports.len(),
                    failed,
                    registry.seed()
                )
                .ok();
            }
            Ok(status(reports.iter().all(|r| r.pass)))
        }
        Command::Series { name, order, csv } => {
            let series = named_series(&name, order)?;
            if csv {
                writeln!(out, "exponent,numerator,denominator").ok();
            }
            for e in series.min_exp().min(0)..order {
                let c = series.coeff(e)?;
                if csv {
                    writeln!(out, "{e},{},{}", c.numer(), c.denom()).ok();
                } else {
                    writeln!(out, "{e:>6}  {}/{}", c.numer(), c.denom()).ok();
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { n, modulus } => {
            if modulus < 1 {
                return Err(Error::InvalidArgument("--mod must be positive".into()));
            }
            let header: Vec<String> = (0..modulus).map(|s| format!("s={s}")).collect();
            writeln!(out, "n,{}", header.join(",")).ok();
            for k in 0..=n {
                let row = (0..modulus)
                    .map(|s| nbar_class(s, modulus, k).map(|c| c.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
                writeln!(out, "{k},{}", row.join(",")).ok();
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::List => {
            for e in Registry::standard().entries() {
                writeln!(
                    out,
                    "{:<44} {:<12} {:>4}  {}",
                    e.id,
                    e.tier.to_string(),
                    e.default_order,
                    e.paper_anchor
                )
                .ok();
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn to_json(report: &IdentityReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn write_human(out: &mut impl Write, r: &IdentityReport) {
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "{verdict} {} (order {}, {} ms)",
        r.id, r.checked_order, r.runtime_ms
    )
    .ok();
    if let Some(m) = &r.first_mismatch {
        writeln!(out, "  first mismatch at q^{}: lhs {} rhs {}", m.exp, m.lhs, m.rhs).ok();
    }
    for note in &r.notes {
        writeln!(out, "  note: {note}").ok();
    }
}

fn pair(text: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::InvalidArgument(format!("expected two integers `a,b`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn named_series(name: &str, order: i64) -> Result<LaurentSeries, Error> {
    if order < 1 {
        return Err(Error::InvalidArgument("--order must be positive".into()));
    }
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    match kind {
        "pbar" if arg.is_empty() => pbar_series(order),
        "nbar" => {
            let (s, m) = pair(arg)?;
            nbar_class_series(s, m, order)
        }
        "rankdiff-oracle" => rank_diff_oracle(RankDiffKey::parse(arg)?, order),
        "rankdiff-formula" => rank_diff_formula(RankDiffKey::parse(arg)?, order),
        "sbar" => {
            let (b, ell) = pair(arg)?;
            s_bar(b, ell, order)
        }
        _ => Err(Error::InvalidArgument(format!("unknown series name `{name}`"))),
    }
}
