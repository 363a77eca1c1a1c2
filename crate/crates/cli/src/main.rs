use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vinesieve::analysis::profile;
use vinesieve::numeric::perron::perron_eigenpair;
use vinesieve::report;
use vinesieve::survey::{
    canonical_vines, cross_check, parse_vine_list, run_survey, tables_agree, Check, SurveyConfig, SurveyResult,
    DEFAULT_CACHE_DIR, DEFAULT_PRECISION,
};
use vinesieve::{Bigraph, Error};

#[derive(Parser)]
#[command(name = "vinesieve", version, about = "Screens vines and their translates for unitary realizability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Effective constants of one vine.
    Analyze(AnalyzeArgs),
    /// Profile and screen every vine of a list.
    Survey(SurveyArgs),
    /// Regenerate the reference tables from the canonical vine list.
    Tables(TablesArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Encoded vine, e.g. gbg1v1v1p1p1.
    graph: String,
    #[arg(long, group = "fmt")]
    json: bool,
    #[arg(long, group = "fmt")]
    csv: bool,
    #[arg(long, group = "fmt")]
    md: bool,
    /// Decimal digits for the norm of the vine itself.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    #[value(alias = "md")]
    Markdown,
}

#[derive(Args)]
struct Common {
    /// Threads used for vine-level parallelism.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Directory holding one cached JSON document per vine.
    #[arg(long, env = "VINESIEVE_CACHE", default_value = DEFAULT_CACHE_DIR)]
    cache_dir: PathBuf,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args)]
struct SurveyArgs {
    /// File with one vine per line, optionally preceded by a label.
    #[arg(long)]
    vines: PathBuf,
    #[arg(long, default_value_t = 200)]
    prime_bound: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

fn config(common: &Common, prime_bound: u64) -> SurveyConfig {
    SurveyConfig {
        prime_bound,
        precision: common.precision,
        cache_dir: (!common.no_cache).then(|| common.cache_dir.clone()),
        jobs: common.jobs,
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<ExitCode> {
    if args.precision < 64 {
        bail!("precision must be at least 64 digits");
    }
    let g = Bigraph::parse(&args.graph).with_context(|| format!("cannot parse {:?}", args.graph))?;
    let p = match profile(&g) {
        Ok(p) => p,
        Err(Error::Rejected(msg)) => {
            eprintln!("rejected: {msg}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.into()),
    };
    let pair = perron_eigenpair(&g.adjacency_matrix(), args.precision)?;
    let norm = pair.norm_squared().to_decimal(args.precision as usize);
    let extra = [("norm_squared", norm.clone())];
    let out = if args.json {
        let mut v = serde_json::to_value(&p)?;
        v["norm_squared"] = norm.into();
        v["precision"] = args.precision.into();
        serde_json::to_string_pretty(&v)? + "\n"
    } else if args.csv {
        report::profile_csv(&p, &extra)?
    } else if args.md {
        report::profile_markdown(&p, &extra)
    } else {
        report::profile_text(&p, &extra)
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn print_checks(checks: &[Check]) {
    for c in checks {
        if !c.passed {
            eprintln!("{}: {} ({})", if c.table { "MISMATCH" } else { "note" }, c.name, c.detail);
        }
    }
    let failed = checks.iter().filter(|c| c.table && !c.passed).count();
    let tables = checks.iter().filter(|c| c.table).count();
    if tables > 0 {
        eprintln!("{} of {tables} table checks agree", tables - failed);
    }
}

fn write(dir: &Path, name: &str, body: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))
}

fn render(result: &SurveyResult, checks: &[Check], format: Format) -> Result<(&'static str, String)> {
    Ok(match format {
        Format::Json => ("survey.json", serde_json::to_string_pretty(result)? + "\n"),
        Format::Csv => ("survey.csv", report::table_a_csv(result)?),
        Format::Markdown => ("survey.md", report::survey_markdown(result, checks)),
    })
}

fn survey(args: &SurveyArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.vines).with_context(|| format!("reading {}", args.vines.display()))?;
    let vines = parse_vine_list(&text);
    let result = run_survey(&vines, &config(&args.common, args.prime_bound))?;
    let checks = cross_check(&result);
    fs::create_dir_all(&args.out)?;
    let (name, body) = render(&result, &checks, args.format)?;
    write(&args.out, name, &body)?;
    eprintln!(
        "{} vines, {} cyclotomic survivors, {} survivors; wrote {}",
        result.vines.len(),
        result.cyclotomic_survivors,
        result.survivors.len(),
        args.out.join(name).display()
    );
    print_checks(&checks);
    Ok(if tables_agree(&checks) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn tables(args: &TablesArgs) -> Result<ExitCode> {
    let result = run_survey(&canonical_vines(), &config(&args.common, 200))?;
    let checks = cross_check(&result);
    fs::create_dir_all(&args.out)?;
    write(&args.out, "survey.json", &(serde_json::to_string_pretty(&result)? + "\n"))?;
    write(&args.out, "table_a.csv", &report::table_a_csv(&result)?)?;
    write(&args.out, "table_a.md", &report::table_a_markdown(&result))?;
    write(&args.out, "table_b.md", &report::table_b_markdown(&result))?;
    write(&args.out, "table_c.md", &report::table_c_markdown(&result))?;
    write(&args.out, "non_integral.md", &report::non_integral_markdown(&result))?;
    write(&args.out, "survivors.md", &report::survivors_markdown(&result))?;
    write(&args.out, "checks.md", &report::checks_markdown(&checks))?;
    eprintln!("wrote tables to {}", args.out.display());
    print_checks(&checks);
    Ok(if tables_agree(&checks) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Survey(a) => survey(a),
        Command::Tables(a) => tables(a),
    };
    run.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
