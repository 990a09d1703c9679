use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use mtc_core::catalog;
use mtc_core::modular_data::ModularError;
use mtc_core::multifusion::block_partition;
use mtc_core::obstruction::{verdict, ObstructionError, SearchConfig, DEFAULT_MAX_MULT, DEFAULT_SEARCH_BUDGET};
use mtc_core::{CategoryFile, ModularData, ObstructionReport, ValidationReport};

const BUDGET_VAR: &str = "MTC_SEARCH_BUDGET";

#[derive(Parser)]
#[command(name = "mtc", version, about = "Gapped-boundary obstructions for modular data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Tolerance for the numeric positivity checks.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tolerance: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every section of a category file.
    Validate { path: PathBuf },
    /// Decide whether the category can have a gapped boundary.
    Verdict {
        path: PathBuf,
        /// Do not highlight candidates passing the fusion inequality.
        #[arg(long)]
        no_fusion_filter: bool,
        /// Per-label multiplicity bound for the candidate search.
        #[arg(long, default_value_t = DEFAULT_MAX_MULT)]
        max_mult: u64,
        /// Use the file's metric group for an exact Lagrangian-subgroup verdict.
        #[arg(long)]
        pointed: bool,
    },
    /// Write the double `C ⊠ reverse(C)` as a category file.
    Double {
        path: PathBuf,
        /// Destination file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Block decomposition of a multifusion ring.
    Decompose { path: PathBuf },
    /// List the built-in fixture corpus.
    Fixtures {
        /// Write every fixture as `<name>.json` into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<ModularError> for Failure {
    fn from(e: ModularError) -> Self {
        match e {
            ModularError::NonModular
            | ModularError::NonIntegralVerlinde { .. }
            | ModularError::GaussIdentityFailure
            | ModularError::NotRootOfUnity => Failure::invalid(e.to_string()),
            _ => Failure::io(e.to_string()),
        }
    }
}

impl From<ObstructionError> for Failure {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::SearchBudgetExceeded(_) => Failure { code: 3, message: e.to_string() },
            ObstructionError::Modular(m) => m.into(),
            ObstructionError::Pointed(_) => Failure::invalid(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<CategoryFile, Failure> {
    CategoryFile::read(path).map_err(|e| Failure::io(e.to_string()))
}

fn emit(format: Format, value: &serde_json::Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("json values serialize")),
        Format::Text => print!("{}", text()),
    }
}

fn checked(file: &CategoryFile, tolerance: f64) -> Result<ValidationReport, Failure> {
    Ok(file.validate(tolerance)?)
}

fn require_valid(file: &CategoryFile, tolerance: f64) -> Result<(), Failure> {
    let report = checked(file, tolerance)?;
    if report.passed() {
        return Ok(());
    }
    Err(Failure::invalid(format!("{} does not validate:\n{report}", file.name)))
}

fn modular(file: &CategoryFile) -> Result<ModularData, Failure> {
    file.modular()?
        .ok_or_else(|| Failure::io(format!("{} has no modular or metric-group section", file.name)))
}

fn budget() -> Result<u64, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::io(format!("{BUDGET_VAR} must be a non-negative integer"))),
        Err(_) => Ok(DEFAULT_SEARCH_BUDGET),
    }
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let file = load(path)?;
    let report = checked(&file, cli.tolerance)?;
    let value = json!({ "name": file.name, "passed": report.passed(), "checks": report.checks });
    emit(cli.format, &value, || {
        format!("{}: {}\n{report}", file.name, if report.passed() { "valid" } else { "INVALID" })
    });
    Ok(if report.passed() { 0 } else { 1 })
}

fn verdict_text(name: &str, r: &ObstructionReport) -> String {
    let tag = serde_json::to_value(&r.verdict).expect("verdicts serialize");
    let mut out = format!("{name}: {}\ncentral charge: {}\n", tag.as_str().unwrap_or_default(), r.central_charge);
    if let Some(subs) = &r.subgroups {
        out += &format!("lagrangian subgroups: {}\n", subs.len());
        for s in subs {
            out += &format!("  {{{}}}\n", s.join(", "));
        }
    } else if !r.candidates.is_empty() {
        out += &format!("candidates: {}\n", r.candidates.len());
        for c in &r.candidates {
            let filtered = r.filtered_candidates.as_ref().is_some_and(|f| f.contains(c));
            out += &format!("  {:?}{}\n", c.n, if filtered { " *" } else { "" });
        }
        if r.filtered_candidates.is_some() {
            out += "  (* passes the fusion inequality)\n";
        }
    }
    out += &format!("exact: {}\n", r.exact);
    for note in &r.notes {
        out += &format!("note: {note}\n");
    }
    for caveat in &r.caveats {
        out += &format!("caveat: {caveat}\n");
    }
    out
}

fn cmd_verdict(cli: &Cli, path: &Path, no_filter: bool, max_mult: u64, pointed: bool) -> Result<u8, Failure> {
    let file = load(path)?;
    require_valid(&file, cli.tolerance)?;
    let md = modular(&file)?;
    let hint = match (pointed, &file.metric_group) {
        (false, _) => None,
        (true, Some(mg)) => Some(mg),
        (true, None) => return Err(Failure::io(format!("{} has no metric_group section for --pointed", file.name))),
    };
    let config = SearchConfig { use_fusion_filter: !no_filter, max_mult, budget: budget()? };
    let report = verdict(&md, hint, &config)?;
    let value = serde_json::to_value(&report).expect("reports serialize");
    emit(cli.format, &value, || verdict_text(&file.name, &report));
    Ok(0)
}

fn cmd_double(cli: &Cli, path: &Path, output: Option<&Path>) -> Result<u8, Failure> {
    let mut file = load(path)?;
    require_valid(&file, cli.tolerance)?;
    file.modular_data = Some(modular(&file)?);
    file.fusion_ring = None;
    let doubled = catalog::doubled(&file);
    let text = doubled.to_json();
    match output {
        Some(out) => std::fs::write(out, &text).map_err(|e| Failure::io(format!("cannot write {}: {e}", out.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_decompose(cli: &Cli, path: &Path) -> Result<u8, Failure> {
    let file = load(path)?;
    let ring = file.ring().ok_or_else(|| Failure::io(format!("{} has no fusion ring", file.name)))?.clone();
    let report = ring.validate();
    if !report.passed() {
        return Err(Failure::invalid(format!("{} does not validate:\n{report}", file.name)));
    }
    let dec = block_partition(&ring).map_err(|e| Failure::invalid(e.to_string()))?;
    let value = dec.to_json().map_err(|e| Failure::invalid(e.to_string()))?;
    emit(cli.format, &value, || {
        let mut out = format!("{}: {} component(s)\n", file.name, dec.components().len());
        for (c, comp) in dec.components().iter().enumerate() {
            out += &format!("component {c}: unit summands {comp:?}\n");
        }
        for x in 0..ring.rank() {
            let (i, j) = dec.block_of(x);
            out += &format!("  {} in block ({i}, {j})\n", ring.label(x));
        }
        for i in 0..dec.unit_count() {
            if let Ok(corner) = dec.corner_ring(i) {
                out += &format!("corner {i}: {}\n", corner.labels().join(", "));
            }
        }
        out
    });
    Ok(0)
}

fn cmd_fixtures(cli: &Cli, export: Option<&Path>) -> Result<u8, Failure> {
    let all = catalog::all();
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).map_err(|e| Failure::io(format!("cannot create {}: {e}", dir.display())))?;
        for f in &all {
            let path = dir.join(format!("{}.json", f.name));
            std::fs::write(&path, f.to_json()).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    let value = json!(all
        .iter()
        .map(|f| json!({ "name": f.name, "provenance": f.provenance }))
        .collect::<Vec<_>>());
    emit(cli.format, &value, || {
        all.iter()
            .map(|f| format!("{:<22} {}\n", f.name, f.provenance.first().map_or("", String::as_str)))
            .collect()
    });
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Validate { path } => cmd_validate(cli, path),
        Command::Verdict { path, no_fusion_filter, max_mult, pointed } => {
            cmd_verdict(cli, path, *no_fusion_filter, *max_mult, *pointed)
        }
        Command::Double { path, output } => cmd_double(cli, path, output.as_deref()),
        Command::Decompose { path } => cmd_decompose(cli, path),
        Command::Fixtures { export } => cmd_fixtures(cli, export.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
