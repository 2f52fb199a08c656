//! `froq` — fuzzy-rough Choquet distances from the command line.
//!
//! Subcommands cover the full pipeline: `measure` dumps attribute-dependency
//! measures, `distmat` computes Choquet distance matrices, `classify` runs
//! k-NN on query files, `eval` runs leave-one-out or k-fold protocols, and
//! `demo` recomputes the bundled worked example against its golden reference
//! tables.
//!
//! Exit codes: 0 success, 1 demo reproduction failure, 2 usage or validation
//! error, 3 computation error.

mod demo;

use clap::{Args, Parser, Subcommand, ValueEnum};
use froq::classifier::{MeasureKind, MeasureScope, VoteRule};
use froq::dataset::CsvSchema;
use froq::measures::MeasureFile;
use froq::{
    audit_monotonicity, distance_matrix, evaluate_kfold, evaluate_loo, fit, AttrSet,
    BaseDistance, ClassifierConfig, Connectives, DecisionSystem, Implicator, PExponent, TNorm,
};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

pub(crate) struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub(crate) fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }

    pub(crate) fn reproduction(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }
}

impl From<froq::Error> for CliError {
    fn from(e: froq::Error) -> CliError {
        CliError { code: if e.is_validation() { 2 } else { 3 }, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError { code: 2, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "froq", version, about = "Fuzzy-rough Choquet distances for classification")]
struct Cli {
    /// Worker threads for parallel sections (overrides FROQ_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute attribute-dependency measure values for subsets.
    Measure(MeasureCmd),
    /// Compute a pairwise Choquet distance matrix.
    Distmat(DistmatCmd),
    /// Classify query instances with k-nearest neighbours.
    Classify(ClassifyCmd),
    /// Evaluate the classifier with leave-one-out or k-fold protocols.
    Eval(EvalCmd),
    /// Recompute the bundled worked example and compare with its reference
    /// tables.
    Demo(DemoCmd),
}

#[derive(Args)]
struct InputArgs {
    /// Input dataset (delimiter-separated text with a header row).
    #[arg(long)]
    input: PathBuf,

    /// Field delimiter.
    #[arg(long, default_value = ",")]
    delimiter: char,

    /// Decision column name; the last column when omitted.
    #[arg(long)]
    label: Option<String>,

    /// Assert the data is already in [0,1] instead of min-max normalizing.
    #[arg(long)]
    no_normalize: bool,
}

impl InputArgs {
    fn schema(&self) -> CliResult<CsvSchema> {
        if !self.delimiter.is_ascii() {
            return Err(CliError::usage("delimiter must be a single ASCII character"));
        }
        Ok(CsvSchema { delimiter: self.delimiter as u8, label_column: self.label.clone() })
    }

    fn load(&self) -> CliResult<Arc<DecisionSystem>> {
        let ds = froq::load_decision_system_path(&self.input, &self.schema()?)?;
        Ok(Arc::new(ds))
    }

    /// Load and bring into [0,1] the way the classifier would at fit time.
    fn load_prepared(&self) -> CliResult<Arc<DecisionSystem>> {
        let ds = self.load()?;
        if self.no_normalize {
            ds.ensure_unit_range()?;
            Ok(ds)
        } else {
            let (norm, _) = ds.normalize_min_max();
            Ok(Arc::new(norm))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "gamma-d")]
    GammaD,
    #[value(name = "delta-d")]
    DeltaD,
    #[value(name = "gamma-pos")]
    GammaPos,
    #[value(name = "delta-pos")]
    DeltaPos,
    Counting,
    Additive,
    Explicit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaseArg {
    Manhattan,
    Minkowski,
    #[value(name = "negated-sim")]
    NegatedSim,
}

#[derive(Args)]
struct MeasureArgs {
    /// Measure kind.
    #[arg(long, value_enum, default_value = "gamma-d")]
    kind: KindArg,

    /// Base distance family for gamma-d / delta-d.
    #[arg(long, value_enum, default_value = "manhattan")]
    base: BaseArg,

    /// Exponent q of the minkowski base distance.
    #[arg(long, default_value_t = 1)]
    q: u32,

    /// Use the normalized counting measure |B| / n.
    #[arg(long)]
    normalized: bool,

    /// Comma-separated attribute weights for the additive measure.
    #[arg(long)]
    weights: Option<String>,

    /// Explicit measure file (JSON).
    #[arg(long)]
    measure_file: Option<PathBuf>,

    /// T-norm for similarity relations.
    #[arg(long, default_value = "min")]
    tnorm: String,

    /// Implicator for approximations and negators.
    #[arg(long, default_value = "luk")]
    implicator: String,
}

impl MeasureArgs {
    fn connectives(&self) -> CliResult<Connectives> {
        let t_norm: TNorm = self.tnorm.parse()?;
        let implicator: Implicator = self.implicator.parse()?;
        Ok(Connectives { t_norm, implicator })
    }

    fn base_distance(&self) -> CliResult<BaseDistance> {
        Ok(match self.base {
            BaseArg::Manhattan => BaseDistance::manhattan(),
            BaseArg::Minkowski => BaseDistance::MinkowskiSum { q: self.q },
            BaseArg::NegatedSim => BaseDistance::NegatedSimilarity(self.connectives()?),
        })
    }

    fn kind(&self) -> CliResult<MeasureKind> {
        Ok(match self.kind {
            KindArg::GammaD => MeasureKind::GammaDistance,
            KindArg::DeltaD => MeasureKind::DeltaDistance,
            KindArg::GammaPos => MeasureKind::GammaPositive,
            KindArg::DeltaPos => MeasureKind::DeltaPositive,
            KindArg::Counting => MeasureKind::Counting { normalized: self.normalized },
            KindArg::Additive => {
                let raw = self.weights.as_ref().ok_or_else(|| {
                    CliError::usage("--kind additive requires --weights w1,w2,...")
                })?;
                let weights = raw
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<Result<Vec<f64>, _>>()
                    .map_err(|_| CliError::usage(format!("cannot parse weights '{raw}'")))?;
                MeasureKind::Additive { weights }
            }
            KindArg::Explicit => {
                let path = self.measure_file.as_ref().ok_or_else(|| {
                    CliError::usage("--kind explicit requires --measure-file <path>")
                })?;
                let text = std::fs::read_to_string(path)?;
                MeasureKind::Explicit(MeasureFile::from_json(&text)?)
            }
        })
    }

    fn classifier_config(&self) -> CliResult<ClassifierConfig> {
        Ok(ClassifierConfig {
            measure: self.kind()?,
            base: self.base_distance()?,
            connectives: self.connectives()?,
            ..ClassifierConfig::default()
        })
    }
}

#[derive(Args)]
struct MeasureCmd {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    measure: MeasureArgs,

    /// Semicolon-separated subsets of comma-separated attribute names,
    /// e.g. "a1;a2,a3". The token "empty" names the empty set.
    #[arg(long)]
    subsets: Option<String>,

    /// Dump all 2^n subsets (n <= 20).
    #[arg(long)]
    all: bool,

    /// Append a monotonicity audit to the output.
    #[arg(long)]
    audit: bool,

    /// Write output here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DistmatCmd {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    measure: MeasureArgs,

    /// Choquet exponent: a positive integer, inf or -inf.
    #[arg(long, default_value = "1")]
    p: String,

    /// Output format.
    #[arg(long, default_value = "csv")]
    format: String,

    /// Round values to this many decimals for display.
    #[arg(long)]
    round: Option<usize>,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyCmd {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    measure: MeasureArgs,

    /// Query instances: delimiter-separated text with a header row naming
    /// the training attributes.
    #[arg(long)]
    queries: PathBuf,

    #[arg(long, default_value_t = 1)]
    k: usize,

    #[arg(long, default_value = "1")]
    p: String,

    /// Vote rule: majority or weighted.
    #[arg(long, default_value = "majority")]
    vote: String,

    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalCmd {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    measure: MeasureArgs,

    /// Leave-one-out evaluation.
    #[arg(long, conflicts_with = "kfold")]
    loo: bool,

    /// Stratified k-fold evaluation with this many folds.
    #[arg(long)]
    kfold: Option<usize>,

    /// Shuffle seed for k-fold splits.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    #[arg(long, default_value_t = 1)]
    k: usize,

    #[arg(long, default_value = "1")]
    p: String,

    #[arg(long, default_value = "majority")]
    vote: String,

    /// Fit the measure per fold (no label leakage) or once globally.
    #[arg(long, default_value = "fold")]
    measure_scope: String,

    /// Attach tabulated per-fold measures to the report.
    #[arg(long)]
    dump_measures: bool,

    #[arg(long)]
    json: bool,

    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DemoCmd {
    /// Emit a machine-readable comparison.
    #[arg(long)]
    json: bool,

    /// Fail on the known asymmetric reference cell too.
    #[arg(long)]
    strict: bool,
}

fn parse_vote(s: &str) -> CliResult<VoteRule> {
    match s {
        "majority" => Ok(VoteRule::Majority),
        "weighted" | "distance-weighted" => Ok(VoteRule::DistanceWeighted),
        other => Err(CliError::usage(format!("unknown vote rule '{other}'"))),
    }
}

fn parse_scope(s: &str) -> CliResult<MeasureScope> {
    match s {
        "fold" | "per-fold" => Ok(MeasureScope::PerFold),
        "global" => Ok(MeasureScope::Global),
        other => Err(CliError::usage(format!("unknown measure scope '{other}'"))),
    }
}

/// Canonical JSON: route through a Value so object keys are sorted.
pub(crate) fn to_canonical_json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    let v = serde_json::to_value(value).map_err(froq::Error::from)?;
    Ok(format!("{:#}", v))
}

fn emit(text: &str, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                f.write_all(b"\n")?;
            }
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_subsets(spec: &str, names: &[String]) -> CliResult<Vec<AttrSet>> {
    spec.split(';')
        .filter(|tok| !tok.trim().is_empty())
        .map(|tok| {
            let tok = tok.trim();
            if tok == "empty" || tok == "{}" {
                return Ok(AttrSet::EMPTY);
            }
            let mut s = AttrSet::EMPTY;
            for name in tok.split(',') {
                let name = name.trim();
                let idx = names.iter().position(|n| n == name).ok_or_else(|| {
                    CliError::usage(format!("unknown attribute '{name}' in --subsets"))
                })?;
                s = s.with(idx);
            }
            Ok(s)
        })
        .collect()
}

fn cmd_measure(cmd: MeasureCmd) -> CliResult<()> {
    let ds = cmd.input.load_prepared()?;
    let cfg = cmd.measure.classifier_config()?;
    let model = fit(&ds, &ClassifierConfig { normalize: false, ..cfg })?;
    let measure = model.measure();

    let subsets: Vec<AttrSet> = if cmd.all {
        if ds.n_attributes() > froq::measures::TABULATION_LIMIT {
            return Err(CliError::usage(format!(
                "--all needs at most {} attributes",
                froq::measures::TABULATION_LIMIT
            )));
        }
        AttrSet::powerset(ds.n_attributes()).collect()
    } else {
        let spec = cmd.subsets.as_ref().ok_or_else(|| {
            CliError::usage("pass --subsets \"a1;a2,a3\" or --all")
        })?;
        parse_subsets(spec, ds.attribute_names())?
    };

    let mut entries = Vec::with_capacity(subsets.len());
    for s in subsets {
        entries.push(froq::measures::MeasureEntry {
            subset: s.iter().map(|a| ds.attribute_names()[a].clone()).collect(),
            value: measure.value(s)?,
        });
    }
    let file = MeasureFile {
        attributes: ds.attribute_names().to_vec(),
        entries,
        default: None,
    };

    let text = if cmd.audit {
        let violations = audit_monotonicity(measure)?;
        let audit = serde_json::json!({
            "violations": violations
                .iter()
                .map(|(sub, sup)| serde_json::json!({
                    "subset": sub.iter().map(|a| ds.attribute_names()[a].clone()).collect::<Vec<_>>(),
                    "superset": sup.iter().map(|a| ds.attribute_names()[a].clone()).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
            "monotone": violations.is_empty(),
        });
        to_canonical_json(&serde_json::json!({ "measure": file, "audit": audit }))?
    } else {
        to_canonical_json(&file)?
    };
    emit(&text, cmd.output.as_ref())
}

fn cmd_distmat(cmd: DistmatCmd) -> CliResult<()> {
    let ds = cmd.input.load_prepared()?;
    let cfg = cmd.measure.classifier_config()?;
    let model = fit(&ds, &ClassifierConfig { normalize: false, ..cfg })?;
    let p: PExponent = cmd.p.parse()?;
    let dm = distance_matrix(&ds, model.measure(), p)?;
    match cmd.format.as_str() {
        "csv" => {
            let mut buf = Vec::new();
            dm.to_csv(&mut buf, cmd.round).map_err(CliError::from)?;
            let text = String::from_utf8(buf)
                .map_err(|e| CliError::usage(e.to_string()))?;
            emit(text.trim_end(), cmd.output.as_ref())
        }
        "json" => {
            let text = to_canonical_json(&dm.to_json_value(cmd.round))?;
            emit(&text, cmd.output.as_ref())
        }
        other => Err(CliError::usage(format!("unknown format '{other}' (csv or json)"))),
    }
}

fn load_queries(path: &PathBuf, delimiter: u8, names: &[String]) -> CliResult<Vec<Vec<f64>>> {
    let file = std::fs::File::open(path)?;
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(file);
    let headers: Vec<String> =
        rdr.headers().map_err(froq::Error::from)?.iter().map(|h| h.to_string()).collect();
    let columns: Vec<usize> = names
        .iter()
        .map(|n| {
            headers.iter().position(|h| h == n).ok_or_else(|| {
                CliError::usage(format!(
                    "query file is missing attribute column '{n}' (has {headers:?})"
                ))
            })
        })
        .collect::<CliResult<Vec<usize>>>()?;
    let mut rows = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record.map_err(froq::Error::from)?;
        let mut row = Vec::with_capacity(columns.len());
        for (&c, name) in columns.iter().zip(names) {
            let field = record.get(c).unwrap_or("");
            let v: f64 = field.parse().map_err(|_| {
                CliError::usage(format!(
                    "cannot parse '{field}' as a number at query row {}, column '{name}'",
                    r + 1
                ))
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::usage("query file contains no instances"));
    }
    Ok(rows)
}

fn cmd_classify(cmd: ClassifyCmd) -> CliResult<()> {
    let ds = cmd.input.load()?;
    let mut cfg = cmd.measure.classifier_config()?;
    cfg.p = cmd.p.parse()?;
    cfg.k = cmd.k;
    cfg.vote = parse_vote(&cmd.vote)?;
    cfg.normalize = !cmd.input.no_normalize;
    let model = fit(&ds, &cfg)?;
    let queries = load_queries(&cmd.queries, cmd.input.schema()?.delimiter, ds.attribute_names())?;
    let predictions = model.predict(&queries, cmd.k)?;

    let report = serde_json::json!({
        "k": cmd.k,
        "p": cmd.p,
        "predictions": predictions,
    });
    let json = to_canonical_json(&report)?;
    if let Some(path) = &cmd.output {
        emit(&json, Some(path))?;
    }
    if cmd.json {
        println!("{json}");
    } else {
        for (i, pred) in predictions.iter().enumerate() {
            let nbrs: Vec<String> = pred
                .neighbours
                .iter()
                .map(|n| format!("{} (label {}, d={:.6})", n.id, n.label, n.distance))
                .collect();
            let clamp_note = if pred.clamped > 0 {
                format!(" [warning: {} value(s) clamped to [0,1]]", pred.clamped)
            } else {
                String::new()
            };
            println!("query {}: label {}{} via {}", i + 1, pred.label, clamp_note, nbrs.join(", "));
        }
    }
    Ok(())
}

fn cmd_eval(cmd: EvalCmd) -> CliResult<()> {
    let ds = cmd.input.load()?;
    let mut cfg = cmd.measure.classifier_config()?;
    cfg.p = cmd.p.parse()?;
    cfg.k = cmd.k;
    cfg.vote = parse_vote(&cmd.vote)?;
    cfg.normalize = !cmd.input.no_normalize;
    cfg.measure_scope = parse_scope(&cmd.measure_scope)?;
    cfg.dump_fold_measures = cmd.dump_measures;

    let report = if cmd.loo {
        evaluate_loo(&ds, &cfg)?
    } else if let Some(folds) = cmd.kfold {
        evaluate_kfold(&ds, &cfg, folds, cmd.seed)?
    } else {
        return Err(CliError::usage("pass --loo or --kfold N"));
    };

    let json = to_canonical_json(&report)?;
    if let Some(path) = &cmd.output {
        emit(&json, Some(path))?;
    }
    if cmd.json {
        println!("{json}");
    } else {
        println!(
            "accuracy {:.4} ({}/{} correct, {} folds)",
            report.accuracy, report.correct, report.evaluated, report.folds
        );
        for o in &report.outcomes {
            let nearest = o
                .neighbours
                .first()
                .map(|n| format!("{} at {:.6}", n.id, n.distance))
                .unwrap_or_default();
            println!(
                "  {}: true {} predicted {} ({}) via {}",
                o.id,
                o.true_label,
                o.predicted_label,
                if o.correct { "ok" } else { "miss" },
                nearest
            );
        }
        for e in &report.fold_errors {
            println!("  fold {} skipped ({}): {}", e.fold, e.instances.join(","), e.message);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // die quietly when a pipe consumer closes early instead of panicking
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let cli = Cli::parse();

    let threads = cli.threads.or_else(|| {
        std::env::var("FROQ_THREADS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }

    let result = match cli.command {
        Command::Measure(cmd) => cmd_measure(cmd),
        Command::Distmat(cmd) => cmd_distmat(cmd),
        Command::Classify(cmd) => cmd_classify(cmd),
        Command::Eval(cmd) => cmd_eval(cmd),
        Command::Demo(cmd) => demo::run(cmd.json, cmd.strict),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !e.message.is_empty() {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
