//! `latcensus`: build lattices, count their subuniverses and congruences,
//! classify them, and run exhaustive censuses and verifications.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latcensus::census::verify::{
    con_spectrum, corollary_report, lemma4_report, remark1_report, spectrum, theorem_report,
    REPORT_LIMIT,
};
use latcensus::census::{build_census, canonical_form, write_jsonl, CensusOptions, Report};
use latcensus::congruence::{count_congruences, CONGRUENCE_LIMIT};
use latcensus::structure::{
    classify, cut_elements, find_antichain, isolated_edges, isolated_elements, join_irreducibles,
    meet_irreducibles,
};
use latcensus::subuniverse::{count_subuniverses, enumerate_subuniverses};
use latcensus::{Error, Lattice, LatticeExpr};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(
    name = "latcensus",
    version,
    about = "Subuniverse and congruence counts of finite lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the subuniverses of one lattice.
    Count(Single),
    /// List every subuniverse of one lattice.
    Enumerate(Single),
    /// Place one lattice in the chain / glued B4 / glued N5 / other scheme.
    Classify(Single),
    /// Structural summary of one lattice.
    Info {
        #[command(flatten)]
        single: Single,
        /// Print the lattice in the JSON file format instead.
        #[arg(long)]
        emit_json: bool,
    },
    /// Count the congruences of one lattice.
    ConCount(Single),
    /// Write one JSONL record per isomorphism class of `n`-element lattices.
    Census {
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include congruence counts.
        #[arg(long)]
        with_con: bool,
    },
    /// Distinct counts over all `n`-element lattices, largest first.
    Spectrum {
        #[arg(long)]
        size: usize,
        /// Count congruences instead of subuniverses.
        #[arg(long)]
        con: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustively check an assertion; exits 1 if it fails.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        range: SizeRange,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Expression such as "C2+N5+C3" or "(C2xC3)+C2".
    #[arg(long)]
    expr: Option<String>,
    /// Lattice JSON file: {"n": 4, "covers": [[0,1],[0,2],[1,3],[2,3]]}.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Named lattice: B4, N5, M3, B8, C2xC3, chain:k or Ck.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SizeRange {
    /// Check a single size.
    #[arg(long)]
    size: Option<usize>,
    /// Check every size from 5 up to this one.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Jsonl,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Main,
    Lemma4,
    Corollary,
    Remark1,
}

enum Failure {
    Input(String),
    Verdict(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

impl Source {
    fn load(&self) -> CliResult<Lattice> {
        if let Some(e) = &self.expr {
            return Ok(LatticeExpr::parse(e)?.eval()?);
        }
        if let Some(name) = &self.name {
            return Ok(Lattice::named(name)?);
        }
        let path = self.file.as_ref().expect("clap requires one source");
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Ok(Lattice::from_json(&text)?)
    }
}

/// `count / 2^(n-5)`, the multiple of `2^(n-5)` a count represents.
fn normalized(count: u64, n: usize) -> Option<f64> {
    (n >= 5).then(|| count as f64 / 2f64.powi(n as i32 - 5))
}

fn count_value(l: &Lattice) -> CliResult<Value> {
    let n = l.size();
    let c = count_subuniverses(l)?.value();
    let mut v = json!({ "n": n, "sub_count": c });
    if let Some(q) = normalized(c, n) {
        v["normalized"] = json!(q);
    }
    Ok(v)
}

fn enumerate_value(l: &Lattice) -> CliResult<Value> {
    let sets: Vec<Value> = enumerate_subuniverses(l)?
        .map(|s| json!(s.members().to_vec()))
        .collect();
    Ok(json!({ "n": l.size(), "count": sets.len(), "subuniverses": sets }))
}

/// In `jsonl` and `table` formats only the subuniverses are listed.
fn enumerate_cmd(s: &Single) -> CliResult<()> {
    let l = s.source.load()?;
    let mut v = enumerate_value(&l)?;
    if s.output.format != Format::Json {
        v = v["subuniverses"].take();
    }
    emit(&v, &s.output)
}

fn classify_value(l: &Lattice) -> CliResult<Value> {
    let c = classify(l);
    Ok(json!({
        "n": l.size(),
        "class": c.class,
        "wrapping": c.wrapping,
        "predicted": c.predicted,
        "sub_count": count_subuniverses(l)?.value(),
    }))
}

fn info_value(l: &Lattice) -> CliResult<Value> {
    let n = l.size();
    let mut v = json!({
        "n": n,
        "covers": l.to_file().covers,
        "sub_count": count_subuniverses(l)?.value(),
        "class": classify(l).class,
        "join_irreducibles": join_irreducibles(l).to_vec(),
        "meet_irreducibles": meet_irreducibles(l).to_vec(),
        "cut_elements": cut_elements(l).to_vec(),
        "isolated_elements": isolated_elements(l).to_vec(),
        "isolated_edges": isolated_edges(l),
        "antichain3": find_antichain(l, 3).map(|a| a.to_vec()),
    });
    if let Ok(form) = canonical_form(l) {
        v["canon"] = json!(form.to_string());
    }
    if n <= CONGRUENCE_LIMIT {
        v["con_count"] = json!(count_congruences(l)?);
    }
    Ok(v)
}

fn con_count_value(l: &Lattice) -> CliResult<Value> {
    let n = l.size();
    let c = count_congruences(l)?;
    let mut v = json!({ "n": n, "con_count": c });
    if let Some(q) = normalized(c, n) {
        v["normalized"] = json!(q);
    }
    Ok(v)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Objects become `key  value` lines; arrays of objects become a
/// tab-separated table with a header row; arrays of scalars one per line.
fn table(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, x) in map {
                out += &format!("{k:width$}  {}\n", cell(x));
            }
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
            out += &keys
                .iter()
                .map(|k| k.as_str())
                .collect::<Vec<_>>()
                .join("\t");
            out.push('\n');
            for r in rows {
                let line: Vec<String> = keys.iter().map(|k| cell(&r[k.as_str()])).collect();
                out += &line.join("\t");
                out.push('\n');
            }
        }
        Value::Array(items) => {
            for x in items {
                out += &cell(x);
                out.push('\n');
            }
        }
        other => {
            out += &cell(other);
            out.push('\n');
        }
    }
    out
}

/// `jsonl` writes arrays one element per line and anything else on one line.
fn jsonl_items(v: &Value) -> Vec<Value> {
    match v {
        Value::Array(items) => items.clone(),
        _ => vec![v.clone()],
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serialisable") + "\n",
        Format::Jsonl => jsonl_items(v)
            .iter()
            .map(|x| x.to_string() + "\n")
            .collect(),
        Format::Table => table(v),
    }
}

fn open(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).map_err(|e| {
                Failure::Input(format!("{}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(v: &Value, output: &Output) -> CliResult<()> {
    let mut w = open(&output.out)?;
    w.write_all(render(v, output.format).as_bytes())?;
    w.flush()?;
    Ok(())
}

fn single(s: &Single, f: fn(&Lattice) -> CliResult<Value>) -> CliResult<()> {
    let l = s.source.load()?;
    emit(&f(&l)?, &s.output)
}

fn report_for(theorem: Theorem, n: usize) -> latcensus::Result<Report> {
    match theorem {
        Theorem::Main => theorem_report(n),
        Theorem::Lemma4 => lemma4_report(n),
        Theorem::Corollary => corollary_report(n),
        Theorem::Remark1 => remark1_report(n),
    }
}

fn verify(theorem: Theorem, range: &SizeRange, output: &Output) -> CliResult<()> {
    let sizes: Vec<usize> = match (range.size, range.max_n) {
        (Some(n), _) => vec![n],
        (None, Some(max)) => (5..=max).collect(),
        (None, None) => unreachable!("clap requires one of --size and --max-n"),
    };
    if sizes.is_empty() {
        return Err(Failure::Input(format!(
            "--max-n must be between 5 and {REPORT_LIMIT}"
        )));
    }
    let reports = sizes
        .into_iter()
        .map(|n| report_for(theorem, n))
        .collect::<latcensus::Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let v = match output.format {
        Format::Table => Value::Array(
            reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        json!({ "assertion": r.assertion, "n": r.n, "passed": c.passed, "check": c.name, "detail": c.detail })
                    })
                })
                .collect(),
        ),
        _ if reports.len() == 1 => serde_json::to_value(&reports[0]).expect("serialisable"),
        _ => serde_json::to_value(&reports).expect("serialisable"),
    };
    emit(&v, output)?;
    if passed {
        return Ok(());
    }
    let failures = reports
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.passed).map(move |c| (r, c)))
        .map(|(r, c)| {
            let mut line = format!("{} (n = {}): {}: {}", r.assertion, r.n, c.name, c.detail);
            if let Some(ce) = &c.counterexample {
                line += &format!("; counterexample {ce}");
            }
            line
        })
        .collect();
    Err(Failure::Verdict(failures))
}

fn census(size: usize, output: &Output, jobs: usize, with_con: bool) -> CliResult<()> {
    let records = build_census(
        size,
        CensusOptions {
            jobs,
            with_congruences: with_con,
        },
    )?;
    match output.format {
        Format::Table => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    m.insert("canon".into(), json!(r.canon));
                    m.insert("sub_count".into(), json!(r.sub_count));
                    if let Some(c) = r.con_count {
                        m.insert("con_count".into(), json!(c));
                    }
                    m.insert("class".into(), json!(r.class));
                    m.insert("antichain3".into(), json!(r.antichain3));
                    Value::Object(m)
                })
                .collect();
            emit(&Value::Array(rows), output)?;
        }
        _ => {
            let mut w = open(&output.out)?;
            write_jsonl(&records, &mut w)?;
        }
    }
    if let Some(path) = &output.out {
        eprintln!("{} records written to {}", records.len(), display(path));
    }
    Ok(())
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn spectrum_cmd(size: usize, con: bool, output: &Output) -> CliResult<()> {
    let report = if con {
        con_spectrum(size)?
    } else {
        spectrum(size)?
    };
    let v = match output.format {
        Format::Table => Value::Array(
            report
                .values
                .iter()
                .map(|e| json!({ "value": e.value, "scaled": e.scaled, "witnesses": e.witnesses.len() }))
                .collect(),
        ),
        _ => serde_json::to_value(&report).expect("serialisable"),
    };
    emit(&v, output)
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Count(s) => single(s, count_value),
        Command::Enumerate(s) => enumerate_cmd(s),
        Command::Classify(s) => single(s, classify_value),
        Command::ConCount(s) => single(s, con_count_value),
        Command::Info {
            single: s,
            emit_json,
        } => {
            if *emit_json {
                let l = s.source.load()?;
                let mut w = open(&s.output.out)?;
                writeln!(w, "{}", l.to_json())?;
                w.flush()?;
                Ok(())
            } else {
                single(s, info_value)
            }
        }
        Command::Census {
            size,
            output,
            jobs,
            with_con,
        } => census(*size, output, *jobs, *with_con),
        Command::Spectrum { size, con, output } => spectrum_cmd(*size, *con, output),
        Command::Verify {
            theorem,
            range,
            output,
        } => verify(*theorem, range, output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(lines)) => {
            for line in lines {
                eprintln!("verification failed: {line}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
