use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cardshuffle_core::{
    classify_trace, closure, generate_atoms, membership, realizable_counts, tuple_of_categories,
    verify_separations, AtomicOp, DeckSize, Hierarchy, Level, PermSet, SearchConfig, SearchMode,
    Witness,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::corpus::{bundled_corpus, load_corpus, CorpusError};
use crate::records::{
    atom_record, count_record, family_line, render, table1_record, witness_record,
};
use crate::trace::{parse_trace, TraceError};

#[derive(Debug, Parser)]
#[command(
    name = "cardshuffle",
    version,
    about = "Realizability of uniform card shuffles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count realizable sets per level for every deck size up to --max-n.
    Table1 {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        json: bool,
        /// Expand BFS frontiers on all cores.
        #[arg(long)]
        parallel: bool,
    },
    /// List every set realizable at one level.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: u8,
        #[arg(long, value_enum, default_value_t = ModeArg::Uniform)]
        mode: ModeArg,
        #[arg(long)]
        max_depth: Option<usize>,
        /// State budget for distribution mode.
        #[arg(long)]
        max_states: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Also write JSON lines with witnesses to this file.
        #[arg(long)]
        witnesses: Option<PathBuf>,
        /// Print only the number of sets.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Minimal level of a set, with a witness.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// A witness for a set at a given level.
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: u8,
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the level separations that show up on n cards.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, required = true)]
        theorems: bool,
        #[arg(long)]
        json: bool,
    },
    /// Shuffle complexity tuples.
    Complexity {
        #[command(subcommand)]
        command: ComplexityCommand,
    },
    /// List the atomic shuffles of a level.
    DumpAtoms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        level: u8,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ComplexityCommand {
    /// Evaluate every corpus tuple at a parameter value.
    Eval {
        /// Corpus file; defaults to the bundled protocol table.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        json: bool,
    },
    /// Tuple of a trace file.
    ClassifyTrace {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Uniform,
    Distribution,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cardshuffle_core::Error),
    #[error("{}: {source}", path.display())]
    Corpus { path: PathBuf, source: CorpusError },
    #[error("{}: {source}", path.display())]
    Trace { path: PathBuf, source: TraceError },
    #[error("{}: {source}", path.display())]
    File { path: PathBuf, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
    #[error("{0} separation check(s) failed")]
    Verification(usize),
}

const DEFAULT_MAX_STATES: usize = 100_000;

/// Runs one invocation. Returns the process exit code: 0 on success, 1 on
/// domain errors, 2 on usage errors.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match dispatch(&cli.command, out, err) {
        Ok(()) => 0,
        // reader went away (`| head`); nothing left to report to
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Table1 {
            max_n,
            json,
            parallel,
        } => table1(*max_n, *json, *parallel, out),
        Command::Enumerate {
            n,
            level,
            mode,
            max_depth,
            max_states,
            json,
            witnesses,
            count,
            parallel,
        } => {
            let cfg = SearchConfig {
                mode: match mode {
                    ModeArg::Uniform => SearchMode::UniformIntermediate,
                    ModeArg::Distribution => SearchMode::Distribution,
                },
                max_depth: *max_depth,
                max_states: match mode {
                    ModeArg::Uniform => *max_states,
                    ModeArg::Distribution => Some(max_states.unwrap_or(DEFAULT_MAX_STATES)),
                },
                denominator_cap: None,
                parallel: *parallel,
            };
            let opts = EnumerateOpts {
                json: *json,
                witnesses: witnesses.as_deref(),
                count: *count,
            };
            enumerate(deck(*n)?, Level::new(*level)?, &cfg, &opts, out, err)
        }
        Command::Classify { n, set, json } => classify(deck(*n)?, set, *json, out),
        Command::Realize {
            n,
            level,
            set,
            json,
        } => realize(deck(*n)?, Level::new(*level)?, set, *json, out),
        Command::Verify { n, json, .. } => verify(deck(*n)?, *json, out),
        Command::Complexity { command } => match command {
            ComplexityCommand::Eval { corpus, n, json } => eval(corpus.as_deref(), *n, *json, out),
            ComplexityCommand::ClassifyTrace { file, json } => classify_file(file, *json, out),
        },
        Command::DumpAtoms { n, level, json } => {
            for atom in generate_atoms(deck(*n)?, Level::new(*level)?) {
                if *json {
                    writeln!(out, "{}", render(&atom_record(&atom)))?;
                } else {
                    writeln!(out, "{}", atom_line(&atom))?;
                }
            }
            Ok(())
        }
    }
}

fn deck(n: usize) -> Result<DeckSize, CliError> {
    Ok(DeckSize::new(n)?)
}

fn atom_line(atom: &AtomicOp) -> String {
    format!("{atom}  →  {}", atom.outcomes())
}

fn write_witness(w: &Witness, indent: &str, out: &mut dyn Write) -> io::Result<()> {
    for step in w.steps() {
        writeln!(out, "{indent}{}", atom_line(step))?;
    }
    Ok(())
}

fn table1(max_n: usize, json: bool, parallel: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = realizable_counts(deck(max_n)?, parallel)?;
    if json {
        writeln!(out, "{}", render(&table1_record(&rows)))?;
        return Ok(());
    }
    let mut table = vec![[
        "n", "level 0", "level 1", "level 2", "level 3", "level 4", "total",
    ]
    .map(String::from)
    .to_vec()];
    for r in &rows {
        let mut cells = vec![r.n.to_string()];
        cells.extend(r.levels.iter().map(usize::to_string));
        cells.push(r.total.to_string());
        table.push(cells);
    }
    write_table(&table, out)?;
    Ok(())
}

/// Right-aligned columns separated by two spaces.
fn write_table(rows: &[Vec<String>], out: &mut dyn Write) -> io::Result<()> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:>w$}"))
            .collect();
        writeln!(out, "{}", line.join("  "))?;
    }
    Ok(())
}

struct EnumerateOpts<'a> {
    json: bool,
    witnesses: Option<&'a Path>,
    count: bool,
}

fn enumerate(
    n: DeckSize,
    level: Level,
    cfg: &SearchConfig,
    opts: &EnumerateOpts<'_>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let result = closure(n, level, cfg)?;
    if !result.is_complete() {
        writeln!(
            err,
            "note: search bounds reached; the family may be incomplete"
        )?;
    }
    let lines = || {
        result.family().iter().map(|s| {
            let w = result.witness(s).expect("family members have witnesses");
            render(&family_line(s, &w))
        })
    };
    if let Some(path) = opts.witnesses {
        let mut text = String::new();
        for line in lines() {
            text.push_str(&line);
            text.push('\n');
        }
        fs::write(path, text).map_err(|source| CliError::File {
            path: path.to_owned(),
            source,
        })?;
    }
    if opts.count {
        if opts.json {
            writeln!(out, "{}", render(&count_record(n, level, result.len())))?;
        } else {
            writeln!(out, "{}", result.len())?;
        }
    } else if opts.json {
        for line in lines() {
            writeln!(out, "{line}")?;
        }
    } else {
        for s in result.family() {
            writeln!(out, "{s}")?;
        }
    }
    Ok(())
}

fn classify(n: DeckSize, set: &str, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let target = PermSet::parse(set, n)?;
    let found = Hierarchy::new(n)?
        .min_level(&target)
        .map(|(level, w)| (level, w.physical()));
    if json {
        let (level, witness) = match &found {
            Some((l, w)) => (json!(l.value()), witness_record(w)),
            None => (Value::Null, Value::Null),
        };
        let record = json!({ "level": level, "set": target.to_string(), "witness": witness });
        writeln!(out, "{}", render(&record))?;
        return Ok(());
    }
    match found {
        Some((level, w)) => {
            writeln!(out, "{level}")?;
            write_witness(&w, "", out)?;
        }
        None => writeln!(out, "beyond level 4")?,
    }
    Ok(())
}

fn realize(
    n: DeckSize,
    level: Level,
    set: &str,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let target = PermSet::parse(set, n)?;
    let witness = membership(n, level, &target)?.map(|w| w.physical());
    if json {
        let record = json!({
            "level": level.value(),
            "realizable": witness.is_some(),
            "set": target.to_string(),
            "witness": witness.as_ref().map_or(Value::Null, witness_record),
        });
        writeln!(out, "{}", render(&record))?;
        return Ok(());
    }
    match witness {
        Some(w) => write_witness(&w, "", out)?,
        None => writeln!(out, "not realizable")?,
    }
    Ok(())
}

fn verify(n: DeckSize, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let report = verify_separations(n)?;
    let failed = report.checks.iter().filter(|c| !c.passes()).count();
    if json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "absent_at_lower": c.absent_at_lower,
                    "higher": c.higher.value(),
                    "lower": c.lower.value(),
                    "name": c.name,
                    "pass": c.passes(),
                    "replay_ok": c.replay_ok,
                    "target": c.target.to_string(),
                    "witness": c.witness.as_ref().map_or(Value::Null, |w| witness_record(&w.physical())),
                })
            })
            .collect();
        writeln!(
            out,
            "{}",
            render(&json!({ "checks": checks, "n": n.get() }))
        )?;
    } else {
        for c in &report.checks {
            let verdict = if c.passes() { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {} {}", c.name, c.target)?;
            let absent = if c.absent_at_lower {
                "absent"
            } else {
                "present"
            };
            writeln!(out, "  {}: {absent}", c.lower)?;
            match &c.witness {
                Some(w) => {
                    let replay = if c.replay_ok {
                        "replays"
                    } else {
                        "does not replay"
                    };
                    writeln!(out, "  {}: present, witness {replay}", c.higher)?;
                    write_witness(&w.physical(), "    ", out)?;
                }
                None => writeln!(out, "  {}: absent", c.higher)?,
            }
        }
    }
    if failed > 0 {
        return Err(CliError::Verification(failed));
    }
    Ok(())
}

fn eval(corpus: Option<&Path>, n: i64, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let records = match corpus {
        None => bundled_corpus(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::File {
                path: path.to_owned(),
                source,
            })?;
            load_corpus(&text).map_err(|source| CliError::Corpus {
                path: path.to_owned(),
                source,
            })?
        }
    };
    let values = records
        .iter()
        .map(|r| r.tuple.evaluate(n))
        .collect::<Result<Vec<_>, _>>()?;
    if json {
        let protocols: Vec<Value> = records
            .iter()
            .zip(&values)
            .map(|(r, v)| {
                json!({
                    "name": r.name,
                    "parameterized": r.parameterized(),
                    "reference": r.reference,
                    "tuple": r.tuple.to_string(),
                    "value": v,
                })
            })
            .collect();
        writeln!(
            out,
            "{}",
            render(&json!({ "n": n, "protocols": protocols }))
        )?;
        return Ok(());
    }
    let mut rows = Vec::with_capacity(records.len());
    for (r, v) in records.iter().zip(&values) {
        let value: Vec<String> = v.iter().map(u64::to_string).collect();
        rows.push(format!(
            "{}\t{}\t{}\t({})",
            r.name,
            r.reference,
            r.tuple,
            value.join(",")
        ));
    }
    writeln!(out, "protocol\treference\ttuple\tat n = {n}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    Ok(())
}

fn classify_file(path: &Path, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_owned(),
        source,
    })?;
    let trace = parse_trace(&text).map_err(|source| CliError::Trace {
        path: path.to_owned(),
        source,
    })?;
    let categories = classify_trace(&trace)?;
    let tuple = tuple_of_categories(&categories);
    if json {
        let steps: Vec<Value> = trace
            .steps()
            .iter()
            .zip(&categories)
            .map(|(s, c)| json!({ "category": c.name(), "set": s.to_string() }))
            .collect();
        let record = json!({
            "n": trace.deck().get(),
            "steps": steps,
            "tuple": tuple.to_string(),
        });
        writeln!(out, "{}", render(&record))?;
        return Ok(());
    }
    for (s, c) in trace.steps().iter().zip(&categories) {
        writeln!(out, "{s}  {}", c.name())?;
    }
    writeln!(out, "tuple {tuple}")?;
    Ok(())
}
