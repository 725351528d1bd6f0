mod cells;
mod codec;
mod error;
mod job;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coxhecke::cartan::TypeLetter;
use coxhecke::coxgroup::CoxeterGroup;
use coxhecke::klbase::KlTable;
use coxhecke::leading::{analyze_with, LeadingAnalysis};
use coxhecke::ring::WeightFunction;
use serde_json::{json, Value};

use crate::cells::{cells_to_json, compute_cells};
use crate::codec::{laurent_to_json, word_to_json};
use crate::error::{CliError, EXIT_VIOLATION};
use crate::job::{read_json, Format, JobArgs};

#[derive(Debug, Parser)]
#[command(name = "coxhecke", version, about = "Kazhdan-Lusztig cells and leading coefficients for finite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank, number of reflections, order, degrees, type and class count
    Group(JobArgs),
    /// Left cells, optionally with their W-graphs
    Cells {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long)]
        wgraphs: bool,
    },
    /// The P*-polynomials of one element, i.e. its C'-basis expansion
    Kl {
        #[command(flatten)]
        job: JobArgs,
        /// Reduced or unreduced word, comma-separated generator indices
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        word: Vec<usize>,
    },
    /// Leading coefficients, D̃ and the table of every left cell
    Leading {
        #[command(flatten)]
        job: JobArgs,
        #[command(flatten)]
        tables: TableFiles,
    },
    /// Checks the positivity and distinguished-element conjectures
    Check {
        #[command(flatten)]
        job: JobArgs,
        #[command(flatten)]
        tables: TableFiles,
    },
}

#[derive(Debug, clap::Args)]
struct TableFiles {
    /// Hecke character table to use instead of solving for one
    #[arg(long, value_name = "FILE")]
    hecke_table: Option<PathBuf>,
    /// Write the Hecke character table in use to this file
    #[arg(long, value_name = "FILE")]
    export_hecke: Option<PathBuf>,
}

/// What a command prints, and whether a conjecture failed.
struct Output {
    json: Value,
    text: String,
    violation: bool,
}

fn group_summary(job: &JobArgs) -> Result<Output, CliError> {
    let g = job.group()?;
    let typedec: Vec<Value> = g
        .typedec()
        .components
        .iter()
        .map(|c| {
            let name = match (c.kind, c.bond) {
                (TypeLetter::U, _) => String::from("U"),
                (TypeLetter::I, Some(m)) => format!("I2({m})"),
                (k, _) => format!("{}{}", k.as_char(), c.rank()),
            };
            json!([name, c.indices])
        })
        .collect();
    // class enumeration needs the elements, so it is skipped above the cap instead of refused
    let classes = if g.is_finite() { g.conjugacy_classes().ok().map(|c| c.len()) } else { None };
    let order = g.order().map(|o| u64::try_from(o).map(Value::from).unwrap_or_else(|_| Value::from(o.to_string())));
    let json = json!({
        "name": g.cartanname(),
        "rank": g.rank(),
        "N": g.num_positive_roots(),
        "order": order,
        "degrees": g.degrees(),
        "typedec": typedec,
        "classes": classes,
    });
    let show = |v: &Value| if v.is_null() { String::from("-") } else { v.to_string() };
    let text = format!(
        "name     {}\nrank     {}\nN        {}\norder    {}\ndegrees  {}\ntypedec  {}\nclasses  {}\n",
        g.cartanname(),
        g.rank(),
        show(&json["N"]),
        show(&json["order"]).trim_matches('"'),
        show(&json["degrees"]),
        show(&json["typedec"]),
        show(&json["classes"]),
    );
    Ok(Output { json, text, violation: false })
}

fn cells_command(job: &JobArgs, wgraphs: bool) -> Result<Output, CliError> {
    let g = job.group()?;
    let l = job.weights(&g)?;
    let cells = compute_cells(job, &g, &l)?;
    let json = cells_to_json(&g, &l, &cells, wgraphs)?;
    let table = g.elements()?;
    let mut text = format!("{} with weights {:?}: {} left cells\n", g.cartanname(), l.as_slice(), cells.len());
    if let Some(n) = json["cells"].as_array().and_then(|c| c.iter().filter_map(|c| c["starClass"].as_u64()).max()) {
        text.push_str(&format!("{} star classes\n", n + 1));
    }
    for (i, c) in cells.iter().enumerate() {
        let words: Vec<String> = c.elements.iter().map(|&w| report::word_text(&table.word(w))).collect();
        text.push_str(&format!("{i:>4} ({}): {}\n", c.len(), words.join(" ")));
    }
    Ok(Output { json, text, violation: false })
}

fn kl_command(job: &JobArgs, word: &[usize]) -> Result<Output, CliError> {
    let g = job.group()?;
    let l = job.weights(&g)?;
    if let Some(&s) = word.iter().find(|&&s| s >= g.rank()) {
        return Err(CliError::Input(format!("generator {s} out of range")));
    }
    let table = g.elements()?;
    let w = table.from_word(word);
    let kl = KlTable::new(&g, &l)?;
    let expansion = kl.cprime_expand(w)?;
    let mut rows = vec![vec![String::from("y"), format!("P*(y, {})", report::word_text(&table.word(w)))]];
    let mut terms = Vec::new();
    for (y, p) in &expansion {
        rows.push(vec![report::word_text(&table.word(*y)), p.to_string()]);
        terms.push(json!({"y": word_to_json(&table.word(*y)), "pstar": laurent_to_json(p)}));
    }
    let text = report::aligned(&rows);
    let json = json!({
        "group": g.cartanname(),
        "weights": l.as_slice(),
        "w": word_to_json(&table.word(w)),
        "expansion": terms,
    });
    Ok(Output { json, text, violation: false })
}

fn analysis(job: &JobArgs, files: &TableFiles) -> Result<(CoxeterGroup, WeightFunction, LeadingAnalysis), CliError> {
    let g = job.group()?;
    let l = job.weights(&g)?;
    let cells = compute_cells(job, &g, &l)?;
    let supplied = match &files.hecke_table {
        Some(path) => Some(report::hecke_from_json(&g, &l, &read_json(path)?)?),
        None => None,
    };
    let an = analyze_with(&g, &l, cells, supplied)?;
    if let Some(path) = &files.export_hecke {
        let text = serde_json::to_string_pretty(&report::hecke_to_json(&g, &an.hecke))?;
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))?;
    }
    Ok((g, l, an))
}

fn leading_command(job: &JobArgs, files: &TableFiles) -> Result<Output, CliError> {
    let (g, l, an) = analysis(job, files)?;
    Ok(Output { json: report::leading_to_json(&g, &l, &an)?, text: report::leading_to_text(&g, &l, &an)?, violation: false })
}

fn check_command(job: &JobArgs, files: &TableFiles) -> Result<Output, CliError> {
    let (g, l, an) = analysis(job, files)?;
    let summary = report::run_checks(&g, &l, &an)?;
    Ok(Output {
        json: report::checks_to_json(&g, &l, &an, &summary),
        text: report::checks_to_text(&g, &l, &an, &summary),
        violation: !summary.passed(),
    })
}

fn run(cli: &Cli) -> Result<(Output, Format), CliError> {
    Ok(match &cli.command {
        Command::Group(job) => (group_summary(job)?, job.format),
        Command::Cells { job, wgraphs } => (cells_command(job, *wgraphs)?, job.format),
        Command::Kl { job, word } => (kl_command(job, word)?, job.format),
        Command::Leading { job, tables } => (leading_command(job, tables)?, job.format),
        Command::Check { job, tables } => (check_command(job, tables)?, job.format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, format)) => {
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n",
                Format::Text => out.text,
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            if out.violation {
                ExitCode::from(EXIT_VIOLATION as u8)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("coxhecke: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
