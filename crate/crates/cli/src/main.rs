// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use leafsynth::analysis::{
    expressiveness, standard_cost_functions, transistor_table, two_input_function_name, ExpressivenessReport,
    TransistorReport,
};
use leafsynth::library::canonical_library_name;
use leafsynth::pla::{load_pla, maxterms, minterms};
use leafsynth::rewrite::{encode_cnf, encode_dnf, to_less_form, RewriteStep};
use leafsynth::{
    builtin_library, parse_formula, synthesize_formula, synthesize_table, Bounds, Circuit, CostModel, Error, Formula,
    GateLibrary, TruthTable, BUILTIN_LIBRARIES, MAX_VARS,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "leafsynth", version, about = "Exact synthesis of minimal Leaf-DAG circuits")]
struct Cli {
    /// Print only the essential result.
    #[arg(long, global = true)]
    quiet: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Accepted for compatibility; the search is deterministic.
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    /// Worker threads for exact search.
    #[arg(long, global = true, value_name = "INT", default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a minimal circuit for a function.
    Synth(SynthArgs),
    /// Translate a formula or PLA table to `<` and `1`.
    Rewrite(RewriteArgs),
    /// Gate totals over all 2-input functions, per library.
    CompareLibs(CompareArgs),
    /// Transistor counts of small circuits under `(<,1)` and NAND.
    CostTable(TableArgs),
    /// Print the truth table of a formula.
    Eval(EvalArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["spec", "formula", "pla"])))]
struct SynthArgs {
    /// Truth table such as n=2:0x6 or 0b0110.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    pla: Option<PathBuf>,
    /// Built-in library name or library file.
    #[arg(long, default_value = "less,1")]
    library: String,
    #[arg(long, value_enum, default_value_t = CostArg::Gates)]
    cost: CostArg,
    #[arg(long, value_name = "INT", default_value_t = leafsynth::synth::DEFAULT_MAX_GATES)]
    max_gates: usize,
    #[arg(long, value_name = "INT")]
    max_depth: Option<usize>,
    #[arg(long, value_name = "SECS")]
    timeout: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostArg {
    Gates,
    Transistors,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["formula", "pla"])))]
struct RewriteArgs {
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    pla: Option<PathBuf>,
    /// Normal form built from a PLA table.
    #[arg(long, value_enum, default_value_t = Form::Dnf, requires = "pla")]
    form: Form,
    /// Show every rewrite step.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Dnf,
    Cnf,
}

#[derive(Args)]
struct CompareArgs {
    /// Library name or file; repeat for several. Defaults to all built-ins.
    #[arg(long)]
    library: Vec<String>,
    #[arg(long)]
    markdown: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    markdown: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    formula: String,
    /// Table width; defaults to the highest variable used.
    #[arg(long, value_name = "INT")]
    vars: Option<usize>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotFound { .. } => 2,
        Error::Timeout(_) => 3,
        Error::Capacity(_) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    match &cli.command {
        Command::Synth(args) => synth(cli, args),
        Command::Rewrite(args) => rewrite(cli, args),
        Command::CompareLibs(args) => compare(cli, args),
        Command::CostTable(args) => cost_table(cli, args),
        Command::Eval(args) => eval(cli, args),
    }
}

fn load_library(name: &str) -> Result<GateLibrary, Error> {
    if canonical_library_name(name).is_none() && Path::new(name).is_file() {
        return GateLibrary::load(Path::new(name));
    }
    builtin_library(name)
}

fn table_text(t: TruthTable) -> String {
    format!("n={}:{}", t.num_vars(), t.to_binary_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

#[derive(Serialize)]
struct SynthOutput {
    formula: String,
    gates: usize,
    cost: u64,
    depth: usize,
    exact: bool,
    truth: String,
}

fn synth(cli: &Cli, args: &SynthArgs) -> Result<String, Error> {
    let library = load_library(&args.library)?;
    let cost_model = match args.cost {
        CostArg::Gates => CostModel::GateCount,
        CostArg::Transistors => CostModel::TransistorCount,
    };
    let timeout = match args.timeout {
        Some(s) if !(s.is_finite() && s >= 0.0) => return Err(Error::Usage(format!("invalid timeout {s}"))),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let bounds = Bounds { max_gates: args.max_gates, max_depth: args.max_depth, timeout, threads: cli.threads.max(1) };
    let circuit = if let Some(text) = &args.formula {
        synthesize_formula(text, &library, cost_model, &bounds)?
    } else {
        let spec = match (&args.spec, &args.pla) {
            (Some(s), _) => s.parse::<TruthTable>()?,
            (None, Some(path)) => load_pla(path)?,
            (None, None) => unreachable!("clap requires an input"),
        };
        synthesize_table(spec, &library, cost_model, &bounds)?
    };
    Ok(render_circuit(cli, &circuit))
}

fn render_circuit(cli: &Cli, c: &Circuit) -> String {
    if cli.json {
        return to_json(&SynthOutput {
            formula: c.formula.to_string(),
            gates: c.gate_count,
            cost: c.cost,
            depth: c.depth,
            exact: c.exact,
            truth: table_text(c.truth),
        });
    }
    if cli.quiet {
        return c.formula.to_string();
    }
    let kind = if c.exact { "minimal" } else { "heuristic, search timed out" };
    format!(
        "{}\ngates: {}\ncost: {}\ndepth: {}\ntruth: {}\n({kind})",
        c.formula,
        c.gate_count,
        c.cost,
        c.depth,
        table_text(c.truth)
    )
}

#[derive(Serialize)]
struct StepOutput {
    rule: &'static str,
    before: String,
    after: String,
}

#[derive(Serialize)]
struct RewriteOutput {
    input: String,
    output: String,
    gates: usize,
    ones: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<Vec<StepOutput>>,
}

fn rewrite(cli: &Cli, args: &RewriteArgs) -> Result<String, Error> {
    let (input, output, steps) = match (&args.formula, &args.pla) {
        (Some(text), _) => {
            let trace = to_less_form(&parse_formula(text)?)?;
            (trace.input, trace.output, trace.steps)
        }
        (None, Some(path)) => {
            let table = load_pla(path)?;
            let f = match args.form {
                Form::Dnf => {
                    let terms = minterms(table);
                    if terms.is_empty() { Formula::Const(false) } else { encode_dnf(&terms)? }
                }
                Form::Cnf => {
                    let terms = maxterms(table);
                    if terms.is_empty() { Formula::Const(true) } else { encode_cnf(&terms)? }
                }
            };
            (Formula::Const(false), f, Vec::new())
        }
        (None, None) => unreachable!("clap requires an input"),
    };
    let input_text = if args.formula.is_some() { input.to_string() } else { args.pla.as_ref().unwrap().display().to_string() };
    let stats = output.stats();
    let step_list = |steps: &[RewriteStep]| -> Vec<StepOutput> {
        steps
            .iter()
            .map(|s| StepOutput { rule: s.rule, before: s.before.to_string(), after: s.after.to_string() })
            .collect()
    };
    if cli.json {
        return Ok(to_json(&RewriteOutput {
            input: input_text,
            output: output.to_string(),
            gates: output.gate_count(),
            ones: stats.ones,
            steps: args.trace.then(|| step_list(&steps)),
        }));
    }
    let mut lines = Vec::new();
    if args.trace {
        for s in step_list(&steps) {
            lines.push(format!("{:<12} {}  ->  {}", s.rule, s.before, s.after));
        }
    }
    lines.push(output.to_string());
    if !cli.quiet {
        lines.push(format!("gates: {}, ones: {}", output.gate_count(), stats.ones));
    }
    Ok(lines.join("\n"))
}

#[derive(Serialize)]
struct LibraryOutput {
    library: String,
    counts: Vec<FunctionCount>,
    total: Option<usize>,
    unreachable: Vec<&'static str>,
    non_redundant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_non_redundant: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct FunctionCount {
    function: &'static str,
    gates: Option<usize>,
    circuit: Option<String>,
}

fn discrepancy(r: &ExpressivenessReport) -> Option<String> {
    let reference = r.reference()?;
    let mut notes = Vec::new();
    if r.total != Some(reference.total) {
        let ours = r.total.map_or("undefined".to_owned(), |t| t.to_string());
        notes.push(format!("total {ours} differs from reference {}", reference.total));
    }
    if r.non_redundant != reference.non_redundant {
        notes.push(format!("non-redundant {} differs from reference {}", r.non_redundant, reference.non_redundant));
    }
    (!notes.is_empty()).then(|| notes.join("; "))
}

fn compare(cli: &Cli, args: &CompareArgs) -> Result<String, Error> {
    let names: Vec<String> =
        if args.library.is_empty() { BUILTIN_LIBRARIES.iter().map(|s| s.to_string()).collect() } else { args.library.clone() };
    let mut reports = Vec::new();
    for name in &names {
        reports.push(expressiveness(&load_library(name)?)?);
    }
    if cli.json {
        let out: Vec<LibraryOutput> = reports
            .iter()
            .map(|r| LibraryOutput {
                library: r.library.clone(),
                counts: (0..16u8)
                    .map(|code| FunctionCount {
                        function: two_input_function_name(code),
                        gates: r.counts[code as usize],
                        circuit: r.circuits[code as usize].as_ref().map(|c| c.formula.to_string()),
                    })
                    .collect(),
                total: r.total,
                unreachable: r.unreachable.iter().map(|&c| two_input_function_name(c)).collect(),
                non_redundant: r.non_redundant,
                reference_total: r.reference().map(|p| p.total),
                reference_non_redundant: r.reference().map(|p| p.non_redundant),
                note: discrepancy(r),
            })
            .collect();
        return Ok(to_json(&out));
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let total = |r: &ExpressivenessReport| r.total.map_or("-".to_owned(), |t| t.to_string());
    let mut lines = Vec::new();
    if args.markdown {
        lines.push("| library | total for 16 operators | non-redundant |".to_owned());
        lines.push("|---|---:|:---:|".to_owned());
        for r in &reports {
            lines.push(format!("| {} | {} | {} |", r.library, total(r), yes_no(r.non_redundant)));
        }
    } else {
        let width = reports.iter().map(|r| r.library.len()).max().unwrap_or(7).max(7);
        lines.push(format!("{:<width$}  {:>5}  {:<13}  {:>9}", "library", "total", "non-redundant", "reference"));
        for r in &reports {
            let reference = r.reference().map_or("-".to_owned(), |p| format!("{} {}", p.total, yes_no(p.non_redundant)));
            lines.push(format!("{:<width$}  {:>5}  {:<13}  {:>9}", r.library, total(r), yes_no(r.non_redundant), reference));
        }
    }
    if !cli.quiet {
        for r in &reports {
            if !r.unreachable.is_empty() {
                let names: Vec<_> = r.unreachable.iter().map(|&c| two_input_function_name(c)).collect();
                lines.push(format!("{}: unreachable {}", r.library, names.join(", ")));
            }
            if let Some(note) = discrepancy(r) {
                lines.push(format!("{}: {note}", r.library));
            }
        }
    }
    Ok(lines.join("\n"))
}

#[derive(Serialize)]
struct CostRowOutput {
    function: String,
    less_gates: Vec<usize>,
    less_cost: u64,
    less_circuits: Vec<String>,
    nand_gates: Vec<usize>,
    nand_cost: u64,
    nand_circuits: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn cost_cell(gates: &[usize], cost: u64) -> String {
    let parts: Vec<String> = gates.iter().map(|g| (4 * g).to_string()).collect();
    match gates {
        [g] => format!("{g}*4={cost}"),
        _ => format!("{}={cost}", parts.join("+")),
    }
}

fn cost_table(cli: &Cli, args: &TableArgs) -> Result<String, Error> {
    let report: TransistorReport = transistor_table(&standard_cost_functions())?;
    let strings = |fs: &[Formula]| fs.iter().map(Formula::to_string).collect::<Vec<_>>();
    if cli.json {
        let rows: Vec<CostRowOutput> = report
            .rows
            .iter()
            .map(|r| CostRowOutput {
                function: r.name.clone(),
                less_gates: r.less_gates.clone(),
                less_cost: r.less_cost,
                less_circuits: strings(&r.less_circuits),
                nand_gates: r.nand_gates.clone(),
                nand_cost: r.nand_cost,
                nand_circuits: strings(&r.nand_circuits),
                note: r.note.clone(),
            })
            .collect();
        return Ok(to_json(&rows));
    }
    let mut lines = Vec::new();
    if args.markdown {
        lines.push("| function | (<,1) transistors | nand transistors |".to_owned());
        lines.push("|---|---:|---:|".to_owned());
        for r in &report.rows {
            let note = r.note.as_ref().map_or(String::new(), |n| format!(" ({n})"));
            lines.push(format!(
                "| {} | {} | {}{note} |",
                r.name,
                cost_cell(&r.less_gates, r.less_cost),
                cost_cell(&r.nand_gates, r.nand_cost)
            ));
        }
        return Ok(lines.join("\n"));
    }
    let width = report.rows.iter().map(|r| r.name.len()).max().unwrap_or(8);
    lines.push(format!("{:<width$}  {:>5}  {:>5}", "function", "(<,1)", "nand"));
    for r in &report.rows {
        let note = match (&r.note, cli.quiet) {
            (Some(n), false) => format!("  ({n})"),
            _ => String::new(),
        };
        lines.push(format!("{:<width$}  {:>5}  {:>5}{note}", r.name, r.less_cost, r.nand_cost));
    }
    Ok(lines.join("\n"))
}

#[derive(Serialize)]
struct EvalOutput {
    formula: String,
    truth: String,
}

fn eval(cli: &Cli, args: &EvalArgs) -> Result<String, Error> {
    let f = parse_formula(&args.formula)?;
    let n = args.vars.unwrap_or_else(|| f.num_inputs());
    if n > MAX_VARS {
        return Err(Error::Capacity(n));
    }
    let truth = f.truth_table(n)?;
    if cli.json {
        return Ok(to_json(&EvalOutput { formula: f.to_string(), truth: table_text(truth) }));
    }
    Ok(table_text(truth))
}
