//! Command-line front end: argument parsing, dispatch and deterministic
//! rendering. The `tricontest` binary is a thin wrapper around [`run`].
//!
//! Every command builds a [`Report`] (echo, settings, tables, summary) which
//! renders as an aligned table, CSV, or a JSON tree. Numbers are printed in
//! scientific notation with 12 significant digits.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{parse_grid, sweep, welfare_report, SweepParam, SweepRecord, SweepStage};
use crate::error::{Error, Result};
use crate::model::Scenario;
use crate::scenario::load_scenario;
use crate::stage1::{ContinuationSet, CutoffVerdict, SetChoice, Stage1Options, Stage1Solver, SPE_NASH_TOL};
use crate::stage2::{solve_stage2, verify_nash, ContestInstance};

/// Directory against which relative `sweep --out` paths are resolved.
pub const OUTPUT_DIR_ENV: &str = "TRICONTEST_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpeMode {
    First,
    All,
    Iterative,
}

#[derive(Debug, Parser)]
#[command(name = "tricontest", version, about = "Two-stage triathlon contest solver")]
pub struct Cli {
    /// Output format (default: csv for `sweep`, table otherwise).
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stage-2 equilibrium of a continuation set (default: everyone).
    Solve {
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
        file: PathBuf,
    },
    /// Drafting-multiplier cutoff of one athlete.
    Cutoff {
        #[arg(long)]
        athlete: String,
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        file: PathBuf,
    },
    /// Subgame-perfect equilibria with endogenous participation.
    Spe {
        #[arg(long, value_enum, default_value_t = SpeMode::First)]
        mode: SpeMode,
        file: PathBuf,
    },
    /// Re-solve over a grid of one scenario parameter.
    Sweep {
        /// `athletes.<id>.<field>`, `<field>_<id>`, `globals.<name>` or `m`.
        #[arg(long)]
        param: String,
        /// `A:B:N`, N evenly spaced points from A to B.
        #[arg(long)]
        grid: String,
        /// Re-run Stage-1 equilibrium selection at every grid point.
        #[arg(long)]
        full_spe: bool,
        /// Also write the CSV table to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Welfare and rent dissipation of a continuation set.
    Welfare {
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<String>>,
        file: PathBuf,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    /// 0 success, 1 solver failure, 2 usage or validation error.
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) => fmt_num(*x)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(serde_json::Value::Null, serde_json::Value::Number),
            Cell::Int(n) => serde_json::Value::from(*n),
            Cell::Text(s) => serde_json::Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Scientific notation with 12 significant digits; `-0` prints as `0`.
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }
}

/// Everything a command prints, independent of the output format.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub command: String,
    pub settings: Vec<(String, Cell)>,
    pub tables: Vec<Table>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.render_table(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Tree => self.render_tree(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let settings: Vec<String> = self.settings.iter().map(|(k, v)| format!("{k}={}", v.render())).collect();
        let _ = writeln!(out, "settings: {}", settings.join(" "));
        for t in &self.tables {
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|c| cells.iter().map(|r| r[c].len()).fold(t.columns[c].len(), usize::max))
                .collect();
            let line = |row: &[String]| {
                let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "\n[{}]", t.name);
            let _ = writeln!(out, "{}", line(&t.columns));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        if !self.summary.is_empty() {
            out.push('\n');
            for (k, v) in &self.summary {
                let _ = writeln!(out, "{k} = {}", v.render());
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut blocks = Vec::new();
        for t in &self.tables {
            blocks.push(table_csv(t));
        }
        if !self.summary.is_empty() {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in &self.summary {
                w.write_record([k.clone(), v.render()]).expect("in-memory write");
            }
            blocks.push(String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
        }
        blocks.join("\n")
    }

    fn render_tree(&self) -> String {
        use serde_json::{Map, Value};
        let obj = |pairs: &[(String, Cell)]| {
            Value::Object(pairs.iter().map(|(k, v)| (k.clone(), v.json())).collect::<Map<_, _>>())
        };
        let mut tables = Map::new();
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|r| Value::Object(t.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
                .collect();
            tables.insert(t.name.clone(), Value::Array(rows));
        }
        let mut root = Map::new();
        root.insert("command".into(), Value::from(self.command.as_str()));
        root.insert("settings".into(), obj(&self.settings));
        root.insert("tables".into(), Value::Object(tables));
        root.insert("summary".into(), obj(&self.summary));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        s.push('\n');
        s
    }
}

fn table_csv(t: &Table) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for r in &t.rows {
        w.write_record(r.iter().map(Cell::render)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn set_label(ids: &[String]) -> String {
    format!("{{{}}}", ids.join(","))
}

fn resolve_set(scenario: &Scenario, ids: &Option<Vec<String>>) -> Result<ContinuationSet> {
    match ids {
        None => Ok(ContinuationSet::all(scenario.len())),
        Some(ids) => {
            if ids.is_empty() || ids.iter().any(|s| s.trim().is_empty()) {
                return Err(Error::Usage("--set needs a comma-separated list of athlete ids".into()));
            }
            let trimmed: Vec<&str> = ids.iter().map(|s| s.trim()).collect();
            ContinuationSet::from_ids(scenario, &trimmed)
        }
    }
}

fn settings_cells(scenario: &Scenario) -> Vec<(String, Cell)> {
    vec![
        ("abs_tol".into(), scenario.settings.abs_tol.into()),
        ("bracket_growth".into(), scenario.settings.bracket_growth.into()),
        ("max_iter".into(), scenario.settings.max_iter.into()),
    ]
}

fn set_flag(ids: &Option<Vec<String>>) -> String {
    ids.as_ref().map_or(String::new(), |ids| format!(" --set {}", ids.join(",")))
}

pub fn cmd_solve(scenario: &Scenario, set_ids: &Option<Vec<String>>, label: &str) -> Result<Report> {
    let set = resolve_set(scenario, set_ids)?;
    let instance = ContestInstance::from_scenario(scenario, set.indices())?;
    let eq = solve_stage2(&instance, &scenario.settings)?;
    let nash = verify_nash(&instance, &eq.profile(), SPE_NASH_TOL)?;
    let mut table = Table::new("athletes", &["id", "psi", "k", "effort", "prob", "value"]);
    for (pos, m) in instance.members().iter().enumerate() {
        table.rows.push(vec![
            m.id.as_str().into(),
            m.psi.into(),
            m.k.into(),
            eq.efforts[pos].into(),
            eq.probs[pos].into(),
            eq.continuation_values[pos].into(),
        ]);
    }
    Ok(Report {
        command: format!("solve{} {label}", set_flag(set_ids)),
        settings: settings_cells(scenario),
        tables: vec![table],
        summary: vec![
            ("set".into(), set_label(&set.ids(scenario)).into()),
            ("m".into(), set.len().into()),
            ("total_effort".into(), eq.total_effort.into()),
            ("residual".into(), eq.residual.into()),
            ("nash_max_gain".into(), nash.max_gain.into()),
            ("nash".into(), pass_fail(nash.passed).into()),
        ],
    })
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn cmd_cutoff(
    scenario: &Scenario,
    athlete: &str,
    set_ids: &Option<Vec<String>>,
    tol: f64,
    label: &str,
) -> Result<Report> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Usage("--tol must be > 0".into()));
    }
    let set = resolve_set(scenario, set_ids)?;
    let idx = scenario
        .index_of(athlete)
        .ok_or_else(|| Error::Usage(format!("unknown athlete id `{athlete}`")))?;
    if !set.contains(idx) {
        return Err(Error::Usage(format!("athlete `{athlete}` is not in the set")));
    }
    let solver = Stage1Solver::new(scenario);
    let result = solver.cutoff_psi(&set, idx, tol)?;
    let current = solver.net_benefit(&set, idx)?;
    let (verdict, psi_star) = match result.verdict {
        CutoffVerdict::Interior(p) => ("Interior", Cell::Num(p)),
        CutoffVerdict::AlwaysContinue => ("AlwaysContinue", Cell::from("-")),
        CutoffVerdict::AlwaysWithdraw => ("AlwaysWithdraw", Cell::from("-")),
    };
    let mut s = settings_cells(scenario);
    s.push(("tol".into(), tol.into()));
    s.push(("psi_lo".into(), scenario.globals.psi_lo.into()));
    s.push(("psi_hi".into(), scenario.globals.psi_hi.into()));
    Ok(Report {
        command: format!("cutoff --athlete {athlete}{} {label}", set_flag(set_ids)),
        settings: s,
        tables: Vec::new(),
        summary: vec![
            ("athlete".into(), athlete.into()),
            ("set".into(), set_label(&set.ids(scenario)).into()),
            ("verdict".into(), verdict.into()),
            ("psi_star".into(), psi_star),
            ("psi".into(), scenario.psi(idx).into()),
            ("continuation_value".into(), current.continuation_value.into()),
            ("outside_option".into(), current.outside_option.into()),
            ("net_benefit".into(), current.net.into()),
        ],
    })
}

pub fn cmd_spe(scenario: &Scenario, mode: SpeMode, label: &str) -> Result<Report> {
    let opts = Stage1Options::default();
    let choice = match mode {
        SpeMode::First => SetChoice::First,
        SpeMode::All => SetChoice::All,
        SpeMode::Iterative => SetChoice::Iterative,
    };
    let results = Stage1Solver::new(scenario).assemble_spe(choice, &opts)?;
    let mode_name = match mode {
        SpeMode::First => "first",
        SpeMode::All => "all",
        SpeMode::Iterative => "iterative",
    };
    let mut settings = settings_cells(scenario);
    settings.push(("max_enumeration".into(), opts.max_enumeration.into()));
    settings.push(("mode".into(), mode_name.into()));

    let mut eqs = Table::new(
        "equilibria",
        &["index", "set", "method", "conditions", "total_effort", "nash_max_gain"],
    );
    let mut players = Table::new("actions", &["index", "id", "action", "effort", "prob", "payoff"]);
    let mut summary = Vec::new();
    for (k, r) in results.iter().enumerate() {
        let ids = r.continuation_set.ids(scenario);
        eqs.rows.push(vec![
            (k + 1).into(),
            set_label(&ids).into(),
            r.method.to_string().into(),
            pass_fail(r.conditions_hold).into(),
            r.stage2.total_effort.into(),
            r.nash.max_gain.into(),
        ]);
        for (idx, a) in scenario.athletes.iter().enumerate() {
            let (effort, prob) = match r.continuation_set.indices().binary_search(&idx) {
                Ok(pos) => (r.stage2.efforts[pos], r.stage2.probs[pos]),
                Err(_) => (0.0, 0.0),
            };
            players.rows.push(vec![
                (k + 1).into(),
                a.id.as_str().into(),
                r.actions[idx].to_string().into(),
                effort.into(),
                prob.into(),
                r.payoffs[idx].into(),
            ]);
        }
        let key = if results.len() == 1 { "S*".to_string() } else { format!("S*#{}", k + 1) };
        summary.push((key, format!("{} ({})", set_label(&ids), r.method).into()));
    }
    summary.push(("equilibria".into(), results.len().into()));
    Ok(Report {
        command: format!("spe --mode {mode_name} {label}"),
        settings,
        tables: vec![eqs, players],
        summary,
    })
}

fn sweep_table(records: &[SweepRecord]) -> Table {
    // athletes present at every grid point, in first-record order
    let common: Vec<String> = records[0]
        .athletes
        .iter()
        .map(|a| a.id.clone())
        .filter(|id| records.iter().all(|r| r.athlete(id).is_some()))
        .collect();
    let mut columns: Vec<String> = ["param", "value", "continuation_set", "method", "total_effort"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for id in &common {
        for f in ["psi", "p", "e", "payoff", "action"] {
            columns.push(format!("{f}_{id}"));
        }
    }
    let rows = records
        .iter()
        .map(|r| {
            let mut row: Vec<Cell> = vec![
                r.parameter.as_str().into(),
                r.value.into(),
                r.continuation_set.join(";").into(),
                r.method.map_or("Stage2".to_string(), |m| m.to_string()).into(),
                r.total_effort.into(),
            ];
            for id in &common {
                let a = r.athlete(id).expect("common athlete");
                row.extend([
                    a.psi.into(),
                    a.prob.into(),
                    a.effort.into(),
                    a.payoff.into(),
                    a.action.to_string().into(),
                ]);
            }
            row
        })
        .collect();
    Table {
        name: "sweep".into(),
        columns,
        rows,
    }
}

pub fn cmd_sweep(scenario: &Scenario, param: &str, grid: &str, full_spe: bool, label: &str) -> Result<Report> {
    let parsed: SweepParam = param.parse()?;
    let values = parse_grid(grid)?;
    let stage = if full_spe { SweepStage::FullSpe } else { SweepStage::Stage2Only };
    let records = sweep(scenario, &parsed, &values, stage)?;
    let mut settings = settings_cells(scenario);
    settings.push(("param".into(), parsed.to_string().into()));
    settings.push(("points".into(), values.len().into()));
    settings.push(("stage".into(), (if full_spe { "full-spe" } else { "stage2" }).into()));
    Ok(Report {
        command: format!(
            "sweep --param {param} --grid {grid}{} {label}",
            if full_spe { " --full-spe" } else { "" }
        ),
        settings,
        tables: vec![sweep_table(&records)],
        summary: Vec::new(),
    })
}

pub fn cmd_welfare(scenario: &Scenario, set_ids: &Option<Vec<String>>, label: &str) -> Result<Report> {
    let set = resolve_set(scenario, set_ids)?;
    let w = welfare_report(scenario, &set)?;
    Ok(Report {
        command: format!("welfare{} {label}", set_flag(set_ids)),
        settings: settings_cells(scenario),
        tables: Vec::new(),
        summary: vec![
            ("set".into(), set_label(&w.set).into()),
            ("total_welfare".into(), w.total_welfare.into()),
            ("aggregate_cost".into(), w.aggregate_cost.into()),
            ("aggregate_prize_intake".into(), w.aggregate_prize_intake.into()),
            ("rent_ratio".into(), w.rent_ratio.into()),
        ],
    })
}

fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let file = match &cli.command {
        Command::Solve { file, .. }
        | Command::Cutoff { file, .. }
        | Command::Spe { file, .. }
        | Command::Sweep { file, .. }
        | Command::Welfare { file, .. } => file,
    };
    let scenario = load_scenario(file)?;
    let label = file_label(file);
    let report = match &cli.command {
        Command::Solve { set, .. } => cmd_solve(&scenario, set, &label)?,
        Command::Cutoff { athlete, set, tol, .. } => cmd_cutoff(&scenario, athlete, set, *tol, &label)?,
        Command::Spe { mode, .. } => cmd_spe(&scenario, *mode, &label)?,
        Command::Sweep {
            param,
            grid,
            full_spe,
            out,
            ..
        } => {
            let report = cmd_sweep(&scenario, param, grid, *full_spe, &label)?;
            if let Some(out) = out {
                let target = resolve_out(out);
                std::fs::write(&target, table_csv(&report.tables[0]))
                    .map_err(|e| Error::Io(format!("{}: {e}", target.display())))?;
            }
            report
        }
        Command::Welfare { set, .. } => cmd_welfare(&scenario, set, &label)?,
    };
    let default = match cli.command {
        Command::Sweep { .. } => OutputFormat::Csv,
        _ => OutputFormat::Table,
    };
    Ok(report.render(cli.output.unwrap_or(default)))
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    stdout: String::new(),
                    stderr: text,
                    exit_code: 2,
                }
            } else {
                RunOutput {
                    stdout: text,
                    stderr: String::new(),
                    exit_code: 0,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => RunOutput {
            stdout,
            stderr: String::new(),
            exit_code: 0,
        },
        Err(e) => RunOutput {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            exit_code: e.exit_code(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_is_fixed() {
        assert_eq!(fmt_num(0.5), "5.00000000000e-1");
        assert_eq!(fmt_num(-0.0), "0.00000000000e0");
        assert_eq!(fmt_num(1234.5), "1.23450000000e3");
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run(["tricontest", "solve"]);
        assert_eq!(out.exit_code, 2);
        let out = run(["tricontest", "bogus", "x.json"]);
        assert_eq!(out.exit_code, 2);
        let out = run(["tricontest", "solve", "/definitely/missing.json"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.stderr.contains("missing.json"));
    }

    #[test]
    fn table_rendering_aligns_columns() {
        let mut t = Table::new("t", &["id", "value"]);
        t.rows.push(vec!["long-id".into(), 1.0.into()]);
        let r = Report {
            command: "x".into(),
            tables: vec![t],
            ..Report::default()
        };
        let text = r.render(OutputFormat::Table);
        assert!(text.contains("id       value\nlong-id  1.00000000000e0\n"), "{text}");
        assert_eq!(r.render(OutputFormat::Csv), "id,value\nlong-id,1.00000000000e0\n");
    }
}
