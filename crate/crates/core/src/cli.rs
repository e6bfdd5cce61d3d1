//! Command-line front end.
//!
//! Exit codes: 0 success (or dominating), 1 verification failure or table
//! mismatch, 2 invalid input, 3 solver budget exhausted before proving.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructions::{best_construction, construct, ConstructionOutput, Pattern};
use crate::domination::{naive_lower_bound, verify};
use crate::error::Error;
use crate::formulas::{self, FormulaKind, FormulaResult};
use crate::graph::{Graph, GraphSpec};
use crate::setfile::SetFile;
use crate::solver::{solve_exact, solve_exhaustive, SolveBudget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_DOMINATING: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNPROVED: i32 = 3;

/// Environment variable holding the worker thread count (default: all cores).
pub const THREADS_ENV: &str = "MIXDOM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "mixdom",
    version,
    about = "Mixed domination on generalized Petersen graphs P(n,k)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildFormat {
    Dot,
    Schema,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetFormat {
    Setfile,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RowFormat {
    Text,
    Lines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Table1,
    Eq1,
    K2,
    K2remark,
    General,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print P(n,k) as DOT or list its element universe.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: BuildFormat,
        /// Set file whose elements are drawn bold.
        #[arg(long)]
        highlight: Option<PathBuf>,
    },
    /// Check whether a set file is a mixed dominating set.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "set")]
        set: PathBuf,
    },
    /// Emit a block-pattern construction.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// K1_Block8 | K2_Block4 | K2_Block8 | General (default picks by k).
        #[arg(long)]
        pattern: Option<Pattern>,
        #[arg(long, value_enum, default_value = "setfile")]
        format: SetFormat,
    },
    /// Solve exactly by branch-and-bound.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Time limit in seconds.
        #[arg(long)]
        max_time: Option<f64>,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        hint: Option<usize>,
        /// Use plain subset enumeration up to this size instead.
        #[arg(long)]
        exhaustive: Option<usize>,
    },
    /// Evaluate the closed form for P(n,k).
    Formula {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// For k = 2, the 8-block pattern value.
        #[arg(long)]
        remark: bool,
    },
    /// Construction vs closed form vs exact optimum over a range of n.
    Compare {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        max_time: Option<f64>,
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Skip the exact solver for n above this.
        #[arg(long, default_value_t = 16)]
        solve_up_to: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: RowFormat,
    },
    /// Recompute a table of values and flag disagreements.
    Table {
        #[arg(value_enum)]
        name: TableName,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        /// Skip for the `general` table.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

fn budget(max_time: Option<f64>, max_nodes: Option<u64>, hint: Option<usize>) -> SolveBudget {
    let mut b = SolveBudget::default();
    if let Some(t) = max_time {
        b.max_time = Duration::from_secs_f64(t.max(0.0));
    }
    if let Some(m) = max_nodes {
        b.max_nodes = m;
    }
    b.upper_bound_hint = hint;
    b
}

/// Runs one command, writing its output to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult = std::result::Result<i32, CliError>;

fn read_setfile(path: &PathBuf) -> std::result::Result<SetFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(SetFile::parse(&text)?)
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Build {
            n,
            k,
            format,
            highlight,
        } => cmd_build(n, k, format, highlight, out),
        Command::Verify { n, k, set } => cmd_verify(n, k, &set, out),
        Command::Construct {
            n,
            k,
            pattern,
            format,
        } => cmd_construct(n, k, pattern, format, out),
        Command::Solve {
            n,
            k,
            max_time,
            max_nodes,
            hint,
            exhaustive,
        } => cmd_solve(n, k, budget(max_time, max_nodes, hint), exhaustive, out),
        Command::Formula { n, k, remark } => cmd_formula(n, k, remark, out),
        Command::Compare {
            k,
            from,
            to,
            max_time,
            max_nodes,
            solve_up_to,
            format,
        } => {
            if from > to {
                return Err(CliError::Usage(format!("empty range {from}..={to}")));
            }
            let rows = compare_rows(k, from..=to, budget(max_time, max_nodes, None), solve_up_to)?;
            match format {
                RowFormat::Text => write!(out, "{}", render_compare_table(&rows))?,
                RowFormat::Lines => {
                    for row in &rows {
                        writeln!(out, "{}", row.to_line())?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Table { name, from, to, k } => cmd_table(name, from, to, k, out),
    }
}

fn cmd_build(
    n: usize,
    k: usize,
    format: BuildFormat,
    highlight: Option<PathBuf>,
    out: &mut dyn Write,
) -> CliResult {
    let graph = Graph::new(n, k)?;
    match format {
        BuildFormat::Dot => {
            let set = match highlight {
                Some(path) => {
                    let file = read_setfile(&path)?;
                    if file.spec() != graph.spec() {
                        return Err(CliError::Usage(format!(
                            "set file is for {}, not {}",
                            file.spec(),
                            graph.spec()
                        )));
                    }
                    Some(file.to_set(&graph)?)
                }
                None => None,
            };
            write!(out, "{}", graph.to_dot(set.as_ref()))?;
        }
        BuildFormat::Schema => {
            writeln!(
                out,
                "# {} element universe: id tag index label",
                graph.spec()
            )?;
            writeln!(out, "n {n}")?;
            writeln!(out, "k {k}")?;
            writeln!(out, "elements {}", graph.universe())?;
            for el in graph.elements() {
                writeln!(
                    out,
                    "{} {} {} {}",
                    el.id(n),
                    el.tag(),
                    el.index(),
                    graph.label(el)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Text rendering of a verification report.
pub fn render_report(graph: &Graph, set: &crate::set::ElementSet) -> (bool, String) {
    let report = verify(graph, set);
    let mut s = String::new();
    let _ = writeln!(s, "graph {}", graph.spec());
    let _ = writeln!(s, "dominating {}", report.is_dominating);
    let _ = writeln!(s, "size {}", report.size);
    let _ = writeln!(s, "rd_total {}", report.rd_total);
    let _ = writeln!(s, "uncovered {}", report.uncovered.len());
    for id in report.uncovered.iter() {
        let el = graph.element(id).expect("id in range");
        let _ = writeln!(s, "  {} {} ({})", el.tag(), el.index(), graph.label(el));
    }
    (report.is_dominating, s)
}

fn cmd_verify(
    n: Option<usize>,
    k: Option<usize>,
    path: &PathBuf,
    out: &mut dyn Write,
) -> CliResult {
    let file = read_setfile(path)?;
    if n.is_some_and(|n| n != file.n) || k.is_some_and(|k| k != file.k) {
        return Err(CliError::Usage(format!(
            "set file is for {}, not P({},{})",
            file.spec(),
            n.unwrap_or(file.n),
            k.unwrap_or(file.k)
        )));
    }
    let graph = Graph::new(file.n, file.k)?;
    let set = file.to_set(&graph)?;
    let (ok, text) = render_report(&graph, &set);
    write!(out, "{text}")?;
    Ok(if ok { EXIT_OK } else { EXIT_NOT_DOMINATING })
}

/// Set file for a construction, with its provenance as metadata.
pub fn construction_setfile(graph: &Graph, c: &ConstructionOutput) -> SetFile {
    let labels = |set: &crate::set::ElementSet| -> String {
        set.iter()
            .map(|id| {
                let el = graph.element(id).expect("id in range");
                format!("{}:{}", el.tag(), el.index())
            })
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut file = SetFile::from_set(graph, &c.set, c.pattern.name())
        .with_meta("predicted_size", c.predicted_size)
        .with_meta("raw_valid", c.raw_valid)
        .with_meta("repaired", c.repaired);
    if let Some(method) = c.repair_method {
        file = file.with_meta("repair_method", method);
    }
    if !c.repair_added.is_empty() {
        file = file.with_meta("repair_added", labels(&c.repair_added));
    }
    if !c.repair_removed.is_empty() {
        file = file.with_meta("repair_removed", labels(&c.repair_removed));
    }
    file
}

fn cmd_construct(
    n: usize,
    k: usize,
    pattern: Option<Pattern>,
    format: SetFormat,
    out: &mut dyn Write,
) -> CliResult {
    let graph = Graph::new(n, k)?;
    let pattern = pattern.unwrap_or(Pattern::for_k(k));
    let c = construct(pattern, n, k)?;
    match format {
        SetFormat::Setfile => write!(out, "{}", construction_setfile(&graph, &c).render())?,
        SetFormat::Dot => write!(out, "{}", graph.to_dot(Some(&c.set)))?,
    }
    Ok(EXIT_OK)
}

fn cmd_solve(
    n: usize,
    k: usize,
    budget: SolveBudget,
    exhaustive: Option<usize>,
    out: &mut dyn Write,
) -> CliResult {
    let graph = Graph::new(n, k)?;
    let (result, source) = match exhaustive {
        Some(cap) => (solve_exhaustive(&graph, cap)?, "exhaustive"),
        None => (solve_exact(&graph, budget), "branch-and-bound"),
    };
    let file = SetFile::from_set(&graph, &result.witness, source)
        .with_meta("optimum", result.optimum)
        .with_meta("proved", result.proved)
        .with_meta("nodes", result.nodes_explored)
        .with_meta("elapsed_ms", result.elapsed.as_millis());
    write!(out, "{}", file.render())?;
    Ok(if result.proved {
        EXIT_OK
    } else {
        EXIT_UNPROVED
    })
}

fn render_formula(r: &FormulaResult) -> String {
    format!("value {}\nkind {}\ncase {}\n", r.value, r.kind, r.source)
}

fn cmd_formula(n: usize, k: usize, remark: bool, out: &mut dyn Write) -> CliResult {
    let r = if remark {
        if k != 2 {
            return Err(CliError::Usage("--remark applies to k = 2 only".into()));
        }
        GraphSpec::new(n, k)?;
        formulas::gamma_k2_remark(n)?
    } else {
        formulas::formula(n, k)?
    };
    write!(out, "{}", render_formula(&r))?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareRow {
    pub n: usize,
    pub k: usize,
    pub construction_size: Option<usize>,
    pub construction_repaired: bool,
    pub formula_value: usize,
    pub formula_kind: FormulaKind,
    pub exact_optimum: Option<usize>,
    pub proved: bool,
    pub lower_bound: usize,
}

impl CompareRow {
    /// Construction size minus the exact optimum.
    pub fn gap(&self) -> Option<i64> {
        Some(self.construction_size? as i64 - self.exact_optimum? as i64)
    }

    /// Closed form minus the exact optimum.
    pub fn formula_gap(&self) -> Option<i64> {
        Some(self.formula_value as i64 - self.exact_optimum? as i64)
    }

    /// Stable `key=value` line; missing values are `-`.
    pub fn to_line(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        format!(
            "n={} k={} construction={} repaired={} formula={} kind={} exact={} proved={} gap={} formula_gap={} lower_bound={}",
            self.n,
            self.k,
            opt(self.construction_size.map(|v| v.to_string())),
            self.construction_repaired,
            self.formula_value,
            self.formula_kind,
            opt(self.exact_optimum.map(|v| v.to_string())),
            self.proved,
            opt(self.gap().map(|v| v.to_string())),
            opt(self.formula_gap().map(|v| v.to_string())),
            self.lower_bound,
        )
    }

    pub fn parse_line(line: &str) -> Option<CompareRow> {
        let mut fields = std::collections::HashMap::new();
        for part in line.split_whitespace() {
            let (key, value) = part.split_once('=')?;
            fields.insert(key, value);
        }
        let num = |key: &str| -> Option<Option<usize>> {
            match *fields.get(key)? {
                "-" => Some(None),
                v => v.parse().ok().map(Some),
            }
        };
        let flag = |key: &str| fields.get(key).and_then(|v| v.parse::<bool>().ok());
        Some(CompareRow {
            n: num("n")??,
            k: num("k")??,
            construction_size: num("construction")?,
            construction_repaired: flag("repaired")?,
            formula_value: num("formula")??,
            formula_kind: match *fields.get("kind")? {
                "exact" => FormulaKind::Exact,
                "upper-bound" => FormulaKind::UpperBound,
                _ => return None,
            },
            exact_optimum: num("exact")?,
            proved: flag("proved")?,
            lower_bound: num("lower_bound")??,
        })
    }
}

/// One row per `n`; the exact column is filled only for proved solves.
pub fn compare_rows(
    k: usize,
    ns: std::ops::RangeInclusive<usize>,
    budget: SolveBudget,
    solve_up_to: usize,
) -> std::result::Result<Vec<CompareRow>, Error> {
    let mut rows = Vec::new();
    for n in ns {
        let graph = Graph::new(n, k)?;
        let formula = formulas::formula(n, k)?;
        let construction = best_construction(n, k);
        let (exact_optimum, proved) = if n <= solve_up_to {
            let r = solve_exact(&graph, budget);
            (r.proved.then_some(r.optimum), r.proved)
        } else {
            (None, false)
        };
        rows.push(CompareRow {
            n,
            k,
            construction_size: construction.as_ref().map(|c| c.size()),
            construction_repaired: construction.as_ref().is_some_and(|c| c.repaired),
            formula_value: formula.value,
            formula_kind: formula.kind,
            exact_optimum,
            proved,
            lower_bound: naive_lower_bound(n),
        });
    }
    Ok(rows)
}

pub fn render_compare_table(rows: &[CompareRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>5} {:>3} {:>12} {:>8} {:>12} {:>6} {:>7} {:>4} {:>11} {:>6}",
        "n",
        "k",
        "construction",
        "formula",
        "kind",
        "exact",
        "proved",
        "gap",
        "formula_gap",
        "lower"
    );
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
    for r in rows {
        let _ = writeln!(
            s,
            "{:>5} {:>3} {:>12} {:>8} {:>12} {:>6} {:>7} {:>4} {:>11} {:>6}",
            r.n,
            r.k,
            opt(r.construction_size.map(|v| v as i64)),
            r.formula_value,
            r.formula_kind.to_string(),
            opt(r.exact_optimum.map(|v| v as i64)),
            r.proved,
            opt(r.gap()),
            opt(r.formula_gap()),
            r.lower_bound,
        );
    }
    s
}

/// A reproduced row of values: `(n, computed, expected)`.
pub type TableCells = Vec<(usize, usize, usize)>;

/// Recomputes a named table. `table1` uses the exhaustive solver; the
/// pattern tables use verified construction sizes. `expected` is the
/// closed-form value.
pub fn table_cells(
    name: TableName,
    from: Option<usize>,
    to: Option<usize>,
    k: usize,
) -> std::result::Result<TableCells, Error> {
    let (lo, hi) = match name {
        TableName::Table1 => (3, 7),
        TableName::Eq1 => (8, 15),
        TableName::K2 => (5, 12),
        TableName::K2remark => (8, 15),
        TableName::General => (2 * k + 1, 2 * k + 16),
    };
    let (lo, hi) = (from.unwrap_or(lo), to.unwrap_or(hi));
    let mut cells = Vec::new();
    for n in lo..=hi {
        let (computed, expected) = match name {
            TableName::Table1 => {
                let graph = Graph::new(n, 1)?;
                let r = solve_exhaustive(&graph, 8)?;
                (r.optimum, formulas::gamma_k1(n)?.value)
            }
            TableName::Eq1 => (
                checked(construct(Pattern::K1Block8, n, 1)?)?,
                formulas::gamma_k1(n)?.value,
            ),
            TableName::K2 => (
                checked(construct(Pattern::K2Block4, n, 2)?)?,
                formulas::gamma_k2(n)?.value,
            ),
            TableName::K2remark => (
                checked(construct(Pattern::K2Block8, n, 2)?)?,
                formulas::gamma_k2_remark(n)?.value,
            ),
            TableName::General => (
                checked(construct(Pattern::General, n, k)?)?,
                formulas::upper_bound_general(n, k)?.value,
            ),
        };
        cells.push((n, computed, expected));
    }
    Ok(cells)
}

fn checked(c: ConstructionOutput) -> std::result::Result<usize, Error> {
    let graph = Graph::new(c.n, c.k)?;
    assert!(
        verify(&graph, &c.set).is_dominating,
        "construction must dominate"
    );
    Ok(c.size())
}

fn cmd_table(
    name: TableName,
    from: Option<usize>,
    to: Option<usize>,
    k: usize,
    out: &mut dyn Write,
) -> CliResult {
    let cells = table_cells(name, from, to, k)?;
    let upper = name == TableName::General;
    let bad = |&(_, c, e): &(usize, usize, usize)| if upper { c > e } else { c != e };
    let mismatches = cells.iter().filter(|c| bad(c)).count();
    let mut header = String::from("n     ");
    let mut values = String::from("value ");
    for cell in &cells {
        let mark = if bad(cell) { "*" } else { "" };
        let v = format!("{}{}", cell.1, mark);
        let width = v.len().max(cell.0.to_string().len());
        let _ = write!(header, " {:>width$}", cell.0);
        let _ = write!(values, " {v:>width$}");
    }
    writeln!(
        out,
        "table {}",
        name.to_possible_value().expect("named").get_name()
    )?;
    writeln!(out, "{header}")?;
    writeln!(out, "{values}")?;
    writeln!(out, "mismatches {mismatches}")?;
    Ok(if mismatches == 0 {
        EXIT_OK
    } else {
        EXIT_NOT_DOMINATING
    })
}
