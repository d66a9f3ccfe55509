//! Command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{run, Adjacency, Prefilter, Ray, Representation, RunConfig, RunStats};
use crate::error::Error;
use crate::linalg::IntVector;
use crate::oracle::{brute_force_filtered, brute_force_rays};
use crate::ordering::OrderingStrategy;
use crate::problem::{parse_rays, write_rays, EnumerationProblem};
use crate::triangulation::Triangulation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Columns of the stats and bench CSV files.
pub const CSV_HEADER: [&str; 13] = [
    "instance",
    "coords",
    "ordering",
    "adjacency",
    "representation",
    "filtering",
    "prefilter",
    "time_ms",
    "peak_mem_bytes",
    "max_vi",
    "final_count",
    "sep_g",
    "status",
];

#[derive(Parser, Debug)]
#[command(
    name = "conedd",
    version,
    about = "Extreme rays of cones with at-most-one-non-zero group constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate extreme rays with the double description engine.
    Enumerate(EnumerateArgs),
    /// Print the cone file of a triangulation's matching equations.
    Equations {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that every ray in a file is admissible and extreme.
    Verify {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        rays: PathBuf,
    },
    /// Enumerate by brute force over zero sets (small inputs only).
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        no_filter: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a matrix of configurations and write one CSV row per run.
    Bench {
        /// Comma-separated input files.
        #[arg(long, value_delimiter = ',', required = true)]
        input: Vec<PathBuf>,
        /// Force triangulation parsing for every input.
        #[arg(long)]
        tri: bool,
        /// `key=v1,v2;key=...` over order, adj, rep, filter, prefilter, or a
        /// preset name: ablation, orderings, full.
        #[arg(long, default_value = "ablation")]
        matrix: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Parse the input as a triangulation (implied by a `.tri` extension).
    #[arg(long)]
    tri: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "position")]
    order: OrderingStrategy,
    #[arg(long, value_enum, default_value = "comb")]
    adjacency: AdjacencyArg,
    #[arg(long, value_enum, default_value = "inner")]
    rep: RepArg,
    #[arg(long)]
    no_filter: bool,
    #[arg(long, value_enum, default_value = "extended")]
    prefilter: PrefilterArg,
    /// Write a one-row CSV of run statistics.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AdjacencyArg {
    Comb,
    Alg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepArg {
    Full,
    Inner,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrefilterArg {
    Off,
    Basic,
    Extended,
}

impl From<AdjacencyArg> for Adjacency {
    fn from(a: AdjacencyArg) -> Self {
        match a {
            AdjacencyArg::Comb => Adjacency::Combinatorial,
            AdjacencyArg::Alg => Adjacency::Algebraic,
        }
    }
}

impl From<RepArg> for Representation {
    fn from(r: RepArg) -> Self {
        match r {
            RepArg::Full => Representation::Full,
            RepArg::Inner => Representation::Inner,
        }
    }
}

impl From<PrefilterArg> for Prefilter {
    fn from(p: PrefilterArg) -> Self {
        match p {
            PrefilterArg::Off => Prefilter::Off,
            PrefilterArg::Basic => Prefilter::Basic,
            PrefilterArg::Extended => Prefilter::Extended,
        }
    }
}

pub fn adjacency_label(a: Adjacency) -> &'static str {
    match a {
        Adjacency::Combinatorial => "comb",
        Adjacency::Algebraic => "alg",
    }
}

pub fn representation_label(r: Representation) -> &'static str {
    match r {
        Representation::Full => "full",
        Representation::Inner => "inner",
    }
}

pub fn prefilter_label(p: Prefilter) -> &'static str {
    match p {
        Prefilter::Off => "off",
        Prefilter::Basic => "basic",
        Prefilter::Extended => "extended",
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Triangulation(_)
            | Error::Problem(_)
            | Error::DimensionMismatch { .. }
            | Error::OracleLimit { .. }
            | Error::OracleSubsets { .. }
            | Error::BoundDomain { .. } => EXIT_INPUT,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Equations { input, output } => cmd_equations(&input, output.as_deref()),
        Command::Verify { problem, rays } => cmd_verify(&problem, &rays),
        Command::Oracle {
            input,
            no_filter,
            output,
        } => cmd_oracle(&input, no_filter, output.as_deref()),
        Command::Bench {
            input,
            tri,
            matrix,
            out,
        } => cmd_bench(&input, tri, &matrix, out.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("conedd: {}", f.msg);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure {
                code: EXIT_INTERNAL,
                msg: e.to_string(),
            }),
    }
}

fn is_tri(path: &Path, forced: bool) -> bool {
    forced || path.extension().is_some_and(|e| e == "tri")
}

/// Loads a cone file or a triangulation, returning the problem and its
/// coordinate system label.
fn load(path: &Path, tri: bool) -> Result<(EnumerationProblem, &'static str), Failure> {
    let text = read(path)?;
    if is_tri(path, tri) {
        let t = Triangulation::parse(&text)?;
        Ok((t.standard_matching_equations(), "standard"))
    } else {
        Ok((EnumerationProblem::parse(&text)?, "cone"))
    }
}

fn ray_text(rays: &[Ray]) -> String {
    let coords: Vec<IntVector> = rays.iter().map(|r| r.coords.clone()).collect();
    write_rays(&coords)
}

fn instance_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// One CSV row. `time_ms` is the only column expected to vary between
/// identical runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub instance: String,
    pub coords: String,
    pub cfg: RunConfig,
    pub time_ms: Option<u128>,
    pub peak_mem_bytes: Option<usize>,
    pub max_vi: Option<usize>,
    pub final_count: Option<usize>,
    pub sep_g: Option<usize>,
    pub status: String,
}

impl BenchRow {
    fn from_run(
        instance: String,
        coords: &str,
        cfg: RunConfig,
        time_ms: u128,
        result: &crate::Result<(Vec<Ray>, RunStats)>,
    ) -> Self {
        let mut row = BenchRow {
            instance,
            coords: coords.to_string(),
            cfg,
            time_ms: Some(time_ms),
            peak_mem_bytes: None,
            max_vi: None,
            final_count: None,
            sep_g: None,
            status: "ok".to_string(),
        };
        match result {
            Ok((_, s)) => {
                row.peak_mem_bytes = Some(s.peak_memory);
                row.max_vi = Some(s.max_stage_size());
                row.final_count = Some(s.final_count);
                row.sep_g = Some(s.final_sep());
            }
            Err(e) => row.status = format!("error: {e}"),
        }
        row
    }

    pub fn record(&self) -> Vec<String> {
        let opt = |x: Option<String>| x.unwrap_or_default();
        vec![
            self.instance.clone(),
            self.coords.clone(),
            self.cfg.ordering.to_string(),
            adjacency_label(self.cfg.adjacency).to_string(),
            representation_label(self.cfg.representation).to_string(),
            if self.cfg.filtering { "on" } else { "off" }.to_string(),
            prefilter_label(self.cfg.prefilter).to_string(),
            opt(self.time_ms.map(|x| x.to_string())),
            opt(self.peak_mem_bytes.map(|x| x.to_string())),
            opt(self.max_vi.map(|x| x.to_string())),
            opt(self.final_count.map(|x| x.to_string())),
            opt(self.sep_g.map(|x| x.to_string())),
            self.status.clone(),
        ]
    }
}

fn write_csv(path: Option<&Path>, rows: &[BenchRow]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| Failure {
        code: EXIT_INTERNAL,
        msg: e.to_string(),
    };
    w.write_record(CSV_HEADER).map_err(internal)?;
    for r in rows {
        w.write_record(r.record()).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure {
        code: EXIT_INTERNAL,
        msg: e.to_string(),
    })?;
    write_out(path, &String::from_utf8(bytes).expect("csv is utf-8"))
}

fn cmd_enumerate(a: EnumerateArgs) -> CmdResult {
    let (problem, coords) = load(&a.input.input, a.input.tri)?;
    let cfg = RunConfig {
        ordering: a.order,
        adjacency: a.adjacency.into(),
        representation: a.rep.into(),
        filtering: !a.no_filter,
        prefilter: a.prefilter.into(),
    };
    let start = Instant::now();
    let result = run(&problem, cfg);
    let time_ms = start.elapsed().as_millis();
    if let Some(stats) = &a.stats {
        let row = BenchRow::from_run(instance_name(&a.input.input), coords, cfg, time_ms, &result);
        write_csv(Some(stats), &[row])?;
    }
    let (rays, _) = result?;
    write_out(a.output.as_deref(), &ray_text(&rays))?;
    Ok(EXIT_OK)
}

fn cmd_equations(input: &Path, output: Option<&Path>) -> CmdResult {
    let t = Triangulation::parse(&read(input)?)?;
    write_out(output, &t.standard_matching_equations().to_text())?;
    Ok(EXIT_OK)
}

fn cmd_verify(problem: &Path, rays: &Path) -> CmdResult {
    let (p, _) = load(problem, false)?;
    let rays = parse_rays(&read(rays)?, p.dim())?;
    for (i, r) in rays.iter().enumerate() {
        let reason = if !p.admissible(r) {
            Some("not admissible")
        } else if !p.is_extreme(r) {
            Some("not extreme")
        } else {
            None
        };
        if let Some(reason) = reason {
            let shown: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            eprintln!("ray {} ({}) is {reason}", i + 1, shown.join(" "));
            return Ok(EXIT_VERIFY);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(input: &InputArgs, no_filter: bool, output: Option<&Path>) -> CmdResult {
    let (p, _) = load(&input.input, input.tri)?;
    let rays = if no_filter {
        brute_force_rays(&p)?
    } else {
        brute_force_filtered(&p)?
    };
    write_out(output, &ray_text(&rays))?;
    Ok(EXIT_OK)
}

/// Expands a matrix description into configurations in a fixed nesting order:
/// ordering, adjacency, representation, filtering, prefilter.
pub fn parse_matrix(matrix: &str) -> Result<Vec<RunConfig>, String> {
    let matrix = match matrix.trim() {
        "ablation" => "order=position;adj=comb,alg;rep=full,inner;filter=on;prefilter=off,basic,extended",
        "orderings" => "order=input,position,lexpos,lexrand:1,dynamic",
        "full" => "order=input,position,lexpos,lexrand:1,dynamic;adj=comb,alg;rep=full,inner;prefilter=off,basic,extended",
        s => s,
    };
    if matrix.is_empty() {
        return Ok(Vec::new());
    }
    let d = RunConfig::default();
    let mut orders = vec![d.ordering];
    let mut adjs = vec![d.adjacency];
    let mut reps = vec![d.representation];
    let mut filters = vec![d.filtering];
    let mut prefilters = vec![d.prefilter];
    for part in matrix.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, values) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=values, got {part:?}"))?;
        let values: Vec<&str> = values.split(',').map(str::trim).collect();
        match key.trim() {
            "order" => orders = values.iter().map(|v| v.parse()).collect::<Result<_, _>>()?,
            "adj" => {
                adjs = values
                    .iter()
                    .map(|v| AdjacencyArg::from_str(v, false).map(Adjacency::from))
                    .collect::<Result<_, _>>()?
            }
            "rep" => {
                reps = values
                    .iter()
                    .map(|v| RepArg::from_str(v, false).map(Representation::from))
                    .collect::<Result<_, _>>()?
            }
            "filter" => {
                filters = values
                    .iter()
                    .map(|v| match *v {
                        "on" => Ok(true),
                        "off" => Ok(false),
                        _ => Err(format!("filter must be on or off, got {v:?}")),
                    })
                    .collect::<Result<_, _>>()?
            }
            "prefilter" => {
                prefilters = values
                    .iter()
                    .map(|v| PrefilterArg::from_str(v, false).map(Prefilter::from))
                    .collect::<Result<_, _>>()?
            }
            k => return Err(format!("unknown matrix key {k:?}")),
        }
    }
    let mut out = Vec::new();
    for &ordering in &orders {
        for &adjacency in &adjs {
            for &representation in &reps {
                for &filtering in &filters {
                    for &prefilter in &prefilters {
                        out.push(RunConfig {
                            ordering,
                            adjacency,
                            representation,
                            filtering,
                            prefilter,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn cmd_bench(inputs: &[PathBuf], tri: bool, matrix: &str, out: Option<&Path>) -> CmdResult {
    let configs = parse_matrix(matrix).map_err(Failure::input)?;
    let mut problems = Vec::new();
    for path in inputs {
        let (p, coords) = load(path, tri)?;
        problems.push((instance_name(path), p, coords));
    }
    let mut rows = Vec::new();
    for (name, p, coords) in &problems {
        for &cfg in &configs {
            let start = Instant::now();
            let result = run(p, cfg);
            let time_ms = start.elapsed().as_millis();
            rows.push(BenchRow::from_run(
                name.clone(),
                coords,
                cfg,
                time_ms,
                &result,
            ));
        }
    }
    write_csv(out, &rows)?;
    if !rows.is_empty() && rows.iter().all(|r| r.status != "ok") {
        return Ok(EXIT_INTERNAL);
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_specs() {
        assert!(parse_matrix("").unwrap().is_empty());
        assert_eq!(parse_matrix("ablation").unwrap().len(), 12);
        assert_eq!(parse_matrix("orderings").unwrap().len(), 5);
        assert_eq!(parse_matrix("full").unwrap().len(), 60);
        let m = parse_matrix("order=lexrand:3,dynamic;filter=on,off").unwrap();
        assert_eq!(m.len(), 4);
        assert_eq!(m[0].ordering, OrderingStrategy::LexRandomSigns(3));
        assert!(m[0].filtering && !m[1].filtering);
        assert!(parse_matrix("order=bogus").is_err());
        assert!(parse_matrix("speed=fast").is_err());
        assert!(parse_matrix("adj").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::parse(1, "x")).code, EXIT_INPUT);
        assert_eq!(
            Failure::from(Error::Internal("x".into())).code,
            EXIT_INTERNAL
        );
        assert_eq!(main_with_args(["conedd", "enumerate"]), EXIT_INPUT);
        assert_eq!(
            main_with_args(["conedd", "enumerate", "--input=/nonexistent/x.cone"]),
            EXIT_INPUT
        );
    }
}
