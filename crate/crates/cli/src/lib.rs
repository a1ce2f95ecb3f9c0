//! The `polysum` command-line tool.
//!
//! Exit codes: `0` success, `1` unreadable or invalid input, `2` a method
//! precondition failed (for example a lower-dimensional operand), `3` the
//! `--check` cross-validation against the oracle failed.

pub mod cdd;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num::rational::Ratio;
use polysum::{
    minkowski_sum, oracle_sum, oracle_sum_points, polyhedral_cap, sum_primal_with_seed, Error, HalfSpace,
    Method, MinkowskiDecomposition, Polytope, Vector, Violation, DEFAULT_SEED,
};
use thiserror::Error;

use crate::cdd::{parse_file, write_file, CddError, PolyhedronFile, Representation};

/// Environment variable overriding the seed of the primal method.
pub const SEED_ENV: &str = "POLYSUM_SEED";

#[derive(Debug, Parser)]
#[command(name = "polysum", version, about = "Exact Minkowski sums of convex polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute A + B.
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "dual-opt", value_parser = parse_method)]
        method: Method,
        /// Write the H-representation here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Write the V-representation here.
        #[arg(long)]
        ext: Option<PathBuf>,
        /// Annotate every vertex with its decomposition.
        #[arg(long)]
        witnesses: bool,
        /// Cross-validate against the oracle.
        #[arg(long)]
        check: bool,
    },
    /// Convert between H- and V-representation.
    Convert {
        input: PathBuf,
        #[arg(long)]
        to: ReprArg,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check that a file is an irredundant description of a full-dimensional polytope.
    Validate { input: PathBuf },
    /// Print the polyhedral cap in B of vertex i of A.
    Cap {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Time every method on A + B.
    Bench {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        repeat: u32,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReprArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "V", alias = "v")]
    V,
}

impl From<ReprArg> for Representation {
    fn from(r: ReprArg) -> Self {
        match r {
            ReprArg::H => Representation::H,
            ReprArg::V => Representation::V,
        }
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: CddError },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: Error },
    #[error("{0}")]
    Method(Error),
    #[error("invalid {SEED_ENV} `{0}`: expected an unsigned integer")]
    Seed(String),
    #[error("check failed: {0}")]
    CheckMismatch(String),
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::DimensionMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::EmptyInput
        | Error::Empty
        | Error::Unbounded => 1,
        _ => 2,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Format { .. } | CliError::Seed(_) => 1,
            CliError::Input { source, .. } | CliError::Method(source) => error_code(source),
            CliError::CheckMismatch(_) => 3,
        }
    }
}

/// Runs the tool with `args` (including the program name) on the process's
/// standard streams and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Sum { a, b, method, output, ext, witnesses, check } => {
            let opts = SumOptions { method, output, ext, witnesses, check, seed: seed_from_env()? };
            command_sum(&a, &b, &opts, out).map(|()| 0)
        }
        Command::Convert { input, to, output } => {
            let p = load(&input)?;
            emit(out, output.as_deref(), &write_file(&p, to.into())).map(|()| 0)
        }
        Command::Validate { input } => command_validate(&input, out),
        Command::Cap { a, b, vertex } => command_cap(&a, &b, vertex, out).map(|()| 0),
        Command::Bench { a, b, repeat } => command_bench(&a, &b, repeat, out, err).map(|()| 0),
    }
}

fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Seed(s)),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn read(path: &Path) -> Result<PolyhedronFile, CliError> {
    let text = fs::read_to_string(path).map_err(io_error(path))?;
    parse_file(&text).map_err(|source| CliError::Format { path: path.to_path_buf(), source })
}

fn load(path: &Path) -> Result<Polytope, CliError> {
    read(path)?.to_polytope().map_err(|source| CliError::Input { path: path.to_path_buf(), source })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_error(p)),
        None => out.write_all(text.as_bytes()).map_err(io_error(Path::new("<stdout>"))),
    }
}

fn load_pair(a: &Path, b: &Path) -> Result<(Polytope, Polytope), CliError> {
    let pa = load(a)?;
    let pb = load(b)?;
    if pa.dim() != pb.dim() {
        let source = Error::DimensionMismatch { expected: pa.dim(), found: pb.dim() };
        return Err(CliError::Input { path: b.to_path_buf(), source });
    }
    Ok((pa, pb))
}

struct SumOptions {
    method: Method,
    output: Option<PathBuf>,
    ext: Option<PathBuf>,
    witnesses: bool,
    check: bool,
    seed: u64,
}

/// A computed sum with the point lists its witness indices refer to.
struct Summed {
    sum: Polytope,
    a_points: Vec<Vector>,
    b_points: Vec<Vector>,
    witnesses: Vec<(usize, usize)>,
}

fn decompose(a: &Polytope, b: &Polytope, opts: &SumOptions) -> Result<MinkowskiDecomposition, CliError> {
    let d = match opts.method {
        Method::Primal => sum_primal_with_seed(a, b, opts.seed),
        m => minkowski_sum(a, b, m),
    };
    d.map_err(CliError::Method)
}

/// The oracle also accepts lower-dimensional V-input; witness indices then
/// refer to the file rows.
fn oracle_on_rows(pa: &Path, pb: &Path) -> Result<Option<Summed>, CliError> {
    let (fa, fb) = (read(pa)?, read(pb)?);
    if fa.representation != Representation::V || fb.representation != Representation::V || fa.dim != fb.dim {
        return Ok(None);
    }
    let (a_points, b_points) = (fa.points(), fb.points());
    let sum = oracle_sum_points(fa.dim, &a_points, &b_points).map_err(CliError::Method)?;
    let witnesses = sum
        .vertices()
        .iter()
        .map(|c| {
            (0..a_points.len())
                .flat_map(|i| (0..b_points.len()).map(move |j| (i, j)))
                .find(|&(i, j)| &(&a_points[i] + &b_points[j]) == c)
                .expect("every hull vertex is a pairwise sum")
        })
        .collect();
    Ok(Some(Summed { sum, a_points, b_points, witnesses }))
}

fn command_sum(a: &Path, b: &Path, opts: &SumOptions, out: &mut dyn Write) -> Result<(), CliError> {
    let summed = match load_pair(a, b) {
        Ok((pa, pb)) => {
            let d = decompose(&pa, &pb, opts)?;
            if opts.check && opts.method != Method::Oracle {
                let reference = oracle_sum(&pa, &pb).map_err(CliError::Method)?;
                if &reference != d.sum() {
                    return Err(CliError::CheckMismatch(format!(
                        "{} gave {} vertices and {} facets, the oracle {} and {}",
                        opts.method,
                        d.sum().vertices().len(),
                        d.sum().facets().len(),
                        reference.vertices().len(),
                        reference.facets().len()
                    )));
                }
            }
            let witnesses = d.witnesses().to_vec();
            Summed { sum: d.into_sum(), a_points: pa.vertices().to_vec(), b_points: pb.vertices().to_vec(), witnesses }
        }
        Err(e @ CliError::Input { source: Error::NotFullDimensional, .. }) if opts.method == Method::Oracle => {
            oracle_on_rows(a, b)?.ok_or(e)?
        }
        Err(e) => return Err(e),
    };

    let mut h_text = write_file(&summed.sum, Representation::H);
    let mut v_text = write_file(&summed.sum, Representation::V);
    if opts.witnesses {
        let block = witness_block(&summed);
        if opts.ext.is_some() || opts.output.is_none() {
            v_text.push_str(&block);
        } else {
            h_text.push_str(&block);
        }
    }
    if let Some(path) = &opts.output {
        emit(out, Some(path), &h_text)?;
    }
    if let Some(path) = &opts.ext {
        emit(out, Some(path), &v_text)?;
    }
    if opts.output.is_none() && opts.ext.is_none() {
        emit(out, None, &v_text)?;
    }
    Ok(())
}

fn witness_block(s: &Summed) -> String {
    let mut block = String::from("* witnesses: vertex = a[i] + b[j]\n");
    for (c, &(i, j)) in s.sum.vertices().iter().zip(&s.witnesses) {
        block.push_str(&format!("* {c} = a[{i}] + b[{j}] = {} + {}\n", s.a_points[i], s.b_points[j]));
    }
    block
}

fn remap_facets(v: Violation, rows: &[usize]) -> Violation {
    match v {
        Violation::VertexOutsideFacet { vertex, facet } => Violation::VertexOutsideFacet { vertex, facet: rows[facet] },
        Violation::RedundantFacet { facet, duplicate_of } => {
            Violation::RedundantFacet { facet: rows[facet], duplicate_of: duplicate_of.map(|j| rows[j]) }
        }
        other => other,
    }
}

fn command_validate(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let file = read(path)?;
    let violations: Vec<String> = match file.to_polytope() {
        Err(e @ (Error::Empty | Error::Unbounded | Error::NotFullDimensional | Error::EmptyInput)) => {
            vec![e.to_string()]
        }
        Err(e) => return Err(CliError::Input { path: path.to_path_buf(), source: e }),
        Ok(p) => match file.representation {
            Representation::V => {
                let raw = Polytope::from_raw_parts(file.dim, file.points(), p.facets().to_vec());
                raw.validate().violations.iter().map(ToString::to_string).collect()
            }
            Representation::H => {
                let (tagged, trivial) = file.halfspaces();
                let rows: Vec<usize> = tagged.iter().map(|(k, _)| *k).collect();
                let facets: Vec<HalfSpace> = tagged.into_iter().map(|(_, h)| h).collect();
                let raw = Polytope::from_raw_parts(file.dim, p.vertices().to_vec(), facets);
                let mut list: Vec<Violation> =
                    raw.validate().violations.into_iter().map(|v| remap_facets(v, &rows)).collect();
                list.extend(trivial.iter().map(|&(k, _)| Violation::RedundantFacet { facet: k, duplicate_of: None }));
                list.sort_by_key(|v| v.to_string());
                list.dedup();
                list.iter().map(ToString::to_string).collect()
            }
        },
    };
    let text = if violations.is_empty() {
        "ok\n".to_string()
    } else {
        violations.iter().map(|v| format!("violation: {v}\n")).collect()
    };
    emit(out, None, &text)?;
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn command_cap(a: &Path, b: &Path, vertex: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let (pa, pb) = load_pair(a, b)?;
    let cap = polyhedral_cap(&pa, &pb, vertex).map_err(CliError::Method)?;
    let mut text = format!("anchor a[{vertex}] = {}\n", pa.vertices()[vertex]);
    for &j in &cap.members {
        text.push_str(&format!("member b[{j}] = {}\n", pb.vertices()[j]));
    }
    text.push_str(&format!("connected: {}\n", if cap.is_connected(&pb) { "yes" } else { "no" }));
    emit(out, None, &text)
}

fn command_bench(a: &Path, b: &Path, repeat: u32, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (pa, pb) = load_pair(a, b)?;
    let mut counts = Vec::new();
    let mut reference: Option<Polytope> = None;
    for method in Method::ALL {
        let mut total = Duration::ZERO;
        let mut last = None;
        for _ in 0..repeat {
            let start = Instant::now();
            let d = minkowski_sum(&pa, &pb, method).map_err(CliError::Method)?;
            total += start.elapsed();
            last = Some(d);
        }
        let d = last.expect("repeat is at least 1");
        match &reference {
            None => reference = Some(d.sum().clone()),
            Some(r) if r != d.sum() => {
                return Err(CliError::CheckMismatch(format!("{method} disagrees with {}", Method::ALL[0])));
            }
            Some(_) => {}
        }
        // Timings are not reproducible, so they stay off stdout.
        let _ = writeln!(err, "{method}: {:.3} ms (mean of {repeat})", total.as_secs_f64() * 1e3 / f64::from(repeat));
        counts.push((method, d.cone_operations()));
    }
    let brute = pa.vertices().len() * pb.vertices().len();
    let mut text = String::new();
    for (method, count) in &counts {
        if *method != Method::Oracle {
            text.push_str(&format!("{method} cone operations: {count}\n"));
        }
    }
    let opt = counts.iter().find(|(m, _)| *m == Method::DualOptimized).map(|&(_, c)| c).unwrap_or(0);
    text.push_str(&format!("dual-opt / dual: {}\n", Ratio::new(opt, brute)));
    emit(out, None, &text)
}
