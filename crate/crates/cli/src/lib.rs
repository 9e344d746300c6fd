//! Command-line front end over the `cellcx` library.
//!
//! Every command reads JSON files, runs one library operation and emits JSON
//! (or a short text summary). Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | input error: unreadable file, malformed JSON, schema or validity violation |
//! | 3 | safety cap reached while building a free factorization |
//! | 4 | a law or filler check failed; a JSON witness is printed on stdout |

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use cellcx::cellcx::{compose_complexes, normalize, pushforward_complex};
use cellcx::corpus::fixtures;
use cellcx::json::{self, CellComplexJson, FactorResultJson, FillerTableJson, MapJson};
use cellcx::lifting::{solve_lifting, verify_fillers};
use cellcx::soa::{check_awfs_laws, free_complex, random_squares, Factorizer, DEFAULT_CAP};
use cellcx::{CellComplex, Error, SimplicialMap};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde::de::DeserializeOwned;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

/// Squares per map for the naturality law in `check`.
const NATURALITY_SQUARES: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "cellcx", version, about = "Relative cell complexes and their free factorization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Maximum number of strata a free factorization may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
    pub cap: usize,
    /// What to print on stdout: a text summary or the JSON result.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomly chosen instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the result to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("cap must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Free factorization of a map.
    Factor { map: PathBuf },
    /// Composite of two complexes, the second based on the body of the first.
    Compose { first: PathBuf, second: PathBuf },
    /// Proper normal form of a (possibly improper) stratum sequence.
    Normalize { complex: PathBuf },
    /// Pushforward of a complex along a map out of its base.
    Pushout { complex: PathBuf, map: PathBuf },
    /// Diagonal of a lifting square against a filler table.
    Lift {
        complex: PathBuf,
        fillers: PathBuf,
        /// Top map: base of the complex -> domain of the table's map.
        top: PathBuf,
        /// Bottom map: body of the complex -> codomain of the table's map.
        bottom: PathBuf,
    },
    /// awfs law suite over the built-in fixtures and any given maps.
    Check { maps: Vec<PathBuf> },
    /// Graphviz rendering of a complex's body, colored by stage.
    ExportDot { complex: PathBuf },
}

/// A failed command: exit code plus message, and for check failures a
/// witness for stdout.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub witness: Option<String>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into(), witness: None }
    }

    fn at(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure::input(format!("{}: {e}", path.display()))
    }

    fn check(message: impl Into<String>, witness: &impl Serialize) -> Self {
        Failure { code: EXIT_CHECK, message: message.into(), witness: Some(json::to_string_pretty(witness)) }
    }

    /// Classifies a library error raised while working on `path`.
    fn from_lib(path: &Path, e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure { code: EXIT_CAP, message: e.to_string(), witness: None },
            Error::NoFiller { ref square } => Failure::check(e.to_string(), &serde_json::json!({ "error": "no_filler", "square": square })),
            Error::BadFiller { ref square, ref filler } => {
                Failure::check(e.to_string(), &serde_json::json!({ "error": "bad_filler", "square": square, "filler": filler }))
            }
            other => Failure::at(path, other),
        }
    }
}

type CmdResult = Result<Output, Failure>;

/// What a successful command produces: the artifact written by `--out` and
/// printed under `--format json`, and the text summary.
pub struct Output {
    artifact: String,
    summary: String,
}

impl Output {
    fn json(value: &impl Serialize, summary: String) -> Self {
        Output { artifact: json::to_string_pretty(value), summary }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::at(path, e))?;
    // serde_json errors carry "at line L column C".
    serde_json::from_str(&text).map_err(|e| Failure::at(path, e))
}

fn read_map(path: &Path) -> Result<SimplicialMap, Failure> {
    read_json::<MapJson>(path)?.into_map().map_err(|e| Failure::at(path, e))
}

fn read_complex(path: &Path) -> Result<CellComplex, Failure> {
    read_json::<CellComplexJson>(path)?.into_complex().map_err(|e| Failure::at(path, e))
}

/// `"stage 0: 3 cells; stage 1: 3 cells; height 2"`.
pub fn stage_summary(c: &CellComplex) -> String {
    let mut s = String::new();
    for (n, k) in c.stage_counts().iter().enumerate() {
        let _ = write!(s, "stage {n}: {k} cell{}; ", if *k == 1 { "" } else { "s" });
    }
    let _ = write!(s, "height {}", c.height());
    s
}

fn cmd_factor(path: &Path, cap: usize) -> CmdResult {
    let f = read_map(path)?;
    let kf = free_complex(&f, cap).map_err(|e| Failure::from_lib(path, e))?;
    Ok(Output::json(&FactorResultJson::from(&kf), stage_summary(kf.complex())))
}

fn cmd_compose(first: &Path, second: &Path) -> CmdResult {
    let a = read_complex(first)?;
    let b = read_complex(second)?;
    let ba = compose_complexes(&a, &b).map_err(|e| Failure::at(second, e))?;
    Ok(Output::json(&CellComplexJson::from(&ba), stage_summary(&ba)))
}

fn cmd_normalize(path: &Path) -> CmdResult {
    let (base, strata) = read_json::<CellComplexJson>(path)?.into_strata().map_err(|e| Failure::at(path, e))?;
    let (c, _) = normalize(base, strata).map_err(|e| Failure::at(path, e))?;
    Ok(Output::json(&CellComplexJson::from(&c), stage_summary(&c)))
}

fn cmd_pushout(complex: &Path, map: &Path) -> CmdResult {
    let c = read_complex(complex)?;
    let g = read_map(map)?;
    let (pushed, _) = pushforward_complex(&c, &g).map_err(|e| Failure::at(map, e))?;
    Ok(Output::json(&CellComplexJson::from(&pushed), stage_summary(&pushed)))
}

fn cmd_lift(complex: &Path, fillers: &Path, top: &Path, bottom: &Path) -> CmdResult {
    let c = read_complex(complex)?;
    let ft = read_json::<FillerTableJson>(fillers)?.into_table().map_err(|e| Failure::at(fillers, e))?;
    let u = read_map(top)?;
    let v = read_map(bottom)?;
    let report = verify_fillers(&ft, 0);
    if let Some(first) = report.failures.first() {
        return Err(Failure::check(format!("filler table entry fails: {}", first.reason), &report));
    }
    let d = solve_lifting(&c, &ft, &u, &v).map_err(|e| Failure::from_lib(fillers, e))?;
    let mut summary = String::new();
    for (x, y) in d.assignment() {
        let _ = writeln!(summary, "{x} -> {y}");
    }
    summary.pop();
    Ok(Output::json(&MapJson::from(&d), summary))
}

#[derive(Serialize)]
struct CheckReport {
    name: String,
    #[serde(flatten)]
    report: cellcx::soa::LawReport,
}

fn cmd_check(maps: &[PathBuf], cap: usize, seed: u64) -> CmdResult {
    let mut instances: Vec<(String, SimplicialMap)> = fixtures().into_iter().map(|(n, f)| (n.to_string(), f)).collect();
    for p in maps {
        instances.push((p.display().to_string(), read_map(p)?));
    }
    let targets: Vec<SimplicialMap> = instances.iter().map(|(_, f)| f.clone()).collect();
    let mut fz = Factorizer::new(cap);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    let mut summary = String::new();
    for (name, f) in instances {
        let mut pool = targets.clone();
        match fz.get(&f) {
            Ok(kf) => pool.push(kf.ef().clone()),
            Err(e) => return Err(Failure::from_lib(Path::new(&name), e)),
        }
        let squares = random_squares(&f, &pool, NATURALITY_SQUARES, &mut rng).map_err(|e| Failure::from_lib(Path::new(&name), e))?;
        let report = check_awfs_laws(&f, &mut fz, &squares);
        if report.cap_exceeded {
            return Err(Failure { code: EXIT_CAP, message: format!("{name}: {}", report.error.unwrap_or_default()), witness: None });
        }
        let held = report.laws.iter().filter(|l| l.holds).count();
        let _ = writeln!(summary, "{name}: {held}/{} laws hold", cellcx::soa::LAWS.len());
        let entry = CheckReport { name: name.clone(), report };
        if !entry.report.all_hold() {
            return Err(Failure::check(format!("{name}: law check failed"), &entry));
        }
        reports.push(entry);
    }
    let _ = write!(summary, "all laws hold on {} maps", reports.len());
    Ok(Output::json(&reports, summary))
}

/// Reads a complex, or the complex of a factorization result.
fn read_any_complex(path: &Path) -> Result<CellComplex, Failure> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("complex").is_some() {
        let r: FactorResultJson = read_json(path)?;
        Ok(r.into_result().map_err(|e| Failure::at(path, e))?.complex().clone())
    } else {
        read_complex(path)
    }
}

/// Fill colors: the base first, then one per stratum, cycling.
const PALETTE: [&str; 7] = ["#d9d9d9", "#8dd3c7", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#bebada"];

fn stage_color(stage: usize) -> &'static str {
    if stage == 0 {
        PALETTE[0]
    } else {
        PALETTE[1 + (stage - 1) % (PALETTE.len() - 1)]
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices and edges of the body; an edge runs from its 0th vertex to its
/// 1st. Each element is colored and classed by its stage.
pub fn export_dot(c: &CellComplex) -> String {
    let body = c.body();
    let mut s = String::from("digraph body {\n");
    if body.count(0) > 0 {
        s.push_str("  node [style=filled];\n");
    }
    for v in body.simplices(0) {
        let st = c.stage_of(v).expect("body simplex");
        let _ = writeln!(s, "  {} [class=\"stage{st}\", fillcolor=\"{}\"];", quote(v), stage_color(st));
    }
    for e in body.simplices(1) {
        let st = c.stage_of(e).expect("body simplex");
        let f = body.faces(e).expect("body simplex");
        let _ = writeln!(s, "  {} -> {} [label={}, class=\"stage{st}\", color=\"{}\"];", quote(&f[1]), quote(&f[0]), quote(e), stage_color(st));
    }
    s.push_str("}\n");
    s
}

fn cmd_export_dot(path: &Path) -> CmdResult {
    let c = read_any_complex(path)?;
    let dot = export_dot(&c);
    Ok(Output { artifact: dot.clone(), summary: dot.trim_end().to_string() })
}

fn dispatch(cli: &Cli) -> CmdResult {
    let o = &cli.opts;
    match &cli.command {
        Command::Factor { map } => cmd_factor(map, o.cap),
        Command::Compose { first, second } => cmd_compose(first, second),
        Command::Normalize { complex } => cmd_normalize(complex),
        Command::Pushout { complex, map } => cmd_pushout(complex, map),
        Command::Lift { complex, fillers, top, bottom } => cmd_lift(complex, fillers, top, bottom),
        Command::Check { maps } => cmd_check(maps, o.cap, o.seed),
        Command::ExportDot { complex } => cmd_export_dot(complex),
    }
}

/// Runs a parsed command line, writing results to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli) {
        Ok(output) => {
            if let Some(path) = &cli.opts.out {
                if let Err(e) = std::fs::write(path, &output.artifact) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return EXIT_INPUT;
                }
            }
            let shown = match cli.opts.format {
                Format::Json => output.artifact,
                Format::Text => output.summary + "\n",
            };
            let _ = out.write_all(shown.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if let Some(w) = f.witness {
                let _ = out.write_all(w.as_bytes());
            }
            f.code
        }
    }
}
