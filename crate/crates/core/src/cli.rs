//! The `frostman` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::dimension::{
    cantor_dim_partial, content_table, dim_interval_with, dyadic_content, local_dimension, shmerkin_measure,
    BracketRule, LocalMass,
};
use crate::dyadic::{Rat, Word};
use crate::error::Error;
use crate::flows::{max_flow_iterate, truncated_max_flow, truncated_max_flow_with, Splitter};
use crate::frostman::{capacity_tree, frost, strict_frost, FrostVerdict, FrostmanTask};
use crate::io::{parse, render, Certificate, MeasureFile, SetFile, TreeFile};
use crate::measures::{
    concentrate, concentrated_support, frostman_check, measure_from_overt, point_from_measure, DyadicMeasure,
};
use crate::sets::{cantor_cells, perfect_core, CantorScheme, ClosedSetName};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;
pub const EXIT_USAGE: i32 = 5;
pub const EXIT_IO: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "frostman",
    version,
    about = "Exact dyadic flows, Frostman measures and Hausdorff content on closed subsets of [0, 1]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a Cantor scheme set file and list its cells at one level
    Cantor {
        /// Ratios d_0, d_1, ...; the last one repeats
        #[arg(long, required = true, value_delimiter = ',')]
        ratios: Vec<Rat>,
        /// Level whose cells are listed
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// Where to write the set file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Terms ln 2 / ln d_i of a Cantor scheme and the minima of their tails
    CantorDim {
        /// Set file of kind "cantor"
        #[arg(long)]
        set: PathBuf,
        /// Number of levels
        #[arg(long)]
        levels: usize,
    },
    /// Dyadic s-content of a set at one exponent, or over a grid of exponents
    Content {
        #[arg(long)]
        set: PathBuf,
        /// Exponent in [0, 1]
        #[arg(long)]
        s: Option<Rat>,
        /// Truncation depth
        #[arg(long)]
        depth: usize,
        /// Stage of the set name (defaults to the depth)
        #[arg(long)]
        stage: Option<usize>,
        /// Tabulate s = 0, 1/q, ..., 1
        #[arg(long)]
        grid: Option<usize>,
        /// Print the table as CSV
        #[arg(long)]
        csv: bool,
    },
    /// Bracket for the Hausdorff dimension read off a content table
    Dim {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Stage of the set name (defaults to the depth)
        #[arg(long)]
        stage: Option<usize>,
        /// Number of grid steps in [0, 1]
        #[arg(long, default_value_t = 8)]
        grid: usize,
        /// Least content counted as positive for the lower end
        #[arg(long, default_value = "1/2")]
        lo_content: Rat,
        /// The upper end is the first exponent with content below 2^-(depth / this)
        #[arg(long, default_value_t = 4)]
        hi_divisor: usize,
    },
    /// Search for an s-Frostman measure of total mass 2^-k supported on the set
    Frost {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        s: Rat,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        depth: usize,
        /// Stage of the set name (defaults to the depth)
        #[arg(long)]
        stage: Option<usize>,
        /// Where to write the measure and its certificate
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// s-Frostman measure positive on every surviving word of a dyadic Cantor scheme
    StrictFrost {
        /// Set file of kind "cantor" whose ratios are powers of two
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        s: Rat,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Set file naming the support of a measure
    Support {
        #[arg(long)]
        measure: PathBuf,
        /// Also exclude words with mass below C(2^-|w|-1)^2, after checking
        /// that the measure is C-concentrated
        #[arg(long)]
        concentrated: Option<Rat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure built from the positive information about a set at stage k
    OvertMeasure {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Point of the support of a measure, as a word of length n
    Point {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        budget: usize,
    },
    /// Concentrated measure below the input
    Concentrate {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed and overt superset of a closed set obtained by adding isolated points
    PerfectCore {
        #[arg(long)]
        set: PathBuf,
        /// Number of stages to run
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal flow through a capacity file
    Maxflow {
        #[arg(long)]
        cap: PathBuf,
        /// left-greedy or proportional
        #[arg(long, default_value = "left-greedy")]
        strategy: Splitter,
        /// Run this many steps of the relaxation a_{n+1}(v) = min(a_n(v), a_n(v0) + a_n(v1)) instead
        #[arg(long)]
        iterate: Option<usize>,
        /// Where to write the witness flow (or the relaxed labelling)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List words whose mass exceeds 2^-ceil(s|w|)
    CheckFrostman {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        s: Rat,
        /// Deepest level checked (defaults to the measure depth)
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Fibre measure over a bit sequence on the cells of a Cantor scheme
    Shmerkin {
        /// Bits p(1) p(2) ... as a string of 0 and 1
        #[arg(long)]
        bits: String,
        /// Set file of kind "cantor"
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// log mass / log length along a chain of cells
    LocalDim {
        /// Dyadic measure file
        #[arg(long, conflicts_with = "bits")]
        measure: Option<PathBuf>,
        /// Bits of a fibre measure, evaluated in closed form on --set
        #[arg(long, requires = "set")]
        bits: Option<String>,
        /// Set file of kind "cantor" for --bits
        #[arg(long)]
        set: Option<PathBuf>,
        /// The chain; for --bits it defaults to zeros off the forced levels
        #[arg(long)]
        chain: Option<Word>,
        #[arg(long, required = true, value_delimiter = ',')]
        levels: Vec<usize>,
        #[arg(long)]
        csv: bool,
    },
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Refuted(String),
    Violations(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Parse(_)) => EXIT_MALFORMED,
            Failure::Lib(
                Error::NoWitness(_)
                | Error::NoFrostmanMeasure
                | Error::StageBudgetExhausted { .. }
                | Error::ZeroMass(_),
            ) => EXIT_REFUTED,
            Failure::Lib(_) => EXIT_INVARIANT,
            Failure::Io(..) => EXIT_IO,
            Failure::Refuted(_) => EXIT_REFUTED,
            Failure::Violations(_) => EXIT_VIOLATIONS,
            Failure::Usage(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Refuted(m) | Failure::Violations(m) | Failure::Usage(m) => m.clone(),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let _ = out.write_all(report.as_bytes());
            EXIT_OK
        }
        Err(failure) => {
            if let Failure::Refuted(report) | Failure::Violations(report) = &failure {
                let _ = out.write_all(report.as_bytes());
            } else {
                let _ = writeln!(err, "error: {}", failure.message());
            }
            failure.code()
        }
    }
}

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write_text(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn read_set(path: &Path) -> std::result::Result<SetFile, Failure> {
    Ok(parse(&read_text(path)?)?)
}

fn read_scheme(path: &Path) -> std::result::Result<CantorScheme, Failure> {
    match read_set(path)?.scheme() {
        Some(s) => Ok(s?),
        None => Err(Failure::Lib(Error::InvalidArgument(format!(
            "{} is not a set file of kind \"cantor\"",
            path.display()
        )))),
    }
}

fn read_measure(path: &Path) -> std::result::Result<DyadicMeasure, Failure> {
    let file: MeasureFile = parse(&read_text(path)?)?;
    Ok(file.measure()?)
}

fn parse_bits(bits: &str) -> std::result::Result<Vec<bool>, Failure> {
    let w: Word = bits
        .parse()
        .map_err(|_| Failure::Usage(format!("--bits must be a string of 0 and 1, got {bits:?}")))?;
    Ok(w.bits().to_vec())
}

fn emit(out: &Option<PathBuf>, text: &str, report: &mut String) -> std::result::Result<(), Failure> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            report.push_str(text);
            Ok(())
        }
    }
}

fn grouped(words: Vec<(usize, Word)>) -> Vec<(usize, Vec<Word>)> {
    let mut map: std::collections::BTreeMap<usize, Vec<Word>> = std::collections::BTreeMap::new();
    for (t, w) in words {
        map.entry(t).or_default().push(w);
    }
    map.into_iter()
        .map(|(t, mut ws)| {
            ws.sort();
            (t, ws)
        })
        .collect()
}

fn execute(command: Command) -> Outcome {
    let mut report = String::new();
    match command {
        Command::Cantor { ratios, level, out } => {
            let scheme = CantorScheme::from_sequence(ratios.clone())?;
            for (w, cell) in cantor_cells(&scheme, level)? {
                let _ = writeln!(report, "{w} {} {}", cell.lo, cell.hi);
            }
            if let Some(p) = out {
                write_text(&p, &render(&SetFile::Cantor { ratios }))?;
            }
        }
        Command::CantorDim { set, levels } => {
            let scheme = read_scheme(&set)?;
            let p = cantor_dim_partial(&scheme, levels)?;
            report.push_str("level,term_approx,tail_min_approx\n");
            for (i, (t, m)) in p.terms.iter().zip(&p.tail_min).enumerate() {
                let _ = writeln!(report, "{i},{t},{m}");
            }
        }
        Command::Content {
            set,
            s,
            depth,
            stage,
            grid,
            csv,
        } => {
            let name = read_set(&set)?.name()?;
            let stage = stage.unwrap_or(depth);
            match (s, grid) {
                (Some(s), None) => {
                    let _ = writeln!(report, "{}", dyadic_content(&name, &s, depth, stage)?);
                }
                (None, Some(q)) => {
                    let table = content_table(&name, depth, stage, q)?;
                    if csv {
                        report.push_str("s,content\n");
                    }
                    for (s, c) in table {
                        let sep = if csv { "," } else { " " };
                        let _ = writeln!(report, "{s}{sep}{c}");
                    }
                }
                _ => return Err(Failure::Usage("give exactly one of --s and --grid".into())),
            }
        }
        Command::Dim {
            set,
            depth,
            stage,
            grid,
            lo_content,
            hi_divisor,
        } => {
            let name = read_set(&set)?.name()?;
            let rule = BracketRule { lo_content, hi_divisor };
            let d = dim_interval_with(&name, depth, stage.unwrap_or(depth), grid, &rule)?;
            let json = serde_json::json!({
                "lo": d.lo.to_string(),
                "hi": d.hi.to_string(),
                "depth": d.depth,
                "stage": d.stage,
                "grid": grid,
            });
            report.push_str(&render(&json));
        }
        Command::Frost {
            set,
            s,
            k,
            depth,
            stage,
            out,
        } => {
            let name = read_set(&set)?.name()?;
            let task = FrostmanTask {
                s: s.clone(),
                depth,
                stage: stage.unwrap_or(depth),
                k,
            };
            let bound = truncated_max_flow(&capacity_tree(&name, &s, depth, task.stage)?).0;
            let verdict = frost(&name, &task)?;
            let certificate = Certificate {
                s,
                depth,
                k,
                verdict: match verdict {
                    FrostVerdict::Found(_) => "found".into(),
                    FrostVerdict::Refuted(_) => "refuted".into(),
                },
                bound,
            };
            match verdict {
                FrostVerdict::Found(mu) => {
                    let mut file = MeasureFile::from_measure(&mu);
                    file.certificate = Some(certificate);
                    emit(&out, &render(&file), &mut report)?;
                    if out.is_some() {
                        let _ = writeln!(report, "found: total {}", mu.total());
                    }
                }
                FrostVerdict::Refuted(_) => {
                    return Err(Failure::Refuted(render(&certificate)));
                }
            }
        }
        Command::StrictFrost { set, s, depth, out } => {
            let scheme = read_scheme(&set)?;
            let mu = strict_frost(&scheme, &s, depth)?;
            emit(&out, &render(&MeasureFile::from_measure(&mu)), &mut report)?;
            if out.is_some() {
                let _ = writeln!(report, "total {}", mu.total());
            }
        }
        Command::Support {
            measure,
            concentrated,
            out,
        } => {
            let mu = read_measure(&measure)?;
            let mut certified: Vec<(usize, Word)> = mu
                .entries()
                .keys()
                .filter(|w| w.depth() == mu.depth())
                .map(|w| (0, w.clone()))
                .collect();
            if certified.is_empty() {
                certified = mu.entries().keys().map(|w| (0, w.clone())).collect();
            }
            let mut excluded = Vec::new();
            if let Some(c) = concentrated {
                let name = concentrated_support(&mu, &c)?.into_name();
                for w in Word::all_up_to_depth(mu.depth()) {
                    let parent_open = w.parent().is_none_or(|p| !name.excludes(&p, 0));
                    if parent_open && name.excludes(&w, 0) {
                        excluded.push((0, w));
                    }
                }
            }
            let file = SetFile::from_closed_overt(grouped(excluded), grouped(certified));
            emit(&out, &render(&file), &mut report)?;
        }
        Command::OvertMeasure { set, k, out } => {
            let name = read_set(&set)?.name()?;
            let mu = measure_from_overt(&name.overt, k)?;
            emit(&out, &render(&MeasureFile::from_measure(&mu)), &mut report)?;
            if out.is_some() {
                let _ = writeln!(report, "total {}", mu.total());
            }
        }
        Command::Point { measure, n, budget } => {
            let mu = read_measure(&measure)?;
            let w = point_from_measure(&mu, n, budget)?;
            let _ = writeln!(report, "{w}");
        }
        Command::Concentrate { measure, out } => {
            let mu = read_measure(&measure)?;
            let (nu, k) = concentrate(&mu)?;
            emit(&out, &render(&MeasureFile::from_measure(&nu)), &mut report)?;
            let _ = writeln!(report, "k {k} scale {}", Rat::dyadic(k));
        }
        Command::PerfectCore { set, budget, out } => {
            let name = read_set(&set)?.name()?;
            let core = perfect_core(&name.closed, budget)?;
            core.verify()?;
            let mut excluded = Vec::new();
            let mut certified = Vec::new();
            for (w, d, t) in core.decisions() {
                if d.is_positive() {
                    certified.push((t, w.clone()));
                } else {
                    excluded.push((t, w.clone()));
                }
            }
            let file = SetFile::from_closed_overt(grouped(excluded), grouped(certified));
            emit(&out, &render(&file), &mut report)?;
            for p in core.points() {
                let _ = writeln!(
                    report,
                    "point {} flanks {} {} stage {}",
                    p.x, p.flanks[0], p.flanks[1], p.step
                );
            }
        }
        Command::Maxflow {
            cap,
            strategy,
            iterate,
            out,
        } => {
            let file: TreeFile = parse(&read_text(&cap)?)?;
            let cap = file.capacities()?;
            let (value, labelling) = match iterate {
                Some(n) => {
                    let a = max_flow_iterate(&cap, n);
                    let root = a.get(&Word::root()).cloned().unwrap_or_else(Rat::zero);
                    (root, a)
                }
                None => {
                    let (v, g) = truncated_max_flow_with(&cap, strategy);
                    (v, g.entries().clone())
                }
            };
            let _ = writeln!(report, "{value}");
            if let Some(p) = out {
                write_text(&p, &render(&TreeFile::from_labelling(cap.depth(), &labelling)))?;
            }
        }
        Command::CheckFrostman { measure, s, depth } => {
            let mu = read_measure(&measure)?;
            let depth = depth.unwrap_or(mu.depth());
            let bad = frostman_check(&mu, &s, depth)?;
            if bad.is_empty() {
                let _ = writeln!(report, "ok: no violations up to depth {depth}");
            } else {
                let mut text = String::new();
                for w in &bad {
                    let _ = writeln!(
                        text,
                        "violation {w:?} mass {} bound {}",
                        mu.mass(w),
                        Rat::dyadic(s.ceil_mul(w.depth() as u64))
                    );
                }
                return Err(Failure::Violations(text));
            }
        }
        Command::Shmerkin { bits, set, depth, out } => {
            let scheme = read_scheme(&set)?;
            let mu = shmerkin_measure(parse_bits(&bits)?, scheme);
            let cells = mu.materialize(depth)?;
            let file = MeasureFile {
                depth,
                total: cells.mass(&Word::root()),
                mass: cells.entries().iter().map(|(w, x)| (w.clone(), x.clone())).collect(),
                certificate: None,
            };
            emit(&out, &render(&file), &mut report)?;
            for m in 0..=depth {
                let _ = writeln!(report, "level {m} total {}", cells.level_total(m));
            }
        }
        Command::LocalDim {
            measure,
            bits,
            set,
            chain,
            levels,
            csv,
        } => {
            let deepest = levels.iter().copied().max().unwrap_or(0);
            let rows = match (measure, bits) {
                (Some(m), None) => {
                    let mu = read_measure(&m)?;
                    let chain = chain.ok_or_else(|| Failure::Usage("--measure needs --chain".into()))?;
                    local_dimension(&mu as &dyn LocalMass, &chain, &levels)?
                }
                (None, Some(b)) => {
                    let scheme = read_scheme(set.as_ref().expect("clap requires --set"))?;
                    let mu = shmerkin_measure(parse_bits(&b)?, scheme);
                    let chain = match chain {
                        Some(c) => c,
                        None => mu.chain(deepest, |_| false)?,
                    };
                    local_dimension(&mu, &chain, &levels)?
                }
                _ => return Err(Failure::Usage("give exactly one of --measure and --bits".into())),
            };
            if csv {
                report.push_str("level,ratio_approx\n");
            }
            for (m, r) in rows {
                if csv {
                    let _ = writeln!(report, "{m},{r}");
                } else {
                    let _ = writeln!(report, "level {m} ratio_approx {r}");
                }
            }
        }
    }
    Ok(report)
}
