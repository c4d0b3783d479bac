use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use erasurelab::analysis::Analysis;
use erasurelab::catalog;
use erasurelab::curve::{self, Column};
use erasurelab::erasure::{compare_small_p, ComparisonRule, ErrorKind, LivaVariant, Verdict};
use erasurelab::ghw::MatricesDoc;
use erasurelab::rational::{format_sig, is_probability, parse_rational, to_f64};
use erasurelab::simulate::{estimate, ChannelConfig, SimulationReport};
use erasurelab::{Error, LinearCode};

const THREADS_VAR: &str = "ERASURELAB_THREADS";

/// Exact erasure-channel error probabilities of small linear codes.
#[derive(Parser)]
#[command(name = "erasurelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full JSON report: hierarchy, defects, class, Q vectors, bounds.
    Analyze(Source),
    /// Spectra and support matrices as JSON.
    Spectra(Source),
    /// Exact error probability at one point.
    Prob {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = kind_parser)]
        kind: ErrorKind,
        /// Erasure probability, e.g. `1/2` or `0.125`.
        #[arg(long)]
        p: String,
        /// Print a 12-digit float instead of a fraction.
        #[arg(long)]
        float: bool,
    },
    /// Bounds on the coefficients at the generalized weights.
    Bounds {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// CSV of P_amb and P_dec over a grid, one file per code.
    Curve {
        #[command(flatten)]
        source: Source,
        /// `start:stop:step`, inclusive.
        #[arg(long)]
        grid: String,
        /// Add Singleton-style and weight-distribution bound columns.
        #[arg(long)]
        bounds: bool,
        /// Directory for `<name>.csv`; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo estimates next to the exact values.
    Simulate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Which of two codes has the smaller error probability as p -> 0.
    Compare {
        /// Code file path or catalog name.
        first: String,
        /// Code file path or catalog name.
        second: String,
        #[arg(long, value_parser = kind_parser, default_value = "dec")]
        kind: ErrorKind,
    },
    /// List catalog entries or export one in the code file format.
    Catalog {
        /// Entry or group name to export.
        #[arg(long)]
        export: Option<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Code file: `q n k` header then k generator rows.
    #[arg(long)]
    code: Option<PathBuf>,
    /// Catalog entry or group name (see `catalog`).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn kind_parser(s: &str) -> Result<ErrorKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Named {
    name: String,
    code: LinearCode,
}

fn read_code(path: &Path) -> anyhow::Result<LinearCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse::<LinearCode>().with_context(|| format!("parsing {}", path.display()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "code".into(), |s| s.to_string_lossy().into_owned())
}

fn load(source: &Source) -> anyhow::Result<Vec<Named>> {
    match (&source.code, &source.catalog) {
        (Some(path), _) => Ok(vec![Named { name: file_stem(path), code: read_code(path)? }]),
        (None, Some(name)) => {
            Ok(catalog::lookup(name)?.into_iter().map(|e| Named { name: e.name, code: e.code }).collect())
        }
        (None, None) => bail!("either --code or --catalog is required"),
    }
}

/// A path that exists is read as a code file; anything else is a catalog name.
fn load_one(arg: &str) -> anyhow::Result<Named> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(Named { name: file_stem(path), code: read_code(path)? });
    }
    let mut found = catalog::lookup(arg)?;
    if found.len() != 1 {
        bail!("{arg:?} names a group, not a single code");
    }
    let e = found.remove(0);
    Ok(Named { name: e.name, code: e.code })
}

fn print_json<T: serde::Serialize>(out: &mut impl Write, value: &T) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// One JSON value for a single code, an array for a group.
fn print_all<T: serde::Serialize>(out: &mut impl Write, mut values: Vec<T>) -> anyhow::Result<()> {
    if values.len() == 1 {
        print_json(out, &values.remove(0))
    } else {
        print_json(out, &values)
    }
}

fn rule_text(rule: ComparisonRule) -> &'static str {
    match rule {
        ComparisonRule::MinimumDistance => "larger minimum distance",
        ComparisonRule::LeadingCoefficient => "smaller leading coefficient at equal minimum distance",
        ComparisonRule::LexicographicExtension => "lexicographic extension: first differing later coefficient",
        ComparisonRule::Identical => "identical coefficients",
    }
}

fn run(cli: Cli, out: &mut impl Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Analyze(source) => {
            let reports =
                load(&source)?.iter().map(|c| Analysis::new(&c.code)?.report()).collect::<Result<Vec<_>, _>>()?;
            print_all(out, reports)
        }
        Command::Spectra(source) => {
            let docs = load(&source)?
                .iter()
                .map(|c| {
                    let a = Analysis::new(&c.code)?;
                    Ok::<_, Error>(MatricesDoc::new(&a.code, &a.spectra, &a.support))
                })
                .collect::<Result<Vec<_>, _>>()?;
            print_all(out, docs)
        }
        Command::Prob { source, kind, p, float } => {
            let p = parse_rational(&p)?;
            if !is_probability(&p) {
                return Err(Error::OutOfRange(format!("p = {p} is not in [0, 1]")).into());
            }
            let codes = load(&source)?;
            for c in &codes {
                let value = Analysis::new(&c.code)?.poly(kind).evaluate(&p)?;
                let text = if float { format_sig(to_f64(&value), curve::CSV_DIGITS) } else { value.to_string() };
                if codes.len() == 1 {
                    writeln!(out, "{text}")?;
                } else {
                    writeln!(out, "{}\t{text}", c.name)?;
                }
            }
            Ok(())
        }
        Command::Bounds { source, format } => {
            let codes = load(&source)?;
            let mut reports = Vec::new();
            for c in &codes {
                reports.push((c, Analysis::new(&c.code)?.bounds()?));
            }
            match format {
                Format::Json => print_all(out, reports.into_iter().map(|(_, r)| r).collect()),
                Format::Text => {
                    for (c, r) in reports {
                        writeln!(out, "{} [{},{}]_{}", c.name, c.code.n(), c.code.k(), c.code.q())?;
                        if !r.asserted {
                            writeln!(out, "  note: a coordinate is zero in every codeword; bounds are not guaranteed")?;
                        }
                        for b in &r.per_index {
                            write!(
                                out,
                                "  i={} d_i={} A={}  dec: {} <= {} <= {}",
                                b.i, b.d_i, b.spectra, b.dec_lower, b.dec_exact, b.dec_upper
                            )?;
                            if b.degenerate {
                                write!(out, " (degenerate: lower = upper)")?;
                            }
                            match (&b.amb_lower, &b.amb_formula) {
                                (Some(l), _) => writeln!(out, "  amb: {} <= {}", l, b.amb_exact)?,
                                (None, Some(v)) => writeln!(out, "  amb: {} = {}", b.amb_exact, v)?,
                                _ => writeln!(out)?,
                            }
                        }
                    }
                    Ok(())
                }
            }
        }
        Command::Curve { source, grid, bounds, out: dir } => {
            let grid = curve::parse_grid(&grid)?;
            if let Some(d) = &dir {
                fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
            }
            for c in load(&source)? {
                let a = Analysis::new(&c.code)?;
                let report = a.bounds()?;
                let mut cols =
                    vec![Column { name: "P_amb".into(), poly: &a.amb }, Column { name: "P_dec".into(), poly: &a.dec }];
                if bounds {
                    cols.push(Column { name: "bound_singleton".into(), poly: &report.singleton });
                    cols.push(Column {
                        name: format!("bound_liva_{}", variant_name(LivaVariant::Improved)),
                        poly: &report.liva_improved,
                    });
                    cols.push(Column {
                        name: format!("bound_liva_{}", variant_name(LivaVariant::Original)),
                        poly: &report.liva_original,
                    });
                }
                let text = curve::csv(&grid, &cols)?;
                match &dir {
                    Some(d) => {
                        let path = d.join(format!("{}.csv", c.name));
                        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                        writeln!(out, "{}", path.display())?;
                    }
                    None => {
                        writeln!(out, "# {}", c.name)?;
                        write!(out, "{text}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Simulate { source, p, trials, seed } => {
            let cfg = ChannelConfig::new(p, seed, trials)?;
            let mut reports = Vec::new();
            for c in load(&source)? {
                let a = Analysis::new(&c.code)?;
                let est = estimate(&c.code, &cfg)?;
                let exact = exact_at(&a, p)?;
                reports.push(SimulationReport::new(&est, Some(exact)));
            }
            print_all(out, reports)
        }
        Command::Compare { first, second, kind } => {
            let (c1, c2) = (load_one(&first)?, load_one(&second)?);
            let (a1, a2) = (Analysis::new(&c1.code)?, Analysis::new(&c2.code)?);
            let cmp = compare_small_p(a1.poly(kind), a2.poly(kind))?;
            let verdict = match cmp.verdict {
                Verdict::First => format!("first ({}) has the smaller P_{kind} for all small p", c1.name),
                Verdict::Second => format!("second ({}) has the smaller P_{kind} for all small p", c2.name),
                Verdict::TieAtPrefix => "tie: identical coefficients".to_string(),
            };
            writeln!(out, "{verdict}")?;
            writeln!(out, "rule: {}", rule_text(cmp.rule))?;
            if let Some(r) = cmp.decided_at {
                writeln!(
                    out,
                    "decided at r = {r}: Q_{r} = {} vs {}",
                    a1.poly(kind).coeffs[r],
                    a2.poly(kind).coeffs[r]
                )?;
            }
            writeln!(out, "d_1: {} vs {}", a1.profile.d1, a2.profile.d1)?;
            Ok(())
        }
        Command::Catalog { export } => {
            match export {
                Some(name) => {
                    for e in catalog::lookup(&name)? {
                        write!(out, "{}", e.export())?;
                    }
                }
                None => {
                    for e in catalog::all()? {
                        let c = &e.code;
                        writeln!(out, "{}\t[{},{}]_{}\td={:?}", e.name, c.n(), c.k(), c.q(), e.expected.hierarchy)?;
                    }
                    writeln!(out, "amds6\tgroup of the six binary AMDS codes")?;
                }
            }
            Ok(())
        }
    }
}

fn variant_name(v: LivaVariant) -> &'static str {
    match v {
        LivaVariant::Improved => "improved",
        LivaVariant::Original => "original",
    }
}

/// Exact `(P_amb, P_dec)` at a float `p`, evaluated through its exact binary value.
fn exact_at(a: &Analysis, p: f64) -> anyhow::Result<(f64, f64)> {
    let p = erasurelab::Rational::from_float(p).context("p is not finite")?;
    Ok((to_f64(&a.amb.evaluate(&p)?), to_f64(&a.dec.evaluate(&p)?)))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            if e.is_budget() {
                return 3;
            }
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return 4;
        }
    }
    2
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|c| c.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe))
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_VAR}={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match configure_threads().and_then(|()| run(cli, &mut out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if is_broken_pipe(&err) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
