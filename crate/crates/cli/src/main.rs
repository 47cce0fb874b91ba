//! `dzeros`: command-line front end for the zero-window bounds, the
//! verification suites, the covering-measure solver and zero-table reports.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

mod output;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use dzeros::bounds::{
    bound_multiplicity, bound_window, corollary1_bound, corollary1_sigma, corollary2_margin, f_tilde, LogHeight,
};
use dzeros::measures::{covering_slack, measure_from_csv, measure_to_csv, solve_five_delta, CoveringReport, DeltaMeasure};
use dzeros::verify::{run_suite, Suite};
use dzeros::zerodata::{comparison_table, load_zeros, ZeroTable};
use dzeros::{Breakdown, Error, Field, FieldInvariants};

use output::{Cell, Report};

/// Default zero-table file name looked up in `ZETA_ZEROS_DIR`.
const DEFAULT_ZEROS: &str = "zeta_zeros_1e5.txt";
const ZEROS_ENV: &str = "ZETA_ZEROS_DIR";

#[derive(Parser, Debug)]
#[command(name = "dzeros", version, about = "Explicit bounds for zeros of Dedekind zeta functions in short windows")]
struct Cli {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArg {
    /// `Q` or the path of a field descriptor (`degree`, `r1`, `r2`, `log_disc`).
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Window bound for n(T; a) with its three-term breakdown.
    Bound {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        a: f64,
    },
    /// Multiplicity bound for n(T; 0+) at a chosen sigma.
    Mult {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, default_value_t = 0.75)]
        sigma: f64,
    },
    /// Multiplicity bound with the optimising sigma.
    Cor1 {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "T")]
        t: f64,
    },
    /// Sufficient conditions for the log T / log log T multiplicity bound.
    #[command(name = "cor2-check")]
    Cor2Check {
        /// log T, at least 23.
        #[arg(long = "log-T", conflicts_with = "l", required_unless_present = "l")]
        log_t: Option<f64>,
        /// L = log(log T + 31) directly.
        #[arg(long = "L")]
        l: Option<f64>,
    },
    /// Run the property suites; all of them unless one is named.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        /// Zero table for the riemann suite; defaults to ZETA_ZEROS_DIR/zeta_zeros_1e5.txt.
        #[arg(long)]
        zeros: Option<PathBuf>,
    },
    /// Solve for or certify a covering measure.
    Measure {
        #[command(subcommand)]
        action: MeasureAction,
    },
    /// Empirical window counts against the bounds, as CSV.
    Compare {
        #[arg(long)]
        zeros: Option<PathBuf>,
        #[command(flatten)]
        field: FieldArg,
        /// Comma-separated half-widths.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<f64>,
        /// `lo:hi:step`.
        #[arg(long = "T-range")]
        t_range: TRange,
    },
    /// Grids of f~ and the window bound for plotting.
    Table {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "T-range")]
        t_range: TRange,
        #[arg(long, value_delimiter = ',', default_value = "0.6,0.75,0.9")]
        sigma: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1")]
        a: Vec<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum MeasureAction {
    /// Five-atom optimum for a = 1, alpha = 1/4.
    Solve {
        /// Also write the measure as CSV to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify a measure read from CSV.
    Check {
        #[arg(long)]
        file: PathBuf,
        /// Rescale to this window half-width first.
        #[arg(long)]
        a: Option<f64>,
    },
}

/// Inclusive grid `lo, lo + step, ..., <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct TRange {
    lo: f64,
    hi: f64,
    step: f64,
}

impl FromStr for TRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts.as_slice() else {
            return Err(format!("expected lo:hi:step, got {s}"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("not a number: {x}"));
        let r = TRange { lo: num(lo)?, hi: num(hi)?, step: num(step)? };
        if !(r.step > 0.0) || !(r.hi >= r.lo) || !r.lo.is_finite() || !r.hi.is_finite() {
            return Err(format!("need lo <= hi and step > 0, got {s}"));
        }
        Ok(r)
    }
}

impl TRange {
    fn points(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.lo + k as f64 * self.step).collect()
    }
}

/// How a command ended, short of an input error.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_field(arg: &FieldArg) -> Result<Field, Error> {
    if arg.field.trim() == "Q" {
        return Ok(FieldInvariants::rationals());
    }
    let text = std::fs::read_to_string(&arg.field).map_err(|e| Error::Io(format!("{}: {e}", arg.field)))?;
    dzeros::parse_field_descriptor(&text)
}

/// Resolves a zero-table path: as given, then under `ZETA_ZEROS_DIR`; with
/// no path, the default file name under `ZETA_ZEROS_DIR`.
fn resolve_zeros(given: Option<&Path>) -> Option<PathBuf> {
    let dir = std::env::var_os(ZEROS_ENV).map(PathBuf::from);
    match given {
        Some(p) if p.exists() || p.is_absolute() => Some(p.to_path_buf()),
        Some(p) => Some(dir.map(|d| d.join(p)).filter(|c| c.exists()).unwrap_or_else(|| p.to_path_buf())),
        None => dir.map(|d| d.join(DEFAULT_ZEROS)).filter(|c| c.exists()),
    }
}

fn field_text(arg: &FieldArg) -> Result<String, Error> {
    if arg.field.trim() == "Q" {
        Ok("Q".into())
    } else {
        std::fs::read_to_string(&arg.field).map_err(|e| Error::Io(format!("{}: {e}", arg.field)))
    }
}

fn breakdown_report(label: &'static str, x: f64, b: &Breakdown) -> Report {
    let mut r = Report::new(&["T", label, "sigma", "Q", "main_term", "middle_term", "degree_term", "total"]);
    r.push(vec![
        b.params.t.into(),
        x.into(),
        b.params.sigma.into(),
        b.params.q.into(),
        b.main_term.into(),
        b.middle_term.into(),
        b.degree_term.into(),
        b.total.into(),
    ]);
    r
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome, Error> {
    let json = cli.json;
    let emit = |r: &Report, out: &mut dyn Write| r.emit(json, out).map_err(Error::from);
    match cli.command {
        Command::Bound { field, t, a } => {
            let f = parse_field(&field)?;
            emit(&breakdown_report("a", a, &bound_window(&f, t, a)?), out)?;
        }
        Command::Mult { field, t, sigma } => {
            let f = parse_field(&field)?;
            emit(&breakdown_report("a", 0.0, &bound_multiplicity(&f, t, sigma)?), out)?;
        }
        Command::Cor1 { field, t } => {
            let f = parse_field(&field)?;
            let mut r = Report::new(&["T", "sigma", "bound"]);
            r.push(vec![t.into(), corollary1_sigma(&f, t)?.into(), corollary1_bound(&f, t)?.into()]);
            emit(&r, out)?;
        }
        Command::Cor2Check { log_t, l } => {
            let h = match (log_t, l) {
                (Some(x), _) => LogHeight::LogT(x),
                (None, Some(l)) => LogHeight::L(l),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let m = corollary2_margin(h)?;
            let holds = m.subcheck1 && m.subcheck2 && m.bound_ratio <= 1.0;
            let mut r = Report::new(&["L", "bound_ratio", "subcheck1", "subcheck2", "l_threshold_ok", "holds"]);
            r.push(vec![m.l.into(), m.bound_ratio.into(), m.subcheck1.into(), m.subcheck2.into(), m.l_threshold_ok.into(), holds.into()]);
            emit(&r, out)?;
            if !holds {
                return Ok(Outcome::Failed);
            }
        }
        Command::Verify { suite, zeros } => return verify(suite.as_deref(), zeros.as_deref(), json, out),
        Command::Measure { action } => return measure(action, json, out),
        Command::Compare { zeros, field, a, t_range } => {
            let path = resolve_zeros(zeros.as_deref())
                .ok_or_else(|| Error::Io(format!("no zero table given and {ZEROS_ENV}/{DEFAULT_ZEROS} not found")))?;
            let table = load_zeros(&path, &field_text(&field)?)?;
            let rows = comparison_table(&table, &t_range.points(), &a)?;
            let mut r = Report::new(&["T", "a", "empirical", "grh_bound", "uncond_bound", "grh_slack", "uncond_slack"]);
            for x in &rows {
                r.push(vec![x.t.into(), x.a.into(), x.empirical.into(), x.grh_bound.into(), x.uncond_bound.into(), x.grh_slack.into(), x.uncond_slack.into()]);
            }
            emit(&r, out)?;
        }
        Command::Table { field, t_range, sigma, a } => {
            let f = parse_field(&field)?;
            let mut r = Report::new(&["quantity", "T", "parameter", "value"]);
            let na = |res: dzeros::Result<Breakdown>| match res {
                Ok(b) => Ok(Cell::Num(b.total)),
                Err(Error::Domain(_)) => Ok(Cell::Na),
                Err(e) => Err(e),
            };
            for t in t_range.points() {
                for &s in &sigma {
                    r.push(vec!["f_tilde".into(), t.into(), s.into(), na(f_tilde(&f, s, t))?]);
                }
                for &x in &a {
                    r.push(vec!["bound_window".into(), t.into(), x.into(), na(bound_window(&f, t, x))?]);
                }
            }
            emit(&r, out)?;
        }
    }
    Ok(Outcome::Ok)
}

fn verify(suite: Option<&str>, zeros: Option<&Path>, json: bool, out: &mut impl Write) -> Result<Outcome, Error> {
    let suites = match suite {
        Some(s) => vec![s.parse::<Suite>()?],
        None => Suite::ALL.to_vec(),
    };
    let table: Option<ZeroTable> = if suites.contains(&Suite::Riemann) {
        match resolve_zeros(zeros) {
            Some(p) => Some(load_zeros(&p, "Q")?),
            None => {
                eprintln!("note: no zero table ({ZEROS_ENV} unset and no --zeros); zero-based riemann checks skipped");
                None
            }
        }
    } else {
        None
    };
    let mut all_passed = true;
    let mut r = Report::new(&["suite", "check", "passed", "detail"]);
    for s in suites {
        for c in run_suite(s, table.as_ref()) {
            all_passed &= c.passed;
            if !json {
                writeln!(out, "[{}] {c}", s.name())?;
            }
            r.push(vec![s.name().into(), c.name.into(), c.passed.into(), c.detail.into()]);
        }
    }
    if json {
        out.write_all(r.to_json().as_bytes())?;
    }
    Ok(if all_passed { Outcome::Ok } else { Outcome::Failed })
}

fn covering_lines(m: &DeltaMeasure<f64>, rep: &CoveringReport<f64>, json: bool, out: &mut impl Write) -> Result<(), Error> {
    let mut r = Report::new(&["quantity", "value"]);
    r.push(vec!["alpha".into(), m.alpha.into()]);
    r.push(vec!["window_a".into(), m.window_a.into()]);
    for (k, (b, c)) in m.centers.iter().zip(&m.weights).enumerate() {
        r.push(vec![format!("b{k}").into(), (*b).into()]);
        r.push(vec![format!("c{k}").into(), (*c).into()]);
    }
    r.push(vec!["cost".into(), m.cost().into()]);
    r.push(vec!["holds".into(), rep.holds.into()]);
    r.push(vec!["min_slack".into(), rep.min_slack.into()]);
    r.push(vec!["nonnegative".into(), rep.nonnegative.into()]);
    r.push(vec!["certificate".into(), rep.root_certificate.to_string().into()]);
    if json {
        // one object keyed by quantity
        let obj: serde_json::Map<String, serde_json::Value> = r
            .rows
            .iter()
            .map(|row| {
                let key = match &row[0] {
                    Cell::Text(s) => s.clone(),
                    _ => unreachable!("quantity names are text"),
                };
                let mut one = Report::new(&["v"]);
                one.push(vec![row[1].clone()]);
                let v: serde_json::Value = serde_json::from_str(&one.to_json()).expect("own output");
                (key, v["v"].clone())
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&obj).expect("serialisable"))?;
    } else {
        out.write_all(r.to_csv().as_bytes())?;
    }
    Ok(())
}

fn measure(action: MeasureAction, json: bool, out: &mut impl Write) -> Result<Outcome, Error> {
    let (m, must_beat_half) = match action {
        MeasureAction::Solve { out: path } => {
            let m = solve_five_delta()?;
            if let Some(p) = path {
                std::fs::write(&p, measure_to_csv(&m)).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            }
            (m, true)
        }
        MeasureAction::Check { file, a } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let m = measure_from_csv(&text)?;
            let m = match a {
                Some(a) => m.rescaled(a)?,
                None => m,
            };
            (m, false)
        }
    };
    let rep = covering_slack(&m)?;
    covering_lines(&m, &rep, json, out)?;
    let ok = rep.holds && (!must_beat_half || m.cost() <= 0.5);
    Ok(if ok { Outcome::Ok } else { Outcome::Failed })
}
