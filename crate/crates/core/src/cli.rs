//! Command-line front end. [`run`] never touches the process: it returns
//! the exit code and both output streams.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::closed_form::{closed, closed_exact, Total};
use crate::composition::{aggregate, enumerate_compositions, Stat};
use crate::error::Error;
use crate::formulas::{dsv_nk, hsp_nk, sp_count_nk};
use crate::geometric::{
    exact_oracle_moments, expected_value, monte_carlo, series_moments, variance_formula, GeomParams,
};
use crate::numeric::parse_rational;
use crate::report::{integer, rational, Check, Report, Status};
use crate::series::{
    build_dsv_series, build_hsp_series, build_sp_series, build_sv_series, marker_moment,
    rational_gf_coeffs, GfTable, Marker, RationalGf,
};
use crate::verify::{verify_report, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "sympeaks", version, about = "Symmetric peaks and valleys in integer compositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List compositions of n with their statistics
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Brute-force totals per n and per (n, k)
    Table {
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Coefficients of the truncated generating functions
    Gf {
        #[arg(long, value_enum)]
        which: GfWhich,
        #[arg(long, default_value_t = 18)]
        max_n: usize,
    },
    /// Closed forms for the height and depth totals
    ClosedForm {
        #[arg(long, value_enum)]
        which: TotalArg,
        #[command(flatten)]
        range: Range,
    },
    /// Summation formulas per (n, k)
    Formula {
        #[arg(long, value_enum)]
        which: FormulaWhich,
        #[arg(long, requires = "k", conflicts_with = "max_n")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "n")]
        max_n: Option<usize>,
    },
    /// Geometric random words
    Geom {
        #[command(subcommand)]
        action: GeomCommand,
    },
    /// Run every cross-check
    Verify {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Range {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args, Debug)]
struct WordArgs {
    #[arg(long, value_enum)]
    stat: StatArg,
    /// "a/b", an integer or a decimal
    #[arg(long)]
    p: String,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum GeomCommand {
    Expect(WordArgs),
    Variance(WordArgs),
    Simulate {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    Oracle {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 60)]
        cap: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GfWhich {
    FullHsp,
    FullDsv,
    HspTotal,
    HspNk,
    DsvTotal,
    DsvNk,
    DsvNkPrinted,
    SpMarginal,
    SvMarginal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TotalArg {
    Hsp,
    Dsv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormulaWhich {
    Hsp,
    Dsv,
    SpCount,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StatArg {
    Sp,
    Sv,
    Hsp,
    Dsv,
}

impl From<StatArg> for Stat {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::Sp => Stat::Sp,
            StatArg::Sv => Stat::Sv,
            StatArg::Hsp => Stat::Hsp,
            StatArg::Dsv => Stat::Dsv,
        }
    }
}

enum Output {
    Report(Report),
    Text(String),
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Output::Text(s)) => Outcome { code: EXIT_OK, stdout: s, stderr: String::new() },
        Ok(Output::Report(r)) => {
            let failed = r.failed();
            Outcome {
                code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK },
                stdout: r.to_json(),
                stderr: if failed { "one or more checks failed\n".to_string() } else { String::new() },
            }
        }
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: Command) -> Result<Output, Error> {
    match cmd {
        Command::Enumerate { n, k, format } => Ok(enumerate(n, k, format)),
        Command::Table { max_n, format } => Ok(table(max_n, format)),
        Command::Gf { which, max_n } => gf(which, max_n).map(Output::Report),
        Command::ClosedForm { which, range } => Ok(Output::Report(closed_form(which, range))),
        Command::Formula { which, n, k, max_n } => formula(which, n, k, max_n).map(Output::Report),
        Command::Geom { action } => geom(action).map(Output::Report),
        Command::Verify { max_n, deep } => Ok(Output::Report(verify_report(VerifyConfig { max_n, deep }))),
    }
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn enumerate(n: u64, k: Option<usize>, format: Format) -> Output {
    let comps: Vec<_> = enumerate_compositions(n, k).collect();
    match format {
        Format::Csv => Output::Text(csv_text(
            &["parts", "n", "k", "sp", "sv", "hsp", "dsv"],
            comps.iter().map(|c| {
                let s = c.stats();
                vec![
                    c.to_string(),
                    c.n().to_string(),
                    c.k().to_string(),
                    s.sp.to_string(),
                    s.sv.to_string(),
                    s.hsp.to_string(),
                    s.dsv.to_string(),
                ]
            }),
        )),
        Format::Json => {
            let mut r = Report::new("enumerate").param("n", n).param("k", k);
            r.rows = comps
                .iter()
                .map(|c| {
                    let s = c.stats();
                    json!({ "parts": c.to_string(), "n": c.n(), "k": c.k(), "sp": s.sp, "sv": s.sv, "hsp": s.hsp, "dsv": s.dsv })
                })
                .collect();
            Output::Report(r)
        }
    }
}

fn table(max_n: u64, format: Format) -> Output {
    let mut rows: Vec<[String; 7]> = Vec::new();
    for n in 0..=max_n {
        let a = aggregate(n);
        for row in a.rows.iter().chain([&a.totals]) {
            rows.push([
                n.to_string(),
                row.k.map_or("total".to_string(), |k| k.to_string()),
                row.count.to_string(),
                row.sp.to_string(),
                row.sv.to_string(),
                row.hsp.to_string(),
                row.dsv.to_string(),
            ]);
        }
    }
    let header = ["n", "k", "count", "sp", "sv", "hsp", "dsv"];
    match format {
        Format::Csv => Output::Text(csv_text(&header, rows.into_iter().map(Vec::from))),
        Format::Json => {
            let mut r = Report::new("table").param("max_n", max_n);
            r.rows = rows
                .into_iter()
                .map(|row| {
                    let obj: serde_json::Map<String, Value> = header
                        .iter()
                        .zip(row)
                        .map(|(h, v)| (h.to_string(), Value::String(v)))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            Output::Report(r)
        }
    }
}

fn gf(which: GfWhich, max_n: usize) -> Result<Report, Error> {
    let name = format!("{which:?}");
    let mut r = Report::new("gf").param("which", &name).param("max_n", max_n);
    let rational_table = |w: RationalGf| -> Result<Vec<Value>, Error> {
        Ok(match rational_gf_coeffs(w, max_n)? {
            GfTable::Total(v) => v
                .iter()
                .enumerate()
                .map(|(n, c)| json!({ "n": n, "value": rational(c) }))
                .collect(),
            GfTable::Grid(g) => g
                .iter()
                .enumerate()
                .flat_map(|(n, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(k, c)| json!({ "n": n, "k": k, "value": rational(c) }))
                })
                .collect(),
        })
    };
    r.rows = match which {
        GfWhich::FullHsp | GfWhich::FullDsv => {
            let (s, count, mag) = match which {
                GfWhich::FullHsp => (build_hsp_series(max_n), "q", "h"),
                _ => (build_dsv_series(max_n), "p", "d"),
            };
            s.coeffs()
                .iter()
                .enumerate()
                .flat_map(|(n, m)| {
                    m.terms()
                        .map(|(e, c)| {
                            json!({ "n": n, "y": e[0], count: e[1], mag: e[2], "value": rational(c) })
                        })
                        .collect::<Vec<_>>()
                })
                .collect()
        }
        GfWhich::HspTotal => rational_table(RationalGf::HspTotal)?,
        GfWhich::HspNk => rational_table(RationalGf::HspNk)?,
        GfWhich::DsvTotal => rational_table(RationalGf::DsvTotal)?,
        GfWhich::DsvNk => rational_table(RationalGf::DsvNk)?,
        GfWhich::DsvNkPrinted => rational_table(RationalGf::DsvNkPrinted)?,
        GfWhich::SpMarginal | GfWhich::SvMarginal => {
            let m = match which {
                GfWhich::SpMarginal => marker_moment(&build_sp_series(max_n), Marker::Q),
                _ => marker_moment(&build_sv_series(max_n), Marker::P),
            };
            m.coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| json!({ "n": n, "value": rational(c) }))
                .collect()
        }
    };
    Ok(r)
}

fn closed_form(which: TotalArg, range: Range) -> Report {
    let which = match which {
        TotalArg::Hsp => Total::Hsp,
        TotalArg::Dsv => Total::Dsv,
    };
    let name = which.stat().name();
    let ns: Vec<usize> = match (range.n, range.max_n) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => unreachable!("clap requires one of --n, --max-n"),
    };
    let mut r = Report::new("closed-form")
        .param("which", name)
        .param("n", range.n)
        .param("max_n", range.max_n);
    for n in ns {
        let exact = closed_exact(which, n);
        let value = closed(which, n);
        r.rows.push(json!({
            "n": n,
            "re": rational(&exact.re),
            "im": rational(&exact.im),
            "value": value.as_ref().map(integer).unwrap_or(Value::Null),
            "integral": value.is_ok(),
        }));
        r.checks.push(Check::expect(
            format!("closed_form.{name}.integral.n{n:03}"),
            value.is_ok(),
            rational(&exact.re),
            rational(&exact.im),
            "imaginary part zero and value a nonnegative integer",
        ));
    }
    r
}

fn formula(which: FormulaWhich, n: Option<usize>, k: Option<usize>, max_n: Option<usize>) -> Result<Report, Error> {
    let name = match which {
        FormulaWhich::Hsp => "hsp",
        FormulaWhich::Dsv => "dsv",
        FormulaWhich::SpCount => "sp-count",
    };
    let eval = |n: usize, k: usize| -> Result<BigInt, Error> {
        match which {
            FormulaWhich::Hsp => Ok(hsp_nk(n, k)),
            FormulaWhich::Dsv => Ok(dsv_nk(n, k)),
            FormulaWhich::SpCount => sp_count_nk(n, k),
        }
    };
    let cells: Vec<(usize, usize)> = match (n, k, max_n) {
        (Some(n), Some(k), _) => vec![(n, k)],
        (_, _, Some(m)) => {
            let k_min = if matches!(which, FormulaWhich::SpCount) { 4 } else { 0 };
            (0..=m).flat_map(|n| (k_min..=n).map(move |k| (n, k))).collect()
        }
        _ => unreachable!("clap enforces --n with --k, or --max-n"),
    };
    let mut r = Report::new("formula")
        .param("which", name)
        .param("n", n)
        .param("k", k)
        .param("max_n", max_n);
    for (n, k) in cells {
        r.rows.push(json!({ "n": n, "k": k, "value": integer(&eval(n, k)?) }));
    }
    Ok(r)
}

fn geom(cmd: GeomCommand) -> Result<Report, Error> {
    let prepare = |w: &WordArgs| -> Result<(Stat, GeomParams), Error> {
        let p = parse_rational(&w.p)?;
        Ok((w.stat.into(), GeomParams::new(p, w.n)?))
    };
    let base = |action: &str, stat: Stat, g: &GeomParams| {
        Report::new(format!("geom {action}"))
            .param("stat", stat.name())
            .param("p", g.p.to_string())
            .param("n", g.n)
    };
    let exact_moments = |stat: Stat, g: &GeomParams| {
        if g.q.is_zero() {
            // every letter is 1, nothing is ever counted
            Ok((BigRational::zero(), BigRational::zero()))
        } else {
            series_moments(stat, &g.p, g.n).map(|m| (m.mean.clone(), m.variance()))
        }
    };
    match cmd {
        GeomCommand::Expect(w) => {
            let (stat, g) = prepare(&w)?;
            let value = expected_value(stat, &g);
            let (series, _) = exact_moments(stat, &g)?;
            let mut r = base("expect", stat, &g);
            r.rows.push(json!({ "stat": stat.name(), "value": rational(&value), "series": rational(&series) }));
            r.checks.push(Check::expect(
                "geometric.expectation.series",
                value == series,
                rational(&value),
                rational(&series),
                "formula against the marker-series coefficient",
            ));
            Ok(r)
        }
        GeomCommand::Variance(w) => {
            let (stat, g) = prepare(&w)?;
            let value = variance_formula(stat, &g)?;
            let (_, exact) = exact_moments(stat, &g)?;
            let mut r = base("variance", stat, &g);
            r.rows.push(json!({ "stat": stat.name(), "value": rational(&value), "exact": rational(&exact) }));
            r.checks.push(Check::new(
                "geometric.variance.exact",
                if value == exact { Status::Pass } else { Status::Finding },
                rational(&value),
                rational(&exact),
                "printed formula against the exact variance from the marker series",
            ));
            Ok(r)
        }
        GeomCommand::Simulate { word, trials, seed } => {
            let (stat, g) = prepare(&word)?;
            if trials == 0 {
                return Err(Error::InvalidArgument("trials must be at least 1".into()));
            }
            let s = monte_carlo(stat, &g, trials, seed);
            let mut r = base("simulate", stat, &g).param("trials", trials).param("seed", seed);
            r.rows.push(serde_json::to_value(&s).expect("summary is serializable"));
            Ok(r)
        }
        GeomCommand::Oracle { word, cap } => {
            let (stat, g) = prepare(&word)?;
            if cap < 2 {
                return Err(Error::InvalidArgument(format!("letter cap must be at least 2, got {cap}")));
            }
            let o = exact_oracle_moments(stat, &g, cap);
            let (lo, hi) = o.variance_interval();
            let mut r = base("oracle", stat, &g).param("cap", cap);
            r.rows.push(json!({
                "stat": stat.name(),
                "captured_mass": rational(&o.captured_mass),
                "mean": rational(&o.mean),
                "second_moment": rational(&o.second_moment),
                "tail_bound": rational(&o.tail_bound),
                "second_moment_tail_bound": rational(&o.second_moment_tail_bound),
                "variance_lower": rational(&lo),
                "variance_upper": rational(&hi),
            }));
            let e = expected_value(stat, &g);
            let gap = &e - &o.mean;
            r.checks.push(Check::expect(
                "geometric.expectation.oracle",
                gap >= BigRational::zero() && gap <= o.tail_bound,
                rational(&e),
                rational(&o.mean),
                "formula minus capped oracle mean lies in [0, tail bound]",
            ));
            Ok(r)
        }
    }
}
