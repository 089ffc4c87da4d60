use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use cyclogon::irreducible::SearchBudget;
use cyclogon::numeric::{self, with_precision, HighPrec, PolygonSpec, Real, SolverConfig};
use cyclogon::report::{self, Check, ReportItem, RunReport};
use cyclogon::series::{self, QuadExpr};
use cyclogon::{BiPoly, Rational};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cyclogon", version, about = "Constructibility of cyclic polygons from sides or center distances")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Print the versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Residual tolerance for numeric cross-checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Time budget in seconds for searches.
    #[arg(long, global = true, default_value_t = 60)]
    budget: u64,
    /// Working precision in bits for the multiprecision solver.
    #[arg(long, global = true, default_value_t = numeric::DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a cyclic polygon given by its side lengths.
    CheckSides {
        #[arg(required = true, value_parser = rational)]
        values: Vec<Rational>,
    },
    /// Analyze a cyclic polygon given by the distances of its sides to the center.
    CheckDistances {
        #[arg(required = true, allow_negative_numbers = true, value_parser = rational)]
        values: Vec<Rational>,
    },
    /// Print W_{k,m}(a, b, x); a and b stay symbolic when omitted.
    Wpoly {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = rational)]
        a: Option<Rational>,
        #[arg(long, value_parser = rational)]
        b: Option<Rational>,
    },
    /// Expand an expression in x, sqrt and rationals as a series at 0+.
    Series {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Numeric circumradius.
    Radius {
        #[arg(long, num_args = 1.., value_parser = rational, conflicts_with = "distances", required_unless_present = "distances")]
        sides: Vec<Rational>,
        #[arg(long, num_args = 1.., allow_negative_numbers = true, value_parser = rational)]
        distances: Vec<Rational>,
    },
    /// Search c in (lo, hi) with P(1^k, c^m) certified non-constructible.
    Specialize {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = rational, default_value = "0")]
        lo: Rational,
        #[arg(long, value_parser = rational, default_value = "1")]
        hi: Rational,
        #[arg(long, default_value_t = 1)]
        hits: usize,
        #[arg(long, default_value_t = 200)]
        candidates: usize,
    },
    /// Even n: prime and side choice, Eisenstein certificates for both modes.
    EvenN {
        #[arg(long)]
        n: u32,
    },
    /// Run the golden corpus.
    Reproduce {
        #[arg(long)]
        filter: Option<String>,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    cyclogon::scalar::parse_rational(s).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> RunReport {
    let g = &cli.global;
    let command: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let mut out = RunReport::new(command);
    match &cli.cmd {
        Cmd::CheckSides { values } => {
            let a = positive(values).and_then(|_| report::check_sides(values));
            out.push(report::analysis_item("check-sides", &a, None, g.tol));
        }
        Cmd::CheckDistances { values } => {
            let a = report::check_distances(values);
            out.push(report::analysis_item("check-distances", &a, None, g.tol));
        }
        Cmd::Wpoly { k, m, a, b } => out.push(wpoly(*k, *m, a.as_ref(), b.as_ref())),
        Cmd::Series { expr, order } => out.push(series_item(expr, *order, g.tol)),
        Cmd::Radius { sides, distances } => out.push(radius(sides, distances, g.tol)),
        Cmd::Specialize { k, m, lo, hi, hits, candidates } => {
            let budget = SearchBudget {
                max_candidates: *candidates,
                time: Some(Duration::from_secs(g.budget)),
                max_hits: Some(*hits),
            };
            let r = report::polygon_search(*k, *m, lo.clone(), hi.clone(), &budget);
            out.push(report::search_item("specialize", *k, *m, &r));
        }
        Cmd::EvenN { n } => out.push(even_n(*n)),
        Cmd::Reproduce { filter } => {
            let r = report::reproduce(filter.as_deref());
            for item in r.items {
                out.push(item);
            }
            if out.items.is_empty() {
                out.push(ReportItem::new("reproduce", Value::Null, vec![Check::new("filter", false, "no item matches")]));
            }
        }
    }
    out.elapsed_ms = start.elapsed().as_millis() as u64;
    out
}

fn positive(values: &[Rational]) -> Result<(), report::ReportError> {
    report::require_positive(values)
}

fn failed(name: &str, err: impl ToString) -> ReportItem {
    let e = err.to_string();
    ReportItem::new(name, json!({ "error": e }), vec![Check::new(name, false, e)])
}

fn wpoly(k: u32, m: u32, a: Option<&Rational>, b: Option<&Rational>) -> ReportItem {
    let text = match (a, b) {
        (Some(a), Some(b)) => cyclogon::trig::w_poly(k, m, a, b).map(|w| (w.to_string(), Some(w.primitive_integer()))),
        (None, None) => {
            let vars = ('a', 'b');
            cyclogon::trig::w_poly(k, m, &BiPoly::x_in(vars), &BiPoly::y_in(vars)).map(|w| (w.to_string(), None))
        }
        _ => return failed("wpoly", "give both --a and --b or neither"),
    };
    match text {
        Ok((w, prim)) => {
            let mut result = json!({ "k": k, "m": m, "polynomial": w });
            if let Some(p) = &prim {
                result["primitive"] = json!(p);
            }
            let mut item = ReportItem::new("wpoly", result, vec![]);
            item.notes.push(format!("W = {}", w));
            if let Some(p) = prim {
                item.notes.push(format!("primitive: {}", p));
            }
            item
        }
        Err(e) => failed("wpoly", e),
    }
}

fn series_item(expr: &str, order: usize, tol: f64) -> ReportItem {
    let e = match QuadExpr::parse(expr) {
        Ok(e) => e,
        Err(e) => return failed("series", e),
    };
    let s = match series::expand_expr(&e, order) {
        Ok(s) => s,
        Err(e) => return failed("series", e),
    };
    let limit = match s.limit_at_zero_plus() {
        Ok(series::Limit::Value(v)) => json!({ "value": v, "approx": v.to_f64() }),
        Ok(series::Limit::Zero) => json!("0"),
        Ok(series::Limit::PlusInfinity) => json!("+inf"),
        Ok(series::Limit::MinusInfinity) => json!("-inf"),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let points = [1e-2, 5e-3, 1e-3];
    let check = series::series_numeric_check(&e, &s, &points, tol);
    let mut item = ReportItem::new(
        "series",
        json!({ "expr": e.to_string(), "order": order, "series": s.to_json(), "limit": limit, "numeric": check }),
        vec![Check::new("partial sums", check.passed, format!("{} samples", check.samples.len()))],
    );
    item.notes.push(format!("{} = {}", e, s));
    item.notes.push(format!("limit at 0+: {}", limit));
    item
}

fn radius(sides: &[Rational], distances: &[Rational], tol: f64) -> ReportItem {
    let cfg = SolverConfig::default();
    let (spec, r) = if sides.is_empty() {
        let spec = PolygonSpec::from_distances(distances.to_vec());
        let r = numeric::circumradius_distances::<HighPrec>(&spec, &cfg);
        (spec, r)
    } else {
        let spec = PolygonSpec::from_lengths(sides.to_vec());
        let r = numeric::circumradius_sides::<HighPrec>(&spec, &cfg);
        (spec, r)
    };
    match r {
        Ok(c) => {
            let mut item = ReportItem::new(
                "radius",
                json!({ "input": spec, "radius": c.radius.to_string(), "approx": c.radius.to_f64(),
                    "residual": c.residual, "center_inside": c.center_inside, "precision_bits": HighPrec::precision_bits() }),
                vec![Check::new("residual", c.residual < tol, format!("{:e}", c.residual))],
            );
            item.notes.push(format!("r = {}", c.radius));
            if !c.center_inside {
                item.notes.push("center lies outside the polygon".into());
            }
            item
        }
        Err(e) => failed("radius", e),
    }
}

fn even_n(n: u32) -> ReportItem {
    match report::even_case(n) {
        Ok(c) => {
            let mut item = ReportItem::new(
                "even-n",
                serde_json::to_value(&c).unwrap_or(Value::Null),
                vec![Check::new("certificates and congruences", c.passed(), format!("p = {}", c.selection.p))],
            );
            item.notes.push(format!("p = {}, a = {}, b = {}", c.selection.p, c.selection.a, c.selection.b));
            item.notes.push(format!("f/x = {}", c.f_over_x));
            item.notes.push(format!("sides: {:?}, distances: {:?}", c.sides_verdict.status, c.distances_verdict.status));
            item
        }
        Err(e) => failed("even-n", e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are failures; 2 is reserved for Unknown verdicts
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let report = with_precision(cli.global.precision, || run(&cli));
    if cli.global.json {
        match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{}", s),
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(1);
            }
        }
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
