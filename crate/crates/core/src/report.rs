//! Case analysis for concrete polygons and the versioned JSON run report.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::fields::TowerElement;
use crate::irreducible::{
    self, bracket_around, nonconstructibility_verdict, Certificate, IrrError, Status, Verdict, Witness,
};
use crate::numeric::{self, HighPrec, Mode, NumericError, PolygonSpec, Real, SolverConfig};
use crate::poly::{BiPoly, QPoly, UniPoly, ZPoly};
use crate::trig::{self, FVariant, TrigError};

type Q = BigRational;

pub const SCHEMA: &str = "cyclogon-report/1";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Trig(#[from] TrigError),
    #[error(transparent)]
    Irreducible(#[from] IrrError),
    #[error(transparent)]
    Field(#[from] crate::fields::FieldError),
    #[error("{0}")]
    Usage(String),
}

/// Numeric value of the quantity the exact polynomial is about.
#[derive(Clone, Debug, Serialize)]
pub struct NumericCross {
    pub radius: f64,
    /// What the polynomial variable stands for, e.g. `1/(2r)`.
    pub quantity: String,
    pub value: f64,
    /// `|P(value)|` at the multiprecision working precision.
    pub residual: f64,
    pub precision_bits: usize,
}

/// Result of a side or distance analysis.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub mode: Mode,
    /// Canonically sorted input.
    pub values: Vec<String>,
    pub n: usize,
    pub method: String,
    pub verdict: Verdict,
    pub numeric: Option<NumericCross>,
}

impl Analysis {
    pub fn status(&self) -> Status {
        self.verdict.status
    }
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn canonical(values: &[Q]) -> Vec<Q> {
    let mut v = values.to_vec();
    v.sort();
    v
}

fn radius_sides(spec: &PolygonSpec) -> Result<HighPrec, ReportError> {
    Ok(numeric::circumradius_sides::<HighPrec>(spec, &SolverConfig::default())?.radius)
}

fn radius_distances(spec: &PolygonSpec) -> Result<HighPrec, ReportError> {
    Ok(numeric::circumradius_distances::<HighPrec>(spec, &SolverConfig::default())?.radius)
}

/// Runs the verdict on `p` at the numeric `value`, recording the cross-check.
fn verdict_at(
    p: &ZPoly,
    value: HighPrec,
    radius: &HighPrec,
    quantity: &str,
) -> Result<(Verdict, NumericCross), ReportError> {
    let residual = numeric::eval_poly(&p.to_rational(), &value).abs().to_f64();
    let v = value.to_f64();
    let verdict = nonconstructibility_verdict(p, &bracket_around(v, 1e-10))?;
    let cross = NumericCross {
        radius: radius.to_f64(),
        quantity: quantity.into(),
        value: v,
        residual,
        precision_bits: HighPrec::precision_bits(),
    };
    Ok((verdict, cross))
}

fn half_inverse(r: &HighPrec) -> HighPrec {
    HighPrec::one() / (HighPrec::from_f64(2.0) * r.clone())
}

fn rational_radius_verdict(r2: &Q, radius: &TowerElement, description: &str) -> Verdict {
    // x^2 - r^2 with r the positive root
    let poly = QPoly::new(vec![-r2.clone(), Q::zero(), Q::one()], 'r').primitive_integer();
    Verdict::constructible(poly, Witness::tower(description, radius))
}

/// Distinct values with multiplicities, sorted by value.
fn groups(values: &[Q]) -> Vec<(Q, usize)> {
    PolygonSpec::from_lengths(values.to_vec()).compressed()
}

fn regular_override(n: usize, mut verdict: Verdict, what: &str) -> Verdict {
    if trig::gauss_wantzel(n as u64) && verdict.status != Status::NonConstructible {
        let root = verdict.root;
        verdict.status = Status::Constructible;
        verdict.witness = Some(Witness {
            description: format!("regular {}-gon, constructible by the Gauss-Wantzel criterion", n),
            value: what.into(),
            approx: root,
        });
    }
    verdict
}

/// Constructibility analysis of the cyclic polygon with the given side lengths.
pub fn check_sides(values: &[Q]) -> Result<Analysis, ReportError> {
    let sorted = canonical(values);
    let n = sorted.len();
    let spec = PolygonSpec::from_lengths(sorted.clone());
    if n < 3 {
        return Err(ReportError::Usage("need at least three sides".into()));
    }
    if !numeric::exists_cyclic(&spec) {
        return Err(NumericError::NonExistent("a side is at least the sum of the others".into()).into());
    }
    let r = radius_sides(&spec)?;
    let gs = groups(&sorted);
    let mk = |method: &str, verdict: Verdict, numeric: Option<NumericCross>| Analysis {
        mode: Mode::Sides,
        values: sorted.iter().map(|q| q.to_string()).collect(),
        n,
        method: method.into(),
        verdict,
        numeric,
    };
    if n == 3 {
        let a = [sorted[0].clone(), sorted[1].clone(), sorted[2].clone()];
        let rad = trig::triangle_radius(&a)?;
        let r2 = (&rad * &rad).as_rational().expect("rational square");
        let cross = cross_value(&rad, &r);
        return Ok(mk("triangle: abc / (4 * area)", rational_radius_verdict(&r2, &rad, "circumradius"), cross));
    }
    if n == 4 {
        let a = [sorted[0].clone(), sorted[1].clone(), sorted[2].clone(), sorted[3].clone()];
        let rad = trig::quadrangle_radius(&a)?;
        let r2 = (&rad * &rad).as_rational().expect("rational square");
        let cross = cross_value(&rad, &r);
        return Ok(mk("quadrangle: law of cosines", rational_radius_verdict(&r2, &rad, "circumradius"), cross));
    }
    match gs.as_slice() {
        [(a, _)] => {
            let w = trig::w_poly(n as u32 - 1, 1, a, a)?.primitive_integer();
            let (v, cross) = verdict_at(&w, half_inverse(&r), &r, "1/(2r)")?;
            let v = regular_override(n, v, &format!("sin(pi/{})/(2*{})", n, a));
            Ok(mk("regular polygon via W(n-1, 1)", v, Some(cross)))
        }
        [(a, k), (b, m)] if n == 6 => {
            let u = trig::hexagon_two_lengths_radius(*k as u32, a, b)?;
            let w = trig::w_poly(*k as u32, *m as u32, a, b)?.primitive_integer();
            let cross = cross_value(&u, &half_inverse(&r)).map(|mut c| {
                c.quantity = "1/(2r)".into();
                c.radius = r.to_f64();
                c
            });
            let v = Verdict::constructible(w, Witness::tower("u = 1/(2r) in a quadratic tower", &u));
            Ok(mk("two-length hexagon: even factor of W solved by radicals", v, cross))
        }
        [(a, k), (b, m)] => {
            let w = trig::w_poly(*k as u32, *m as u32, a, b)?.primitive_integer();
            let (v, cross) = verdict_at(&w, half_inverse(&r), &r, "1/(2r)")?;
            Ok(mk(&format!("two lengths: W({}, {})", k, m), v, Some(cross)))
        }
        [(a, 2), (b, 2), (c, 2)] => {
            let (_, h2) = trig::hexagon_three_pairs_poly(a, b, c);
            let u = half_inverse(&r);
            let y = HighPrec::from_f64(2.0) * u.clone() * u;
            let (v, cross) = verdict_at(&h2, y, &r, "2/(2r)^2")?;
            Ok(mk("three pairs: three-angle identity in cos 2a", v, Some(cross)))
        }
        _ => {
            let v = Verdict {
                status: Status::Unknown,
                polynomial: ZPoly::zero_in('x'),
                factor: ZPoly::zero_in('x'),
                degree: 0,
                certificate: None,
                witness: None,
                root: half_inverse(&r).to_f64(),
                residual: 0.0,
            };
            Ok(mk("no exact pipeline for this side pattern", v, None))
        }
    }
}

fn cross_value(exact: &TowerElement, numeric_value: &HighPrec) -> Option<NumericCross> {
    let diff = (exact.to_f64() - numeric_value.to_f64()).abs();
    Some(NumericCross {
        radius: numeric_value.to_f64(),
        quantity: "r".into(),
        value: exact.to_f64(),
        residual: diff,
        precision_bits: HighPrec::precision_bits(),
    })
}

/// Constructibility analysis of the cyclic polygon with the given center-to-side distances.
pub fn check_distances(values: &[Q]) -> Result<Analysis, ReportError> {
    let sorted = canonical(values);
    let n = sorted.len();
    if n < 3 {
        return Err(ReportError::Usage("need at least three distances".into()));
    }
    let spec = PolygonSpec::from_distances(sorted.clone());
    let r = radius_distances(&spec)?;
    let inv = HighPrec::one() / r.clone();
    let mk = |method: &str, verdict: Verdict, numeric: Option<NumericCross>| Analysis {
        mode: Mode::Distances,
        values: sorted.iter().map(|q| q.to_string()).collect(),
        n,
        method: method.into(),
        verdict,
        numeric,
    };
    let gs = groups(&sorted);
    let counts: Vec<usize> = {
        let mut c: Vec<usize> = gs.iter().map(|g| g.1).collect();
        c.sort();
        c
    };
    if n == 3 {
        let d = [sorted[0].clone(), sorted[1].clone(), sorted[2].clone()];
        let (_, h3) = trig::d3_poly(&d);
        let y = HighPrec::from_f64(2.0) * inv;
        let (v, cross) = verdict_at(&h3, y, &r, "2/r")?;
        return Ok(mk("three distances: three-angle identity", v, Some(cross)));
    }
    if n == 4 {
        let d = [sorted[0].clone(), sorted[1].clone(), sorted[2].clone(), sorted[3].clone()];
        let (c2, c0) = trig::d4_radius_coeffs(&d)?;
        let rad = trig::d4_radius(&d)?;
        let poly = QPoly::new(vec![c0, Q::zero(), c2], 'u').primitive_integer();
        let v = Verdict::constructible(poly, Witness::tower("circumradius", &rad));
        return Ok(mk("four distances: quadratic in 1/r", v, cross_value(&rad, &r)));
    }
    if n == 5 && counts == [1, 2, 2] {
        let pairs: Vec<&Q> = gs.iter().filter(|g| g.1 == 2).map(|g| &g.0).collect();
        let single = &gs.iter().find(|g| g.1 == 1).unwrap().0;
        let d = [pairs[0].clone(), pairs[0].clone(), pairs[1].clone(), pairs[1].clone(), single.clone()];
        let p = trig::d5_poly(&d)?;
        let (v, cross) = verdict_at(&p, inv, &r, "1/r")?;
        return Ok(mk("pentagon: two pairs and a single distance", v, Some(cross)));
    }
    if n == 6 && counts == [1, 1, 4] {
        let four = &gs.iter().find(|g| g.1 == 4).unwrap().0;
        let rest: Vec<&Q> = gs.iter().filter(|g| g.1 == 1).map(|g| &g.0).collect();
        let d = [four.clone(), four.clone(), four.clone(), four.clone(), rest[0].clone(), rest[1].clone()];
        let (_, cubic) = trig::d6_poly(&d)?;
        let (v, cross) = verdict_at(&cubic, inv.clone() * inv, &r, "1/r^2")?;
        return Ok(mk("hexagon: four equal distances, cubic in 1/r^2", v, Some(cross)));
    }
    match gs.as_slice() {
        [(d, _)] => {
            let p = trig::distance_two_length_poly(n as u32 - 1, 1, d, d).primitive_integer();
            let (v, cross) = verdict_at(&p, inv, &r, "1/r")?;
            let v = regular_override(n, v, &format!("cos(pi/{})/{}", n, d));
            Ok(mk("regular polygon via T(n-1) + T(1)", v, Some(cross)))
        }
        [(a, k), (b, m)] => {
            let p = trig::distance_two_length_poly(*k as u32, *m as u32, a, b).primitive_integer();
            let (v, cross) = verdict_at(&p, inv, &r, "1/r")?;
            Ok(mk(&format!("two distances: T({}) + T({})", k, m), v, Some(cross)))
        }
        _ => {
            let v = Verdict {
                status: Status::Unknown,
                polynomial: ZPoly::zero_in('x'),
                factor: ZPoly::zero_in('x'),
                degree: 0,
                certificate: None,
                witness: None,
                root: inv.to_f64(),
                residual: 0.0,
            };
            Ok(mk("no exact pipeline for this distance pattern", v, None))
        }
    }
}

/// One even `n`: prime, sides, the sine family for sides and the cosine family for distances.
#[derive(Clone, Debug, Serialize)]
pub struct EvenCase {
    pub n: u32,
    pub selection: trig::SideSelection,
    pub variant: FVariant,
    pub f: ZPoly,
    pub f_over_x: ZPoly,
    pub congruences_hold: bool,
    pub f_certificate: Option<Certificate>,
    pub sides_verdict: Verdict,
    pub g: ZPoly,
    pub g_matches_f: bool,
    pub g_certificate: Option<Certificate>,
    pub distances_verdict: Verdict,
}

impl EvenCase {
    pub fn passed(&self) -> bool {
        let eis = |c: &Option<Certificate>, p: &ZPoly| {
            matches!(c, Some(Certificate::Eisenstein { prime, shift: 0 }) if *prime == BigInt::from(self.selection.p))
                && c.as_ref().unwrap().recheck(p)
        };
        self.congruences_hold
            && eis(&self.f_certificate, &self.f_over_x)
            && self.g_matches_f
            && eis(&self.g_certificate, &self.g.shift_down(1).unwrap_or_else(|| self.g.clone()))
            && self.sides_verdict.status == Status::NonConstructible
            && self.distances_verdict.status == Status::NonConstructible
            && self.sides_verdict.recheck()
            && self.distances_verdict.recheck()
    }
}

/// The coefficient congruences of the sine family modulo `p` and `p^2`.
pub fn even_congruences(f: &ZPoly, p: u32) -> bool {
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    let m = |c: BigInt, md: &BigInt| ((c % md) + md) % md;
    let sign = if ((p - 1) / 2).is_multiple_of(2) { BigInt::one() } else { &pb - 1 };
    f.degree() == Some(p as usize)
        && f.coeff(0).is_zero()
        && m(f.coeff(1), &p2) == pb
        && (2..p as usize).all(|s| m(f.coeff(s), &pb).is_zero())
        && m(f.coeff(p as usize), &pb) == sign
}

pub fn even_case(n: u32) -> Result<EvenCase, ReportError> {
    let p = trig::choose_prime(n)?;
    let sel = trig::choose_sides(n, p)?;
    let lengths = sel.lengths();
    let r = radius_sides(&PolygonSpec::from_lengths(lengths.clone()))?;
    let u = half_inverse(&r);
    let pick = |v: FVariant| -> Result<(ZPoly, f64), ReportError> {
        let f = trig::f_p_poly(n, p, &sel.a, &sel.b, v)?;
        let res = numeric::eval_poly(&f.to_rational(), &u).abs().to_f64();
        Ok((f, res))
    };
    let (f1, r1) = pick(FVariant::Difference)?;
    let (f2, r2) = pick(FVariant::Sum)?;
    let (variant, f) = if r1 <= r2 { (FVariant::Difference, f1.clone()) } else { (FVariant::Sum, f2.clone()) };
    let f_over_x = f.shift_down(1).expect("zero constant term");
    let f_certificate = irreducible::eisenstein(&f_over_x, 0);
    let (sides_verdict, _) = verdict_at(&f, u, &r, "1/(2r)")?;

    let dists: Vec<Q> = lengths;
    let rd = radius_distances(&PolygonSpec::from_distances(dists))?;
    let g = trig::g_p_poly(n, p, &sel.a, &sel.b)?;
    let ng = -g.clone();
    let g_matches_f = [&g, &ng].iter().any(|x| **x == f1 || **x == f2);
    let g_certificate = irreducible::eisenstein(&g.shift_down(1).expect("zero constant term"), 0);
    let (distances_verdict, _) = verdict_at(&g, HighPrec::one() / rd.clone(), &rd, "1/r")?;
    Ok(EvenCase {
        n,
        selection: sel,
        variant,
        congruences_hold: even_congruences(&f, p),
        f,
        f_over_x,
        f_certificate,
        sides_verdict,
        g,
        g_matches_f,
        g_certificate,
        distances_verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub result: Value,
    pub checks: Vec<Check>,
    /// Human-readable lines for the text output.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl ReportItem {
    pub fn new(name: &str, result: Value, checks: Vec<Check>) -> Self {
        ReportItem { name: name.into(), result, checks, notes: Vec::new() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub items: Vec<ReportItem>,
    pub summary: Summary,
    /// Wall time; the only field that varies between identical runs.
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            schema: SCHEMA,
            command,
            items: Vec::new(),
            summary: Summary { checks: 0, failed: 0, unknown: 0 },
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, item: ReportItem) {
        self.summary.checks += item.checks.len();
        self.summary.failed += item.checks.iter().filter(|c| !c.passed).count();
        if contains_unknown(&item.result) {
            self.summary.unknown += 1;
        }
        self.items.push(item);
    }

    /// 0 when everything passed, 2 when a verdict is Unknown, 1 on failure.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            1
        } else if self.summary.unknown > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out.push_str(&format!("== {}\n", item.name));
            if let Some(status) = find_status(&item.result) {
                out.push_str(&format!("   status: {}\n", status));
            }
            for line in &item.notes {
                out.push_str(&format!("   {}\n", line));
            }
            for c in &item.checks {
                out.push_str(&format!("   [{}] {}: {}\n", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
            }
        }
        out.push_str(&format!(
            "{} checks, {} failed, {} unknown\n",
            self.summary.checks, self.summary.failed, self.summary.unknown
        ));
        out
    }
}

fn find_status(v: &Value) -> Option<String> {
    match v {
        Value::Object(m) => m
            .get("status")
            .and_then(|s| s.as_str().map(String::from))
            .or_else(|| m.values().find_map(find_status)),
        _ => None,
    }
}

fn contains_unknown(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.get("status").is_some_and(|s| s == "Unknown") || m.values().any(contains_unknown),
        Value::Array(a) => a.iter().any(contains_unknown),
        _ => false,
    }
}

fn analysis_notes(a: &Analysis) -> Vec<String> {
    let v = &a.verdict;
    let mut out = vec![format!("input: {} = {}", match a.mode { Mode::Sides => "sides", Mode::Distances => "distances" }, a.values.join(" "))];
    out.push(format!("method: {}", a.method));
    if v.degree > 0 {
        out.push(format!("polynomial: {}", v.polynomial));
        out.push(format!("factor (degree {}): {}", v.degree, v.factor));
    }
    if let Some(c) = &v.certificate {
        out.push(format!("certificate: {}", serde_json::to_string(c).unwrap_or_default()));
    }
    if let Some(w) = &v.witness {
        out.push(format!("witness: {} = {} ~ {}", w.description, w.value, w.approx));
    }
    if let Some(c) = &a.numeric {
        out.push(format!("radius ~ {}, {} ~ {}", c.radius, c.quantity, c.value));
    }
    out
}

/// Item for one analysis; checks its status and residual.
pub fn analysis_item(name: &str, a: &Result<Analysis, ReportError>, expect: Option<Status>, tol: f64) -> ReportItem {
    match a {
        Ok(a) => {
            let mut checks = Vec::new();
            // an Unknown without a polynomial carries nothing to recheck
            if a.verdict.degree > 0 || a.status() != Status::Unknown {
                checks.push(Check::new("certificate", a.verdict.recheck(), "re-derived from the payload"));
            }
            if let Some(s) = expect {
                checks.push(Check::new("status", a.status() == s, format!("{:?}", a.status())));
            }
            if let Some(c) = &a.numeric {
                checks.push(Check::new("residual", c.residual < tol, format!("{:e}", c.residual)));
            }
            let mut item = ReportItem::new(name, serde_json::to_value(a).unwrap_or(Value::Null), checks);
            item.notes = analysis_notes(a);
            item
        }
        Err(e) => ReportItem::new(name, json!({ "error": e.to_string() }), vec![Check::new("analysis", false, e.to_string())]),
    }
}

fn golden(name: &str, got: &ZPoly, want: &ZPoly) -> ReportItem {
    ReportItem::new(name, json!({ "polynomial": got.to_string() }), vec![Check::new("matches", got == want, format!("expected {}", want))])
}

fn zi(c: &[&str], var: char) -> ZPoly {
    ZPoly::new(c.iter().map(|s| s.parse().expect("integer literal")).collect(), var)
}

fn ints(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

fn bi(terms: &[(i64, u32, u32)]) -> BiPoly {
    let mut p = BiPoly::zero_in(('a', 'b'));
    for &(c, i, j) in terms {
        p.add_term(i, j, qi(c));
    }
    p
}

/// `(k, m, computed W_{k,m}(a, b, x), expected)` with symbolic `a`, `b`.
pub fn symbolic_goldens() -> Vec<(u32, u32, UniPoly<BiPoly>, UniPoly<BiPoly>)> {
    let (a, b) = (BiPoly::x_in(('a', 'b')), BiPoly::y_in(('a', 'b')));
    let z = BiPoly::zero;
    let expected = [
        (1, 5, vec![z(), bi(&[(1, 1, 0), (-5, 0, 1)]), z(), bi(&[(20, 0, 3)]), z(), bi(&[(-16, 0, 5)])]),
        (2, 4, vec![bi(&[(2, 0, 0)]), z(), bi(&[(-8, 0, 2), (-2, 2, 0)]), z(), bi(&[(8, 0, 4)])]),
        (3, 3, vec![z(), bi(&[(-3, 0, 1), (3, 1, 0)]), z(), bi(&[(4, 0, 3), (-4, 3, 0)])]),
    ];
    expected
        .into_iter()
        .map(|(k, m, want)| {
            let got = trig::w_poly(k, m, &a, &b).expect("valid parities");
            (k, m, got, UniPoly::new(want, 'x'))
        })
        .collect()
}

type CorpusFn = fn() -> ReportItem;

fn corpus() -> Vec<(&'static str, CorpusFn)> {
    vec![
        ("pentagon-polynomial", || {
            let w = trig::w_poly(1, 4, &qi(1), &qi(2)).expect("valid").primitive_integer();
            golden("pentagon-polynomial", &w, &ZPoly::from_i64s(&[0, 0, -63, 0, 1280, 0, -8192, 0, 16384], 'x'))
        }),
        ("symbolic-w", || {
            let gs = symbolic_goldens();
            let checks = gs
                .iter()
                .map(|(k, m, got, want)| Check::new(&format!("W({}, {})", k, m), got == want, want.to_string()))
                .collect();
            let result = gs
                .iter()
                .map(|(k, m, got, _)| (format!("W({}, {})", k, m), Value::String(got.to_string())))
                .collect();
            ReportItem::new("symbolic-w", Value::Object(result), checks)
        }),
        ("pentagon", || analysis_item("pentagon", &check_sides(&ints(&[1, 2, 2, 2, 2])), Some(Status::NonConstructible), 1e-9)),
        ("hexagon-pairs-h1", || {
            let (h1, _) = trig::hexagon_three_pairs_poly(&qi(1), &qi(2), &qi(3));
            golden("hexagon-pairs-h1", &h1, &ZPoly::from_i64s(&[-1, 28, -196, 144], 'u'))
        }),
        ("hexagon-pairs-h2", || {
            let (_, h2) = trig::hexagon_three_pairs_poly(&qi(1), &qi(2), &qi(3));
            golden("hexagon-pairs-h2", &h2, &ZPoly::from_i64s(&[-1, 14, -49, 18], 'u'))
        }),
        ("hexagon-pairs", || {
            analysis_item("hexagon-pairs", &check_sides(&ints(&[1, 1, 2, 2, 3, 3])), Some(Status::NonConstructible), 1e-9)
        }),
        ("d3-polynomial", || {
            let (h, _) = trig::d3_poly(&[qi(1), qi(2), qi(3)]);
            golden("d3-polynomial", &h, &ZPoly::from_i64s(&[-1, 0, 14, 12], 'u'))
        }),
        ("d3-rescaled", || {
            let (_, h3) = trig::d3_poly(&[qi(1), qi(2), qi(3)]);
            golden("d3-rescaled", &h3, &ZPoly::from_i64s(&[-2, 0, 7, 3], 'u'))
        }),
        ("d3", || analysis_item("d3", &check_distances(&ints(&[1, 2, 3])), Some(Status::NonConstructible), 1e-9)),
        ("d5-quintic-small-distance", || {
            let p = trig::d5_poly(&[qi(499), qi(499), qi(500), qi(500), qi(3)]).expect("valid");
            golden(
                "d5-quintic-small-distance",
                &p,
                &zi(&["1", "6", "-1995995", "-5988012", "498005992004", "1494006000000"], 'u'),
            )
        }),
        ("d5", || {
            analysis_item("d5", &check_distances(&ints(&[499, 499, 500, 500, 501])), Some(Status::NonConstructible), 1e-9)
        }),
        ("d6-cubic", || {
            let d = [qi(1000), qi(1000), qi(1000), qi(1000), qi(999), qi(1001)];
            let (_, cubic) = trig::d6_poly(&d).expect("valid");
            golden("d6-cubic", &cubic, &zi(&["-3", "16000004", "-28000004000000", "16000000000000000000"], 'x'))
        }),
        ("d6", || {
            analysis_item(
                "d6",
                &check_distances(&ints(&[1000, 1000, 1000, 1000, 999, 1001])),
                Some(Status::NonConstructible),
                1e-9,
            )
        }),
        ("triangle", || analysis_item("triangle", &check_sides(&ints(&[3, 4, 5])), Some(Status::Constructible), 1e-9)),
        ("square", || analysis_item("square", &check_sides(&ints(&[1, 1, 1, 1])), Some(Status::Constructible), 1e-9)),
        ("quadrangle-distances", || {
            analysis_item("quadrangle-distances", &check_distances(&ints(&[1, 1, 1, 1])), Some(Status::Constructible), 1e-9)
        }),
        ("hexagon-two-lengths", || {
            analysis_item("hexagon-two-lengths", &check_sides(&ints(&[1, 1, 2, 2, 2, 2])), Some(Status::Constructible), 1e-9)
        }),
        ("even-n", || {
            let mut checks = Vec::new();
            let mut rows = Vec::new();
            for n in (8..=20).step_by(2) {
                match even_case(n) {
                    Ok(c) => {
                        checks.push(Check::new(&format!("n = {}", n), c.passed(), format!("p = {}", c.selection.p)));
                        rows.push(json!({ "n": n, "p": c.selection.p, "a": c.selection.a.to_string(),
                            "b": c.selection.b.to_string(), "sides": c.sides_verdict.status,
                            "distances": c.distances_verdict.status }));
                    }
                    Err(e) => checks.push(Check::new(&format!("n = {}", n), false, e.to_string())),
                }
            }
            ReportItem::new("even-n", Value::Array(rows), checks)
        }),
        ("series", || {
            let e = crate::series::QuadExpr::parse("sqrt(1/x) - sqrt(1/(x+x^2))").expect("parses");
            let s = crate::series::expand_expr(&e, 8);
            let ok = s.as_ref().is_ok_and(|s| s.start() == 1 && s.depth() == 1);
            ReportItem::new("series", s.as_ref().map(|s| serde_json::to_value(s.to_json()).unwrap_or(Value::Null)).unwrap_or(Value::Null), vec![Check::new("leading exponent 1/2", ok, "limit 0 at 0+")])
        }),
        ("limit", || {
            let mut checks = Vec::new();
            let eps = numeric::halving_sequence();
            for (n, l) in [(6, 5), (9, 7), (14, 9)] {
                let demo = numeric::limit_demo::<HighPrec>(n, l, &eps, &SolverConfig::default());
                let ok = demo.as_ref().is_ok_and(|d| d.monotone);
                checks.push(Check::new(&format!("n = {}, l = {}", n, l), ok, "differences decrease"));
            }
            ReportItem::new("limit", Value::Null, checks)
        }),
        ("search", || {
            let r = polygon_search(7, 2, Q::zero(), Q::one(), &irreducible::SearchBudget::default());
            search_item("search", 7, 2, &r)
        }),
        ("gauss-wantzel", || {
            let list: Vec<u64> = (3..=100).filter(|&n| trig::gauss_wantzel(n)).collect();
            let oracle = constructible_regular_oracle(100);
            ReportItem::new("gauss-wantzel", json!(list), vec![Check::new("matches products of 2^k and distinct Fermat primes", list == oracle, "")])
        }),
    ]
}

/// Rational `c` in `(lo, hi)` for which `P(1^k, c^m)` is certified non-constructible.
pub fn polygon_search(
    k: u32,
    m: u32,
    lo: Q,
    hi: Q,
    budget: &irreducible::SearchBudget,
) -> Result<irreducible::SearchReport, ReportError> {
    let family = irreducible::polygon_family(k, m)?;
    let root = |c: &Q, _: &ZPoly| irreducible::polygon_root_bracket(k as usize, m as usize, c);
    Ok(irreducible::specialization_search(&family, &irreducible::ParamRange::Interval(lo, hi), budget, &root))
}

/// Item for a search; passes when a hit was found.
pub fn search_item(name: &str, k: u32, m: u32, report: &Result<irreducible::SearchReport, ReportError>) -> ReportItem {
    match report {
        Ok(r) => {
            let detail = match r.hits.first() {
                Some(h) => format!("c = {} after {} candidates", h.value, r.tried),
                None => format!("no hit in {} candidates", r.tried),
            };
            let ok = r.hits.iter().all(|h| h.verdict.recheck()) && !r.hits.is_empty();
            ReportItem::new(name, json!({ "k": k, "m": m, "search": r }), vec![Check::new("non-constructible member", ok, detail)])
        }
        Err(e) => ReportItem::new(name, json!({ "error": e.to_string() }), vec![Check::new("search", false, e.to_string())]),
    }
}

/// `n <= limit` of the form `2^k` times distinct Fermat primes.
pub fn constructible_regular_oracle(limit: u64) -> Vec<u64> {
    let fermat = [3u64, 5, 17, 257, 65537];
    let mut out = Vec::new();
    for mask in 0..(1u32 << fermat.len()) {
        let odd: u64 = (0..fermat.len()).filter(|i| mask >> i & 1 == 1).map(|i| fermat[i]).product();
        let mut m = odd;
        while m <= limit {
            if m >= 3 {
                out.push(m);
            }
            m *= 2;
        }
    }
    out.sort();
    out
}

/// Runs the whole golden corpus, or the items whose name contains `filter`.
pub fn reproduce(filter: Option<&str>) -> RunReport {
    let start = Instant::now();
    let mut cmd = vec!["reproduce".to_string()];
    if let Some(f) = filter {
        cmd.push(format!("--filter={}", f));
    }
    let mut report = RunReport::new(cmd);
    for (name, run) in corpus() {
        if filter.is_none_or(|f| name.contains(f)) {
            report.push(run());
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

/// Sorted positive rationals parsed exactly.
pub fn parse_values(raw: &[String]) -> Result<Vec<Q>, ReportError> {
    raw.iter()
        .map(|s| crate::scalar::parse_rational(s).map_err(|e| ReportError::Usage(e.to_string())))
        .collect()
}

/// Positive `x` with `x <= 0` rejected.
pub fn require_positive(values: &[Q]) -> Result<(), ReportError> {
    match values.iter().find(|v| !v.is_positive()) {
        Some(v) => Err(ReportError::Usage(format!("value {} must be positive", v))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_list_starts_classically() {
        assert_eq!(constructible_regular_oracle(20), vec![3, 4, 5, 6, 8, 10, 12, 15, 16, 17, 20]);
    }

    #[test]
    fn exit_codes() {
        let mut r = RunReport::new(vec![]);
        assert_eq!(r.exit_code(), 0);
        r.push(ReportItem::new("x", json!({"status": "Unknown"}), vec![]));
        assert_eq!(r.exit_code(), 2);
        r.push(ReportItem::new("y", Value::Null, vec![Check::new("c", false, "")]));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn square_and_sqrt_two() {
        let a = check_distances(&ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(a.status(), Status::Constructible);
        let w = a.verdict.witness.unwrap();
        assert!((w.approx - 2f64.sqrt()).abs() < 1e-12);
    }
}
