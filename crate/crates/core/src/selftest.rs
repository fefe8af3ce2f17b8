//! Acceptance checks run by `arrowfocal selftest` and the acceptance tests.
//!
//! Each check compares the library against closed-form equations, exact
//! identities or an independent computation, at a fixed tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    conic_from_family, expected_degree, family_function, focal_triple, implicitize, vertical_axis_meet,
    RationalFunction,
};
use crate::expr::{parse, Expr};
use crate::focal::{
    derivative_from_focus, duality_map, AxesConfig, FocalFunction, PlanePoint, ProjectivePoint,
    INFINITY_SLOPE_TOL,
};
use crate::poly::{rational_frac, rational_int, GcdRing, Poly1, Poly2, Rational, Ring, UPoly};
use crate::transforms::{compose_linear_foci, shear_for_period, transform_implicit, TransformTag};

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} ({:.3} s, budget {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

/// Outcome of the check itself; timing is added by [`run`].
struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

type Check = fn() -> Outcome;

/// Name, time budget in seconds and check.
const CRITERIA: &[(&str, u64, Check)] = &[
    ("exact implicit equations", 1, exact_implicit_equations),
    ("closed-form conic family", 5, closed_form_conic),
    ("transcendental focal equations", 1, transcendental_equations),
    ("duality", 1, duality),
    ("envelope tangency", 1, envelope_tangency),
    ("derivative readout", 1, derivative_readout),
    ("degree laws", 20, degree_laws),
    ("transformation laws", 5, transformation_laws),
    ("periodic shear", 2, periodic_shear),
    ("composition of linear functions", 1, composition),
    ("vertical-axis tangency", 1, vertical_axis_tangency),
];

pub fn criterion_names() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.0).collect()
}

fn run(name: &'static str, budget: u64, check: Check) -> CriterionReport {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget);
    let in_time = elapsed <= budget;
    let mut detail = result.detail;
    if !in_time {
        detail.push_str("; over time budget");
    }
    CriterionReport {
        name,
        passed: result.passed && in_time,
        detail,
        elapsed,
        budget,
    }
}

/// Runs one criterion by name.
pub fn run_criterion(name: &str) -> Option<CriterionReport> {
    CRITERIA
        .iter()
        .find(|c| c.0 == name)
        .map(|&(name, budget, check)| run(name, budget, check))
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|&(name, budget, check)| run(name, budget, check))
        .collect()
}

fn rf(text: &str) -> RationalFunction {
    parse(text)
        .expect("fixed corpus parses")
        .to_rational_function()
        .expect("fixed corpus is rational")
}

fn func(text: &str) -> FocalFunction {
    FocalFunction::parse(text).expect("fixed corpus parses")
}

pub(crate) fn hyperbola() -> Poly2 {
    Poly2::from_int_terms(&[(2, 0, 1), (1, 1, 4), (1, 0, -2), (0, 0, 1)]).normalize()
}

pub(crate) fn circle() -> Poly2 {
    Poly2::from_int_terms(&[(2, 0, 1), (0, 2, 1), (1, 0, -1)]).normalize()
}

pub(crate) fn parabola() -> Poly2 {
    Poly2::from_int_terms(&[(0, 2, 1), (1, 0, -4)]).normalize()
}

fn exact_implicit_equations() -> Outcome {
    let cases = [("x^2", hyperbola()), ("1/(4x)", circle()), ("x + 1/x", parabola())];
    let mut bad = Vec::new();
    for (text, expected) in &cases {
        match implicitize(&focal_triple(&rf(text))) {
            Ok(g) if &g == expected => {}
            Ok(g) => bad.push(format!("{text}: got {g}")),
            Err(e) => bad.push(format!("{text}: {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "x^2, 1/(4x), x + 1/x give (x-1)^2 + 4*x*y, x^2 + y^2 - x, y^2 - 4*x".to_string()
        } else {
            bad.join("; ")
        },
    )
}

fn closed_form_conic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut checked, mut bad) = (0, Vec::new());
    while checked < 60 {
        let v: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-5..=5));
        let [a, b, c, d, e] = v.map(rational_int);
        let Ok(closed) = conic_from_family(&a, &b, &c, &d, &e) else {
            continue;
        };
        checked += 1;
        let f = family_function(&a, &b, &c, &d, &e).expect("valid family");
        match implicitize(&focal_triple(&f)) {
            Ok(g) if g == closed => {}
            other => bad.push(format!("{v:?}: {other:?}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} of {checked} random tuples agree exactly{}", checked - bad.len(), list(&bad)),
    )
}

fn show(p: Option<PlanePoint>) -> String {
    // Adding zero turns -0 into 0.
    p.map_or("none".to_string(), |p| format!("({}, {})", p.x + 0.0, p.y + 0.0))
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!("; mismatches: {}", items.join(", "))
    }
}

/// Affine focal points of `f` at `n` uniform parameters, skipping infinity.
fn affine_samples(f: &FocalFunction, lo: f64, hi: f64, n: usize) -> Vec<(f64, PlanePoint)> {
    f.sample(lo, hi, n, AxesConfig::default())
        .map(|items| {
            items
                .iter()
                .filter_map(|s| s.as_point())
                .filter(|s| !s.at_infinity)
                .filter_map(|s| s.affine.map(|p| (s.t, p)))
                .collect()
        })
        .unwrap_or_default()
}

fn transcendental_equations() -> Outcome {
    // y = (x - 1)(1 - ln((x - 1)/x)) with x < 0 or x > 1.
    let exp_samples = affine_samples(&func("exp(x)"), -3.0, 3.0, 200);
    let exp_worst = exp_samples
        .iter()
        .map(|(_, p)| {
            let y = (p.x - 1.0) * (1.0 - ((p.x - 1.0) / p.x).ln());
            (p.y - y).abs() / (1.0 + p.y.abs())
        })
        .fold(0.0, f64::max);
    // y = x²/(4(x - 1)) with x < 0 or x > 1.
    let sqrt_samples = affine_samples(&func("sqrt(x)"), 0.01, 4.0, 200);
    let sqrt_worst = sqrt_samples
        .iter()
        .map(|(_, p)| {
            let y = p.x * p.x / (4.0 * (p.x - 1.0));
            (p.y - y).abs() / (1.0 + p.y.abs())
        })
        .fold(0.0, f64::max);
    let outside = sqrt_samples
        .iter()
        .chain(&exp_samples)
        .all(|(_, p)| p.x < 0.0 || p.x > 1.0);
    let enough = exp_samples.len() >= 199 && sqrt_samples.len() == 200;
    outcome(
        exp_worst <= 1e-9 && sqrt_worst <= 1e-9 && outside && enough,
        format!(
            "exp: {} samples, worst relative residual {exp_worst:.2e}; sqrt: {} samples, worst {sqrt_worst:.2e}; x outside [0, 1]: {outside}",
            exp_samples.len(),
            sqrt_samples.len()
        ),
    )
}

/// Functions with their sampling domains, avoiding poles.
const CORPUS: &[(&str, f64, f64)] = &[
    ("x^2", -3.0, 3.0),
    ("1/(4x)", 0.05, 3.0),
    ("x + 1/x", 0.05, 3.0),
    ("exp(x)", -3.0, 3.0),
    ("sin(x)", -6.0, 6.0),
];

/// 200 random parameters per corpus function.
fn corpus_parameters(seed: u64) -> Vec<(FocalFunction, &'static str, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CORPUS
        .iter()
        .map(|&(text, lo, hi)| {
            let ts = (0..200)
                .map(|_| {
                    let t: f64 = rng.gen_range(lo..hi);
                    if text.contains("1/") && rng.gen_bool(0.5) {
                        -t
                    } else {
                        t
                    }
                })
                .collect();
            (func(text), text, ts)
        })
        .collect()
}

fn duality() -> Outcome {
    let cfg = AxesConfig::default();
    let mut worst = 0.0f64;
    let mut count = 0;
    for (f, _, ts) in corpus_parameters(2) {
        for t in ts {
            let (Ok(dual), Ok(focal)) = (f.dual_point(t), f.focal_point(t, cfg)) else {
                continue;
            };
            worst = worst.max(duality_map(dual).relative_cross(&focal));
            count += 1;
        }
    }
    outcome(
        worst <= 1e-9 && count == 1000,
        format!("{count} points, worst relative cross norm {worst:.2e}"),
    )
}

/// `x(t) = 1/(1 - f')`, `y(t) = (f - t f')/(1 - f')` as expressions.
fn parametrization(f: &Expr) -> (Expr, Expr) {
    let df = f.differentiate();
    let den = Expr::num(1) - df.clone();
    let x = Expr::num(1) / den.clone();
    let y = (f.clone() - Expr::Var * df) / den;
    (x, y)
}

fn envelope_tangency() -> Outcome {
    let cfg = AxesConfig::default();
    let (mut worst_parallel, mut worst_velocity) = (0.0f64, 0.0f64);
    let mut count = 0;
    for (f, _, ts) in corpus_parameters(3) {
        // Independent velocity: symbolic derivative of the parametrization.
        let (x, y) = parametrization(f.expr());
        let (dx, dy) = (x.differentiate(), y.differentiate());
        for t in ts {
            let Ok((value, slope)) = f.value_and_slope(t) else { continue };
            if (slope - 1.0).abs() < 1e-6 {
                continue;
            }
            let Ok(Some((vx, vy))) = f.focal_tangent(t, cfg) else { continue };
            let (ax, ay) = (1.0, value - t);
            let cross = (vx * ay - vy * ax).abs() / (vx.hypot(vy) * ax.hypot(ay));
            worst_parallel = worst_parallel.max(cross);
            if let (Ok(ox), Ok(oy)) = (dx.eval(t), dy.eval(t)) {
                let err = (ox - vx).hypot(oy - vy) / (1.0 + vx.hypot(vy));
                worst_velocity = worst_velocity.max(err);
            }
            count += 1;
        }
    }
    outcome(
        worst_parallel <= 1e-9 && worst_velocity <= 1e-8 && count >= 900,
        format!(
            "{count} non-cusp samples, worst normalized cross {worst_parallel:.2e}, worst deviation from the differentiated parametrization {worst_velocity:.2e}"
        ),
    )
}

fn derivative_readout() -> Outcome {
    let cfg = AxesConfig::default();
    let probe = func("x^2").probe(-1.0, cfg);
    let probe_ok = probe.as_ref().is_ok_and(|p| (p.fprime + 2.0).abs() <= 1e-12);
    let mut worst = 0.0f64;
    let mut count = 0;
    for (f, _, ts) in corpus_parameters(4) {
        for t in ts {
            let Ok((_, slope)) = f.value_and_slope(t) else { continue };
            if (slope - 1.0).abs() <= INFINITY_SLOPE_TOL {
                continue;
            }
            let Some(p) = f.focal_point(t, cfg).ok().and_then(|p| p.affine()) else {
                continue;
            };
            let Ok(read) = derivative_from_focus(p.x, cfg) else { continue };
            worst = worst.max((read - slope).abs() / (1.0 + slope.abs()));
            count += 1;
        }
    }
    let fprime = probe.map(|p| p.fprime).unwrap_or(f64::NAN);
    outcome(
        probe_ok && worst <= 1e-9 && count >= 900,
        format!("f = x^2 at x0 = -1 reads f' = {fprime}; inversion over {count} points, worst {worst:.2e}"),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize, bound: i64) -> Poly1 {
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
    while coeffs[degree] == 0 {
        coeffs[degree] = rng.gen_range(-bound..=bound);
    }
    Poly1::from_ints(&coeffs)
}

/// True when `P` has simple critical points with pairwise distinct values:
/// `Res_t(P'(t), P(t) - v)` is square-free in `v`.
fn distinct_critical_values(p: &Poly1) -> bool {
    let lift = |q: &Poly1| UPoly::new(q.coeffs().iter().map(|c| Poly1::constant(c.clone())).collect());
    let shifted = lift(p).sub(&UPoly::constant(Poly1::var()));
    let r = lift(&p.derivative()).resultant(&shifted);
    r.degree().is_some() && r.square_free_part().degree() == r.degree()
}

fn degree_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = Vec::new();
    let mut polys = 0;
    for d in [3usize, 4, 5] {
        let mut done = 0;
        while done < 10 {
            let p = random_poly(&mut rng, d, 9);
            if !distinct_critical_values(&p) {
                continue;
            }
            done += 1;
            polys += 1;
            let f = RationalFunction::polynomial(p.clone());
            let deg = implicitize(&focal_triple(&f)).map(|g| g.total_degree().unwrap_or(0));
            if deg != Ok(d) {
                bad.push(format!("P = {p}: degree {deg:?}, expected {d}"));
            }
        }
    }
    let (mut pairs, mut equal, mut strict) = (0, 0, Vec::new());
    while pairs < 30 {
        let (dp, dq) = (rng.gen_range(0..=4), rng.gen_range(0..=3));
        let p = random_poly(&mut rng, dp, 6);
        let q = random_poly(&mut rng, dq, 6);
        if !GcdRing::gcd(&p, &q).is_constant() {
            continue;
        }
        let Some(f) = RationalFunction::new(p, q) else { continue };
        if f.is_linear() {
            continue;
        }
        pairs += 1;
        let (dp, dq) = f.degrees();
        let bound = expected_degree(dp, dq);
        match implicitize(&focal_triple(&f)).map(|g| g.total_degree().unwrap_or(0)) {
            Ok(deg) if deg == bound => equal += 1,
            Ok(deg) if deg < bound => strict.push(format!("{f}: {deg} < {bound}")),
            other => bad.push(format!("{f}: {other:?} exceeds {bound}")),
        }
    }
    let rate = equal as f64 / pairs as f64;
    outcome(
        bad.is_empty() && rate >= 0.9,
        format!(
            "{polys} polynomials of degree 3-5 have focal degree d; {pairs} rational pairs within bound, equality rate {:.0}%{}{}",
            100.0 * rate,
            if strict.is_empty() { String::new() } else { format!("; below bound: {}", strict.join(", ")) },
            list(&bad)
        ),
    )
}

fn transformation_laws() -> Outcome {
    let bases = [("x^2", hyperbola()), ("1/(4x)", circle()), ("x + 1/x", parabola())];
    let cs = [rational_int(-2), rational_int(-1), rational_frac(1, 2), rational_int(2), rational_int(3)];
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let mut combos = 0;
    for (text, g) in &bases {
        let base = parse(text).expect("fixed corpus parses");
        for tag in TransformTag::ALL {
            for c in &cs {
                let kind = tag.with(c.clone()).expect("nonzero parameters");
                let h = match transform_implicit(g, &kind) {
                    Ok(h) => h,
                    Err(e) => {
                        bad.push(format!("{text} {tag} {c}: {e}"));
                        continue;
                    }
                };
                let f = FocalFunction::new(kind.apply_to_expr(&base));
                let samples = f.sample(-3.0, 3.0, 200, AxesConfig::default());
                let Ok(samples) = samples else {
                    bad.push(format!("{text} {tag} {c}: no samples"));
                    continue;
                };
                combos += 1;
                for p in samples.iter().filter_map(|s| s.as_point()).filter_map(|s| s.affine) {
                    let r = h.scaled_residual(p.x, p.y);
                    if r > 1e-8 {
                        bad.push(format!("{text} {tag} {c} at ({}, {}): {r:.2e}", p.x, p.y));
                    }
                    worst = worst.max(r);
                }
            }
        }
    }
    bad.truncate(5);
    outcome(
        bad.is_empty() && combos == 60,
        format!("{combos} function/kind/parameter combinations, worst scaled residual {worst:.2e}{}", list(&bad)),
    )
}

fn hausdorff(a: &[PlanePoint], b: &[PlanePoint]) -> f64 {
    let directed = |a: &[PlanePoint], b: &[PlanePoint]| {
        a.iter()
            .map(|p| b.iter().map(|q| p.distance(q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

fn periodic_shear() -> Outcome {
    let sin = func("sin(x)");
    let first: Vec<PlanePoint> = affine_samples(&sin, 0.0, 2.0 * PI, 200).into_iter().map(|s| s.1).collect();
    let second: Vec<PlanePoint> = affine_samples(&sin, 2.0 * PI, 4.0 * PI, 200).into_iter().map(|s| s.1).collect();
    // Shifting the input by one period moves focal points by shear(-2π);
    // shear(2π) carries the second period back onto the first.
    let shear = shear_for_period(2.0 * PI);
    let back: Vec<PlanePoint> = second.iter().map(|p| shear.apply(*p)).collect();
    let forward: Vec<PlanePoint> = first.iter().map(|p| shear.inverse().apply(*p)).collect();
    let d_back = hausdorff(&back, &first);
    let d_forward = hausdorff(&forward, &second);
    let cusps = sin.cusps(0.0, 2.0 * PI, AxesConfig::default());
    let cusp_ok = cusps.len() == 1
        && cusps[0]
            .affine
            .is_some_and(|p| (p.x - 0.5).abs() <= 1e-9 && (p.y - PI / 2.0).abs() <= 1e-9);
    let cusp = cusps.first().and_then(|c| c.affine);
    outcome(
        d_back <= 1e-6 && d_forward <= 1e-6 && cusp_ok && first.len() == second.len() && first.len() >= 190,
        format!(
            "{} samples per period, Hausdorff distances {d_back:.2e} and {d_forward:.2e}; cusp at {}",
            first.len(),
            show(cusp)
        ),
    )
}

fn composition() -> Outcome {
    let cfg = AxesConfig::default();
    let comp = compose_linear_foci(2.0, -2.0, 2.0, 3.0, cfg);
    let near = |p: &ProjectivePoint, x: f64, y: f64| {
        p.affine()
            .is_some_and(|q| (q.x - x).abs() <= 1e-12 && (q.y - y).abs() <= 1e-12)
    };
    let known = near(&comp.ff, -1.0, 2.0)
        && near(&comp.fg, 0.0, -3.0)
        && near(&comp.fgf, -2.0 / 3.0, 1.0 / 3.0)
        && comp.t.is_some_and(|t| (t - 1.0 / 3.0).abs() <= 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let reciprocal = [2.0, -2.0, 4.0, 0.5, -0.5, 0.25, 8.0, -4.0];
    let (mut worst, mut infinite) = (0.0f64, 0);
    for i in 0..500 {
        let (b, d) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let (a, c) = match i % 10 {
            0 => {
                let a: f64 = reciprocal[rng.gen_range(0..reciprocal.len())];
                (a, 1.0 / a)
            }
            1 => (1.0, rng.gen_range(-5.0..5.0)),
            2 => (rng.gen_range(-5.0..5.0), 1.0),
            _ => (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
        };
        let comp = compose_linear_foci(a, b, c, d, cfg);
        if comp.fgf.affine().is_none() {
            infinite += 1;
        }
        worst = worst.max(comp.determinant.abs());
    }
    outcome(
        known && worst <= 1e-9,
        format!(
            "example foci {}, {}, {}, t = {}; 500 quadruples ({infinite} with the composite focus at infinity), worst determinant {worst:.2e}",
            show(comp.ff.affine()),
            show(comp.fg.affine()),
            show(comp.fgf.affine()),
            comp.t.map_or("undefined".to_string(), |t| t.to_string())
        ),
    )
}

fn vertical_axis_tangency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut checked, mut bad) = (0, Vec::new());
    while checked < 20 {
        let v: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-5..=5));
        if v[3] == 0 {
            continue;
        }
        let [a, b, c, d, e] = v.map(rational_int);
        let Ok(g) = conic_from_family(&a, &b, &c, &d, &e) else { continue };
        let f = family_function(&a, &b, &c, &d, &e).expect("valid family");
        checked += 1;
        let expected: Rational = -(&e / &d);
        let y0 = crate::poly::rational_to_f64(&expected);
        let meets = vertical_axis_meet(&g, &f);
        let ok = meets.len() == 1
            && meets[0].point.x == 0.0
            && (meets[0].point.y - y0).abs() <= 1e-12
            && meets[0].tangent_is_vertical
            && Ring::is_zero(&g.eval(&Rational::from_integer(0.into()), &expected));
        if !ok {
            bad.push(format!("{v:?}: {meets:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} of {checked} family members meet x = 0 only at (0, -e/d) with a vertical tangent{}",
            checked - bad.len(),
            list(&bad)
        ),
    )
}
