//! Exact algebra for focal curves of rational functions.
//!
//! For `f = P/Q` the focal curve is the image of
//! `t -> (Q² : PQ - t(P'Q - PQ') : PQ' - P'Q + Q²)`, and eliminating `t`
//! with a resultant yields its implicit equation `G(x, y) = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::focal::PlanePoint;
use crate::poly::{rational_int, rational_to_f64, GcdRing, Poly1, Poly2, Rational, Ring, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("the parametrization is degenerate: its focal curve is a point")]
    DegenerateParametrization,
    #[error("the family member is linear after cancellation")]
    DegenerateFamily,
    #[error("not a conic: total degree is {0}")]
    NotAConic(usize),
}

/// `P/Q` in lowest terms with integer coefficients of overall content 1 and
/// `lc(Q) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    p: Poly1,
    q: Poly1,
}

/// Scales the polynomials by one positive rational so that all coefficients
/// are integers with gcd 1.
fn integer_primitive(polys: &mut [Poly1]) {
    let coeffs = polys.iter().flat_map(|p| p.coeffs().iter());
    let (mut lcm, mut gcd) = (BigInt::one(), BigInt::zero());
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
        gcd = gcd.gcd(c.numer());
    }
    if gcd.is_zero() {
        return;
    }
    let factor = Rational::new(lcm, gcd);
    for p in polys.iter_mut() {
        *p = p.scale(&factor);
    }
}

impl RationalFunction {
    /// `None` when `q` is the zero polynomial.
    pub fn new(p: Poly1, q: Poly1) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        if p.is_zero() {
            return Some(RationalFunction {
                p,
                q: Poly1::one(),
            });
        }
        let g = p.gcd(&q);
        let mut pair = [
            p.exact_div(&g).expect("gcd divides"),
            q.exact_div(&g).expect("gcd divides"),
        ];
        integer_primitive(&mut pair);
        if pair[1].lc().is_negative() {
            pair = [pair[0].neg(), pair[1].neg()];
        }
        let [p, q] = pair;
        Some(RationalFunction { p, q })
    }

    pub fn polynomial(p: Poly1) -> Self {
        Self::new(p, Poly1::one()).expect("denominator is one")
    }

    pub fn p(&self) -> &Poly1 {
        &self.p
    }

    pub fn q(&self) -> &Poly1 {
        &self.q
    }

    /// `(deg P, deg Q)`, with the zero polynomial counted as degree 0.
    pub fn degrees(&self) -> (usize, usize) {
        (self.p.deg0(), self.q.deg0())
    }

    pub fn eval(&self, t: f64) -> Option<f64> {
        let q = self.q.eval_f64(t);
        (q != 0.0).then(|| self.p.eval_f64(t) / q)
    }

    pub fn eval_exact(&self, t: &Rational) -> Option<Rational> {
        let q = self.q.eval(t);
        (!Ring::is_zero(&q)).then(|| self.p.eval(t) / q)
    }

    /// True when `f` is constant or of the form `ax + b`.
    pub fn is_linear(&self) -> bool {
        self.q.is_constant() && self.p.deg0() <= 1
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == Poly1::one() {
            write!(f, "{}", self.p.display_in("x"))
        } else {
            write!(f, "({})/({})", self.p.display_in("x"), self.q.display_in("x"))
        }
    }
}

/// Homogeneous parametrization `(A : B : C)` of a focal curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FocalTriple {
    pub a: Poly1,
    pub b: Poly1,
    pub c: Poly1,
}

impl FocalTriple {
    pub fn degree(&self) -> usize {
        self.a.deg0().max(self.b.deg0()).max(self.c.deg0())
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_constant() && self.b.is_constant() && self.c.is_constant()
    }

    /// Affine point `(A(t)/C(t), B(t)/C(t))`, `None` where `C(t) = 0`.
    pub fn point_exact(&self, t: &Rational) -> Option<(Rational, Rational)> {
        let c = self.c.eval(t);
        if Ring::is_zero(&c) {
            return None;
        }
        Some((self.a.eval(t) / &c, self.b.eval(t) / c))
    }
}

/// `A = Q²`, `B = PQ - t(P'Q - PQ')`, `C = PQ' - P'Q + Q²`, with the common
/// polynomial factor and integer content removed.
pub fn focal_triple(rf: &RationalFunction) -> FocalTriple {
    let (p, q) = (rf.p(), rf.q());
    let (dp, dq) = (p.derivative(), q.derivative());
    let t = Poly1::var();
    let a = q.mul(q);
    let b = p.mul(q).sub(&t.mul(&dp.mul(q).sub(&p.mul(&dq))));
    let c = p.mul(&dq).sub(&dp.mul(q)).add(&a);
    let g = a.gcd(&b).gcd(&c);
    let mut polys = [a, b, c].map(|x| x.exact_div(&g).expect("gcd divides"));
    integer_primitive(&mut polys);
    let [a, b, c] = polys;
    FocalTriple { a, b, c }
}

/// Degree of the focal curve of a generic `P/Q` with `deg P = p`, `deg Q = q`.
pub fn expected_degree(p: usize, q: usize) -> usize {
    if p <= q + 1 {
        2 * q
    } else {
        p + q
    }
}

/// Diagnostic output of [`implicitize_with_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitReport {
    pub equation: Poly2,
    /// Total degree of the raw resultant.
    pub resultant_degree: usize,
    /// Square-free factors of the resultant that missed some probe point.
    pub removed: Vec<Poly2>,
}

const PROBE_COUNT: usize = 20;
const PROBE_SEED: u64 = 0x5eed_f0ca;

/// Exact points on the curve at deterministic pseudo-random parameters.
fn probe_points(triple: &FocalTriple) -> Vec<(Rational, Rational)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut out = Vec::with_capacity(PROBE_COUNT);
    while out.len() < PROBE_COUNT {
        let num: i64 = rng.gen_range(-97..=97);
        let den: i64 = rng.gen_range(1..=31);
        let t = Rational::new(num.into(), den.into());
        if let Some(p) = triple.point_exact(&t) {
            out.push(p);
        }
    }
    out
}

/// Newton interpolation through `(xs[i], values[i])`.
fn interpolate(xs: &[Rational], values: &[Rational]) -> Poly1 {
    let mut diffs = values.to_vec();
    for k in 1..xs.len() {
        for i in (k..xs.len()).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut out = Poly1::zero();
    for i in (0..xs.len()).rev() {
        let root = Poly1::new(vec![-xs[i].clone(), <Rational as One>::one()]);
        out = out.mul(&root).add(&Poly1::constant(diffs[i].clone()));
    }
    out
}

/// Integers at which `lc(s)` does not vanish.
fn nonsingular_nodes(count: usize, lc: impl Fn(&Rational) -> Rational) -> Vec<Rational> {
    (0i64..)
        .map(rational_int)
        .filter(|v| !Zero::is_zero(&lc(v)))
        .take(count)
        .collect()
}

/// `Res_t(xC - A, yC - B)`, by exact evaluation on a grid and interpolation.
///
/// The resultant has degree at most `deg_t(yC - B)` in `x` and `deg_t(xC - A)`
/// in `y`. Nodes where a leading coefficient in `t` vanishes are skipped, so
/// each specialized resultant equals the specialization of the resultant.
fn focal_resultant(triple: &FocalTriple) -> Poly2 {
    let (a, b, c) = (&triple.a, &triple.b, &triple.c);
    let n = a.deg0().max(c.deg0());
    let m = b.deg0().max(c.deg0());
    let xs = nonsingular_nodes(m + 1, |x| x * c.coeff(n) - a.coeff(n));
    let ys = nonsingular_nodes(n + 1, |y| y * c.coeff(m) - b.coeff(m));
    let y_eqs: Vec<Poly1> = ys.iter().map(|y| c.scale(y).sub(b)).collect();
    // Row i: the resultant at x = xs[i] as a polynomial in y.
    let rows: Vec<Poly1> = xs
        .iter()
        .map(|x| {
            let x_eq = c.scale(x).sub(a);
            let values: Vec<Rational> = y_eqs.iter().map(|y_eq| x_eq.resultant(y_eq)).collect();
            interpolate(&ys, &values)
        })
        .collect();
    let coeffs = (0..=n)
        .map(|k| {
            let values: Vec<Rational> = rows.iter().map(|r| r.coeff(k)).collect();
            interpolate(&xs, &values)
        })
        .collect();
    Poly2::from_nested(UPoly::new(coeffs))
}

/// Square-free factors of a polynomial without factors in `x` or `y` alone.
fn square_free_factors(g: &Poly2) -> Vec<Poly2> {
    let nested = g.nested();
    if nested.is_constant() {
        return Vec::new();
    }
    // Square-free at a node that keeps the degree in y implies square-free.
    let lc = nested.lc();
    for x0 in (0i64..8).map(rational_int) {
        if Zero::is_zero(&lc.eval(&x0)) {
            continue;
        }
        let s = g.at_x(&x0);
        if GcdRing::gcd(&s, &s.derivative()).is_constant() {
            return vec![g.clone()];
        }
    }
    nested
        .square_free_decomposition()
        .into_iter()
        .map(|(f, _)| Poly2::from_nested(f))
        .collect()
}

/// Implicit equation of the curve `(A : B : C)`.
pub fn implicitize(triple: &FocalTriple) -> Result<Poly2, AlgebraError> {
    implicitize_with_report(triple).map(|r| r.equation)
}

/// Like [`implicitize`], also reporting the factors that were discarded.
pub fn implicitize_with_report(triple: &FocalTriple) -> Result<ImplicitReport, AlgebraError> {
    if triple.is_constant() {
        return Err(AlgebraError::DegenerateParametrization);
    }
    let res = focal_resultant(triple);
    if res.is_zero() {
        return Err(AlgebraError::DegenerateParametrization);
    }
    let resultant_degree = res.total_degree().unwrap_or(0);

    // Factors that involve only x or only y, then the rest.
    let cx = res.content_in_x();
    let rest = res.exact_div(&Poly2::from_x_poly(&cx)).expect("content divides");
    let cy = rest.content_in_y();
    let rest = rest.exact_div(&Poly2::from_y_poly(&cy)).expect("content divides");

    let mut candidates: Vec<Poly2> = Vec::new();
    candidates.extend(
        cx.square_free_decomposition()
            .into_iter()
            .map(|(f, _)| Poly2::from_x_poly(&f)),
    );
    candidates.extend(
        cy.square_free_decomposition()
            .into_iter()
            .map(|(f, _)| Poly2::from_y_poly(&f)),
    );
    candidates.extend(square_free_factors(&rest));

    let probes = probe_points(triple);
    let mut equation = Poly2::one();
    let mut removed = Vec::new();
    for factor in candidates {
        if probes.iter().all(|(x, y)| Ring::is_zero(&factor.eval(x, y))) {
            equation = equation.mul(&factor);
        } else {
            removed.push(factor.normalize());
        }
    }
    if equation.total_degree().unwrap_or(0) == 0 {
        return Err(AlgebraError::DegenerateParametrization);
    }
    Ok(ImplicitReport {
        equation: equation.normalize(),
        resultant_degree,
        removed,
    })
}

/// Focal conic of `(ax² + bx + c)/(dx + e)`:
/// `(b² - 4ac + 4cd - 2be + e²)x² - 2(bd - 2ae + de)xy + d²y²
///  - 2(2cd - be + e²)x + 2dey + e²`.
pub fn conic_from_family(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
) -> Result<Poly2, AlgebraError> {
    let rf = family_function(a, b, c, d, e)?;
    if rf.is_linear() {
        return Err(AlgebraError::DegenerateFamily);
    }
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    let xx = b * b - &four * a * c + &four * c * d - &two * b * e + e * e;
    let xy = -(&two * (b * d - &two * a * e + d * e));
    let yy = d * d;
    let x1 = -(&two * (&two * c * d - b * e + e * e));
    let y1 = &two * d * e;
    let k = e * e;
    let g = Poly2::from_terms([(2, 0, xx), (1, 1, xy), (0, 2, yy), (1, 0, x1), (0, 1, y1), (0, 0, k)]);
    Ok(g.normalize())
}

/// `(ax² + bx + c)/(dx + e)` as a reduced rational function.
pub fn family_function(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
) -> Result<RationalFunction, AlgebraError> {
    let p = Poly1::new(vec![c.clone(), b.clone(), a.clone()]);
    let q = Poly1::new(vec![e.clone(), d.clone()]);
    RationalFunction::new(p, q).ok_or(AlgebraError::DegenerateFamily)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicClass {
    Ellipse,
    Circle,
    Parabola,
    Hyperbola,
    Degenerate,
}

impl ConicClass {
    pub fn name(self) -> &'static str {
        match self {
            ConicClass::Ellipse => "ellipse",
            ConicClass::Circle => "circle",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for ConicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_conic(g: &Poly2) -> Result<ConicClass, AlgebraError> {
    let deg = g.total_degree().unwrap_or(0);
    if deg != 2 {
        return Err(AlgebraError::NotAConic(deg));
    }
    let half = Rational::new(1.into(), 2.into());
    let (a, b, c) = (g.coeff(2, 0), g.coeff(1, 1), g.coeff(0, 2));
    let (d, e, f) = (g.coeff(1, 0), g.coeff(0, 1), g.coeff(0, 0));
    let (b2, d2, e2) = (&b * &half, &d * &half, &e * &half);
    let det = &a * (&c * &f - &e2 * &e2) - &b2 * (&b2 * &f - &e2 * &d2) + &d2 * (&b2 * &e2 - &c * &d2);
    if Zero::is_zero(&det) {
        return Ok(ConicClass::Degenerate);
    }
    let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
    Ok(if disc.is_positive() {
        ConicClass::Hyperbola
    } else if Zero::is_zero(&disc) {
        ConicClass::Parabola
    } else if a == c && Zero::is_zero(&b) {
        ConicClass::Circle
    } else {
        ConicClass::Ellipse
    })
}

/// A point where a curve meets the input axis `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisMeet {
    pub point: PlanePoint,
    pub multiplicity: usize,
    pub tangent_is_vertical: bool,
    /// The ordinate is a pole of the function.
    pub at_pole: bool,
}

/// Intersections of `G = 0` with `x = 0`. Empty when the axis is a component
/// of the curve or the curve meets it only at infinity.
pub fn vertical_axis_meet(g: &Poly2, rf: &RationalFunction) -> Vec<AxisMeet> {
    let on_axis = g.at_x(&<Rational as Zero>::zero());
    if on_axis.is_constant() {
        return Vec::new();
    }
    let gx = g.partial_x();
    let mut out = Vec::new();
    for (factor, mult) in on_axis.square_free_decomposition() {
        let exact_root = (factor.degree() == Some(1)).then(|| -(factor.coeff(0) / factor.coeff(1)));
        let roots: Vec<f64> = match &exact_root {
            Some(r) => vec![rational_to_f64(r)],
            None => factor.real_roots(),
        };
        for y in roots {
            let (slope_nonzero, at_pole) = match &exact_root {
                Some(r) => (
                    !Ring::is_zero(&gx.eval(&<Rational as Zero>::zero(), r)),
                    Ring::is_zero(&rf.q().eval(r)),
                ),
                None => {
                    let scale = gx.max_abs_coeff().max(1.0) * (1.0 + y.abs()).powi(gx.total_degree().unwrap_or(0) as i32);
                    (
                        gx.eval_f64(0.0, y).abs() > 1e-9 * scale,
                        rf.q().eval_f64(y).abs() <= 1e-12,
                    )
                }
            };
            out.push(AxisMeet {
                point: PlanePoint::new(0.0, y),
                multiplicity: mult,
                tangent_is_vertical: mult >= 2 && slope_nonzero,
                at_pole,
            });
        }
    }
    out.sort_by(|a, b| a.point.y.total_cmp(&b.point.y));
    out
}
