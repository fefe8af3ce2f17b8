//! Operations shared by the subcommands and the HTTP API.

use std::fmt;

use arrowfocal::algebra::{classify_conic, focal_triple, implicitize, AlgebraError, RationalFunction};
use arrowfocal::expr::{parse, Expr, FunctionDef};
use arrowfocal::focal::{AxesConfig, FocalFunction, ProjectivePoint, PROJECTIVE_TOL};
use arrowfocal::poly::{parse_rational, rational_to_f64, Poly2, Rational};
use arrowfocal::render::{build_scene, RenderConfig, Scene};
use arrowfocal::transforms::{
    compose_linear_foci, compose_linear_foci_local, transform_implicit, TransformKind, TransformTag,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// Malformed input: bad syntax, missing or invalid parameters.
    Input,
    /// Well-formed input the mathematics does not apply to.
    Math,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub code: &'static str,
    pub message: String,
}

impl Failure {
    pub fn input(code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            kind: FailureKind::Input,
            code,
            message: message.into(),
        }
    }

    pub fn math(code: &'static str, message: impl Into<String>) -> Self {
        Failure {
            kind: FailureKind::Math,
            code,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            FailureKind::Input => 1,
            FailureKind::Math => 2,
        }
    }

    pub fn status(&self) -> u16 {
        match self.kind {
            FailureKind::Input => 400,
            FailureKind::Math => 422,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for Failure {}

/// Parses `x^2`, or a definition such as `f(x) = x^2`.
pub fn parse_function(text: &str) -> Result<Expr, Failure> {
    if text.contains('=') {
        return FunctionDef::parse(text)
            .map(|d| d.body)
            .map_err(|e| Failure::input("parse_error", e.to_string()));
    }
    parse(text).map_err(|e| Failure::input("parse_error", e.to_string()))
}

pub fn parse_number(name: &str, text: &str) -> Result<f64, Failure> {
    match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Failure::input("invalid_parameter", format!("{name} must be a finite number, got `{text}`"))),
    }
}

pub fn parse_count(name: &str, text: &str) -> Result<usize, Failure> {
    text.trim()
        .parse()
        .map_err(|_| Failure::input("invalid_parameter", format!("{name} must be a count, got `{text}`")))
}

/// `A:B` with `A < B`.
pub fn parse_range(name: &str, text: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::input("invalid_parameter", format!("{name} must look like A:B with A < B, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b) = (parse_number(name, a)?, parse_number(name, b)?);
    if a < b {
        Ok((a, b))
    } else {
        Err(bad())
    }
}

/// Exact rational such as `-2`, `1/2` or `0.25`.
pub fn parse_exact(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text)
        .ok_or_else(|| Failure::input("invalid_parameter", format!("{name} must be an exact rational, got `{text}`")))
}

pub fn parse_kind(kind: &str, c: &str) -> Result<TransformKind, Failure> {
    let tag: TransformTag = kind
        .parse()
        .map_err(|e: arrowfocal::transforms::TransformError| Failure::input("invalid_parameter", e.to_string()))?;
    tag.with(parse_exact("c", c)?)
        .map_err(|e| Failure::input("invalid_parameter", e.to_string()))
}

pub fn axes(delta: f64) -> Result<AxesConfig, Failure> {
    AxesConfig::new(delta).map_err(|e| Failure::input("invalid_parameter", e.to_string()))
}

fn rational_function(f: &Expr) -> Result<RationalFunction, Failure> {
    f.to_rational_function()
        .map_err(|_| Failure::math("not_rational", format!("`{f}` is not a rational function")))
}

fn algebra_failure(e: AlgebraError) -> Failure {
    Failure::math("degenerate", e.to_string())
}

/// Implicit equation with its degree and, for conics, the conic type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImplicitReport {
    pub equation: String,
    pub degree: usize,
    pub class: Option<String>,
    #[serde(skip)]
    pub poly: Poly2,
}

impl ImplicitReport {
    fn new(g: Poly2) -> Self {
        let degree = g.total_degree().unwrap_or(0);
        let class = (degree == 2)
            .then(|| classify_conic(&g).ok())
            .flatten()
            .map(|c| c.name().to_string());
        ImplicitReport {
            equation: format!("{g} = 0"),
            degree,
            class,
            poly: g,
        }
    }

    pub fn line(&self) -> String {
        match &self.class {
            Some(c) => format!("{} [{c}]", self.equation),
            None => self.equation.clone(),
        }
    }
}

fn implicit_poly(f: &Expr) -> Result<Poly2, Failure> {
    let rf = rational_function(f)?;
    if rf.is_linear() {
        return Err(Failure::math(
            "degenerate",
            format!("`{f}` is linear: its focal curve is a single point"),
        ));
    }
    implicitize(&focal_triple(&rf)).map_err(algebra_failure)
}

pub fn implicit(f: &Expr) -> Result<ImplicitReport, Failure> {
    implicit_poly(f).map(ImplicitReport::new)
}

pub fn transform(g: &Expr, kind: &TransformKind) -> Result<ImplicitReport, Failure> {
    let base = implicit_poly(g)?;
    transform_implicit(&base, kind)
        .map(ImplicitReport::new)
        .map_err(|e| Failure::math("degenerate", e.to_string()))
}

pub fn classify(poly_json: &str) -> Result<String, Failure> {
    let g = Poly2::from_json(poly_json).map_err(|e| Failure::input("invalid_parameter", e.to_string()))?;
    classify_conic(&g)
        .map(|c| c.name().to_string())
        .map_err(|e| Failure::math("not_a_conic", e.to_string()))
}

/// Affine `[x, y]` when finite.
fn affine(p: &ProjectivePoint) -> Option<[f64; 2]> {
    p.affine().map(|q| [q.x, q.y])
}

/// `[x, y, 1]` for finite points, a unit vector `[X, Y, 0]` at infinity.
fn projective(p: &ProjectivePoint) -> [f64; 3] {
    match p.affine() {
        Some(q) => [q.x, q.y, 1.0],
        None => p.normalized().coords(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub x0: f64,
    pub fx0: f64,
    pub focus: Option<[f64; 2]>,
    pub projective: [f64; 3],
    pub fprime: f64,
}

pub fn probe(f: &Expr, x0: f64, delta: f64) -> Result<ProbeReport, Failure> {
    let p = FocalFunction::new(f.clone())
        .probe(x0, axes(delta)?)
        .map_err(|e| Failure::math("domain", e.to_string()))?;
    Ok(ProbeReport {
        x0,
        fx0: p.fx0,
        focus: affine(&p.focus),
        projective: projective(&p.focus),
        fprime: p.fprime,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocalReport {
    pub t: f64,
    pub focus: Option<[f64; 2]>,
    pub projective: [f64; 3],
    pub tangent: Option<[f64; 2]>,
    pub at_infinity: bool,
}

pub fn focal(f: &Expr, t: f64, delta: f64) -> Result<FocalReport, Failure> {
    let cfg = axes(delta)?;
    let func = FocalFunction::new(f.clone());
    let point = func
        .focal_point(t, cfg)
        .map_err(|e| Failure::math("domain", e.to_string()))?;
    let at_infinity = point.is_at_infinity(PROJECTIVE_TOL);
    let tangent = if at_infinity {
        None
    } else {
        func.focal_tangent(t, cfg)
            .map_err(|e| Failure::math("domain", e.to_string()))?
            .map(|(dx, dy)| [dx, dy])
    };
    Ok(FocalReport {
        t,
        focus: affine(&point),
        projective: projective(&point),
        tangent,
        at_infinity,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComposeReport {
    #[serde(rename = "Ff")]
    pub ff: [f64; 3],
    #[serde(rename = "Fg")]
    pub fg: [f64; 3],
    #[serde(rename = "Fgf")]
    pub fgf: [f64; 3],
    pub t: Option<f64>,
    pub collinear: bool,
    pub determinant: f64,
}

impl ComposeReport {
    pub fn lines(&self) -> Vec<String> {
        let show = |p: &[f64; 3]| {
            if p[2] == 1.0 {
                format!("({}, {})", p[0] + 0.0, p[1] + 0.0)
            } else {
                format!("({} : {} : 0) at infinity", p[0] + 0.0, p[1] + 0.0)
            }
        };
        vec![
            format!("F_f   = {}", show(&self.ff)),
            format!("F_g   = {}", show(&self.fg)),
            format!("F_gf  = {}", show(&self.fgf)),
            match self.t {
                Some(t) => format!("t     = {t}"),
                None => "t     = undefined (ac = 1)".to_string(),
            },
            format!("collinear: {} (determinant {:e})", self.collinear, self.determinant),
        ]
    }
}

pub fn compose(a: f64, b: f64, c: f64, d: f64, local: bool) -> ComposeReport {
    let cfg = AxesConfig::default();
    let comp = if local {
        compose_linear_foci_local(a, b, c, d, cfg)
    } else {
        compose_linear_foci(a, b, c, d, cfg)
    };
    ComposeReport {
        ff: projective(&comp.ff),
        fg: projective(&comp.fg),
        fgf: projective(&comp.fgf),
        t: comp.t,
        collinear: comp.is_collinear(),
        determinant: comp.determinant,
    }
}

/// `(a, b)` for `f = ax + b`.
pub fn linear_coefficients(f: &Expr) -> Result<(f64, f64), Failure> {
    let not_linear = || Failure::math("not_linear", format!("`{f}` is not of the form a*x + b"));
    let rf = f.to_rational_function().map_err(|_| not_linear())?;
    let (p, q) = (rf.p(), rf.q());
    if rf.degrees().0 > 1 || rf.degrees().1 != 0 {
        return Err(not_linear());
    }
    let q0 = q.coeff(0);
    Ok((rational_to_f64(&(p.coeff(1) / &q0)), rational_to_f64(&(p.coeff(0) / &q0))))
}

pub fn scene(f: &Expr, cfg: &RenderConfig, g: Option<&Expr>) -> Result<Scene, Failure> {
    use arrowfocal::render::RenderError;
    build_scene(f, cfg, g).map_err(|e| match e {
        RenderError::InvalidConfig(_) | RenderError::Focal(arrowfocal::focal::FocalError::InvalidDelta(_)) => {
            Failure::input("invalid_parameter", e.to_string())
        }
        RenderError::Focal(_) => Failure::math("domain", e.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_line() {
        let r = implicit(&parse_function("x^2").unwrap()).unwrap();
        assert_eq!(r.line(), "(x-1)^2 + 4*x*y = 0 [hyperbola]");
        assert_eq!(r.degree, 2);
        let r = implicit(&parse_function("f(x) = 1/x^2").unwrap()).unwrap();
        assert_eq!(r.class, None);
        assert_eq!(r.degree, 3);
    }

    #[test]
    fn failures_have_kinds() {
        let e = implicit(&parse_function("sin(x)").unwrap()).unwrap_err();
        assert_eq!((e.code, e.exit_code(), e.status()), ("not_rational", 2, 422));
        let e = implicit(&parse_function("3x + 1").unwrap()).unwrap_err();
        assert_eq!(e.code, "degenerate");
        let e = parse_function("x^^2").unwrap_err();
        assert_eq!((e.code, e.exit_code(), e.status()), ("parse_error", 1, 400));
        assert!(parse_range("range", "2:1").is_err());
        assert_eq!(parse_range("range", "-2:2.5").unwrap(), (-2.0, 2.5));
        assert!(parse_number("x0", "nan").is_err());
        assert!(parse_kind("twist", "1").is_err());
        assert!(parse_kind("scale-input", "0").is_err());
    }

    #[test]
    fn linear_parts() {
        assert_eq!(linear_coefficients(&parse_function("2x - 2").unwrap()).unwrap(), (2.0, -2.0));
        assert_eq!(linear_coefficients(&parse_function("(4x + 6)/2").unwrap()).unwrap(), (2.0, 3.0));
        assert_eq!(linear_coefficients(&parse_function("5").unwrap()).unwrap(), (0.0, 5.0));
        assert!(linear_coefficients(&parse_function("x^2").unwrap()).is_err());
        assert!(linear_coefficients(&parse_function("1/x").unwrap()).is_err());
    }

    #[test]
    fn probe_and_focal() {
        let f = parse_function("x^2").unwrap();
        let p = probe(&f, -1.0, 1.0).unwrap();
        assert!((p.fprime + 2.0).abs() < 1e-12);
        let [x, y] = p.focus.unwrap();
        assert!((x - 1.0 / 3.0).abs() < 1e-12 && (y + 1.0 / 3.0).abs() < 1e-12);
        let r = focal(&f, 0.5, 1.0).unwrap();
        assert!(r.at_infinity && r.focus.is_none() && r.projective[2] == 0.0);
        let id = probe(&parse_function("x").unwrap(), 3.0, 1.0).unwrap();
        assert_eq!((id.focus, id.fprime), (None, 1.0));
    }

    #[test]
    fn compose_two_doublings() {
        let r = compose(2.0, -2.0, 2.0, 3.0, false);
        assert_eq!(r.ff, [-1.0, 2.0, 1.0]);
        assert!(r.collinear);
        assert!((r.t.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let r = compose(2.0, 1.0, 0.5, 1.0, false);
        assert_eq!(r.fgf[2], 0.0);
        assert!(r.collinear && r.t.is_none());
    }
}
