//! How focal curves move when the function is shifted or scaled, and the
//! focus of a composition of two linear functions.
//!
//! If the focal curve of `g` is `G(x, y) = 0` then, with `D = 1 + (c - 1)x`,
//!
//! | `f`            | focal curve of `f`           |
//! |----------------|------------------------------|
//! | `g(x) + c`     | `G(x, y - cx)`               |
//! | `c g(x)`       | `G(cx/D, y/D)`               |
//! | `g(x - c)`     | `G(x, y + c(x - 1))`         |
//! | `g(cx)`        | `G(cx/D, cy/D)`              |

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::expr::Expr;
use crate::focal::{collinearity_determinant, AxesConfig, PlanePoint, ProjectivePoint};
use crate::poly::{rational_to_f64, Poly2, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("scaling by zero is not invertible")]
    ZeroScale,
    #[error("the transformed equation vanishes identically")]
    DegenerateResult,
    #[error("unknown transform `{0}`; expected add-constant, scale-output, shift-input or scale-input")]
    UnknownKind(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformKind {
    /// `f(x) = g(x) + c`
    AddConstant(Rational),
    /// `f(x) = c g(x)`
    ScaleOutput(Rational),
    /// `f(x) = g(x - c)`
    ShiftInput(Rational),
    /// `f(x) = g(cx)`
    ScaleInput(Rational),
}

/// Kind tag without the parameter, as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformTag {
    AddConstant,
    ScaleOutput,
    ShiftInput,
    ScaleInput,
}

impl TransformTag {
    pub const ALL: [TransformTag; 4] = [
        TransformTag::AddConstant,
        TransformTag::ScaleOutput,
        TransformTag::ShiftInput,
        TransformTag::ScaleInput,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformTag::AddConstant => "add-constant",
            TransformTag::ScaleOutput => "scale-output",
            TransformTag::ShiftInput => "shift-input",
            TransformTag::ScaleInput => "scale-input",
        }
    }

    pub fn with(self, c: Rational) -> Result<TransformKind, TransformError> {
        let kind = match self {
            TransformTag::AddConstant => TransformKind::AddConstant(c),
            TransformTag::ScaleOutput => TransformKind::ScaleOutput(c),
            TransformTag::ShiftInput => TransformKind::ShiftInput(c),
            TransformTag::ScaleInput => TransformKind::ScaleInput(c),
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl fmt::Display for TransformTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformTag {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TransformTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| TransformError::UnknownKind(s.to_string()))
    }
}

impl TransformKind {
    pub fn tag(&self) -> TransformTag {
        match self {
            TransformKind::AddConstant(_) => TransformTag::AddConstant,
            TransformKind::ScaleOutput(_) => TransformTag::ScaleOutput,
            TransformKind::ShiftInput(_) => TransformTag::ShiftInput,
            TransformKind::ScaleInput(_) => TransformTag::ScaleInput,
        }
    }

    pub fn parameter(&self) -> &Rational {
        match self {
            TransformKind::AddConstant(c)
            | TransformKind::ScaleOutput(c)
            | TransformKind::ShiftInput(c)
            | TransformKind::ScaleInput(c) => c,
        }
    }

    pub fn validate(&self) -> Result<(), TransformError> {
        match self {
            TransformKind::ScaleOutput(c) | TransformKind::ScaleInput(c) if Zero::is_zero(c) => {
                Err(TransformError::ZeroScale)
            }
            _ => Ok(()),
        }
    }

    /// The transformed function `f` built from `g`.
    pub fn apply_to_expr(&self, g: &Expr) -> Expr {
        let c = Expr::Num(self.parameter().clone());
        match self {
            TransformKind::AddConstant(_) => (g.clone() + c).simplify(),
            TransformKind::ScaleOutput(_) => (c * g.clone()).simplify(),
            TransformKind::ShiftInput(_) => g.substitute(&(Expr::Var - c)).simplify(),
            TransformKind::ScaleInput(_) => g.substitute(&(c * Expr::Var)).simplify(),
        }
    }
}

/// `(x, y) -> (u/den, v/den)` with polynomial `u`, `v`, `den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap {
    pub u: Poly2,
    pub v: Poly2,
    pub den: Poly2,
}

impl PlaneMap {
    pub fn identity() -> Self {
        PlaneMap {
            u: Poly2::x(),
            v: Poly2::y(),
            den: Poly2::one(),
        }
    }

    /// Image of a point, `None` where the denominator vanishes.
    pub fn apply_f64(&self, p: PlanePoint) -> Option<PlanePoint> {
        let d = self.den.eval_f64(p.x, p.y);
        if d == 0.0 {
            return None;
        }
        Some(PlanePoint::new(
            self.u.eval_f64(p.x, p.y) / d,
            self.v.eval_f64(p.x, p.y) / d,
        ))
    }

    /// True when both components reduce to `(x, y)`.
    pub fn is_identity(&self) -> bool {
        self.u == self.den.mul(&Poly2::x()) && self.v == self.den.mul(&Poly2::y())
    }
}

/// The substitution that turns the focal equation of `g` into that of `f`.
pub fn substitution_map(kind: &TransformKind) -> PlaneMap {
    let c = Poly2::constant(kind.parameter().clone());
    let (x, y) = (Poly2::x(), Poly2::y());
    let one = Poly2::one();
    let scaled_den = || one.add(&c.sub(&one).mul(&x));
    match kind {
        TransformKind::AddConstant(_) => PlaneMap {
            u: x.clone(),
            v: y.sub(&c.mul(&x)),
            den: one,
        },
        TransformKind::ScaleOutput(_) => PlaneMap {
            u: c.mul(&x),
            v: y,
            den: scaled_den(),
        },
        TransformKind::ShiftInput(_) => PlaneMap {
            u: x.clone(),
            v: y.add(&c.mul(&x.sub(&one))),
            den: one,
        },
        TransformKind::ScaleInput(_) => PlaneMap {
            u: c.mul(&x),
            v: c.mul(&y),
            den: scaled_den(),
        },
    }
}

/// `den^n G(u/den, v/den)` with `n = deg G`, stripped of the factors of
/// `den` it picks up and normalized.
pub fn transform_implicit(g: &Poly2, kind: &TransformKind) -> Result<Poly2, TransformError> {
    kind.validate()?;
    let Some(deg) = g.total_degree() else {
        return Err(TransformError::DegenerateResult);
    };
    let map = substitution_map(kind);
    let upow = powers(&map.u, deg);
    let vpow = powers(&map.v, deg);
    let dpow = powers(&map.den, deg);
    let mut out = Poly2::zero();
    for (dx, dy, coeff) in g.terms() {
        let term = upow[dx].mul(&vpow[dy]).mul(&dpow[deg - dx - dy]).scale(&coeff);
        out = out.add(&term);
    }
    if out.is_zero() {
        return Err(TransformError::DegenerateResult);
    }
    if !map.den.total_degree().is_some_and(|d| d == 0) {
        while let Some(q) = out.exact_div(&map.den) {
            out = q;
        }
    }
    Ok(out.normalize())
}

fn powers(p: &Poly2, n: usize) -> Vec<Poly2> {
    let mut out = vec![Poly2::one()];
    for i in 0..n {
        out.push(out[i].mul(p));
    }
    out
}

/// `(x, y) -> (x, y + c(x - 1))`, which fixes the line `x = 1`.
///
/// Shifting the input of `g` by one period `c` changes its focal curve by
/// this shear, so the focal curve of a `c`-periodic function is invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shear {
    pub c: f64,
}

pub fn shear_for_period(c: f64) -> Shear {
    Shear { c }
}

impl Shear {
    pub fn apply(&self, p: PlanePoint) -> PlanePoint {
        PlanePoint::new(p.x, p.y + self.c * (p.x - 1.0))
    }

    pub fn inverse(&self) -> Shear {
        Shear { c: -self.c }
    }

    /// Exact form of the shear for a rational `c`.
    pub fn exact(c: Rational) -> PlaneMap {
        substitution_map(&TransformKind::ShiftInput(c))
    }
}

/// Foci of `f = ax + b`, `g = cx + d` and `g ∘ f`, with the interpolation
/// parameter `t = (1 - c)/(1 - ac)` where it is finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Composition {
    pub ff: ProjectivePoint,
    pub fg: ProjectivePoint,
    pub fgf: ProjectivePoint,
    pub t: Option<f64>,
    /// Determinant of the three unit-normalized triples.
    pub determinant: f64,
}

pub const COLLINEAR_TOL: f64 = 1e-9;

impl Composition {
    fn new(ff: ProjectivePoint, fg: ProjectivePoint, fgf: ProjectivePoint, a: f64, c: f64) -> Self {
        let den = 1.0 - a * c;
        let t = (den != 0.0).then(|| (1.0 - c) / den);
        Composition {
            ff,
            fg,
            fgf,
            t,
            determinant: collinearity_determinant(&ff, &fg, &fgf),
        }
    }

    pub fn is_collinear(&self) -> bool {
        self.determinant.abs() <= COLLINEAR_TOL
    }

    /// `(1 - t) F_f + t F_g` in the affine chart, when everything is finite.
    pub fn interpolated(&self) -> Option<PlanePoint> {
        let t = self.t?;
        let (f, g) = (self.ff.affine()?, self.fg.affine()?);
        Some(PlanePoint::new(
            (1.0 - t) * f.x + t * g.x,
            (1.0 - t) * f.y + t * g.y,
        ))
    }
}

/// Juxtaposed layout: `f` maps the axis at 0 to the axis at `δ`, `g` maps
/// the axis at `δ` to the one at `2δ`, and `g ∘ f` spans width `2δ`.
pub fn compose_linear_foci(a: f64, b: f64, c: f64, d: f64, cfg: AxesConfig) -> Composition {
    let delta = cfg.delta;
    let ff = ProjectivePoint::new(delta, b, 1.0 - a);
    let fg = ProjectivePoint::new(delta * (2.0 - c), d, 1.0 - c);
    let fgf = ProjectivePoint::new(2.0 * delta, b * c + d, 1.0 - a * c);
    Composition::new(ff, fg, fgf, a, c)
}

/// Each focus in its own chart with axes at 0 and `δ`. The interpolation
/// identity does not hold in this layout.
pub fn compose_linear_foci_local(a: f64, b: f64, c: f64, d: f64, cfg: AxesConfig) -> Composition {
    let delta = cfg.delta;
    let ff = ProjectivePoint::new(delta, b, 1.0 - a);
    let fg = ProjectivePoint::new(delta, d, 1.0 - c);
    let fgf = ProjectivePoint::new(delta, b * c + d, 1.0 - a * c);
    Composition::new(ff, fg, fgf, a, c)
}

/// Numeric check of a law for curves without a polynomial equation: the
/// residual of `g`'s focal equation at the mapped point.
pub fn mapped_residual(
    kind: &TransformKind,
    residual: impl Fn(PlanePoint) -> f64,
    p: PlanePoint,
) -> Option<f64> {
    substitution_map(kind).apply_f64(p).map(residual)
}

/// `c` as a double, for display and numeric checks.
pub fn parameter_f64(kind: &TransformKind) -> f64 {
    rational_to_f64(kind.parameter())
}
