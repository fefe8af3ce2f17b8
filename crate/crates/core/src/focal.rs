//! Foci, focal curves and their projective duals.
//!
//! The input axis is the line `x = 0` and the output axis the line `x = δ`.
//! An arrow joins `(0, t)` to `(δ, f(t))`. The focus of the linear function
//! `ax + b` is the common point of all its arrow lines, `(δ : b : 1 - a)` in
//! homogeneous coordinates; the focal curve of `f` collects the foci of its
//! tangent lines, `(δ : f(t) - t f'(t) : 1 - f'(t))`.

use serde::{Deserialize, Serialize};

use crate::expr::{EvalError, Expr};

/// Slopes within this distance of 1 put the focus at infinity.
pub const INFINITY_SLOPE_TOL: f64 = 1e-9;

/// Default relative tolerance for projective equality.
pub const PROJECTIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FocalError {
    #[error("function is undefined at t = {t}: {source}")]
    Domain { t: f64, source: EvalError },
    #[error("f'({t}) = 1: the focus is at infinity")]
    SingularParameter { t: f64 },
    #[error("a focus on the input axis gives no derivative reading")]
    InvalidFocus,
    #[error("no sample in the range could be evaluated")]
    EmptyRange,
    #[error("invalid range: need t_min < t_max and at least two samples")]
    InvalidRange,
    #[error("axis separation must be positive and finite, got {0}")]
    InvalidDelta(f64),
}

/// Horizontal separation of the input and output axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxesConfig {
    pub delta: f64,
}

impl AxesConfig {
    pub fn new(delta: f64) -> Result<Self, FocalError> {
        if delta > 0.0 && delta.is_finite() {
            Ok(AxesConfig { delta })
        } else {
            Err(FocalError::InvalidDelta(delta))
        }
    }
}

impl Default for AxesConfig {
    fn default() -> Self {
        AxesConfig { delta: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    pub fn distance(&self, other: &PlanePoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Point `(X : Y : Z)` of the projective plane; `Z = 0` is the line at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ProjectivePoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        ProjectivePoint { x, y, z }
    }

    pub fn from_affine(p: PlanePoint) -> Self {
        ProjectivePoint::new(p.x, p.y, 1.0)
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Same point scaled to unit Euclidean norm.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        ProjectivePoint::new(self.x / n, self.y / n, self.z / n)
    }

    /// True when `|Z|` is at most `tol` times the norm of the triple.
    pub fn is_at_infinity(&self, tol: f64) -> bool {
        self.z.abs() <= tol * self.norm()
    }

    /// `(X/Z, Y/Z)`, or `None` for points at infinity.
    pub fn affine(&self) -> Option<PlanePoint> {
        if self.z == 0.0 || self.is_at_infinity(1e-14) {
            return None;
        }
        let p = PlanePoint::new(self.x / self.z, self.y / self.z);
        (p.x.is_finite() && p.y.is_finite()).then_some(p)
    }

    pub fn cross(&self, other: &ProjectivePoint) -> [f64; 3] {
        let (a, b) = (self.coords(), other.coords());
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    /// `‖u × v‖ / (‖u‖ ‖v‖)`: zero exactly when the triples are proportional.
    pub fn relative_cross(&self, other: &ProjectivePoint) -> f64 {
        let c = self.cross(other);
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        n / (self.norm() * other.norm())
    }

    pub fn projectively_equal(&self, other: &ProjectivePoint, tol: f64) -> bool {
        self.relative_cross(other) <= tol
    }
}

/// Determinant of three homogeneous triples after scaling each to unit norm.
pub fn collinearity_determinant(p: &ProjectivePoint, q: &ProjectivePoint, r: &ProjectivePoint) -> f64 {
    let (a, b, c) = (p.normalized(), q.normalized(), r.normalized());
    let cross = b.cross(&c);
    a.x * cross[0] + a.y * cross[1] + a.z * cross[2]
}

/// Parameters of the linear function `ax + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearParams {
    pub a: f64,
    pub b: f64,
}

/// Focus of `ax + b`: the intersection of all lines through `(0, x)` and
/// `(δ, ax + b)`, i.e. `(δ/(1-a), b/(1-a))`, at infinity when `a = 1`.
pub fn linear_focus(p: LinearParams, cfg: AxesConfig) -> ProjectivePoint {
    ProjectivePoint::new(cfg.delta, p.b, 1.0 - p.a)
}

/// Reads `f'(x0)` off the horizontal position of the local focus:
/// `x = δ/(1 - f')` inverts to `f' = 1 - δ/x`.
pub fn derivative_from_focus(x_coord: f64, cfg: AxesConfig) -> Result<f64, FocalError> {
    if x_coord == 0.0 || !x_coord.is_finite() {
        return Err(FocalError::InvalidFocus);
    }
    Ok(1.0 - cfg.delta / x_coord)
}

/// Sends the dual-curve point `(f' : -1 : f - t f')` to the focal point
/// `(1 : f - t f' : 1 - f')`: `(X : Y : Z) -> (Y : -Z : X + Y)`.
pub fn duality_map(p: ProjectivePoint) -> ProjectivePoint {
    ProjectivePoint::new(p.y, -p.z, p.x + p.y)
}

/// Inverse of [`duality_map`].
pub fn inverse_duality_map(p: ProjectivePoint) -> ProjectivePoint {
    ProjectivePoint::new(p.z - p.x, p.x, -p.y)
}

/// One point of a sampled focal curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocalSample {
    pub t: f64,
    pub point: ProjectivePoint,
    /// Absent when the focus is at infinity.
    pub affine: Option<PlanePoint>,
    /// Velocity of the focal curve; absent at infinity and where `f'' = 0`.
    pub tangent: Option<(f64, f64)>,
    pub at_infinity: bool,
    /// `f''` vanishes here or changes sign before the next sample.
    pub near_cusp: bool,
}

/// Output of [`FocalFunction::sample`]: samples, with gaps where `f` or its
/// derivatives could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleItem {
    Point(FocalSample),
    Gap { t: f64, error: EvalError },
}

impl SampleItem {
    pub fn as_point(&self) -> Option<&FocalSample> {
        match self {
            SampleItem::Point(s) => Some(s),
            SampleItem::Gap { .. } => None,
        }
    }
}

/// Cusp of the focal curve, the image of an inflection point of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cusp {
    pub t: f64,
    pub point: ProjectivePoint,
    pub affine: Option<PlanePoint>,
}

/// The local focus at `x0` and the derivative read off from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub x0: f64,
    pub fx0: f64,
    pub focus: ProjectivePoint,
    pub affine: Option<PlanePoint>,
    /// `Δo/Δi`, or the symbolic slope when the focus is at infinity.
    pub fprime: f64,
}

/// A function together with its first two derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct FocalFunction {
    f: Expr,
    df: Expr,
    d2f: Expr,
}

/// Grid intervals scanned for sign changes of `f''`.
const CUSP_SCAN_INTERVALS: usize = 4096;
/// Bisection stops once the bracket is this narrow.
const CUSP_PARAM_TOL: f64 = 1e-10;

impl FocalFunction {
    pub fn new(f: Expr) -> Self {
        let df = f.differentiate();
        let d2f = df.differentiate();
        FocalFunction { f, df, d2f }
    }

    pub fn parse(text: &str) -> Result<Self, crate::expr::SyntaxError> {
        Ok(Self::new(crate::expr::parse(text)?))
    }

    pub fn expr(&self) -> &Expr {
        &self.f
    }

    pub fn derivative(&self) -> &Expr {
        &self.df
    }

    pub fn second_derivative(&self) -> &Expr {
        &self.d2f
    }

    /// `f'' ≡ 0` symbolically, so every arrow passes through one focus.
    pub fn is_linear(&self) -> bool {
        self.d2f.is_num(0)
    }

    fn eval(e: &Expr, t: f64) -> Result<f64, FocalError> {
        e.eval(t).map_err(|source| FocalError::Domain { t, source })
    }

    /// `(f(t), f'(t))`.
    pub fn value_and_slope(&self, t: f64) -> Result<(f64, f64), FocalError> {
        Ok((Self::eval(&self.f, t)?, Self::eval(&self.df, t)?))
    }

    /// `(δ : f(t) - t f'(t) : 1 - f'(t))`.
    pub fn focal_point(&self, t: f64, cfg: AxesConfig) -> Result<ProjectivePoint, FocalError> {
        let (f, df) = self.value_and_slope(t)?;
        Ok(ProjectivePoint::new(cfg.delta, f - t * df, 1.0 - df))
    }

    /// `(x'(t), y'(t)) = f''(t)/(1 - f'(t))^2 · (δ, f(t) - t)`; `None` where
    /// `f''(t) = 0`.
    pub fn focal_tangent(&self, t: f64, cfg: AxesConfig) -> Result<Option<(f64, f64)>, FocalError> {
        let (f, df) = self.value_and_slope(t)?;
        if (df - 1.0).abs() <= INFINITY_SLOPE_TOL {
            return Err(FocalError::SingularParameter { t });
        }
        let d2f = Self::eval(&self.d2f, t)?;
        if d2f == 0.0 {
            return Ok(None);
        }
        let s = d2f / ((1.0 - df) * (1.0 - df));
        Ok(Some((s * cfg.delta, s * (f - t))))
    }

    /// Point `(f'(t) : -1 : f(t) - t f'(t))` of the dual of the graph.
    pub fn dual_point(&self, t: f64) -> Result<ProjectivePoint, FocalError> {
        let (f, df) = self.value_and_slope(t)?;
        Ok(ProjectivePoint::new(df, -1.0, f - t * df))
    }

    /// Local focus at `x0` with the derivative read off its position.
    pub fn probe(&self, x0: f64, cfg: AxesConfig) -> Result<Probe, FocalError> {
        let (fx0, df) = self.value_and_slope(x0)?;
        let focus = ProjectivePoint::new(cfg.delta, fx0 - x0 * df, 1.0 - df);
        let affine = if (df - 1.0).abs() <= INFINITY_SLOPE_TOL {
            None
        } else {
            focus.affine()
        };
        let fprime = match affine {
            Some(p) => derivative_from_focus(p.x, cfg)?,
            None => df,
        };
        Ok(Probe {
            x0,
            fx0,
            focus,
            affine,
            fprime,
        })
    }

    /// `n` samples at uniformly spaced parameters in `[t_min, t_max]`.
    pub fn sample(
        &self,
        t_min: f64,
        t_max: f64,
        n: usize,
        cfg: AxesConfig,
    ) -> Result<Vec<SampleItem>, FocalError> {
        if n < 2 || !(t_min < t_max) || !t_min.is_finite() || !t_max.is_finite() {
            return Err(FocalError::InvalidRange);
        }
        let step = (t_max - t_min) / (n - 1) as f64;
        let ts: Vec<f64> = (0..n)
            .map(|i| if i == n - 1 { t_max } else { t_min + step * i as f64 })
            .collect();
        let curvature: Vec<Option<f64>> = ts.iter().map(|&t| self.d2f.eval(t).ok()).collect();
        let mut out = Vec::with_capacity(n);
        for (i, &t) in ts.iter().enumerate() {
            let (f, df, d2f) = match (self.f.eval(t), self.df.eval(t), curvature[i]) {
                (Ok(f), Ok(df), Some(d2f)) => (f, df, d2f),
                (Err(error), _, _) | (_, Err(error), _) => {
                    out.push(SampleItem::Gap { t, error });
                    continue;
                }
                (Ok(_), Ok(_), None) => {
                    let error = self.d2f.eval(t).expect_err("evaluation failed above");
                    out.push(SampleItem::Gap { t, error });
                    continue;
                }
            };
            let point = ProjectivePoint::new(cfg.delta, f - t * df, 1.0 - df);
            let at_infinity = (df - 1.0).abs() <= INFINITY_SLOPE_TOL;
            let affine = if at_infinity { None } else { point.affine() };
            let tangent = if at_infinity || d2f == 0.0 {
                None
            } else {
                let s = d2f / ((1.0 - df) * (1.0 - df));
                Some((s * cfg.delta, s * (f - t)))
            };
            let flips = |j: usize| curvature[j].is_some_and(|c| c * d2f < 0.0);
            let near_cusp = d2f == 0.0 || (i + 1 < n && flips(i + 1)) || (i > 0 && flips(i - 1));
            out.push(SampleItem::Point(FocalSample {
                t,
                point,
                affine,
                tangent,
                at_infinity,
                near_cusp,
            }));
        }
        if out.iter().all(|s| s.as_point().is_none()) {
            return Err(FocalError::EmptyRange);
        }
        Ok(out)
    }

    /// Parameters in `[t_min, t_max]` where `f''` changes sign, located by
    /// bisection, with the focal point there.
    pub fn cusps(&self, t_min: f64, t_max: f64, cfg: AxesConfig) -> Vec<Cusp> {
        if !(t_min < t_max) {
            return Vec::new();
        }
        let n = CUSP_SCAN_INTERVALS;
        let step = (t_max - t_min) / n as f64;
        let grid: Vec<(f64, Option<f64>)> = (0..=n)
            .map(|i| {
                let t = if i == n { t_max } else { t_min + step * i as f64 };
                (t, self.d2f.eval(t).ok())
            })
            .collect();
        let mut params = Vec::new();
        // Last grid point with a nonzero curvature, and whether zeros followed it.
        let mut last: Option<(usize, f64)> = None;
        let mut zero_run_start: Option<usize> = None;
        for (i, &(t, v)) in grid.iter().enumerate() {
            let Some(v) = v else {
                last = None;
                zero_run_start = None;
                continue;
            };
            if v == 0.0 {
                zero_run_start.get_or_insert(i);
                continue;
            }
            if let Some((j, w)) = last {
                if w * v < 0.0 {
                    match zero_run_start {
                        Some(z) => {
                            // f'' vanishes exactly on grid points z..i-1.
                            let mid = 0.5 * (grid[z].0 + grid[i - 1].0);
                            params.push(mid);
                        }
                        None => {
                            if let Some(root) = self.bisect_curvature(grid[j].0, t, w) {
                                params.push(root);
                            }
                        }
                    }
                }
            }
            last = Some((i, v));
            zero_run_start = None;
        }
        params
            .into_iter()
            .filter_map(|t| {
                let point = self.focal_point(t, cfg).ok()?;
                let (_, df) = self.value_and_slope(t).ok()?;
                let affine = if (df - 1.0).abs() <= INFINITY_SLOPE_TOL {
                    None
                } else {
                    point.affine()
                };
                Some(Cusp { t, point, affine })
            })
            .collect()
    }

    fn bisect_curvature(&self, mut lo: f64, mut hi: f64, lo_value: f64) -> Option<f64> {
        while hi - lo > CUSP_PARAM_TOL {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = self.d2f.eval(mid).ok()?;
            if v == 0.0 {
                return Some(mid);
            }
            if v * lo_value > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn func(s: &str) -> FocalFunction {
        FocalFunction::parse(s).unwrap()
    }

    /// Intersection of the arrow lines of `ax + b` starting at x = 0 and x = 1.
    fn two_line_focus(a: f64, b: f64, delta: f64) -> PlanePoint {
        // Line through (0, s) and (δ, a s + b): y = s + ((a - 1) s + b) X / δ.
        let (s0, s1) = (0.0, 1.0);
        let (m0, m1) = (((a - 1.0) * s0 + b) / delta, ((a - 1.0) * s1 + b) / delta);
        let x = (s1 - s0) / (m0 - m1);
        PlanePoint::new(x, s0 + m0 * x)
    }

    #[test]
    fn linear_focus_matches_two_line_intersection() {
        let f = linear_focus(LinearParams { a: 3.0, b: -1.0 }, AxesConfig::default());
        let p = f.affine().unwrap();
        let oracle = two_line_focus(3.0, -1.0, 1.0);
        assert!(p.distance(&oracle) < 1e-15);
        assert!(p.distance(&PlanePoint::new(-0.5, 0.5)) < 1e-15);

        let inf = linear_focus(LinearParams { a: 1.0, b: 5.0 }, AxesConfig::default());
        assert_eq!(inf, ProjectivePoint::new(1.0, 5.0, 0.0));
        assert!(inf.affine().is_none());

        let zero = linear_focus(LinearParams { a: 0.0, b: 0.0 }, AxesConfig::default());
        assert_eq!(zero.affine(), Some(PlanePoint::new(1.0, 0.0)));
    }

    #[test]
    fn delta_scales_only_the_horizontal_coordinate() {
        let p = LinearParams { a: -0.5, b: 2.0 };
        let one = linear_focus(p, AxesConfig::new(1.0).unwrap()).affine().unwrap();
        let two = linear_focus(p, AxesConfig::new(2.0).unwrap()).affine().unwrap();
        assert!((two.x - 2.0 * one.x).abs() < 1e-15);
        assert!((two.y - one.y).abs() < 1e-15);
        let oracle = two_line_focus(-0.5, 2.0, 2.0);
        assert!(two.distance(&oracle) < 1e-14);
        assert!(AxesConfig::new(0.0).is_err());
    }

    #[test]
    fn focal_point_examples() {
        let sq = func("x^2");
        let p = sq.focal_point(-1.0, AxesConfig::default()).unwrap().affine().unwrap();
        assert!(p.distance(&PlanePoint::new(1.0 / 3.0, -1.0 / 3.0)) < 1e-15);
        let residual = (p.x - 1.0).powi(2) + 4.0 * p.x * p.y;
        assert!(residual.abs() < 1e-15);

        let sin = func("sin x");
        let q = sin.focal_point(PI, AxesConfig::default()).unwrap().affine().unwrap();
        assert!(q.distance(&PlanePoint::new(0.5, PI / 2.0)) < 1e-15);

        let id = func("x");
        let r = id.focal_point(2.5, AxesConfig::default()).unwrap();
        assert_eq!(r, ProjectivePoint::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn tangent_examples() {
        let sq = func("x^2");
        let cfg = AxesConfig::default();
        let (dx, dy) = sq.focal_tangent(1.0, cfg).unwrap().unwrap();
        assert!(dx != 0.0 && dy == 0.0);
        // Finite-difference cross-check of the velocity.
        let h = 1e-6;
        let a = sq.focal_point(1.0 - h, cfg).unwrap().affine().unwrap();
        let b = sq.focal_point(1.0 + h, cfg).unwrap().affine().unwrap();
        assert!(((b.x - a.x) / (2.0 * h) - dx).abs() < 1e-6);
        assert!(((b.y - a.y) / (2.0 * h) - dy).abs() < 1e-6);

        assert_eq!(func("3x - 1").focal_tangent(0.7, cfg), Ok(None));
        assert_eq!(
            sq.focal_tangent(0.5, cfg),
            Err(FocalError::SingularParameter { t: 0.5 })
        );
    }

    #[test]
    fn readout_examples() {
        let cfg = AxesConfig::default();
        assert!((derivative_from_focus(1.0 / 3.0, cfg).unwrap() + 2.0).abs() < 1e-15);
        assert_eq!(derivative_from_focus(1.0, cfg), Ok(0.0));
        assert_eq!(derivative_from_focus(0.5, cfg), Ok(-1.0));
        assert_eq!(derivative_from_focus(0.0, cfg), Err(FocalError::InvalidFocus));
    }

    #[test]
    fn dual_points_and_duality() {
        let lin = func("3x + 2");
        assert_eq!(lin.dual_point(0.4).unwrap(), ProjectivePoint::new(3.0, -1.0, 2.0));
        let sq = func("x^2");
        assert_eq!(sq.dual_point(1.0).unwrap(), ProjectivePoint::new(2.0, -1.0, -1.0));
        assert_eq!(sq.dual_point(0.0).unwrap(), ProjectivePoint::new(0.0, -1.0, 0.0));

        let cfg = AxesConfig::default();
        let image = duality_map(sq.dual_point(-1.0).unwrap());
        assert!(image.projectively_equal(&sq.focal_point(-1.0, cfg).unwrap(), PROJECTIVE_TOL));

        // Both sign conventions describe the same projective map.
        let p = ProjectivePoint::new(0.3, -1.7, 2.2);
        let other = ProjectivePoint::new(-p.y, p.z, -p.x - p.y);
        assert!(duality_map(p).projectively_equal(&other, 1e-15));

        let (a, b) = (2.5, -0.75);
        let line = duality_map(ProjectivePoint::new(a, -1.0, b));
        assert!(line.projectively_equal(&ProjectivePoint::new(1.0, b, 1.0 - a), 1e-15));
    }

    #[test]
    fn duality_inverse_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let p = ProjectivePoint::new(
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            );
            let twice = duality_map(duality_map(p));
            let back = inverse_duality_map(inverse_duality_map(twice));
            assert!(back.projectively_equal(&p, 1e-14));
            assert!((back.x - p.x).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_flags_infinity_and_gaps() {
        let cfg = AxesConfig::default();
        let sq = func("x^2");
        let items = sq.sample(0.0, 1.0, 3, cfg).unwrap();
        let mid = items[1].as_point().unwrap();
        assert!(mid.at_infinity && mid.affine.is_none() && mid.tangent.is_none());

        let root = func("sqrt(x)");
        let items = root.sample(-1.0, 1.0, 5, cfg).unwrap();
        assert!(matches!(items[0], SampleItem::Gap { .. }));
        assert!(matches!(items[2], SampleItem::Gap { .. }));
        assert!(items[4].as_point().is_some());

        assert_eq!(func("ln(x)").sample(-2.0, -1.0, 10, cfg), Err(FocalError::EmptyRange));
        assert_eq!(sq.sample(1.0, 1.0, 10, cfg), Err(FocalError::InvalidRange));
        assert_eq!(sq.sample(0.0, 1.0, 1, cfg), Err(FocalError::InvalidRange));
    }

    #[test]
    fn sine_has_one_cusp_on_a_period() {
        let sin = func("sin(x)");
        let cusps = sin.cusps(0.0, 2.0 * PI, AxesConfig::default());
        assert_eq!(cusps.len(), 1);
        assert!((cusps[0].t - PI).abs() < 1e-9);
        let p = cusps[0].affine.unwrap();
        assert!(p.distance(&PlanePoint::new(0.5, PI / 2.0)) < 1e-9);
    }

    #[test]
    fn cusp_edge_cases() {
        let cfg = AxesConfig::default();
        assert!(func("x^2").cusps(-3.0, 3.0, cfg).is_empty());
        let cube = func("x^3").cusps(-1.0, 1.0, cfg);
        assert_eq!(cube.len(), 1);
        assert!(cube[0].t.abs() <= 1e-10);
        assert!(cube[0].affine.unwrap().distance(&PlanePoint::new(1.0, 0.0)) < 1e-9);
        // f'' = 12 x^2 touches zero without changing sign.
        assert!(func("x^4").cusps(-1.0, 1.0, cfg).is_empty());
        // Exact zero on a grid point.
        let cube_shift = func("x^3").cusps(-1.0, 2.0, cfg);
        assert_eq!(cube_shift.len(), 1);
        assert!(cube_shift[0].t.abs() <= 1e-10);
    }

    #[test]
    fn probe_reads_the_derivative() {
        let sq = func("x^2");
        let probe = sq.probe(-1.0, AxesConfig::default()).unwrap();
        assert!((probe.fprime + 2.0).abs() <= 1e-12);
        let id = func("x");
        let p = id.probe(3.0, AxesConfig::default()).unwrap();
        assert!(p.affine.is_none());
        assert_eq!(p.fprime, 1.0);
    }
}
