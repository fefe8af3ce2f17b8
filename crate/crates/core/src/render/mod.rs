//! Scenes: arrow graph, focal branches, cusps and foci ready for drawing.

mod clip;
mod json;
mod svg;

use serde::{Deserialize, Serialize};

use crate::algebra::{focal_triple, implicitize};
use crate::expr::Expr;
use crate::focal::{AxesConfig, FocalError, FocalFunction, PlanePoint, SampleItem};
use crate::transforms::compose_linear_foci;

pub use clip::Viewport;
pub use json::{scene_from_json, scene_to_json};
pub use svg::scene_to_svg;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("invalid render configuration: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Focal(#[from] FocalError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderConfig {
    pub arrow_count: usize,
    pub arrow_range: (f64, f64),
    pub focal_sample_count: usize,
    /// Parameter range of the focal curve; the arrow range when absent.
    pub focal_range: Option<(f64, f64)>,
    pub delta: f64,
    /// Computed from the arrows when absent.
    pub viewport: Option<Viewport>,
    /// Draw each arrow's full line, which reveals the envelope.
    pub extended_lines: bool,
    pub show_focal: bool,
    pub show_cusps: bool,
    pub probe: Option<f64>,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            arrow_count: 41,
            arrow_range: (-2.0, 2.0),
            focal_sample_count: 401,
            focal_range: None,
            delta: 1.0,
            viewport: None,
            extended_lines: true,
            show_focal: true,
            show_cusps: true,
            probe: None,
        }
    }
}

fn valid_range((lo, hi): (f64, f64)) -> bool {
    lo.is_finite() && hi.is_finite() && lo < hi
}

impl RenderConfig {
    pub fn validate(&self) -> Result<AxesConfig, RenderError> {
        if self.arrow_count < 2 || self.focal_sample_count < 2 {
            return Err(RenderError::InvalidConfig("counts must be at least 2"));
        }
        if !valid_range(self.arrow_range) || !self.focal_range.is_none_or(valid_range) {
            return Err(RenderError::InvalidConfig("ranges must be finite and nonempty"));
        }
        if self.viewport.is_some_and(|v| !v.is_valid()) {
            return Err(RenderError::InvalidConfig("viewport must be finite and nonempty"));
        }
        Ok(AxesConfig::new(self.delta)?)
    }

    fn focal_range(&self) -> (f64, f64) {
        self.focal_range.unwrap_or(self.arrow_range)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: [f64; 2],
    pub to: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeMarker {
    pub x0: f64,
    /// Local focus, `null` when it lies at infinity.
    pub focus: Option<[f64; 2]>,
    pub fprime: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Label {
    pub text: String,
    pub at: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub delta: f64,
    pub axes: Vec<f64>,
    pub arrows: Vec<Arrow>,
    /// Arrow lines extended across the viewport.
    #[serde(default)]
    pub guides: Vec<Arrow>,
    pub focal_branches: Vec<Vec<[f64; 2]>>,
    pub cusps: Vec<[f64; 2]>,
    pub probe: Option<ProbeMarker>,
    pub foci: Vec<[f64; 2]>,
    pub implicit: Option<String>,
    pub viewport: Viewport,
    #[serde(default)]
    pub labels: Vec<Label>,
}

impl Scene {
    /// Axes only.
    pub fn empty(delta: f64) -> Self {
        Scene {
            delta,
            axes: vec![0.0, delta],
            arrows: Vec::new(),
            guides: Vec::new(),
            focal_branches: Vec::new(),
            cusps: Vec::new(),
            probe: None,
            foci: Vec::new(),
            implicit: None,
            viewport: Viewport::new(-delta, 2.0 * delta, -2.0, 2.0),
            labels: Vec::new(),
        }
    }
}

fn pt(p: PlanePoint) -> [f64; 2] {
    [p.x, p.y]
}

fn plane(p: [f64; 2]) -> PlanePoint {
    PlanePoint::new(p[0], p[1])
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i == n - 1 { hi } else { lo + step * i as f64 })
}

/// A sampled piece of the focal curve, with the chart offset applied later.
struct Piece {
    samples: Vec<(f64, PlanePoint)>,
}

/// Splits the samples where the curve leaves the affine chart, where the
/// function is undefined and at cusps.
fn focal_pieces(items: &[SampleItem], cusps: &[(f64, PlanePoint)]) -> Vec<Piece> {
    let mut pieces = Vec::new();
    let mut current: Vec<(f64, PlanePoint)> = Vec::new();
    let mut last_z: Option<f64> = None;
    let flush = |current: &mut Vec<(f64, PlanePoint)>, pieces: &mut Vec<Piece>| {
        if current.len() >= 2 {
            pieces.push(Piece {
                samples: std::mem::take(current),
            });
        } else {
            current.clear();
        }
    };
    for item in items {
        let Some(sample) = item.as_point() else {
            flush(&mut current, &mut pieces);
            last_z = None;
            continue;
        };
        let Some(affine) = sample.affine.filter(|_| !sample.at_infinity) else {
            flush(&mut current, &mut pieces);
            last_z = None;
            continue;
        };
        let z = sample.point.z;
        if last_z.is_some_and(|w| w * z < 0.0) {
            // 1 - f' changed sign: the curve went through infinity.
            flush(&mut current, &mut pieces);
        }
        if let Some(&(prev_t, _)) = current.last() {
            for &(tc, pc) in cusps.iter().filter(|(tc, _)| prev_t < *tc && *tc < sample.t) {
                current.push((tc, pc));
                flush(&mut current, &mut pieces);
                current.push((tc, pc));
            }
        }
        current.push((sample.t, affine));
        if cusps.iter().any(|(tc, _)| *tc == sample.t) {
            flush(&mut current, &mut pieces);
            current.push((sample.t, affine));
        }
        last_z = Some(z);
    }
    flush(&mut current, &mut pieces);
    pieces
}

const CLIP_BISECTIONS: usize = 60;

/// Clips a piece to the viewport. Boundary crossings are located by
/// bisection in the parameter so every emitted point lies on the curve.
fn clip_piece(
    func: &FocalFunction,
    cfg: AxesConfig,
    piece: &Piece,
    offset: f64,
    view: &Viewport,
) -> Vec<Vec<[f64; 2]>> {
    let shifted = |p: PlanePoint| PlanePoint::new(p.x + offset, p.y);
    let eval = |t: f64| {
        func.focal_point(t, cfg)
            .ok()
            .and_then(|p| p.affine())
            .map(shifted)
    };
    // Last parameter on the inside end of a crossing between `t_in` and `t_out`.
    let crossing = |mut t_in: f64, mut t_out: f64, mut p_in: PlanePoint| {
        for _ in 0..CLIP_BISECTIONS {
            let mid = 0.5 * (t_in + t_out);
            match eval(mid) {
                Some(p) if view.contains(p) => {
                    t_in = mid;
                    p_in = p;
                }
                _ => t_out = mid,
            }
        }
        p_in
    };
    let mut out = Vec::new();
    let mut line: Vec<[f64; 2]> = Vec::new();
    let mut prev: Option<(f64, PlanePoint, bool)> = None;
    for &(t, p) in &piece.samples {
        let p = shifted(p);
        let inside = view.contains(p);
        match prev {
            Some((pt_prev, p_prev, true)) if !inside => {
                line.push(pt(crossing(pt_prev, t, p_prev)));
                if line.len() >= 2 {
                    out.push(std::mem::take(&mut line));
                }
                line.clear();
            }
            Some((pt_prev, _, false)) if inside => {
                line.push(pt(crossing(t, pt_prev, p)));
            }
            _ => {}
        }
        if inside {
            line.push(pt(p));
        }
        prev = Some((t, p, inside));
    }
    if line.len() >= 2 {
        out.push(line);
    }
    for l in &mut out {
        l.dedup();
    }
    out.retain(|l| l.len() >= 2);
    out
}

/// Focal curve of one function whose axes start at `offset`.
struct Layer {
    branches: Vec<Vec<[f64; 2]>>,
    cusps: Vec<[f64; 2]>,
}

fn focal_layer(
    func: &FocalFunction,
    cfg: &RenderConfig,
    axes: AxesConfig,
    offset: f64,
    view: &Viewport,
) -> Result<Layer, RenderError> {
    let mut layer = Layer {
        branches: Vec::new(),
        cusps: Vec::new(),
    };
    if func.is_linear() {
        return Ok(layer);
    }
    let (lo, hi) = cfg.focal_range();
    let items = func.sample(lo, hi, cfg.focal_sample_count, axes)?;
    let cusps: Vec<(f64, PlanePoint)> = func
        .cusps(lo, hi, axes)
        .into_iter()
        .filter_map(|c| c.affine.map(|p| (c.t, p)))
        .collect();
    if cfg.show_focal {
        for piece in focal_pieces(&items, &cusps) {
            layer.branches.extend(clip_piece(func, axes, &piece, offset, view));
        }
    }
    if cfg.show_cusps {
        layer.cusps = cusps
            .iter()
            .map(|&(_, p)| PlanePoint::new(p.x + offset, p.y))
            .filter(|p| view.contains(*p))
            .map(pt)
            .collect();
    }
    Ok(layer)
}

fn auto_viewport(axes: &[f64], delta: f64, arrows: &[Arrow], extra: &[[f64; 2]]) -> Viewport {
    let last = axes.iter().copied().fold(0.0, f64::max);
    let (xmin, xmax) = (-delta, last + delta);
    let ys: Vec<f64> = arrows
        .iter()
        .flat_map(|a| [a.from[1], a.to[1]])
        .filter(|y| y.is_finite())
        .collect();
    let (mut ymin, mut ymax) = if ys.is_empty() {
        (-1.0, 1.0)
    } else {
        (
            ys.iter().copied().fold(f64::INFINITY, f64::min),
            ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let span = (ymax - ymin).max(1.0);
    for p in extra {
        if (xmin..=xmax).contains(&p[0]) && p[1] > ymin - span && p[1] < ymax + span {
            ymin = ymin.min(p[1]);
            ymax = ymax.max(p[1]);
        }
    }
    let pad = 0.1 * (ymax - ymin).max(1.0);
    Viewport::new(xmin, xmax, ymin - pad, ymax + pad)
}

/// Builds the scene for `f`, or for `g ∘ f` drawn on three axes when `g`
/// is given.
pub fn build_scene(f: &Expr, cfg: &RenderConfig, composition: Option<&Expr>) -> Result<Scene, RenderError> {
    let axes_cfg = cfg.validate()?;
    let delta = cfg.delta;
    let ff = FocalFunction::new(f.clone());
    let fg = composition.map(|g| FocalFunction::new(g.clone()));
    let axes: Vec<f64> = if fg.is_some() {
        vec![0.0, delta, 2.0 * delta]
    } else {
        vec![0.0, delta]
    };

    let (lo, hi) = cfg.arrow_range;
    let mut arrows = Vec::new();
    for x in linspace(lo, hi, cfg.arrow_count) {
        let Ok(y) = f.eval(x) else { continue };
        arrows.push(Arrow {
            from: [0.0, x],
            to: [delta, y],
        });
        if let Some(g) = composition {
            if let Ok(z) = g.eval(y) {
                arrows.push(Arrow {
                    from: [delta, y],
                    to: [2.0 * delta, z],
                });
            }
        }
    }

    // Foci of linear functions, and of the composition when both are linear.
    let mut foci: Vec<[f64; 2]> = Vec::new();
    let mut labels = Vec::new();
    let linear = |func: &FocalFunction| -> Option<(f64, f64)> {
        if !func.is_linear() {
            return None;
        }
        let (b, a) = func.value_and_slope(0.0).ok()?;
        Some((a, b))
    };
    let mut focus_line: Option<(PlanePoint, PlanePoint)> = None;
    match (&fg, linear(&ff)) {
        (Some(g), Some((a, b))) => {
            if let Some((c, d)) = linear(g) {
                let comp = compose_linear_foci(a, b, c, d, axes_cfg);
                for (name, p) in [("F_f", comp.ff), ("F_g", comp.fg), ("F_gf", comp.fgf)] {
                    if let Some(p) = p.affine() {
                        foci.push(pt(p));
                        labels.push(Label {
                            text: name.to_string(),
                            at: pt(p),
                        });
                    }
                }
                if let (Some(p), Some(q)) = (comp.ff.affine(), comp.fg.affine()) {
                    focus_line = Some((p, q));
                }
            } else if let Some(p) = ff.focal_point(0.0, axes_cfg)?.affine() {
                foci.push(pt(p));
            }
        }
        (None, Some(_)) => {
            if let Some(p) = ff.focal_point(0.0, axes_cfg)?.affine() {
                foci.push(pt(p));
                labels.push(Label {
                    text: "F".to_string(),
                    at: pt(p),
                });
            }
        }
        _ => {}
    }

    let probe = match cfg.probe {
        Some(x0) => {
            let p = ff.probe(x0, axes_cfg)?;
            Some(ProbeMarker {
                x0,
                focus: p.affine.map(pt),
                fprime: p.fprime,
            })
        }
        None => None,
    };

    let mut extra = foci.clone();
    extra.extend(probe.and_then(|p| p.focus));
    let view = cfg
        .viewport
        .unwrap_or_else(|| auto_viewport(&axes, delta, &arrows, &extra));

    let mut scene = Scene {
        delta,
        axes: axes.clone(),
        arrows: Vec::new(),
        guides: Vec::new(),
        focal_branches: Vec::new(),
        cusps: Vec::new(),
        probe,
        foci: foci.into_iter().filter(|p| view.contains(plane(*p))).collect(),
        implicit: None,
        viewport: view,
        labels: Vec::new(),
    };

    for arrow in &arrows {
        if let Some((a, b)) = view.clip_segment(plane(arrow.from), plane(arrow.to)) {
            scene.arrows.push(Arrow { from: pt(a), to: pt(b) });
        }
        if cfg.extended_lines {
            if let Some((a, b)) = view.clip_line(plane(arrow.from), plane(arrow.to)) {
                scene.guides.push(Arrow { from: pt(a), to: pt(b) });
            }
        }
    }
    if let Some((p, q)) = focus_line {
        if let Some((a, b)) = view.clip_line(p, q) {
            scene.guides.push(Arrow { from: pt(a), to: pt(b) });
        }
    }

    let layer = focal_layer(&ff, cfg, axes_cfg, 0.0, &view)?;
    scene.focal_branches.extend(layer.branches);
    scene.cusps.extend(layer.cusps);
    if let Some(g) = &fg {
        let layer = focal_layer(g, cfg, axes_cfg, delta, &view)?;
        scene.focal_branches.extend(layer.branches);
        scene.cusps.extend(layer.cusps);
    }

    if composition.is_none() {
        scene.implicit = f
            .to_rational_function()
            .ok()
            .and_then(|rf| implicitize(&focal_triple(&rf)).ok())
            .map(|g| format!("{g} = 0"));
    }

    labels.push(Label {
        text: "x".to_string(),
        at: [0.0, view.ymax],
    });
    labels.push(Label {
        text: "f(x)".to_string(),
        at: [delta, view.ymax],
    });
    if fg.is_some() {
        labels.push(Label {
            text: "g(f(x))".to_string(),
            at: [2.0 * delta, view.ymax],
        });
    }
    scene.labels = labels
        .into_iter()
        .filter(|l| view.contains(plane(l.at)))
        .collect();
    Ok(scene)
}
