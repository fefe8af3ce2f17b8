use std::fmt::Write;

use super::{Arrow, Scene, Viewport};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;

/// Six significant digits, no trailing zeros, no negative zero.
pub(crate) fn num6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".to_string();
    }
    let rounded: f64 = format!("{v:.5e}").parse().unwrap_or(v);
    format!("{rounded}")
}

struct Frame {
    view: Viewport,
}

impl Frame {
    fn x(&self, x: f64) -> String {
        num6((x - self.view.xmin) / self.view.width() * WIDTH)
    }

    fn y(&self, y: f64) -> String {
        num6((self.view.ymax - y) / self.view.height() * HEIGHT)
    }

    fn line(&self, out: &mut String, class: &str, a: Arrow, extra: &str) {
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"{extra}/>"#,
            self.x(a.from[0]),
            self.y(a.from[1]),
            self.x(a.to[0]),
            self.y(a.to[1]),
        );
    }

    fn dot(&self, out: &mut String, class: &str, p: [f64; 2], r: f64) {
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
            self.x(p[0]),
            self.y(p[1]),
            num6(r)
        );
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const STYLE: &str = "\
.axis{stroke:#000;stroke-width:1.5}
.guide{stroke:#bbb;stroke-width:0.5}
.arrow{stroke:#1f4e9c;stroke-width:1}
.focal{fill:none;stroke:#c0392b;stroke-width:2}
.cusp{fill:#c0392b}
.focus{fill:#27803c}
.probe{stroke:#e67e22;stroke-width:2}
.probe-focus{fill:#e67e22}
text{font-family:sans-serif;font-size:14px}";

/// Standalone SVG document. Identical scenes give identical bytes.
pub fn scene_to_svg(s: &Scene) -> String {
    let frame = Frame { view: s.viewport };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(out, "<style>\n{STYLE}\n</style>");
    out.push_str(concat!(
        r#"<defs><marker id="head" viewBox="0 0 10 10" refX="10" refY="5" "#,
        r#"markerWidth="6" markerHeight="6" orient="auto-start-reverse">"#,
        r##"<path d="M 0 0 L 10 5 L 0 10 z" fill="#1f4e9c"/></marker></defs>"##,
        "\n"
    ));
    let _ = writeln!(out, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#fff"/>"##);
    for g in &s.guides {
        frame.line(&mut out, "guide", *g, "");
    }
    for &x in &s.axes {
        let axis = Arrow {
            from: [x, s.viewport.ymin],
            to: [x, s.viewport.ymax],
        };
        frame.line(&mut out, "axis", axis, "");
    }
    for a in &s.arrows {
        frame.line(&mut out, "arrow", *a, r#" marker-end="url(#head)""#);
    }
    for branch in &s.focal_branches {
        let pts: Vec<String> = branch
            .iter()
            .map(|p| format!("{},{}", frame.x(p[0]), frame.y(p[1])))
            .collect();
        let _ = writeln!(out, r#"<polyline class="focal" points="{}"/>"#, pts.join(" "));
    }
    for &c in &s.cusps {
        frame.dot(&mut out, "cusp", c, 4.0);
    }
    for &f in &s.foci {
        frame.dot(&mut out, "focus", f, 4.0);
    }
    if let Some(p) = &s.probe {
        if let Some(focus) = p.focus {
            let arrow = Arrow {
                from: [0.0, p.x0],
                to: focus,
            };
            if let Some((a, b)) = s.viewport.clip_segment(super::plane(arrow.from), super::plane(arrow.to)) {
                frame.line(&mut out, "probe", Arrow { from: super::pt(a), to: super::pt(b) }, "");
            }
            if s.viewport.contains(super::plane(focus)) {
                frame.dot(&mut out, "probe-focus", focus, 5.0);
            }
        }
        let _ = writeln!(
            out,
            r#"<text class="readout" x="10" y="{}">f'({}) = {}</text>"#,
            num6(HEIGHT - 30.0),
            num6(p.x0),
            num6(p.fprime)
        );
    }
    for l in &s.labels {
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}">{}</text>"#,
            frame.x(l.at[0]),
            frame.y(l.at[1]),
            escape(&l.text)
        );
    }
    if let Some(eq) = &s.implicit {
        let _ = writeln!(
            out,
            r#"<text class="caption" x="10" y="{}">{}</text>"#,
            num6(HEIGHT - 10.0),
            escape(eq)
        );
    }
    out.push_str("</svg>\n");
    out
}
