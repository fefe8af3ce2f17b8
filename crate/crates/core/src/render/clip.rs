//! Viewport rectangle and Cohen–Sutherland segment clipping.

use serde::{Deserialize, Serialize};

use crate::focal::PlanePoint;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

const INSIDE: u8 = 0;
const LEFT: u8 = 1;
const RIGHT: u8 = 2;
const BOTTOM: u8 = 4;
const TOP: u8 = 8;

impl Viewport {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Viewport { xmin, xmax, ymin, ymax }
    }

    pub fn is_valid(&self) -> bool {
        [self.xmin, self.xmax, self.ymin, self.ymax]
            .iter()
            .all(|v| v.is_finite())
            && self.xmin < self.xmax
            && self.ymin < self.ymax
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn contains(&self, p: PlanePoint) -> bool {
        self.outcode(p) == INSIDE
    }

    fn outcode(&self, p: PlanePoint) -> u8 {
        let mut code = INSIDE;
        if p.x < self.xmin {
            code |= LEFT;
        } else if p.x > self.xmax {
            code |= RIGHT;
        }
        if p.y < self.ymin {
            code |= BOTTOM;
        } else if p.y > self.ymax {
            code |= TOP;
        }
        code
    }

    /// The part of segment `a b` inside the viewport, if any.
    pub fn clip_segment(&self, mut a: PlanePoint, mut b: PlanePoint) -> Option<(PlanePoint, PlanePoint)> {
        if !(a.x.is_finite() && a.y.is_finite() && b.x.is_finite() && b.y.is_finite()) {
            return None;
        }
        let mut code_a = self.outcode(a);
        let mut code_b = self.outcode(b);
        // Each pass moves one endpoint onto an edge; rounding can only add a few.
        for _ in 0..16 {
            if code_a | code_b == INSIDE {
                return Some((a, b));
            }
            if code_a & code_b != INSIDE {
                return None;
            }
            let out = if code_a != INSIDE { code_a } else { code_b };
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            let p = if out & TOP != 0 {
                PlanePoint::new(a.x + dx * (self.ymax - a.y) / dy, self.ymax)
            } else if out & BOTTOM != 0 {
                PlanePoint::new(a.x + dx * (self.ymin - a.y) / dy, self.ymin)
            } else if out & RIGHT != 0 {
                PlanePoint::new(self.xmax, a.y + dy * (self.xmax - a.x) / dx)
            } else {
                PlanePoint::new(self.xmin, a.y + dy * (self.xmin - a.x) / dx)
            };
            if out == code_a {
                a = p;
                code_a = self.outcode(a);
            } else {
                b = p;
                code_b = self.outcode(b);
            }
        }
        None
    }

    /// The part of the infinite line through `a` and `b` inside the viewport.
    pub fn clip_line(&self, a: PlanePoint, b: PlanePoint) -> Option<(PlanePoint, PlanePoint)> {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let len = dx.hypot(dy);
        if len == 0.0 || !len.is_finite() {
            return None;
        }
        // Extend far enough to cross the whole box from any point inside it.
        let reach = (self.width().hypot(self.height())
            + (a.x - self.xmin).abs().max((a.x - self.xmax).abs())
            + (a.y - self.ymin).abs().max((a.y - self.ymax).abs()))
            / len;
        let p = PlanePoint::new(a.x - dx * reach, a.y - dy * reach);
        let q = PlanePoint::new(a.x + dx * reach, a.y + dy * reach);
        self.clip_segment(p, q)
    }
}
