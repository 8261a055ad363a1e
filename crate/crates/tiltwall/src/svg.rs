//! Static SVG diagrams of walls in the `(β, α)` half plane.
//!
//! Geometry is drawn in world coordinates inside a group whose transform maps
//! `(β, α)` to pixels with one uniform scale, so a wall of center `c` and
//! radius `r` is literally `<circle cx="c" cy="0" r="r">`. Floats appear only
//! in the emitted attribute values; exact values ride along as `data-*`.

use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};
use tiltwall_core::rational::{exact_sqrt, sqrt_floor_approx};
use tiltwall_core::{int, rat, Rational, TiltPoint, WallLocus, WallShape};

const MARGIN: f64 = 40.0;

#[derive(Debug, Clone)]
pub enum PlotItem {
    QWall(WallLocus),
    /// Shade where `x(s + β²) + yβ + z < 0`.
    NegativeRegion(WallLocus),
    Wall(WallLocus),
    Witness(TiltPoint),
}

#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub beta_range: (Rational, Rational),
    pub alpha_range: (Rational, Rational),
    pub width: u32,
    pub height: u32,
    pub items: Vec<PlotItem>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotError {
    EmptyRange,
    NegativeAlpha,
    ZeroCanvas,
}

impl std::fmt::Display for PlotError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlotError::EmptyRange => "plot ranges must be nonempty",
            PlotError::NegativeAlpha => "alpha range must lie in [0, inf)",
            PlotError::ZeroCanvas => "canvas must have positive size",
        })
    }
}

impl PlotSpec {
    pub fn validate(&self) -> Result<(), PlotError> {
        if self.beta_range.0 >= self.beta_range.1 || self.alpha_range.0 >= self.alpha_range.1 {
            return Err(PlotError::EmptyRange);
        }
        if self.alpha_range.0.is_negative() {
            return Err(PlotError::NegativeAlpha);
        }
        if self.width == 0 || self.height == 0 {
            return Err(PlotError::ZeroCanvas);
        }
        Ok(())
    }

    /// Frames the semicircle with some room around it; a unit window otherwise.
    pub fn default_ranges(wall: &WallLocus) -> ((Rational, Rational), (Rational, Rational)) {
        match wall.shape() {
            WallShape::Semicircle { center, radius_sq } => {
                let r = exact_sqrt(&radius_sq)
                    .unwrap_or_else(|| sqrt_floor_approx(&radius_sq, 16) + rat(1, 1 << 16));
                (
                    (&center - int(2) * &r, &center + int(2) * &r),
                    (int(0), rat(3, 2) * &r),
                )
            }
            WallShape::VerticalLine { beta } => ((&beta - int(2), &beta + int(2)), (int(0), int(2))),
            WallShape::Empty => ((int(-2), int(2)), (int(0), int(2))),
        }
    }
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn sqrt_f(r: &Rational) -> f64 {
    f(r).sqrt()
}

pub fn render(spec: &PlotSpec) -> Result<String, PlotError> {
    spec.validate()?;
    let (b0, b1) = (f(&spec.beta_range.0), f(&spec.beta_range.1));
    let (a0, a1) = (f(&spec.alpha_range.0), f(&spec.alpha_range.1));
    let (w, h) = (spec.width as f64, spec.height as f64);
    let k = ((w - 2.0 * MARGIN) / (b1 - b0))
        .min((h - 2.0 * MARGIN) / (a1 - a0))
        .max(f64::MIN_POSITIVE);
    let tx = MARGIN - b0 * k;
    let ty = h - MARGIN + a0 * k;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(
        s,
        r#"<g id="world" transform="matrix({k} 0 0 {} {tx} {ty})" data-scale="{k}">"#,
        -k
    );
    let _ = writeln!(
        s,
        r#"<clipPath id="plot-area"><rect x="{b0}" y="{a0}" width="{}" height="{}"/></clipPath>"#,
        b1 - b0,
        a1 - a0
    );
    let stroke = r#"vector-effect="non-scaling-stroke""#;
    let _ = writeln!(
        s,
        r#"<line class="axis" x1="{b0}" y1="0" x2="{b1}" y2="0" stroke="black" {stroke}/>"#
    );
    if b0 <= 0.0 && 0.0 <= b1 {
        let _ = writeln!(
            s,
            r#"<line class="axis" x1="0" y1="{a0}" x2="0" y2="{a1}" stroke="black" {stroke}/>"#
        );
    }
    let _ = writeln!(s, r#"<g clip-path="url(#plot-area)">"#);
    for item in &spec.items {
        match item {
            PlotItem::NegativeRegion(wall) => region(&mut s, wall, (b0, b1, a0, a1)),
            PlotItem::QWall(wall) => locus(&mut s, wall, "q-wall", "crimson", a1),
            PlotItem::Wall(wall) => locus(&mut s, wall, "wall", "steelblue", a1),
            PlotItem::Witness(p) => {
                let _ = writeln!(
                    s,
                    r#"<circle class="witness" cx="{}" cy="{}" r="{}" fill="black" data-s="{}" data-beta="{}"/>"#,
                    f(&p.beta),
                    sqrt_f(&p.s),
                    4.0 / k,
                    p.s,
                    p.beta
                );
            }
        }
    }
    s.push_str("</g>\n</g>\n");
    // labels live in pixel space so they are not mirrored
    let label = |s: &mut String, x: f64, y: f64, text: &str| {
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12">{text}</text>"#
        );
    };
    label(&mut s, MARGIN, h - MARGIN / 3.0, &format!("β = {}", spec.beta_range.0));
    label(&mut s, w - 3.0 * MARGIN, h - MARGIN / 3.0, &format!("β = {}", spec.beta_range.1));
    label(&mut s, MARGIN / 4.0, MARGIN / 2.0, &format!("α ≤ {}", spec.alpha_range.1));
    s.push_str("</svg>\n");
    Ok(s)
}

fn locus(s: &mut String, wall: &WallLocus, class: &str, color: &str, a1: f64) {
    match wall.shape() {
        WallShape::Semicircle { center, radius_sq } => {
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{}" cy="0" r="{}" fill="none" stroke="{color}" vector-effect="non-scaling-stroke" data-center="{center}" data-radius-sq="{radius_sq}"/>"#,
                f(&center),
                sqrt_f(&radius_sq),
            );
        }
        WallShape::VerticalLine { beta } => {
            let x = f(&beta);
            let _ = writeln!(
                s,
                r#"<line class="{class}" x1="{x}" y1="0" x2="{x}" y2="{a1}" stroke="{color}" vector-effect="non-scaling-stroke" data-beta="{beta}"/>"#
            );
        }
        WallShape::Empty => {}
    }
}

fn region(s: &mut String, wall: &WallLocus, (b0, b1, a0, a1): (f64, f64, f64, f64)) {
    let fill = r##"fill="#f4a3a3" fill-opacity="0.5""##;
    match wall.shape() {
        WallShape::Semicircle { center, radius_sq } => {
            let (cx, r) = (f(&center), sqrt_f(&radius_sq));
            if wall.x.is_positive() {
                let _ = writeln!(
                    s,
                    r#"<circle class="q-negative" cx="{cx}" cy="0" r="{r}" {fill} stroke="none"/>"#
                );
            } else {
                // negative outside the disc
                let _ = writeln!(
                    s,
                    r#"<path class="q-negative" fill-rule="evenodd" d="M {b0} {a0} H {b1} V {a1} H {b0} Z M {} 0 A {r} {r} 0 1 0 {} 0 A {r} {r} 0 1 0 {} 0 Z" {fill} stroke="none"/>"#,
                    cx - r,
                    cx + r,
                    cx - r
                );
            }
        }
        WallShape::VerticalLine { beta } => {
            let x = f(&beta);
            // yβ + z < 0 left of the line iff y > 0
            let (from, to) = if wall.y.is_positive() { (b0, x) } else { (x, b1) };
            if to > from {
                let _ = writeln!(
                    s,
                    r#"<rect class="q-negative" x="{from}" y="{a0}" width="{}" height="{}" {fill} stroke="none"/>"#,
                    to - from,
                    a1 - a0
                );
            }
        }
        WallShape::Empty => {
            // constant z: negative everywhere or nowhere
            if wall.x.is_zero() && wall.y.is_zero() && wall.z.is_negative() {
                let _ = writeln!(
                    s,
                    r#"<rect class="q-negative" x="{b0}" y="{a0}" width="{}" height="{}" {fill} stroke="none"/>"#,
                    b1 - b0,
                    a1 - a0
                );
            }
        }
    }
}
