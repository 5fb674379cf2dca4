//! SVG frames for traces: the polygon, the pocket about to be flipped
//! and its lid. Degenerate steps get a circled step number.

use std::fmt::Write as _;
use std::path::Path;

use crate::engine::Trace;
use crate::error::Result;
use crate::geom::Point;
use crate::polygon::{Pocket, Polygon};

/// Drawing area in model coordinates, with the number precision used
/// when printing them.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
    digits: usize,
}

impl Frame {
    pub fn around<'a>(polys: impl IntoIterator<Item = &'a Polygon>) -> Frame {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in polys {
            for v in p.vertices() {
                let (x, y) = v.to_f64();
                x0 = x0.min(x);
                y0 = y0.min(y);
                x1 = x1.max(x);
                y1 = y1.max(y);
            }
        }
        let size = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
        // Print to a millionth of the drawing size.
        let digits = (-(size * 1e-6).log10()).ceil().clamp(0.0, 15.0) as usize;
        Frame { min_x: x0, min_y: y0, max_x: x1, max_y: y1, digits }
    }

    fn size(&self) -> f64 {
        (self.max_x - self.min_x).max(self.max_y - self.min_y)
    }

    fn num(&self, v: f64) -> String {
        let s = format!("{:.*}", self.digits, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }

    /// SVG y grows downwards.
    fn xy(&self, p: &Point) -> String {
        let (x, y) = p.to_f64();
        format!("{},{}", self.num(x), self.num(-y))
    }

    fn path(&self, pts: &[Point]) -> String {
        pts.iter().map(|p| self.xy(p)).collect::<Vec<_>>().join(" ")
    }
}

fn pocket_chain(p: &Polygon, k: &Pocket) -> Vec<Point> {
    let n = p.n();
    (0..=k.edge_count(n)).map(|t| p.vertices()[(k.first_vertex + t) % n].clone()).collect()
}

/// One frame: `p`, and the pocket `k` about to be flipped if any.
pub fn render(p: &Polygon, k: Option<&Pocket>, step: Option<usize>, frame: &Frame) -> String {
    let pad = frame.size() * 0.05;
    let sw = frame.num(frame.size() / 200.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        frame.num(frame.min_x - pad),
        frame.num(-frame.max_y - pad),
        frame.num(frame.max_x - frame.min_x + 2.0 * pad),
        frame.num(frame.max_y - frame.min_y + 2.0 * pad)
    );
    let _ = writeln!(s, r##"<polygon class="polygon" points="{}" fill="#dde" stroke="#224" stroke-width="{sw}"/>"##, frame.path(p.vertices()));
    if let Some(k) = k {
        let _ = writeln!(s, r##"<polygon class="pocket" points="{}" fill="#f96" fill-opacity="0.6" stroke="none"/>"##, frame.path(&pocket_chain(p, k)));
        let _ = writeln!(
            s,
            r##"<line class="lid" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c30" stroke-width="{sw}" stroke-dasharray="{sw}"/>"##,
            frame.num(k.lid.0.to_f64().0),
            frame.num(-k.lid.0.to_f64().1),
            frame.num(k.lid.1.to_f64().0),
            frame.num(-k.lid.1.to_f64().1)
        );
        if let Some(i) = step {
            let (cx, cy) = k.lid_midpoint().to_f64();
            let fs = frame.size() / 20.0;
            if k.degenerate {
                let _ = writeln!(
                    s,
                    r##"<circle class="degenerate" cx="{}" cy="{}" r="{}" fill="none" stroke="#000" stroke-width="{sw}"/>"##,
                    frame.num(cx),
                    frame.num(-cy),
                    frame.num(fs * 0.8)
                );
            }
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
                frame.num(cx),
                frame.num(-cy),
                frame.num(fs),
                i + 1
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Writes `step_%04d.svg` for every step plus one for the final polygon.
/// Returns the number of files written.
pub fn write_frames(trace: &Trace, dir: &Path) -> Result<usize> {
    std::fs::create_dir_all(dir)?;
    let polys = trace.replay()?;
    let frame = Frame::around(&polys);
    for (i, step) in trace.steps.iter().enumerate() {
        let body = render(&polys[i], Some(&step.record.pocket), Some(i), &frame);
        std::fs::write(dir.join(format!("step_{i:04}.svg")), body)?;
    }
    let last = trace.steps.len();
    std::fs::write(dir.join(format!("step_{last:04}.svg")), render(&polys[last], None, None, &frame))?;
    Ok(last + 1)
}
