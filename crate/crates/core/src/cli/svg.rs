//! SVG 1.1 rendering with rounded corners.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt::Write;

use crate::foldseq::Family;
use crate::lattice::Pt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// stroke width in side lengths
    pub stroke: f64,
    /// distance from a vertex at which the rounding arc starts, in side lengths
    pub rounding: f64,
    /// pixels per side length
    pub scale: f64,
}

impl Default for RenderOptions {
    fn default() -> RenderOptions {
        RenderOptions { stroke: 0.08, rounding: 0.2, scale: 20.0 }
    }
}

fn xy(family: Family, p: Pt) -> (f64, f64) {
    match family {
        Family::Square => p.sq_xy(),
        _ => p.tri_xy(),
    }
}

/// A rounded corner: straight up to `from`, then a circular arc to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corner {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub radius: f64,
    /// turn to the left, counterclockwise in lattice coordinates
    pub left: bool,
}

/// Corner at `v` between the unit segments `u` (incoming) and `w` (outgoing);
/// `None` when the path goes straight on.
pub fn corner(v: (f64, f64), u: (f64, f64), w: (f64, f64), rho: f64) -> Option<Corner> {
    let cross = u.0 * w.1 - u.1 * w.0;
    if cross.abs() < 1e-12 {
        return None;
    }
    let turn = (u.0 * w.0 + u.1 * w.1).clamp(-1.0, 1.0).acos();
    let radius = rho * ((PI - turn) / 2.0).tan();
    Some(Corner {
        from: (v.0 - rho * u.0, v.1 - rho * u.1),
        to: (v.0 + rho * w.0, v.1 + rho * w.1),
        radius,
        left: cross > 0.0,
    })
}

/// Closest approach of a corner arc to its vertex.
pub fn arc_clearance(c: &Corner, v: (f64, f64)) -> f64 {
    let m = ((c.from.0 + c.to.0) / 2.0, (c.from.1 + c.to.1) / 2.0);
    let half = ((c.to.0 - c.from.0).hypot(c.to.1 - c.from.1)) / 2.0;
    let sagitta = c.radius - (c.radius * c.radius - half * half).max(0.0).sqrt();
    (m.0 - v.0).hypot(m.1 - v.1) - sagitta
}

fn stroke_color(i: usize, used: &mut HashSet<u32>) -> String {
    let h = (i as f64 * 137.507_764_050_037_85) % 360.0;
    let l = [0.38, 0.5, 0.3][i % 3];
    let s = 0.75;
    let c = (1.0 - (2.0 * l - 1.0f64).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let ch = |v: f64| ((v + m) * 255.0).round() as u32;
    let mut rgb = (ch(r) << 16) | (ch(g) << 8) | ch(b);
    while !used.insert(rgb) {
        rgb = (rgb + 1) & 0xff_ffff;
    }
    format!("#{rgb:06x}")
}

fn f(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn path_data(family: Family, verts: &[Pt], opt: &RenderOptions) -> String {
    let k = opt.scale;
    let pts: Vec<(f64, f64)> = verts.iter().map(|&p| xy(family, p)).collect();
    let screen = |p: (f64, f64)| format!("{} {}", f(p.0 * k), f(-p.1 * k));
    let mut d = format!("M {}", screen(pts[0]));
    for i in 1..pts.len().saturating_sub(1) {
        let u = (pts[i].0 - pts[i - 1].0, pts[i].1 - pts[i - 1].1);
        let w = (pts[i + 1].0 - pts[i].0, pts[i + 1].1 - pts[i].1);
        if let Some(c) = corner(pts[i], u, w, opt.rounding) {
            let sweep = if c.left { 0 } else { 1 };
            let _ = write!(
                d,
                " L {} A {} {} 0 0 {sweep} {}",
                screen(c.from),
                f(c.radius * k),
                f(c.radius * k),
                screen(c.to)
            );
        }
    }
    if pts.len() > 1 {
        let _ = write!(d, " L {}", screen(pts[pts.len() - 1]));
    }
    d
}

/// One `path` element per curve; output depends only on the input.
pub fn render(family: Family, curves: &[Vec<Pt>], opt: &RenderOptions) -> String {
    let k = opt.scale;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in curves.iter().flatten() {
        let (x, y) = xy(family, *p);
        x0 = x0.min(x * k);
        x1 = x1.max(x * k);
        y0 = y0.min(-y * k);
        y1 = y1.max(-y * k);
    }
    if curves.iter().all(|c| c.is_empty()) {
        (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let (x0, y0) = (x0 - k, y0 - k);
    let (w, h) = (x1 + k - x0, y1 + k - y0);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        f(w),
        f(h),
        f(x0),
        f(y0),
        f(w),
        f(h)
    );
    let _ = writeln!(
        s,
        "<g fill=\"none\" stroke-width=\"{}\" stroke-linecap=\"round\" stroke-linejoin=\"round\">",
        f(opt.stroke * k)
    );
    let mut used = HashSet::new();
    for (i, c) in curves.iter().enumerate() {
        let color = stroke_color(i, &mut used);
        let _ = writeln!(s, "<path stroke=\"{color}\" d=\"{}\"/>", path_data(family, c, opt));
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{pt, SQ_DIRS, TRI_DIRS};

    fn unit_xy(family: Family, d: Pt) -> (f64, f64) {
        xy(family, d)
    }

    #[test]
    fn arcs_stay_off_the_vertex_and_inside_their_corner() {
        for (family, dirs) in [(Family::Triangular, TRI_DIRS.to_vec()), (Family::Square, SQ_DIRS.to_vec())] {
            for rho in [0.05, 0.2, 0.45] {
                for &a in &dirs {
                    for &b in &dirs {
                        let (u, w) = (unit_xy(family, a), unit_xy(family, b));
                        let Some(c) = corner((0.0, 0.0), u, w, rho) else { continue };
                        if (u.0 + w.0).abs() < 1e-12 && (u.1 + w.1).abs() < 1e-12 {
                            continue;
                        }
                        let clear = arc_clearance(&c, (0.0, 0.0));
                        assert!(clear > 0.0 && clear < rho, "{family:?} {a:?} {b:?} {rho}");
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_passes_through_a_vertex_do_not_meet() {
        // two passes through the origin of the triangular lattice using four distinct sides
        // without crossing: their arcs lie in disjoint sectors
        let d: Vec<(f64, f64)> = TRI_DIRS.iter().map(|&p| xy(Family::Triangular, p)).collect();
        let neg = |v: (f64, f64)| (-v.0, -v.1);
        let c1 = corner((0.0, 0.0), neg(d[0]), d[1], 0.2).unwrap();
        let c2 = corner((0.0, 0.0), neg(d[3]), d[4], 0.2).unwrap();
        let mid = |c: &Corner| ((c.from.0 + c.to.0) / 2.0, (c.from.1 + c.to.1) / 2.0);
        let (m1, m2) = (mid(&c1), mid(&c2));
        assert!(m1.0 * m2.0 + m1.1 * m2.1 < 0.0);
        assert!(arc_clearance(&c1, (0.0, 0.0)) > 0.0);
    }

    #[test]
    fn render_is_deterministic() {
        let c = vec![vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 2)]];
        let a = render(Family::Triangular, &c, &RenderOptions::default());
        assert_eq!(a, render(Family::Triangular, &c, &RenderOptions::default()));
        assert_eq!(a.matches("<path").count(), 1);
        assert_eq!(a.matches(" A ").count(), 2);
    }

    #[test]
    fn colors_are_distinct() {
        let mut used = HashSet::new();
        let cs: HashSet<String> = (0..500).map(|i| stroke_color(i, &mut used)).collect();
        assert_eq!(cs.len(), 500);
    }
}
