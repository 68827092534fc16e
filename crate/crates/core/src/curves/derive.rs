//! Geometric derivation: macro-curves through every third (triangular) or
//! every seventh (Peano-Gosper) vertex.

use super::{CurveError, EmbeddedCurve};
use crate::foldseq::{derive_tri_word, Family, FoldError};
use crate::lattice::hex::{fine_to_w, fine_w, multiplier, phi_inv, GosperFrame};
use crate::lattice::{Pt, ONE_PLUS_OMEGA};

/// Macro-curve of a triangular folding curve in the derived lattice
/// `origin + (1 + ω) Z[ω]`, rescaled by `z ↦ origin + (z - origin) / (1 + ω)`.
pub fn derive_tri_curve(c: &EmbeddedCurve, origin: Pt) -> Result<EmbeddedCurve, CurveError> {
    derive_tri_word(&c.word)?;
    let vertices = c
        .vertices
        .iter()
        .step_by(3)
        .map(|&v| (v - origin).ediv(ONE_PLUS_OMEGA).map(|q| origin + q).ok_or(CurveError::OffDerivedLattice(v)))
        .collect::<Result<Vec<Pt>, _>>()?;
    Ok(EmbeddedCurve::from_vertices(Family::Triangular, vertices).expect("macro steps are unit sides"))
}

/// `derive_tri_curve` about the curve's own start point.
pub fn derive_geometric(c: &EmbeddedCurve) -> Result<EmbeddedCurve, CurveError> {
    derive_tri_curve(c, c.start)
}

/// Macro-curve of a Peano-Gosper tile covering on the derived tiling of
/// `frame`, read in the cell units of `frame.tail()`.
pub fn derive_gosper_curve(c: &EmbeddedCurve, frame: &GosperFrame) -> Result<EmbeddedCurve, CurveError> {
    if !c.len().is_multiple_of(7) || frame.signs.is_empty() {
        return Err(FoldError::NotDerivable(c.len()).into());
    }
    let m = multiplier(frame.signs[0]);
    let vertices = c
        .vertices
        .iter()
        .step_by(7)
        .map(|&v| phi_inv(m, frame.anchor, fine_w(v)).and_then(fine_to_w).ok_or(CurveError::OffDerivedLattice(v)))
        .collect::<Result<Vec<Pt>, _>>()?;
    EmbeddedCurve::from_vertices(Family::Gosper, vertices).ok_or(CurveError::OffDerivedLattice(c.start))
}

fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

/// `d(Δ^k(p), Δ^k(c))` for `k = 0..=depth` with unit sides at every level.
pub fn contraction_check(c: &EmbeddedCurve, p: (f64, f64), depth: u32) -> Result<Vec<f64>, CurveError> {
    let pts: Vec<(f64, f64)> = c.vertices.iter().map(|v| v.tri_xy()).collect();
    let mut out = Vec::with_capacity(depth as usize + 1);
    for k in 0..=depth {
        let step = 3usize.pow(k);
        if !c.len().is_multiple_of(step) {
            return Err(FoldError::NotDerivable(k as usize).into());
        }
        let macro_pts: Vec<(f64, f64)> = pts.iter().step_by(step).copied().collect();
        let d = macro_pts.windows(2).map(|w| point_segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min);
        out.push(d / 3f64.sqrt().powi(k as i32));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::embed;
    use crate::foldseq::tri_word;
    use crate::lattice::pt;

    #[test]
    fn order_two_macro_curve() {
        let c = embed(&tri_word(&[1, 1]), Family::Triangular, pt(0, 0), 0).unwrap();
        let d = derive_geometric(&c).unwrap();
        assert_eq!(d.word, tri_word(&[1]));
        assert_eq!(d.vertices.len(), 4);
    }

    #[test]
    fn order_one_macro_segment() {
        let c = embed(&tri_word(&[-1]), Family::Triangular, pt(5, 1), 4).unwrap();
        let d = derive_geometric(&c).unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn contraction_on_curve() {
        let c = embed(&tri_word(&[1, -1, 1]), Family::Triangular, pt(0, 0), 0).unwrap();
        let ds = contraction_check(&c, c.start.tri_xy(), 3).unwrap();
        assert!(ds.iter().all(|&d| d.abs() < 1e-12));
        assert!(contraction_check(&c, (0.0, 0.0), 4).is_err());
    }
}
