//! Coverings of Peano-Gosper tiles and their nested unions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{CoveringError, CoveringPatch, Window};
use crate::curves::EmbeddedCurve;
use crate::foldseq::{Family, FoldError, FoldSpec, GOSPER_S};
use crate::lattice::hex::{
    fine_to_w, fine_w, multiplier, phi, phi_cell, phi_inv, segment_cell_between, GosperFrame, GosperTile, HexSide,
    FLOWER,
};
use crate::lattice::{tri_dir, Pt, TRI_DIRS};

/// The `W` vertices of a tile, as points of `W`.
pub fn w_tile_vertices(frame: &GosperFrame, t: GosperTile) -> Vec<Pt> {
    frame.tile_vertices(t).iter().filter_map(|&v| fine_to_w(v)).collect()
}

fn cells_of(verts: &[Pt]) -> Vec<Pt> {
    verts.windows(2).map(|w| segment_cell_between(w[0], w[1]).expect("unit segment")).collect()
}

/// The curve `S_λ` joining `p` and `q` (in either order) whose seven segments
/// fill the flower around `center`, oriented from `p` to `q`.
fn level_one(sign: i8, center: Pt, p: Pt, q: Pt) -> Option<Vec<Pt>> {
    let mut want: Vec<Pt> = FLOWER.iter().map(|&e| center + e).collect();
    want.sort();
    let fits = |from: Pt, to: Pt| {
        (0..6).find_map(|d0| {
            let mut d = d0 as i64;
            let mut v = vec![from, from + tri_dir(d)];
            for &l in &GOSPER_S {
                d += (l * sign) as i64;
                v.push(*v.last().unwrap() + tri_dir(d));
            }
            let mut cells = cells_of(&v);
            cells.sort();
            (*v.last().unwrap() == to && cells == want).then_some(v)
        })
    };
    fits(p, q).or_else(|| {
        let mut v = fits(q, p)?;
        v.reverse();
        Some(v)
    })
}

fn w_phi(m: Pt, anchor: Pt, p: Pt) -> Pt {
    fine_to_w(phi(m, anchor, fine_w(p))).expect("phi preserves W")
}

fn w_phi_inv(m: Pt, anchor: Pt, p: Pt) -> Option<Pt> {
    phi_inv(m, anchor, fine_w(p)).and_then(fine_to_w)
}

/// Covering of `t` from `s` to `e`: the derived covering in the tail frame
/// with every macro-segment replaced by a level-one curve.
fn covering(frame: &GosperFrame, t: GosperTile, s: Pt, e: Pt) -> Option<Vec<Pt>> {
    if t.level == 0 {
        let corners = [t.center, t.center + TRI_DIRS[0], t.center + TRI_DIRS[1]];
        return (s != e && corners.contains(&s) && corners.contains(&e)).then(|| vec![s, e]);
    }
    let m = multiplier(frame.signs[0]);
    let x = frame.anchor;
    let tail = frame.tail();
    let tt = GosperTile { level: t.level - 1, center: x + (t.center - x).ediv(m)? };
    let coarse = covering(&tail, tt, w_phi_inv(m, x, s)?, w_phi_inv(m, x, e)?)?;
    let mut out = vec![s];
    for w in coarse.windows(2) {
        let flower = phi_cell(m, x, segment_cell_between(w[0], w[1])?);
        let piece = level_one(frame.signs[0], flower, w_phi(m, x, w[0]), w_phi(m, x, w[1]))?;
        out.extend_from_slice(&piece[1..]);
    }
    Some(out)
}

fn gosper_curve(verts: Vec<Pt>) -> EmbeddedCurve {
    EmbeddedCurve::from_vertices(Family::Gosper, verts).expect("gosper turns stay within 120°")
}

/// The oriented coverings of a tile, one for each ordered pair of its `W` vertices.
pub fn gosper_tile_coverings(frame: &GosperFrame, t: GosperTile) -> Vec<EmbeddedCurve> {
    let ws = w_tile_vertices(frame, t);
    let mut out = Vec::new();
    for &s in &ws {
        for &e in &ws {
            if s != e {
                if let Some(v) = covering(frame, t, s, e) {
                    out.push(gosper_curve(v));
                }
            }
        }
    }
    out
}

/// Sub-curve of a covering lying in the given cells, if it is contiguous.
pub fn restrict(c: &EmbeddedCurve, cells: &HashSet<Pt>) -> Option<EmbeddedCurve> {
    let inside: Vec<usize> =
        cells_of(&c.vertices).iter().enumerate().filter(|(_, x)| cells.contains(x)).map(|(i, _)| i).collect();
    let (&first, &last) = (inside.first()?, inside.last()?);
    if last - first + 1 != inside.len() {
        return None;
    }
    Some(gosper_curve(c.vertices[first..=last + 1].to_vec()))
}

/// Orientation-free form of a curve.
pub fn unoriented(c: &EmbeddedCurve) -> Vec<Pt> {
    let mut r = c.vertices.clone();
    r.reverse();
    r.min(c.vertices.clone())
}

fn distinct(cs: impl IntoIterator<Item = Vec<Pt>>) -> Vec<Vec<Pt>> {
    let mut v: Vec<Vec<Pt>> = cs.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Oriented coverings of `parent` whose restriction to `child` is `child_cov`.
pub fn enumerate_extensions(
    frame: &GosperFrame,
    child_cov: &EmbeddedCurve,
    child: GosperTile,
    parent: GosperTile,
) -> Result<Vec<EmbeddedCurve>, CoveringError> {
    if parent.level != child.level + 1 || !frame.children(parent).contains(&child) {
        return Err(CoveringError::NotAChild);
    }
    let cells: HashSet<Pt> = frame.tile_cells(child).into_iter().collect();
    Ok(gosper_tile_coverings(frame, parent)
        .into_iter()
        .filter(|c| restrict(c, &cells).as_ref() == Some(child_cov))
        .collect())
}

/// A covering of the last tile of a nested sequence with the number of
/// distinct coverings each smaller tile inherits from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub patch: CoveringPatch,
    /// `completions[k]`: unoriented coverings of `P^k` that are restrictions of coverings of `P^n`.
    pub completions: Vec<usize>,
}

fn check_gosper(spec: &FoldSpec) -> Result<(), CoveringError> {
    if spec.family() != Family::Gosper {
        return Err(FoldError::WrongFamily { expected: Family::Gosper, got: spec.family() }.into());
    }
    Ok(())
}

/// Checks `x_{k+1} = x_k` or `x_{k+1}` centers a level-`k` tile next to the one at `x_k`.
fn check_prefix(signs: &[i8], prefix: &[Pt]) -> Result<(), CoveringError> {
    if prefix.len() != signs.len() + 1 {
        return Err(CoveringError::InvalidPrefix(format!("expected {} points, got {}", signs.len() + 1, prefix.len())));
    }
    for k in 0..signs.len() {
        let f = GosperFrame::new(prefix[k], &signs[..k]);
        let t = f.anchor_tile(k as u32);
        if prefix[k + 1] != prefix[k] && !(0..6).any(|j| f.neighbor(t, j).center == prefix[k + 1]) {
            return Err(CoveringError::InvalidPrefix(format!("x_{} is not next to x_{k}", k + 1)));
        }
    }
    Ok(())
}

/// Level-`k` tile of the sequence with the frame it lives in.
fn nested(signs: &[i8], prefix: &[Pt], k: usize) -> (GosperFrame, GosperTile) {
    let f = GosperFrame::new(prefix[k], &signs[..k]);
    let t = f.anchor_tile(k as u32);
    (f, t)
}

fn restriction_counts(signs: &[i8], prefix: &[Pt], top: &[EmbeddedCurve]) -> Vec<usize> {
    let n = signs.len();
    let mut counts = vec![0; n + 1];
    let mut live: Vec<EmbeddedCurve> = top.to_vec();
    for k in (0..=n).rev() {
        let (f, t) = nested(signs, prefix, k);
        let cells: HashSet<Pt> = f.tile_cells(t).into_iter().collect();
        live = live.iter().map(|c| restrict(c, &cells).expect("nested tiles restrict")).collect();
        let d = distinct(live.iter().map(unoriented));
        counts[k] = d.len();
        live = d.into_iter().map(gosper_curve).collect();
    }
    counts
}

/// Covering patch of `P^n` for the prefix `x_0 … x_n` with the completion counts of every `P^k`.
pub fn assemble_gosper_covering_patch(spec: &FoldSpec, prefix: &[Pt]) -> Result<Assembly, CoveringError> {
    check_gosper(spec)?;
    let signs = spec.signs();
    check_prefix(signs, prefix)?;
    let n = signs.len();
    let (f, t) = nested(signs, prefix, n);
    let top = gosper_tile_coverings(&f, t);
    let completions = restriction_counts(signs, prefix, &top);
    let patch = CoveringPatch {
        family: Family::Gosper,
        window: Window::Tile { frame: f, tile: t },
        curves: vec![top[0].clone()],
        truncated: vec![false],
        spec: spec.clone(),
        anchor: prefix[n],
        x_prefix: prefix.to_vec(),
    };
    Ok(Assembly { patch, completions })
}

fn images(signs: &[i8], prefix: &[Pt], k: usize) -> Vec<(Vec<Pt>, Vec<Pt>)> {
    let (f, t) = nested(signs, prefix, k + 1);
    let (fk, tk) = nested(signs, prefix, k);
    let cells: HashSet<Pt> = fk.tile_cells(tk).into_iter().collect();
    let tops = distinct(gosper_tile_coverings(&f, t).iter().map(unoriented));
    tops.into_iter()
        .map(|c| {
            let r = restrict(&gosper_curve(c.clone()), &cells).expect("nested tiles restrict");
            (c, unoriented(&r))
        })
        .collect()
}

/// An X-prefix for `spec` along which the coverings of every `P^k`, `k < n`,
/// that extend to `P^n` number exactly `target` (1, 2 or 3).
pub fn engineer_prefix(spec: &FoldSpec, x0: Pt, target: usize) -> Result<Vec<Pt>, CoveringError> {
    check_gosper(spec)?;
    let signs = spec.signs();
    let n = signs.len();
    let step = |prefix: &[Pt], k: usize| -> Vec<Pt> {
        let f = GosperFrame::new(prefix[k], &signs[..k]);
        let t = f.anchor_tile(k as u32);
        (0..6).map(|j| f.neighbor(t, j).center).collect()
    };
    match target {
        3 => Ok(vec![x0; n + 1]),
        1 => {
            let mut prefix = vec![x0];
            for k in 0..n {
                let next = step(&prefix, k)
                    .into_iter()
                    .find(|&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        distinct(images(signs, &p, k).into_iter().map(|x| x.1)).len() == 1
                    })
                    .ok_or_else(|| {
                        CoveringError::InconsistentPrefix(format!("no single-completion step at level {k}"))
                    })?;
                prefix.push(next);
            }
            Ok(prefix)
        }
        2 => {
            let f0 = GosperFrame::new(x0, &[]);
            let base = distinct(gosper_tile_coverings(&f0, f0.anchor_tile(0)).iter().map(unoriented));
            for i in 0..base.len() {
                for j in i + 1..base.len() {
                    if let Some(p) = two_chain(signs, vec![x0], [base[i].clone(), base[j].clone()], &step) {
                        return Ok(p);
                    }
                }
            }
            Err(CoveringError::InconsistentPrefix("no two-completion prefix".into()))
        }
        _ => Err(CoveringError::InconsistentPrefix(format!("no prefix realizes {target} completions"))),
    }
}

fn two_chain(
    signs: &[i8],
    prefix: Vec<Pt>,
    pair: [Vec<Pt>; 2],
    step: &dyn Fn(&[Pt], usize) -> Vec<Pt>,
) -> Option<Vec<Pt>> {
    let k = prefix.len() - 1;
    if k == signs.len() {
        return Some(prefix);
    }
    for c in step(&prefix, k) {
        let mut p = prefix.clone();
        p.push(c);
        let im = images(signs, &p, k);
        let got = distinct(im.iter().map(|x| x.1.clone()));
        let mut want = pair.to_vec();
        want.sort();
        if got != want {
            continue;
        }
        for a in im.iter().filter(|x| x.1 == pair[0]) {
            for b in im.iter().filter(|x| x.1 == pair[1]) {
                if let Some(done) = two_chain(signs, p.clone(), [a.0.clone(), b.0.clone()], step) {
                    return Some(done);
                }
            }
        }
    }
    None
}

/// Extension counts of the three unoriented coverings of one child tile, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildExtensions {
    pub child: GosperTile,
    pub central: bool,
    /// whether the `W` vertex of the child shared with no sibling is a vertex of the parent
    pub lone_vertex_on_parent: bool,
    pub counts: Vec<usize>,
}

pub fn child_extension_counts(frame: &GosperFrame, parent: GosperTile) -> Vec<ChildExtensions> {
    let parent_vertices: HashSet<Pt> = frame.tile_vertices(parent).into_iter().collect();
    let kids = frame.children(parent);
    kids.iter()
        .map(|&q| {
            let mut seen = HashSet::new();
            let mut counts = Vec::new();
            for c in gosper_tile_coverings(frame, q) {
                if seen.insert(unoriented(&c)) {
                    counts.push(enumerate_extensions(frame, &c, q, parent).expect("child of parent").len());
                }
            }
            counts.sort_unstable_by(|a, b| b.cmp(a));
            let siblings: HashSet<Pt> =
                kids.iter().filter(|&&o| o != q).flat_map(|&o| frame.tile_vertices(o)).collect();
            let lone_vertex_on_parent = w_tile_vertices(frame, q)
                .into_iter()
                .map(fine_w)
                .filter(|v| !siblings.contains(v))
                .any(|v| parent_vertices.contains(&v));
            ChildExtensions { child: q, central: q.center == parent.center, lone_vertex_on_parent, counts }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TileRelation {
    /// `P^0` lies in the interior of `P^n`.
    Interior,
    /// Some unit side lies on the boundary of every `P^k`.
    Side,
    /// Some hexagon vertex is a tile vertex of every `P^k`.
    Vertex,
    /// `P^0` touches the boundary of `P^n` without a persistent side.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionCount {
    One,
    TwoOrThree,
    Three,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub depth: usize,
    pub relation: TileRelation,
    pub regions: RegionCount,
}

/// How the nested tiles `P^0 ⊂ … ⊂ P^n` sit in one another, and how many
/// regions their union can have once the sequence is continued the same way.
pub fn classify_regions(spec: &FoldSpec, prefix: &[Pt]) -> Result<RegionReport, CoveringError> {
    check_gosper(spec)?;
    let signs = spec.signs();
    check_prefix(signs, prefix)?;
    let n = signs.len();
    let (fnn, tn) = nested(signs, prefix, n);
    let top: HashSet<Pt> = fnn.tile_cells(tn).into_iter().collect();
    if TRI_DIRS.iter().all(|&d| top.contains(&(prefix[0] + d))) {
        return Ok(RegionReport { depth: n, relation: TileRelation::Interior, regions: RegionCount::One });
    }
    let mut sides: Option<HashSet<(Pt, Pt)>> = None;
    let mut verts: Option<HashSet<Pt>> = None;
    for k in 0..=n {
        let (f, t) = nested(signs, prefix, k);
        let b: HashSet<(Pt, Pt)> = f
            .boundary(t)
            .sides
            .iter()
            .map(|s: &HexSide| if s.from() < s.to() { (s.from(), s.to()) } else { (s.to(), s.from()) })
            .collect();
        let v: HashSet<Pt> = f.tile_vertices(t).into_iter().collect();
        sides = Some(match sides {
            None => b,
            Some(s) => s.intersection(&b).copied().collect(),
        });
        verts = Some(match verts {
            None => v,
            Some(s) => s.intersection(&v).copied().collect(),
        });
    }
    let (relation, regions) = if !verts.unwrap().is_empty() {
        (TileRelation::Vertex, RegionCount::Three)
    } else if !sides.unwrap().is_empty() {
        (TileRelation::Side, RegionCount::TwoOrThree)
    } else {
        (TileRelation::Boundary, RegionCount::Undetermined)
    };
    Ok(RegionReport { depth: n, relation, regions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::is_self_avoiding;
    use crate::lattice::pt;

    fn spec(s: &str) -> FoldSpec {
        FoldSpec::parse(Family::Gosper, s).unwrap()
    }

    #[test]
    fn six_coverings_per_tile() {
        for s in ["+", "-", "++", "+-", "-+", "--", "+-+"] {
            let sp = spec(s);
            for anchor in [pt(0, 0), pt(2, -3)] {
                let f = GosperFrame::new(anchor, sp.signs());
                let t = f.anchor_tile(sp.len() as u32);
                let cs = gosper_tile_coverings(&f, t);
                assert_eq!(cs.len(), 6, "{s}");
                let want: HashSet<Pt> = f.tile_cells(t).into_iter().collect();
                for c in &cs {
                    assert!(is_self_avoiding(c).is_ok());
                    let got: HashSet<Pt> = cells_of(&c.vertices).into_iter().collect();
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn extensions_need_a_child() {
        let f = GosperFrame::new(pt(0, 0), &[1, 1]);
        let c = gosper_tile_coverings(&f, f.anchor_tile(1)).remove(0);
        assert_eq!(
            enumerate_extensions(&f, &c, f.anchor_tile(1), GosperTile { level: 2, center: pt(7, 7) }),
            Err(CoveringError::NotAChild)
        );
    }

    #[test]
    fn prefix_checks() {
        let sp = spec("++");
        assert!(matches!(
            assemble_gosper_covering_patch(&sp, &[pt(0, 0), pt(2, 0), pt(2, 0)]),
            Err(CoveringError::InvalidPrefix(_))
        ));
        let a = assemble_gosper_covering_patch(&sp, &[pt(0, 0); 3]).unwrap();
        assert_eq!(a.completions, vec![3, 3, 3]);
        assert!(a.patch.coverage_defects().is_empty());
    }
}
