//! Integer-only JSON documents for curves and patches.

use serde::{Deserialize, Serialize};

use crate::coverings::{CoveringPatch, Window};
use crate::curves::{num_dirs, unit, EmbeddedCurve};
use crate::foldseq::{sign_string, Family, FoldSpec};
use crate::lattice::{pt, Pt};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub family: String,
    pub spec: String,
    pub start: [i64; 2],
    pub dir: u8,
    pub word: Vec<i8>,
    pub edges: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curves: Option<Vec<CurveDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated: Option<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WindowDoc {
    Hexagon { center: [i64; 2], radius: i64 },
    Tile { anchor: [i64; 2], signs: String, level: u32, center: [i64; 2] },
}

fn arr(p: Pt) -> [i64; 2] {
    [p.a, p.b]
}

fn edges_of<'a>(curves: impl IntoIterator<Item = &'a EmbeddedCurve>) -> Vec<[i64; 4]> {
    curves.into_iter().flat_map(|c| c.vertices.windows(2).map(|w| [w[0].a, w[0].b, w[1].a, w[1].b])).collect()
}

pub fn curve_doc(c: &EmbeddedCurve, spec: &FoldSpec) -> CurveDoc {
    CurveDoc {
        family: c.family.name().to_string(),
        spec: spec.sign_string(),
        start: arr(c.start),
        dir: c.dir,
        word: c.word.letters().to_vec(),
        edges: edges_of([c]),
        window: None,
        curves: None,
        truncated: None,
    }
}

/// Patch document: `start` is the anchor, `dir` the orientation class (0 for
/// Peano-Gosper), `word` the fold word of the spec and `edges` every segment.
pub fn patch_doc(p: &CoveringPatch, class: u8) -> CurveDoc {
    let window = match &p.window {
        Window::Hexagon { center, radius } => WindowDoc::Hexagon { center: arr(*center), radius: *radius },
        Window::Tile { frame, tile } => WindowDoc::Tile {
            anchor: arr(frame.anchor),
            signs: sign_string(&frame.signs),
            level: tile.level,
            center: arr(tile.center),
        },
    };
    CurveDoc {
        family: p.family.name().to_string(),
        spec: p.spec.sign_string(),
        start: arr(p.anchor),
        dir: if p.family == Family::Gosper { 0 } else { class },
        word: p.spec.word().into_letters(),
        edges: edges_of(&p.curves),
        window: Some(window),
        curves: Some(p.curves.iter().map(|c| curve_doc(c, &p.spec)).collect()),
        truncated: Some(p.truncated.clone()),
    }
}

pub fn to_string(doc: &CurveDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<CurveDoc, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

/// Vertex lists of the curves drawn by a document, checked for unit steps and continuity.
pub fn polylines(doc: &CurveDoc) -> Result<(Family, Vec<Vec<Pt>>), String> {
    let family = Family::parse(&doc.family).map_err(|e| e.to_string())?;
    let single = [doc.clone()];
    let docs: &[CurveDoc] = match &doc.curves {
        Some(cs) => cs,
        None => &single,
    };
    if let (Some(cs), Some(t)) = (&doc.curves, &doc.truncated) {
        if cs.len() != t.len() {
            return Err(format!("{} curves but {} truncation flags", cs.len(), t.len()));
        }
    }
    let steps: Vec<Pt> = (0..num_dirs(family) as i64).map(|k| unit(family, k)).collect();
    let mut out = Vec::with_capacity(docs.len());
    for (i, d) in docs.iter().enumerate() {
        if d.family != doc.family {
            return Err(format!("curve {i} has family {} inside a {} document", d.family, doc.family));
        }
        let Some(first) = d.edges.first() else { return Err(format!("curve {i} has no edges")) };
        let mut verts = vec![pt(first[0], first[1])];
        for (j, e) in d.edges.iter().enumerate() {
            let (p, q) = (pt(e[0], e[1]), pt(e[2], e[3]));
            if p != *verts.last().unwrap() {
                return Err(format!("curve {i} is broken at edge {j}"));
            }
            if !steps.contains(&(q - p)) {
                return Err(format!("curve {i} edge {j} is not a unit step"));
            }
            verts.push(q);
        }
        out.push(verts);
    }
    Ok((family, out))
}
