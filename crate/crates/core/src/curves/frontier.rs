//! Left and right frontiers of triangular folding curves.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{CurveError, EmbeddedCurve};
use crate::foldseq::{tri_spec_of_word, Family};
use crate::lattice::{tri_dir_index, Pt, TRI_DIRS};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frontier {
    /// `x_0 … x_{2^n}`
    pub left: Vec<Pt>,
    /// `y_0 … y_{2^n}`
    pub right: Vec<Pt>,
    pub alpha: Vec<i8>,
    pub beta: Vec<i8>,
}

impl Frontier {
    fn from_paths(left: Vec<Pt>, right: Vec<Pt>) -> Frontier {
        let alpha = path_turns(&left);
        let beta = path_turns(&right);
        Frontier { left, right, alpha, beta }
    }

    pub fn left_inferior(&self) -> &[Pt] {
        &self.left[..=self.left.len() / 2]
    }

    pub fn left_superior(&self) -> &[Pt] {
        &self.left[self.left.len() / 2..]
    }

    pub fn right_inferior(&self) -> &[Pt] {
        &self.right[..=self.right.len() / 2]
    }

    pub fn right_superior(&self) -> &[Pt] {
        &self.right[self.right.len() / 2..]
    }
}

/// `+1` for a left turn of `π/3`, `-1` for a right one.
fn path_turns(p: &[Pt]) -> Vec<i8> {
    p.windows(3)
        .map(|w| {
            let a = tri_dir_index(w[1] - w[0]).unwrap() as i64;
            let b = tri_dir_index(w[2] - w[1]).unwrap() as i64;
            match (b - a).rem_euclid(6) {
                1 => 1,
                5 => -1,
                t => panic!("frontier turn of {t} sixths"),
            }
        })
        .collect()
}

fn check_folding(c: &EmbeddedCurve) -> Result<Vec<i8>, CurveError> {
    if c.family != Family::Triangular {
        return Err(CurveError::NotFoldingCurve);
    }
    match tri_spec_of_word(c.word.letters()) {
        Some(s) if !s.is_empty() => Ok(s),
        _ => Err(CurveError::NotFoldingCurve),
    }
}

/// Frontiers from the definition: sides `[x, y]` between curve points with
/// exactly one apex on the curve, split into the arcs left and right of it.
pub fn frontier(c: &EmbeddedCurve) -> Result<Frontier, CurveError> {
    check_folding(c)?;
    let pts: HashSet<Pt> = c.vertices.iter().copied().collect();
    // orient each frontier side with its curve apex on the right: the sides
    // then run clockwise around the curve
    let mut next: HashMap<Pt, Pt> = HashMap::new();
    for &x in &pts {
        for k in 0..6 {
            let y = x + TRI_DIRS[k];
            if !pts.contains(&y) {
                continue;
            }
            let apex_left = x + TRI_DIRS[(k + 1) % 6];
            let apex_right = x + TRI_DIRS[(k + 5) % 6];
            if !pts.contains(&apex_left) && pts.contains(&apex_right) && next.insert(x, y).is_some() {
                return Err(CurveError::BrokenFrontier(x));
            }
        }
    }
    let (u, v) = (c.start, c.end());
    let walk = |from: Pt, to: Pt| -> Result<Vec<Pt>, CurveError> {
        let mut path = vec![from];
        let mut p = from;
        while p != to {
            p = *next.get(&p).ok_or(CurveError::BrokenFrontier(p))?;
            path.push(p);
            if path.len() > next.len() + 1 {
                return Err(CurveError::BrokenFrontier(p));
            }
        }
        Ok(path)
    };
    let left = walk(u, v)?;
    let mut right = walk(v, u)?;
    right.reverse();
    if left.len() + right.len() - 2 != next.len() {
        return Err(CurveError::BrokenFrontier(u));
    }
    Ok(Frontier::from_paths(left, right))
}

/// Frontiers by the recursive concatenation of inferior and superior halves.
pub fn frontier_recursive(c: &EmbeddedCurve) -> Result<Frontier, CurveError> {
    let signs = check_folding(c)?;
    let (l, r) = rec(&c.vertices, &signs);
    Ok(Frontier::from_paths(l, r))
}

fn join(a: &[Pt], b: &[Pt]) -> Vec<Pt> {
    debug_assert_eq!(a.last(), b.first());
    let mut v = a.to_vec();
    v.extend_from_slice(&b[1..]);
    v
}

fn rec(vertices: &[Pt], signs: &[i8]) -> (Vec<Pt>, Vec<Pt>) {
    let n = signs.len();
    let v = vertices;
    if n == 1 {
        return if signs[0] > 0 {
            (vec![v[0], v[2], v[3]], vec![v[0], v[1], v[3]])
        } else {
            (vec![v[0], v[1], v[3]], vec![v[0], v[2], v[3]])
        };
    }
    let third = (v.len() - 1) / 3;
    let (li, ri) = rec(&v[..=third], &signs[..n - 1]);
    let (lm, rm) = rec(&v[third..=2 * third], &signs[..n - 1]);
    let (ls, rs) = rec(&v[2 * third..], &signs[..n - 1]);
    let half = |p: &Vec<Pt>| p.len() / 2;
    let inf = |p: &Vec<Pt>| p[..=half(p)].to_vec();
    let sup = |p: &Vec<Pt>| p[half(p)..].to_vec();
    if signs[n - 1] > 0 {
        let left = join(&join(&inf(&li), &sup(&lm)), &ls);
        let right = join(&join(&ri, &inf(&rm)), &sup(&rs));
        (left, right)
    } else {
        let left = join(&join(&li, &inf(&lm)), &sup(&ls));
        let right = join(&join(&inf(&ri), &sup(&rm)), &rs);
        (left, right)
    }
}

/// Checks the closed-form frontier letters against the spec; returns the first mismatch.
pub fn frontier_formula_mismatch(f: &Frontier, signs: &[i8]) -> Option<String> {
    let n = signs.len() as u32;
    let mid = 1usize << (n - 1);
    if f.alpha.len() != (1 << n) - 1 || f.beta.len() != (1 << n) - 1 {
        return Some(format!("frontier words have lengths {} and {}", f.alpha.len(), f.beta.len()));
    }
    if f.alpha[mid - 1] != -1 || f.beta[mid - 1] != 1 {
        return Some(format!("middle letters are {} and {}", f.alpha[mid - 1], f.beta[mid - 1]));
    }
    for k in 0..n.saturating_sub(1) {
        for i in 0..(1usize << (n - k - 1)) {
            let idx = (1usize << k) + (1usize << (k + 1)) * i;
            if idx >= mid * 2 {
                continue;
            }
            let want = if i % 2 == 0 { 1 } else { -1 } * signs[k as usize + 1];
            if f.alpha[idx - 1] != want || f.beta[idx - 1] != want {
                return Some(format!("letter {idx} at k={k}: expected {want}"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::embed;
    use crate::foldseq::tri_word;
    use crate::lattice::pt;

    #[test]
    fn order_one() {
        let c = embed(&tri_word(&[1]), Family::Triangular, pt(0, 0), 0).unwrap();
        let f = frontier(&c).unwrap();
        assert_eq!(f.left, vec![pt(0, 0), pt(0, 1), pt(1, 1)]);
        assert_eq!(f.right, vec![pt(0, 0), pt(1, 0), pt(1, 1)]);
        assert_eq!((f.alpha[0], f.beta[0]), (-1, 1));
        assert_eq!(frontier_recursive(&c).unwrap(), f);
    }

    #[test]
    fn definition_matches_recursion_small() {
        for n in 1..=4 {
            for bits in 0..1u32 << n {
                let signs: Vec<i8> = (0..n).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect();
                let c = embed(&tri_word(&signs), Family::Triangular, pt(0, 0), 0).unwrap();
                let f = frontier(&c).unwrap();
                assert_eq!(frontier_recursive(&c).unwrap(), f, "{signs:?}");
                assert_eq!(frontier_formula_mismatch(&f, &signs), None, "{signs:?}");
            }
        }
    }
}
