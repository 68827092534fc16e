//! Fold words for the three curve families.
//!
//! A spec `(λ1, …, λn)` lists fold signs; the last sign is the first physical
//! fold. Words are plain letter vectors: `±1` for square and triangular
//! curves, `-2..=2` for Peano-Gosper curves.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Square,
    #[serde(rename = "tri")]
    Triangular,
    Gosper,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, FoldError> {
        match s {
            "square" | "sq" => Ok(Family::Square),
            "tri" | "triangular" => Ok(Family::Triangular),
            "gosper" | "hex" => Ok(Family::Gosper),
            other => Err(FoldError::UnknownFamily(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Triangular => "tri",
            Family::Gosper => "gosper",
        }
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            Family::Gosper => Alphabet::FiveLetter,
            _ => Alphabet::PlusMinusOne,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("unknown curve family `{0}`")]
    UnknownFamily(String),
    #[error("bad fold sign `{0}` (expected + or -)")]
    BadSign(char),
    #[error("{expected} spec required, got {got}")]
    WrongFamily { expected: Family, got: Family },
    #[error("a Peano-Gosper spec needs at least one sign")]
    EmptyGosperSpec,
    #[error("letter {letter} at index {index} is outside the alphabet")]
    BadLetter { index: usize, letter: i8 },
    #[error("word length {0} is not of the form 3^n - 1 with n >= 1")]
    BadLength(usize),
    #[error("word is not derivable: triple structure fails at letter {0}")]
    NotDerivable(usize),
    #[error("window of {len} letters holds fewer than 2 periods of {period}")]
    WindowTooSmall { len: usize, period: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoldSpec {
    family: Family,
    signs: Vec<i8>,
}

impl FoldSpec {
    pub fn new(family: Family, signs: Vec<i8>) -> Result<FoldSpec, FoldError> {
        if let Some(i) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(FoldError::BadLetter { index: i, letter: signs[i] });
        }
        if family == Family::Gosper && signs.is_empty() {
            return Err(FoldError::EmptyGosperSpec);
        }
        Ok(FoldSpec { family, signs })
    }

    /// Parses a sign string such as `"++-+"`. The empty string is the zero-fold spec.
    pub fn parse(family: Family, s: &str) -> Result<FoldSpec, FoldError> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(FoldError::BadSign(other)),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        FoldSpec::new(family, signs)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign_string(&self) -> String {
        sign_string(&self.signs)
    }

    /// The word of this spec in its family.
    pub fn word(&self) -> TurnWord {
        match self.family {
            Family::Square => square_word(&self.signs),
            Family::Triangular => tri_word(&self.signs),
            Family::Gosper => gosper_word_from_signs(&self.signs),
        }
    }

    /// All specs of a family with exactly `n` signs, in lexicographic order with `+` first.
    pub fn all(family: Family, n: usize) -> Vec<FoldSpec> {
        (0..1u64 << n)
            .map(|bits| {
                let signs = (0..n).map(|i| if bits >> (n - 1 - i) & 1 == 0 { 1 } else { -1 }).collect();
                FoldSpec { family, signs }
            })
            .collect()
    }
}

impl fmt::Display for FoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family, self.sign_string())
    }
}

pub fn sign_string(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    PlusMinusOne,
    FiveLetter,
}

impl Alphabet {
    pub fn contains(self, letter: i8) -> bool {
        match self {
            Alphabet::PlusMinusOne => letter == 1 || letter == -1,
            Alphabet::FiveLetter => (-2..=2).contains(&letter),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TurnWord {
    alphabet: Alphabet,
    letters: Vec<i8>,
}

impl TurnWord {
    pub fn new(alphabet: Alphabet, letters: Vec<i8>) -> Result<TurnWord, FoldError> {
        if let Some(i) = letters.iter().position(|&l| !alphabet.contains(l)) {
            return Err(FoldError::BadLetter { index: i, letter: letters[i] });
        }
        Ok(TurnWord { alphabet, letters })
    }

    pub fn pm(letters: Vec<i8>) -> Result<TurnWord, FoldError> {
        TurnWord::new(Alphabet::PlusMinusOne, letters)
    }

    pub fn five(letters: Vec<i8>) -> Result<TurnWord, FoldError> {
        TurnWord::new(Alphabet::FiveLetter, letters)
    }

    pub fn empty(alphabet: Alphabet) -> TurnWord {
        TurnWord { alphabet, letters: Vec::new() }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<i8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn negate(&self) -> TurnWord {
        TurnWord { alphabet: self.alphabet, letters: self.letters.iter().map(|&l| -l).collect() }
    }
}

/// Word of the triangular n-folding curve: `T_{Λ,λ} = (T_Λ, λ, T_Λ, -λ, T_Λ)`.
pub fn tri_fold_word(spec: &FoldSpec) -> Result<TurnWord, FoldError> {
    expect_family(spec, Family::Triangular)?;
    Ok(tri_word(&spec.signs))
}

/// Word of the square n-folding curve: `W_{Λ,λ} = (W_Λ, λ, reverse_negate(W_Λ))`.
pub fn square_fold_word(spec: &FoldSpec) -> Result<TurnWord, FoldError> {
    expect_family(spec, Family::Square)?;
    Ok(square_word(&spec.signs))
}

/// Peano-Gosper tile word `S_{λ1…λn}` of length `7^n - 1`.
pub fn gosper_word(spec: &FoldSpec) -> Result<TurnWord, FoldError> {
    expect_family(spec, Family::Gosper)?;
    Ok(gosper_word_from_signs(&spec.signs))
}

fn expect_family(spec: &FoldSpec, expected: Family) -> Result<(), FoldError> {
    if spec.family == expected {
        Ok(())
    } else {
        Err(FoldError::WrongFamily { expected, got: spec.family })
    }
}

pub fn tri_word(signs: &[i8]) -> TurnWord {
    let mut w: Vec<i8> = Vec::new();
    for &l in signs {
        let mut next = Vec::with_capacity(3 * w.len() + 2);
        next.extend_from_slice(&w);
        next.push(l);
        next.extend_from_slice(&w);
        next.push(-l);
        next.extend_from_slice(&w);
        w = next;
    }
    TurnWord { alphabet: Alphabet::PlusMinusOne, letters: w }
}

pub fn square_word(signs: &[i8]) -> TurnWord {
    let mut w: Vec<i8> = Vec::new();
    for &l in signs {
        let tail = reverse_negate_letters(&w);
        w.push(l);
        w.extend(tail);
    }
    TurnWord { alphabet: Alphabet::PlusMinusOne, letters: w }
}

pub const GOSPER_S: [i8; 6] = [1, 2, -1, -2, 0, -1];

fn gosper_pair(l1: i8, l2: i8) -> Vec<i8> {
    let s: Vec<i8> = GOSPER_S.to_vec();
    let sb = reverse_negate_letters(&s);
    // (bar, connector following the block); the last connector is unused
    let plus_plus = [(false, 1), (true, 1), (true, -1), (false, -1), (false, 1), (false, -1), (true, 0)];
    let plus_minus = [(true, -1), (false, -1), (false, 1), (true, 1), (true, -1), (true, 1), (false, 0)];
    let blocks = if l1 == l2 { plus_plus } else { plus_minus };
    let mut w = Vec::with_capacity(48);
    for (i, &(bar, conn)) in blocks.iter().enumerate() {
        w.extend_from_slice(if bar { &sb } else { &s });
        if i < 6 {
            w.push(conn);
        }
    }
    // S_{--} = -S_{++} and S_{-+} = -S_{+-}
    if l1 == -1 {
        for x in &mut w {
            *x = -*x;
        }
    }
    w
}

pub fn gosper_word_from_signs(signs: &[i8]) -> TurnWord {
    assert!(!signs.is_empty(), "a Peano-Gosper spec needs at least one sign");
    let five = |letters| TurnWord { alphabet: Alphabet::FiveLetter, letters };
    let n = signs.len();
    if n == 1 {
        return five(GOSPER_S.iter().map(|&a| a * signs[0]).collect());
    }
    if n == 2 {
        return five(gosper_pair(signs[0], signs[1]));
    }
    let tail = gosper_word_from_signs(&signs[1..]).letters;
    let small: Vec<i8> = GOSPER_S.iter().map(|&a| a * signs[1]).collect();
    let small_bar = reverse_negate_letters(&small);
    let big = gosper_pair(signs[0], signs[1]);
    let big_bar = reverse_negate_letters(&big);
    let mut out = Vec::with_capacity(7 * tail.len() + 6);
    for (k, block) in tail.chunks(7).enumerate() {
        let six = &block[..6];
        if six == small.as_slice() {
            out.extend_from_slice(&big);
        } else if six == small_bar.as_slice() {
            out.extend_from_slice(&big_bar);
        } else {
            unreachable!("block {k} of the tail word is neither S nor its reverse");
        }
        if block.len() == 7 {
            out.push(block[6]);
        }
    }
    five(out)
}

pub fn reverse_negate_letters(w: &[i8]) -> Vec<i8> {
    w.iter().rev().map(|&l| -l).collect()
}

/// Reverses and negates a word; the word of the reversed curve.
pub fn reverse_negate(w: &TurnWord) -> TurnWord {
    TurnWord { alphabet: w.alphabet, letters: reverse_negate_letters(&w.letters) }
}

/// Exponent `n` with `len = 3^n - 1`, if any.
pub fn tri_level(len: usize) -> Option<u32> {
    let mut p = 1usize;
    let mut n = 0;
    while p - 1 < len {
        p = p.checked_mul(3)?;
        n += 1;
    }
    (p - 1 == len).then_some(n)
}

/// Recovers `(λ1, …, λn)` from a triangular folding word, if it is one.
pub fn tri_spec_of_word(w: &[i8]) -> Option<Vec<i8>> {
    let n = tri_level(w.len())?;
    let signs: Vec<i8> = (0..n).map(|k| w[3usize.pow(k) - 1]).collect();
    (tri_word(&signs).letters == w).then_some(signs)
}

/// Recovers `(λ1, …, λn)` from a square folding word, if it is one.
pub fn square_spec_of_word(w: &[i8]) -> Option<Vec<i8>> {
    let n = (w.len() + 1).trailing_zeros();
    if (w.len() + 1) != 1 << n {
        return None;
    }
    let signs: Vec<i8> = (0..n).map(|k| w[(1usize << k) - 1]).collect();
    (square_word(&signs).letters == w).then_some(signs)
}

/// Letters at indices divisible by 3 (1-based) of a triangular folding word.
pub fn derive_tri_word(w: &TurnWord) -> Result<TurnWord, FoldError> {
    let n = tri_level(w.len()).filter(|&n| n >= 1).ok_or(FoldError::BadLength(w.len()))?;
    let s = &w.letters;
    let eps = s[0];
    for (i, &l) in s.iter().enumerate() {
        let ok = match i % 3 {
            0 => l == eps,
            1 => l == -eps,
            _ => l == 1 || l == -1,
        };
        if !ok {
            return Err(FoldError::NotDerivable(i + 1));
        }
    }
    let letters: Vec<i8> = s.iter().skip(2).step_by(3).copied().collect();
    debug_assert_eq!(letters.len(), 3usize.pow(n - 1) - 1);
    Ok(TurnWord { alphabet: w.alphabet, letters })
}

/// For each `k <= k_max`, the offsets `h` modulo `3^(k+1)` with
/// `s[h + 3^k + 3^(k+1) i] = -s[h + 2·3^k + 3^(k+1) j]` throughout the window.
pub fn check_complete_folding_condition(w: &TurnWord, k_max: u32) -> Result<Vec<Vec<usize>>, FoldError> {
    let s = &w.letters;
    let top = 3usize.pow(k_max + 1);
    if s.len() < 2 * top {
        return Err(FoldError::WindowTooSmall { len: s.len(), period: top });
    }
    let mut out = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let step = 3usize.pow(k);
        let period = 3 * step;
        let residues = (0..period)
            .filter(|&h| {
                // 1-based positions p ≡ h + step and q ≡ h + 2 step (mod period)
                let class = |off: usize| {
                    let r = (h + off) % period;
                    let first = if r == 0 { period } else { r };
                    (first..=s.len()).step_by(period).map(|p| s[p - 1])
                };
                let mut eps = None;
                for a in class(step) {
                    if *eps.get_or_insert(a) != a {
                        return false;
                    }
                }
                let Some(e) = eps else { return true };
                class(2 * step).all(|b| b == -e)
            })
            .collect();
        out.push(residues);
    }
    Ok(out)
}
