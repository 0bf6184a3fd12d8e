//! Syllables, syllabic words and elementary M-operations.
//!
//! A syllable is a nontrivial generator power `x_v^a`. Exponents of a
//! finite-order generator are stored in `1..f(v)`; exponents of an
//! infinite-order generator are any nonzero integer.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::{Order, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub vertex: usize,
    pub exponent: i64,
}

/// Rank of an exponent in the syllable order: `1 < 2 < …` for finite
/// orders (stored exponents are positive), `1 < -1 < 2 < -2 < …` otherwise.
fn exponent_rank(a: i64) -> u64 {
    if a > 0 {
        2 * a as u64 - 1
    } else {
        2 * a.unsigned_abs()
    }
}

impl Ord for Syllable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertex
            .cmp(&other.vertex)
            .then_with(|| exponent_rank(self.exponent).cmp(&exponent_rank(other.exponent)))
    }
}

impl PartialOrd for Syllable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduces `a` into the canonical exponent range for `order`; `None` when
/// `x^a` is the identity.
pub fn canonical_exponent(order: Order, a: i64) -> Option<i64> {
    let a = match order {
        Order::Finite(n) => a.rem_euclid(n as i64),
        Order::Infinite => a,
    };
    (a != 0).then_some(a)
}

impl Syllable {
    /// The syllable `x_v^a`, or `None` if it is trivial.
    pub fn new(p: &Presentation, vertex: usize, exponent: i64) -> Option<Self> {
        canonical_exponent(p.order(vertex), exponent).map(|exponent| Self { vertex, exponent })
    }

    /// The generator `x_v` itself.
    pub fn generator(vertex: usize) -> Self {
        Self { vertex, exponent: 1 }
    }

    pub fn inverse(self, p: &Presentation) -> Self {
        Self::new(p, self.vertex, -self.exponent).expect("inverse of a syllable is a syllable")
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> impl fmt::Display + 'a {
        SyllableDisplay { s: *self, p }
    }
}

struct SyllableDisplay<'a> {
    s: Syllable,
    p: &'a Presentation,
}

impl fmt::Display for SyllableDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.p.name(self.s.vertex);
        if self.s.exponent == 1 {
            f.write_str(name)
        } else {
            write!(f, "{name}^{}", self.s.exponent)
        }
    }
}

/// A finite sequence of syllables. Ordered by glex: length first, then
/// lexicographically by the syllable order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SyllabicWord(pub Vec<Syllable>);

impl Ord for SyllabicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SyllabicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Syllable>> for SyllabicWord {
    fn from(v: Vec<Syllable>) -> Self {
        Self(v)
    }
}

impl SyllabicWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn concat(&self, other: &SyllabicWord) -> SyllabicWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// Reverses the word and inverts every syllable.
    pub fn inverse(&self, p: &Presentation) -> SyllabicWord {
        Self(self.0.iter().rev().map(|s| s.inverse(p)).collect())
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().map(|s| s.vertex).collect()
    }

    /// Builds a word from `(vertex name, exponent)` pairs, dropping trivial
    /// powers.
    pub fn from_pairs(p: &Presentation, pairs: &[(&str, i64)]) -> Result<Self> {
        let mut out = Vec::with_capacity(pairs.len());
        for &(name, a) in pairs {
            let v = p.vertex_index(name)?;
            out.extend(Syllable::new(p, v, a));
        }
        Ok(Self(out))
    }

    /// Parses whitespace-separated tokens `name` or `name^k` (k a nonzero
    /// integer). Tokens whose power is trivial in the group are dropped.
    pub fn parse(p: &Presentation, text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            let (name, a) = match token.split_once('^') {
                Some((name, exp)) => {
                    let a = exp
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidWord(format!("bad exponent in `{token}`")))?;
                    if a == 0 {
                        return Err(Error::InvalidWord(format!("zero exponent in `{token}`")));
                    }
                    (name, a)
                }
                None => (token, 1),
            };
            let v = p.vertex_index(name)?;
            out.extend(Syllable::new(p, v, a));
        }
        Ok(Self(out))
    }

    /// Checks that every syllable refers to a vertex of `p` and is stored in
    /// canonical form.
    pub fn validate(&self, p: &Presentation) -> Result<()> {
        for s in &self.0 {
            if s.vertex >= p.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{}", s.vertex)));
            }
            if canonical_exponent(p.order(s.vertex), s.exponent) != Some(s.exponent) {
                return Err(Error::InvalidWord(format!(
                    "exponent {} is not canonical for `{}`",
                    s.exponent,
                    p.name(s.vertex)
                )));
            }
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, p: &'a Presentation) -> impl fmt::Display + 'a {
        WordDisplay { w: self, p }
    }
}

struct WordDisplay<'a> {
    w: &'a SyllabicWord,
    p: &'a Presentation,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.w.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", s.display(self.p))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Two adjacent syllables on one vertex merge into one.
    Merge,
    /// Two adjacent syllables on one vertex cancel.
    Cancel,
    /// `[s,t]_m` is replaced by `[t,s]_m`.
    Braid,
}

impl MoveKind {
    pub fn is_type_one(self) -> bool {
        !matches!(self, MoveKind::Braid)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Merge => "merge",
            MoveKind::Cancel => "cancel",
            MoveKind::Braid => "braid",
        })
    }
}

/// An elementary M-operation located in a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MOperation {
    pub kind: MoveKind,
    pub position: usize,
    /// Syllables consumed: 2 for type I, `m` for type II.
    pub length: usize,
}

impl fmt::Display for MOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind, self.position, self.length)
    }
}

/// Product of two syllables on the same vertex: `Some` syllable, or `None`
/// when they cancel.
pub fn merge_syllables(p: &Presentation, s: Syllable, t: Syllable) -> Result<Option<Syllable>> {
    if s.vertex != t.vertex {
        return Err(Error::InvalidWord(format!(
            "cannot merge syllables on distinct vertices `{}` and `{}`",
            p.name(s.vertex),
            p.name(t.vertex)
        )));
    }
    Ok(Syllable::new(p, s.vertex, s.exponent + t.exponent))
}

/// The `m` for which `[s,t]_m = [t,s]_m` is a length-`m` relation, if any.
///
/// Syllables of commuting generators always commute. Across an edge with
/// `m > 2` only the half-order powers braid, and they do so with exactly
/// that `m`; every other pair of syllables on distinct vertices admits no
/// type II move.
pub fn braid_degree(p: &Presentation, s: Syllable, t: Syllable) -> Result<Option<u32>> {
    if s.vertex == t.vertex {
        return Err(Error::InvalidWord(format!(
            "braid degree needs distinct vertices, got `{}` twice",
            p.name(s.vertex)
        )));
    }
    Ok(braid_degree_unchecked(p, s, t))
}

pub(crate) fn braid_degree_unchecked(p: &Presentation, s: Syllable, t: Syllable) -> Option<u32> {
    let m = p.edge_label(s.vertex, t.vertex)?;
    if m == 2 {
        return Some(2);
    }
    let half = |sy: Syllable| match p.order(sy.vertex) {
        Order::Finite(n) => n % 2 == 0 && sy.exponent == (n / 2) as i64,
        Order::Infinite => false,
    };
    (half(s) && half(t)).then_some(m)
}

/// `[s,t]_m = (s, t, s, …)` of length `m`.
pub fn alternating_word(s: Syllable, t: Syllable, m: usize) -> SyllabicWord {
    SyllabicWord((0..m).map(|i| if i % 2 == 0 { s } else { t }).collect())
}

/// Applies a located M-operation, checking that it is valid for `w`.
pub fn apply_move(p: &Presentation, w: &SyllabicWord, op: MOperation) -> Result<SyllabicWord> {
    let invalid = || Error::InvalidWord(format!("operation `{op}` does not apply"));
    let syl = w.syllables();
    if op.position + op.length > syl.len() {
        return Err(invalid());
    }
    let mut out = syl[..op.position].to_vec();
    match op.kind {
        MoveKind::Merge | MoveKind::Cancel => {
            let (s, t) = (syl[op.position], syl[op.position + 1]);
            if op.length != 2 || s.vertex != t.vertex {
                return Err(invalid());
            }
            match (merge_syllables(p, s, t)?, op.kind) {
                (Some(u), MoveKind::Merge) => out.push(u),
                (None, MoveKind::Cancel) => {}
                _ => return Err(invalid()),
            }
        }
        MoveKind::Braid => {
            if op.length < 2 {
                return Err(invalid());
            }
            let (s, t) = (syl[op.position], syl[op.position + 1]);
            if s.vertex == t.vertex || braid_degree_unchecked(p, s, t) != Some(op.length as u32) {
                return Err(invalid());
            }
            if syl[op.position..op.position + op.length] != alternating_word(s, t, op.length).0[..] {
                return Err(invalid());
            }
            out.extend(alternating_word(t, s, op.length).0);
        }
    }
    out.extend_from_slice(&syl[op.position + op.length..]);
    Ok(SyllabicWord(out))
}

/// First type I move in `w` (leftmost adjacent pair on one vertex).
pub(crate) fn first_type_one(p: &Presentation, w: &[Syllable]) -> Option<(MOperation, SyllabicWord)> {
    let i = w.windows(2).position(|pair| pair[0].vertex == pair[1].vertex)?;
    let merged = Syllable::new(p, w[i].vertex, w[i].exponent + w[i + 1].exponent);
    let mut out = w[..i].to_vec();
    out.extend(merged);
    out.extend_from_slice(&w[i + 2..]);
    let kind = if merged.is_some() {
        MoveKind::Merge
    } else {
        MoveKind::Cancel
    };
    Some((
        MOperation {
            kind,
            position: i,
            length: 2,
        },
        SyllabicWord(out),
    ))
}

/// Every type II move applicable to `w`, in order of position.
pub(crate) fn type_two_moves(p: &Presentation, w: &[Syllable]) -> Vec<(MOperation, SyllabicWord)> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (s, t) = (w[i], w[i + 1]);
        if s.vertex == t.vertex {
            continue;
        }
        let Some(m) = braid_degree_unchecked(p, s, t) else {
            continue;
        };
        let m = m as usize;
        if i + m > w.len() {
            continue;
        }
        let matches = w[i..i + m]
            .iter()
            .enumerate()
            .all(|(j, &u)| u == if j % 2 == 0 { s } else { t });
        if !matches {
            continue;
        }
        let mut next = w[..i].to_vec();
        next.extend((0..m).map(|j| if j % 2 == 0 { t } else { s }));
        next.extend_from_slice(&w[i + m..]);
        out.push((
            MOperation {
                kind: MoveKind::Braid,
                position: i,
                length: m,
            },
            SyllabicWord(next),
        ));
    }
    out
}

/// Every single elementary M-operation applicable to `w`, with its result.
pub fn enumerate_moves(p: &Presentation, w: &SyllabicWord) -> Result<Vec<(MOperation, SyllabicWord)>> {
    w.validate(p)?;
    let syl = w.syllables();
    let mut out = Vec::new();
    for i in 0..syl.len().saturating_sub(1) {
        if syl[i].vertex == syl[i + 1].vertex {
            let merged = Syllable::new(p, syl[i].vertex, syl[i].exponent + syl[i + 1].exponent);
            let mut next = syl[..i].to_vec();
            next.extend(merged);
            next.extend_from_slice(&syl[i + 2..]);
            let kind = if merged.is_some() {
                MoveKind::Merge
            } else {
                MoveKind::Cancel
            };
            out.push((
                MOperation {
                    kind,
                    position: i,
                    length: 2,
                },
                SyllabicWord(next),
            ));
        }
    }
    out.extend(type_two_moves(p, syl));
    Ok(out)
}
