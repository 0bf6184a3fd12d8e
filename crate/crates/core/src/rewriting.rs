//! String rewriting over a finite ordered alphabet, critical pairs, and the
//! complete system for `QD_{m,k}`.
//!
//! Letters are opaque tokens. The alphabet is listed greatest first, and
//! words compare by length and then lexicographically (glex). Every rule
//! must strictly decrease in glex, which makes the system Noetherian, so
//! reducing to an irreducible word always terminates.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A word as letter indices into the alphabet.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingSystem {
    alphabet: Vec<String>,
    index: HashMap<String, usize>,
    rules: Vec<Rule>,
}

/// Glex comparison; a lower letter index is a greater letter.
pub fn glex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(b)
            .find(|(x, y)| x != y)
            .map_or(Ordering::Equal, |(x, y)| y.cmp(x))
    })
}

fn find_factor(w: &[usize], pattern: &[usize], from: usize) -> Option<usize> {
    if pattern.len() > w.len() {
        return None;
    }
    (from..=w.len() - pattern.len()).find(|&p| w[p..p + pattern.len()] == *pattern)
}

impl RewritingSystem {
    /// An empty system over `alphabet` (greatest letter first).
    pub fn new<S: AsRef<str>>(alphabet: &[S]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut letters = Vec::new();
        for (i, a) in alphabet.iter().enumerate() {
            let a = a.as_ref();
            if a.is_empty() || a.contains(char::is_whitespace) || a == "->" {
                return Err(Error::Constraint(format!("bad letter `{a}`")));
            }
            if index.insert(a.to_string(), i).is_some() {
                return Err(Error::Constraint(format!("letter `{a}` listed twice")));
            }
            letters.push(a.to_string());
        }
        Ok(Self {
            alphabet: letters,
            index,
            rules: Vec::new(),
        })
    }

    /// Adds `lhs → rhs`; the rule must satisfy `lhs >glex rhs`.
    pub fn add_rule(&mut self, lhs: Word, rhs: Word) -> Result<()> {
        if lhs.is_empty() {
            return Err(Error::Constraint("empty left-hand side".into()));
        }
        if let Some(&a) = lhs.iter().chain(&rhs).find(|&&a| a >= self.alphabet.len()) {
            return Err(Error::Constraint(format!("letter #{a} outside the alphabet")));
        }
        if glex_cmp(&lhs, &rhs) != Ordering::Greater {
            return Err(Error::Constraint(format!(
                "rule {} -> {} does not decrease in glex order",
                self.render(&lhs),
                self.render(&rhs)
            )));
        }
        self.rules.push(Rule { lhs, rhs });
        Ok(())
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidWord(format!("letter `{name}` is not in the alphabet")))
    }

    /// Whitespace-separated letters; `ε` and the empty string are the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .filter(|t| *t != "ε")
            .map(|t| self.letter(t))
            .collect()
    }

    pub fn render(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        w.iter()
            .map(|&a| self.alphabet[a].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `lhs -> rhs` lines with `#` comments and an optional
    /// `alphabet` line. Without one, letters are ordered by first
    /// appearance, greatest first.
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Vec<String>> = None;
        let mut raw = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line: line_no, message };
            if let Some(rest) = line.strip_prefix("alphabet") {
                if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                    return Err(syntax(format!("unrecognized line `{line}`")));
                }
                if alphabet.is_some() || !raw.is_empty() {
                    return Err(syntax("`alphabet` must come first and only once".into()));
                }
                alphabet = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| syntax(format!("expected `lhs -> rhs`, got `{line}`")))?;
            let tokens = |s: &str| {
                s.split_whitespace()
                    .filter(|t| *t != "ε")
                    .map(String::from)
                    .collect::<Vec<_>>()
            };
            raw.push((line_no, tokens(lhs), tokens(rhs)));
        }
        let alphabet = alphabet.unwrap_or_else(|| {
            let mut seen = Vec::<String>::new();
            for t in raw.iter().flat_map(|(_, l, r)| l.iter().chain(r)) {
                if !seen.contains(t) {
                    seen.push(t.clone());
                }
            }
            seen
        });
        let mut system = Self::new(&alphabet)?;
        for (line, lhs, rhs) in raw {
            let wrap = |e: Error| Error::Syntax {
                line,
                message: e.to_string(),
            };
            let lhs = lhs
                .iter()
                .map(|t| system.letter(t))
                .collect::<Result<Word>>()
                .map_err(wrap)?;
            let rhs = rhs
                .iter()
                .map(|t| system.letter(t))
                .collect::<Result<Word>>()
                .map_err(wrap)?;
            system.add_rule(lhs, rhs).map_err(wrap)?;
        }
        Ok(system)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("alphabet {}\n", self.alphabet.join(" "));
        for r in &self.rules {
            let rhs = if r.rhs.is_empty() {
                String::new()
            } else {
                format!(" {}", self.render(&r.rhs))
            };
            out.push_str(&format!("{} ->{rhs}\n", self.render(&r.lhs)));
        }
        out
    }

    /// Every `(rule index, position)` where a left-hand side occurs in `w`.
    pub fn redexes(&self, w: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let mut from = 0;
            while let Some(p) = find_factor(w, &r.lhs, from) {
                out.push((i, p));
                from = p + 1;
            }
        }
        out
    }

    /// Replaces the occurrence of rule `rule`'s left-hand side at `position`.
    pub fn rewrite_at(&self, w: &[usize], rule: usize, position: usize) -> Word {
        let r = &self.rules[rule];
        debug_assert_eq!(w[position..position + r.lhs.len()], r.lhs[..]);
        let mut out = w[..position].to_vec();
        out.extend_from_slice(&r.rhs);
        out.extend_from_slice(&w[position + r.lhs.len()..]);
        out
    }

    /// The leftmost redex, ties broken by rule order.
    fn first_redex(&self, w: &[usize]) -> Option<(usize, usize)> {
        (0..w.len()).find_map(|p| {
            self.rules
                .iter()
                .position(|r| w.len() - p >= r.lhs.len() && w[p..p + r.lhs.len()] == r.lhs[..])
                .map(|i| (i, p))
        })
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.first_redex(w).is_none()
    }

    /// Rewrites at the leftmost redex until none is left.
    pub fn reduce_to_irreducible(&self, w: &[usize]) -> Word {
        let mut w = w.to_vec();
        while let Some((i, p)) = self.first_redex(&w) {
            w = self.rewrite_at(&w, i, p);
        }
        w
    }

    /// Reduces choosing among all redexes with `pick(count) < count`.
    pub fn reduce_with<F: FnMut(usize) -> usize>(&self, w: &[usize], mut pick: F) -> Word {
        let mut w = w.to_vec();
        loop {
            let redexes = self.redexes(&w);
            if redexes.is_empty() {
                return w;
            }
            let (i, p) = redexes[pick(redexes.len())];
            w = self.rewrite_at(&w, i, p);
        }
    }

    /// All overlap and inclusion pairs between left-hand sides.
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                for o in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - o..] == l2[..o] {
                        out.push(CriticalPair {
                            kind: PairKind::Overlap,
                            rules: (i, j),
                            u1: l1[..l1.len() - o].to_vec(),
                            u2: l2[..o].to_vec(),
                            u3: l2[o..].to_vec(),
                            v1: r1.rhs.clone(),
                            v2: r2.rhs.clone(),
                        });
                    }
                }
                let mut from = 0;
                while let Some(p) = find_factor(l1, l2, from) {
                    from = p + 1;
                    if i == j && p == 0 {
                        continue;
                    }
                    out.push(CriticalPair {
                        kind: PairKind::Inclusion,
                        rules: (i, j),
                        u1: l1[..p].to_vec(),
                        u2: l2.clone(),
                        u3: l1[p + l2.len()..].to_vec(),
                        v1: r1.rhs.clone(),
                        v2: r2.rhs.clone(),
                    });
                }
            }
        }
        out
    }

    /// Irreducible forms of both divergent reducts, equal iff resolved.
    pub fn resolve(&self, cp: &CriticalPair) -> (Word, Word) {
        let (a, b) = cp.divergent_reducts();
        (self.reduce_to_irreducible(&a), self.reduce_to_irreducible(&b))
    }

    pub fn is_resolved(&self, cp: &CriticalPair) -> bool {
        let (a, b) = self.resolve(cp);
        a == b
    }

    pub fn confluence_report(&self) -> ConfluenceReport {
        let pairs = self.critical_pairs();
        let unresolved = pairs
            .iter()
            .filter_map(|cp| {
                let (a, b) = self.resolve(cp);
                (a != b).then(|| UnresolvedPair {
                    pair: cp.clone(),
                    left: a,
                    right: b,
                })
            })
            .collect();
        ConfluenceReport { pairs, unresolved }
    }

    /// True iff every critical pair resolves.
    pub fn confluence_check(&self) -> bool {
        self.critical_pairs().iter().all(|cp| self.is_resolved(cp))
    }
}

impl fmt::Display for RewritingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    /// `(u1·u2 → v1)` and `(u2·u3 → v2)` with `u1, u2, u3` nonempty.
    Overlap,
    /// `(u1·u2·u3 → v1)` and `(u2 → v2)`.
    Inclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalPair {
    pub kind: PairKind,
    /// Indices of the rules producing `v1` and `v2`.
    pub rules: (usize, usize),
    pub u1: Word,
    pub u2: Word,
    pub u3: Word,
    pub v1: Word,
    pub v2: Word,
}

impl CriticalPair {
    /// The ambiguous word `u1·u2·u3`.
    pub fn source(&self) -> Word {
        [&self.u1[..], &self.u2, &self.u3].concat()
    }

    /// The two one-step reducts of the source.
    pub fn divergent_reducts(&self) -> (Word, Word) {
        match self.kind {
            PairKind::Overlap => ([&self.v1[..], &self.u3].concat(), [&self.u1[..], &self.v2].concat()),
            PairKind::Inclusion => (self.v1.clone(), [&self.u1[..], &self.v2, &self.u3].concat()),
        }
    }

    /// `(u1, u2, u3, v1, v2)` rendered with the system's letters.
    pub fn display(&self, system: &RewritingSystem) -> String {
        let parts = [&self.u1, &self.u2, &self.u3, &self.v1, &self.v2].map(|w| system.render(w));
        format!("{:?} ({})", self.kind, parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnresolvedPair {
    pub pair: CriticalPair,
    pub left: Word,
    pub right: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub pairs: Vec<CriticalPair>,
    pub unresolved: Vec<UnresolvedPair>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolved.is_empty()
    }
}

fn check_qd(m: u32, k: u32) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) || k < 2 {
        return Err(Error::InvalidParameters(format!(
            "QD_(m,k) needs odd m >= 3 and k >= 2, got ({m},{k})"
        )));
    }
    Ok(())
}

/// The letter for `y^a`, matching the syllable token syntax.
pub fn y_letter(a: u32) -> String {
    if a == 1 {
        "y".into()
    } else {
        format!("y^{a}")
    }
}

/// The complete system for `QD_{m,k}` over `x > y > y² > ⋯ > y^{2k−1}`:
/// `xx → ε`, `[x,y^k]_m → [y^k,x]_m`, `y^a y^{−a} → ε` and
/// `y^a y^b → y^{a+b}`.
pub fn qd_system(m: u32, k: u32) -> Result<RewritingSystem> {
    check_qd(m, k)?;
    let n = 2 * k;
    let mut alphabet = vec!["x".to_string()];
    alphabet.extend((1..n).map(y_letter));
    let mut r = RewritingSystem::new(&alphabet)?;
    let (x, y) = (0usize, |a: u32| a as usize);
    r.add_rule(vec![x, x], vec![])?;
    let alternate = |first: usize, second: usize| {
        (0..m as usize)
            .map(|i| if i % 2 == 0 { first } else { second })
            .collect::<Word>()
    };
    r.add_rule(alternate(x, y(k)), alternate(y(k), x))?;
    for a in 1..n {
        r.add_rule(vec![y(a), y(n - a)], vec![])?;
    }
    for a in 1..n {
        for b in 1..n {
            if (a + b) % n != 0 {
                r.add_rule(vec![y(a), y(b)], vec![y((a + b) % n)])?;
            }
        }
    }
    Ok(r)
}

/// Decides `w1 = w2` in `QD_{m,k}` by comparing irreducible forms. Words
/// are whitespace-separated letters `x`, `y`, `y^2`, ….
pub fn word_problem_qd(m: u32, k: u32, w1: &str, w2: &str) -> Result<bool> {
    let r = qd_system(m, k)?;
    let a = r.parse_word(w1)?;
    let b = r.parse_word(w2)?;
    Ok(r.reduce_to_irreducible(&a) == r.reduce_to_irreducible(&b))
}
