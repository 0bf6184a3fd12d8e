//! `QD_{m,k} = D_m *_K C_{2k}`, where `D_m = ⟨x, y'⟩` is dihedral of order
//! `2m`, `C_{2k} = ⟨y⟩`, and `K = ⟨y'⟩ = ⟨y^k⟩` has order two.
//!
//! `D_m` acts on `Z_m` by `x: i ↦ −i`, `y': i ↦ 1 − i`; an element is the
//! map `i ↦ sign·i + shift`. Each right coset `Kg` is represented by its
//! member whose shortest word over `{x, y^k}` is glex-least; in `C_{2k}`
//! that is `y^c` with `0 ≤ c < k`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::syllabic::{SyllabicWord, Syllable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// `i ↦ sign·i + shift` in `D_m`.
    Dihedral { sign: i8, shift: u32 },
    /// `y^c` in `C_{2k}`.
    Cyclic(u32),
}

impl Factor {
    fn same_side(self, other: Factor) -> bool {
        matches!(
            (self, other),
            (Factor::Dihedral { .. }, Factor::Dihedral { .. }) | (Factor::Cyclic(_), Factor::Cyclic(_))
        )
    }
}

/// `κ · r_1 ⋯ r_n` with `κ ∈ K` and nontrivial transversal elements `r_i`
/// alternating between the two factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamElement {
    /// Whether `κ = y'`.
    pub leading: bool,
    pub factors: Vec<Factor>,
}

impl AmalgamElement {
    pub fn is_identity(&self) -> bool {
        !self.leading && self.factors.is_empty()
    }
}

struct Amalgam {
    m: i64,
    k: u32,
    /// Transversal element of each right `K`-coset in `D_m`.
    dihedral_rep: HashMap<(i8, u32), (i8, u32)>,
}

impl Amalgam {
    fn new(m: u32, k: u32) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) || k < 2 {
            return Err(Error::InvalidParameters(format!(
                "QD_(m,k) needs odd m >= 3 and k >= 2, got ({m},{k})"
            )));
        }
        let mut amalgam = Self {
            m: m as i64,
            k,
            dihedral_rep: HashMap::new(),
        };
        // Breadth-first with x before y' yields the glex-least word first.
        let x = (-1i8, 0u32);
        let yp = (-1i8, 1u32);
        let mut least: HashMap<(i8, u32), SyllabicWord> = HashMap::new();
        let id = (1i8, 0u32);
        least.insert(id, SyllabicWord::empty());
        let mut queue = VecDeque::from([id]);
        let letters = [
            (x, Syllable { vertex: 0, exponent: 1 }),
            (
                yp,
                Syllable {
                    vertex: 1,
                    exponent: k as i64,
                },
            ),
        ];
        while let Some(g) = queue.pop_front() {
            for &(gen, syl) in &letters {
                let next = amalgam.dmul(g, gen);
                if !least.contains_key(&next) {
                    let mut w = least[&g].clone();
                    w.0.push(syl);
                    least.insert(next, w);
                    queue.push_back(next);
                }
            }
        }
        for &g in least.keys() {
            let other = amalgam.dmul(yp, g);
            let rep = if least[&g] <= least[&other] { g } else { other };
            amalgam.dihedral_rep.insert(g, rep);
        }
        Ok(amalgam)
    }

    fn dmul(&self, a: (i8, u32), b: (i8, u32)) -> (i8, u32) {
        let shift = (a.0 as i64 * b.1 as i64 + a.1 as i64).rem_euclid(self.m);
        (a.0 * b.0, shift as u32)
    }

    fn kappa_dihedral(leading: bool) -> (i8, u32) {
        if leading {
            (-1, 1)
        } else {
            (1, 0)
        }
    }

    /// `g = κ · r`, returning `(κ = y', r)`; `r = None` when `g ∈ K`.
    fn split(&self, g: Factor) -> (bool, Option<Factor>) {
        match g {
            Factor::Cyclic(c) => {
                let r = c % self.k;
                (c >= self.k, (r != 0).then_some(Factor::Cyclic(r)))
            }
            Factor::Dihedral { sign, shift } => {
                let (rs, rt) = self.dihedral_rep[&(sign, shift)];
                let leading = (rs, rt) != (sign, shift);
                let r = Factor::Dihedral { sign: rs, shift: rt };
                (leading, ((rs, rt) != (1, 0)).then_some(r))
            }
        }
    }

    fn mul(&self, a: Factor, b: Factor) -> Factor {
        match (a, b) {
            (Factor::Cyclic(c), Factor::Cyclic(d)) => Factor::Cyclic((c + d) % (2 * self.k)),
            (Factor::Dihedral { sign: s1, shift: t1 }, Factor::Dihedral { sign: s2, shift: t2 }) => {
                let (sign, shift) = self.dmul((s1, t1), (s2, t2));
                Factor::Dihedral { sign, shift }
            }
            _ => unreachable!("factors from different sides"),
        }
    }

    /// `κ` embedded in the same factor as `like`.
    fn kappa_like(&self, leading: bool, like: Factor) -> Factor {
        match like {
            Factor::Cyclic(_) => Factor::Cyclic(if leading { self.k } else { 0 }),
            Factor::Dihedral { .. } => {
                let (sign, shift) = Self::kappa_dihedral(leading);
                Factor::Dihedral { sign, shift }
            }
        }
    }

    /// Left-multiplies a normal form by a factor element.
    fn left_mul(&self, s: Factor, g: &mut AmalgamElement) {
        let a = self.mul(s, self.kappa_like(g.leading, s));
        match g.factors.first().copied() {
            Some(r1) if r1.same_side(s) => {
                let (leading, r) = self.split(self.mul(a, r1));
                g.leading = leading;
                match r {
                    Some(r) => g.factors[0] = r,
                    None => {
                        g.factors.remove(0);
                    }
                }
            }
            _ => {
                let (leading, r) = self.split(a);
                g.leading = leading;
                if let Some(r) = r {
                    g.factors.insert(0, r);
                }
            }
        }
    }
}

/// Normal form of a word over `x` (vertex 0) and `y` (vertex 1).
pub fn amalgam_normal_form(m: u32, k: u32, w: &SyllabicWord) -> Result<AmalgamElement> {
    let amalgam = Amalgam::new(m, k)?;
    let mut g = AmalgamElement {
        leading: false,
        factors: Vec::new(),
    };
    for s in w.syllables().iter().rev() {
        let factor = match s.vertex {
            0 if s.exponent.rem_euclid(2) == 1 => Factor::Dihedral { sign: -1, shift: 0 },
            0 => continue,
            1 => Factor::Cyclic(s.exponent.rem_euclid(2 * k as i64) as u32),
            v => return Err(Error::UnknownVertex(format!("#{v}"))),
        };
        amalgam.left_mul(factor, &mut g);
    }
    Ok(g)
}
