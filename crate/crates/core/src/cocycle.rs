//! The reflection cocycle `N(g)` of a Dyer group.
//!
//! `N(g) = Σ a_i [ρ_i]` with `ρ_i = x_1^{a_1}⋯x_{i-1}^{a_{i-1}} x_i x_{i-1}^{-a_{i-1}}⋯x_1^{-a_1}`,
//! taken in the direct sum of one cyclic group `Z_{o(ρ)}` per reflection.
//! Reflections are keyed by their normal form. The number of nonzero
//! coefficients is the syllabic length, which gives a second length
//! computation next to the reducer.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::presentation::Order;
use crate::reducer::{Group, GroupElement};
use crate::syllabic::{canonical_exponent, SyllabicWord, Syllable};

/// A conjugate `g x_v g⁻¹` of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    pub element: GroupElement,
    pub base_vertex: usize,
}

/// A finitely supported map from reflections to nonzero coefficients.
///
/// Each entry remembers one vertex the reflection is conjugate to, which
/// fixes its order; equality ignores that choice.
#[derive(Debug, Clone, Default)]
pub struct CocycleVector {
    entries: BTreeMap<GroupElement, (usize, i64)>,
}

impl PartialEq for CocycleVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((r, (_, a)), (s, (_, b)))| r == s && a == b)
    }
}

impl Eq for CocycleVector {}

impl CocycleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of reflections with a nonzero coefficient.
    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    pub fn coefficient(&self, reflection: &GroupElement) -> i64 {
        self.entries.get(reflection).map_or(0, |&(_, a)| a)
    }

    /// `(reflection, base vertex, coefficient)` in normal-form order.
    pub fn entries(&self) -> impl Iterator<Item = (&GroupElement, usize, i64)> {
        self.entries.iter().map(|(r, &(v, a))| (r, v, a))
    }

    /// Adds `a [ρ]`, reducing modulo the order of `ρ`.
    pub fn add_term(&mut self, reflection: GroupElement, base_vertex: usize, a: i64) {
        let order: Order = reflection.presentation().order(base_vertex);
        let (base_vertex, current) = self.entries.get(&reflection).copied().unwrap_or((base_vertex, 0));
        match canonical_exponent(order, current + a) {
            Some(c) => {
                self.entries.insert(reflection, (base_vertex, c));
            }
            None => {
                self.entries.remove(&reflection);
            }
        }
    }

    pub fn add(&self, other: &CocycleVector) -> CocycleVector {
        let mut out = self.clone();
        for (r, v, a) in other.entries() {
            out.add_term(r.clone(), v, a);
        }
        out
    }
}

fn require_dyer(group: &Group) -> Result<()> {
    if group.is_dyer() {
        Ok(())
    } else {
        Err(Error::NotSupported(format!(
            "the reflection cocycle is only defined for Dyer presentations, this one is {}",
            group.class()
        )))
    }
}

/// Reflections `ρ_i` read off the prefixes of `w`, without checking that `w`
/// is reduced.
fn prefix_reflections(group: &Group, w: &SyllabicWord) -> Result<Vec<Reflection>> {
    let mut prefix = group.identity();
    let mut out = Vec::with_capacity(w.len());
    for &s in w.syllables() {
        let element = group.conjugate(&prefix, &group.generator(s.vertex))?;
        out.push(Reflection {
            element,
            base_vertex: s.vertex,
        });
        prefix = group.multiply(&prefix, &group.syllable(s))?;
    }
    Ok(out)
}

/// The reflections `ρ_1, …, ρ_ℓ` of a reduced word.
pub fn reflection_sequence(group: &Group, w: &SyllabicWord) -> Result<Vec<Reflection>> {
    require_dyer(group)?;
    if !group.is_reduced(w)? {
        return Err(Error::NotReduced);
    }
    prefix_reflections(group, w)
}

/// `N(w̄)`, computed from the given representative.
pub fn cocycle(group: &Group, w: &SyllabicWord) -> Result<CocycleVector> {
    require_dyer(group)?;
    w.validate(group.presentation())?;
    let mut n = CocycleVector::zero();
    for (r, s) in prefix_reflections(group, w)?.into_iter().zip(w.syllables()) {
        n.add_term(r.element, r.base_vertex, s.exponent);
    }
    Ok(n)
}

pub fn length_via_cocycle(group: &Group, w: &SyllabicWord) -> Result<usize> {
    Ok(cocycle(group, w)?.nonzero_count())
}

/// `g · n`: every reflection conjugated by `g`, coefficients unchanged.
pub fn act(group: &Group, g: &GroupElement, n: &CocycleVector) -> Result<CocycleVector> {
    require_dyer(group)?;
    let mut out = CocycleVector::zero();
    for (r, v, a) in n.entries() {
        out.add_term(group.conjugate(g, r)?, v, a);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exchange {
    /// `lg(s₀ w̄) > |w|`.
    Lengthened,
    /// `x₀ = ρ_index` (0-based); `word` is the reduced expression of `s₀ w̄`
    /// obtained by merging `s₀` into that syllable.
    Absorbed { index: usize, word: SyllabicWord },
}

/// Left-multiplies a reduced word by a syllable.
pub fn exchange(group: &Group, w: &SyllabicWord, s0: Syllable) -> Result<Exchange> {
    let p = group.presentation();
    SyllabicWord(vec![s0]).validate(p)?;
    let reflections = reflection_sequence(group, w)?;
    let x0 = group.generator(s0.vertex);
    let Some(index) = reflections.iter().position(|r| r.element == x0) else {
        return Ok(Exchange::Lengthened);
    };
    let target = w.syllables()[index];
    let mut out = w.syllables()[..index].to_vec();
    out.extend(Syllable::new(p, target.vertex, s0.exponent + target.exponent));
    out.extend_from_slice(&w.syllables()[index + 1..]);
    Ok(Exchange::Absorbed {
        index,
        word: SyllabicWord(out),
    })
}
