//! Word problem engine: M-reduction, type II orbits and normal forms.
//!
//! A word is reduced by searching its type II orbit for a member admitting a
//! type I move, applying it and starting over from the shorter word. Once
//! no orbit member shortens, the word is M-reduced; for presentations with
//! the word problem property (Dyer presentations and `QD_{m,k}`) it is then
//! reduced, and the glex-least member of its orbit is a canonical normal
//! form.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::{Presentation, PresentationClass};
use crate::syllabic::{first_type_one, type_two_moves, MOperation, SyllabicWord, Syllable};

/// Limits on the breadth-first orbit search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitBudget {
    pub max_orbit_size: usize,
    pub max_word_length: usize,
}

impl Default for OrbitBudget {
    fn default() -> Self {
        Self {
            max_orbit_size: 1_000_000,
            max_word_length: 4096,
        }
    }
}

/// An element of the group, stored as its normal form.
#[derive(Clone)]
pub struct GroupElement {
    presentation: Arc<Presentation>,
    word: SyllabicWord,
}

impl GroupElement {
    pub fn normal_form(&self) -> &SyllabicWord {
        &self.word
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    /// Syllabic length, read off the (reduced) normal form.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Vertices occurring in the normal form.
    pub fn support(&self) -> BTreeSet<usize> {
        self.word.support()
    }

    pub fn same_presentation(&self, other: &GroupElement) -> bool {
        Arc::ptr_eq(&self.presentation, &other.presentation) || self.presentation == other.presentation
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.same_presentation(other)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.word.cmp(&other.word)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self.word.display(&self.presentation))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word.display(&self.presentation))
    }
}

/// One step of an auditable reduction: the operation and the word it
/// produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub op: MOperation,
    pub word: SyllabicWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: SyllabicWord,
    pub steps: Vec<TraceStep>,
    pub output: SyllabicWord,
}

/// Result of a breadth-first walk through a type II orbit.
struct OrbitWalk {
    nodes: Vec<(SyllabicWord, Option<(usize, MOperation)>)>,
    hit: Option<usize>,
}

impl OrbitWalk {
    /// Type II moves leading from the root to node `i`.
    fn path_to(&self, mut i: usize) -> Vec<TraceStep> {
        let mut steps = Vec::new();
        while let Some((parent, op)) = self.nodes[i].1 {
            steps.push(TraceStep {
                op,
                word: self.nodes[i].0.clone(),
            });
            i = parent;
        }
        steps.reverse();
        steps
    }
}

/// A presentation bound to an orbit budget; the entry point for every
/// word-problem operation.
#[derive(Debug, Clone)]
pub struct Group {
    presentation: Arc<Presentation>,
    class: PresentationClass,
    budget: OrbitBudget,
}

impl Group {
    /// Fails when the presentation violates the quasi-Dyer constraints.
    pub fn new(presentation: Presentation) -> Result<Self> {
        Self::from_arc(Arc::new(presentation))
    }

    pub fn from_arc(presentation: Arc<Presentation>) -> Result<Self> {
        let class = presentation.classify();
        if class == PresentationClass::Invalid {
            let why = presentation.violation().unwrap_or_else(|| "not quasi-Dyer".into());
            return Err(Error::Constraint(why));
        }
        Ok(Self {
            presentation,
            class,
            budget: OrbitBudget::default(),
        })
    }

    pub fn with_budget(mut self, budget: OrbitBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> OrbitBudget {
        self.budget
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn presentation_arc(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn class(&self) -> PresentationClass {
        self.class
    }

    pub fn is_dyer(&self) -> bool {
        self.class.is_dyer()
    }

    /// Whether normal forms are known to be canonical: Dyer presentations
    /// and two-generator `QD_{m,k}`. Other quasi-Dyer presentations are
    /// processed best-effort.
    pub fn verified(&self) -> bool {
        self.class.is_dyer() || self.presentation.qd_parameters().is_some()
    }

    pub fn parse_word(&self, text: &str) -> Result<SyllabicWord> {
        SyllabicWord::parse(&self.presentation, text)
    }

    fn check_word(&self, w: &SyllabicWord) -> Result<()> {
        w.validate(&self.presentation)?;
        if w.len() > self.budget.max_word_length {
            return Err(Error::BudgetExceeded(format!(
                "word length {} exceeds max_word_length {}",
                w.len(),
                self.budget.max_word_length
            )));
        }
        Ok(())
    }

    fn check_element(&self, g: &GroupElement) -> Result<()> {
        if Arc::ptr_eq(&self.presentation, &g.presentation) || *self.presentation == *g.presentation {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    /// Breadth-first walk of the type II orbit of `w`, stopping at the first
    /// member satisfying `stop`.
    fn walk<F>(&self, w: &SyllabicWord, mut stop: F) -> Result<OrbitWalk>
    where
        F: FnMut(&[Syllable]) -> bool,
    {
        let p = &*self.presentation;
        let mut nodes = vec![(w.clone(), None)];
        let mut seen: HashMap<SyllabicWord, usize> = HashMap::new();
        seen.insert(w.clone(), 0);
        let mut head = 0;
        while head < nodes.len() {
            if stop(nodes[head].0.syllables()) {
                return Ok(OrbitWalk { nodes, hit: Some(head) });
            }
            for (op, next) in type_two_moves(p, nodes[head].0.syllables()) {
                if seen.contains_key(&next) {
                    continue;
                }
                if nodes.len() >= self.budget.max_orbit_size {
                    return Err(Error::BudgetExceeded(format!(
                        "type II orbit exceeds max_orbit_size {}",
                        self.budget.max_orbit_size
                    )));
                }
                seen.insert(next.clone(), nodes.len());
                nodes.push((next, Some((head, op))));
            }
            head += 1;
        }
        Ok(OrbitWalk { nodes, hit: None })
    }

    /// Closure of `{w}` under type II moves.
    pub fn type2_orbit(&self, w: &SyllabicWord) -> Result<BTreeSet<SyllabicWord>> {
        self.check_word(w)?;
        let walk = self.walk(w, |_| false)?;
        Ok(walk.nodes.into_iter().map(|(word, _)| word).collect())
    }

    /// First member of the orbit of `w` (breadth-first order) satisfying
    /// `pred`.
    pub(crate) fn find_in_orbit<F>(&self, w: &SyllabicWord, pred: F) -> Result<Option<SyllabicWord>>
    where
        F: FnMut(&[Syllable]) -> bool,
    {
        let walk = self.walk(w, pred)?;
        Ok(walk.hit.map(|i| walk.nodes[i].0.clone()))
    }

    fn reduce_with(&self, w: &SyllabicWord, steps: &mut Option<&mut Vec<TraceStep>>) -> Result<SyllabicWord> {
        self.check_word(w)?;
        let p = &*self.presentation;
        let mut current = w.clone();
        loop {
            let walk = self.walk(&current, |s| s.windows(2).any(|pair| pair[0].vertex == pair[1].vertex))?;
            let Some(i) = walk.hit else { return Ok(current) };
            let (op, shorter) = first_type_one(p, walk.nodes[i].0.syllables()).expect("walk stopped on a type I site");
            if let Some(steps) = steps.as_deref_mut() {
                steps.extend(walk.path_to(i));
                steps.push(TraceStep {
                    op,
                    word: shorter.clone(),
                });
            }
            current = shorter;
        }
    }

    /// An M-reduced word representing the same element as `w`.
    pub fn m_reduce(&self, w: &SyllabicWord) -> Result<SyllabicWord> {
        self.reduce_with(w, &mut None)
    }

    fn least_in_orbit(&self, w: &SyllabicWord) -> Result<(SyllabicWord, Vec<TraceStep>)> {
        let walk = self.walk(w, |_| false)?;
        let (best, _) = walk
            .nodes
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.cmp(&b.1 .0))
            .expect("orbit contains its root");
        Ok((walk.nodes[best].0.clone(), walk.path_to(best)))
    }

    /// The glex-least reduced word for `w`.
    pub fn normal_form(&self, w: &SyllabicWord) -> Result<GroupElement> {
        let reduced = self.m_reduce(w)?;
        let (word, _) = self.least_in_orbit(&reduced)?;
        Ok(self.wrap(word))
    }

    /// Every M-operation taking `w` to its normal form, in order.
    pub fn reduce_trace(&self, w: &SyllabicWord) -> Result<ReductionTrace> {
        let mut steps = Vec::new();
        let reduced = self.reduce_with(w, &mut Some(&mut steps))?;
        let (output, tail) = self.least_in_orbit(&reduced)?;
        steps.extend(tail);
        Ok(ReductionTrace {
            input: w.clone(),
            steps,
            output,
        })
    }

    fn wrap(&self, word: SyllabicWord) -> GroupElement {
        GroupElement {
            presentation: Arc::clone(&self.presentation),
            word,
        }
    }

    pub fn element(&self, text: &str) -> Result<GroupElement> {
        self.normal_form(&self.parse_word(text)?)
    }

    pub fn identity(&self) -> GroupElement {
        self.wrap(SyllabicWord::empty())
    }

    /// The generator `x_v`.
    pub fn generator(&self, v: usize) -> GroupElement {
        self.wrap(SyllabicWord(vec![Syllable::generator(v)]))
    }

    pub fn syllable(&self, s: Syllable) -> GroupElement {
        self.wrap(SyllabicWord(vec![s]))
    }

    pub fn equal(&self, w1: &SyllabicWord, w2: &SyllabicWord) -> Result<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }

    pub fn length(&self, w: &SyllabicWord) -> Result<usize> {
        Ok(self.m_reduce(w)?.len())
    }

    pub fn is_reduced(&self, w: &SyllabicWord) -> Result<bool> {
        Ok(self.length(w)? == w.len())
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        self.check_element(h)?;
        self.normal_form(&g.word.concat(&h.word))
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        self.normal_form(&g.word.inverse(&self.presentation))
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check_element(g)?;
        self.check_element(h)?;
        let p = &*self.presentation;
        self.normal_form(&g.word.concat(&h.word).concat(&g.word.inverse(p)))
    }

    /// Product of a word with elements, normalized once.
    pub fn product(&self, parts: &[&GroupElement]) -> Result<GroupElement> {
        let mut w = SyllabicWord::empty();
        for g in parts {
            self.check_element(g)?;
            w = w.concat(&g.word);
        }
        self.normal_form(&w)
    }

    pub fn support(&self, g: &GroupElement) -> BTreeSet<usize> {
        g.support()
    }
}
