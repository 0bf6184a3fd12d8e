use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::presentation::{Order, Presentation};
use crate::syllabic::{SyllabicWord, Syllable};

/// A concrete faithful model of a marked group.
pub trait GroupModel {
    type Element: Clone + Eq + Hash;

    fn identity(&self) -> Self::Element;
    fn generator(&self, v: usize) -> Self::Element;
    /// The product `a · b`.
    fn compose(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn is_finite(&self) -> bool;

    fn power(&self, g: &Self::Element, n: u32) -> Self::Element {
        (0..n).fold(self.identity(), |acc, _| self.compose(&acc, g))
    }

    fn syllable(&self, p: &Presentation, s: Syllable) -> Self::Element {
        let n = match p.order(s.vertex) {
            Order::Finite(f) => s.exponent.rem_euclid(f as i64) as u32,
            Order::Infinite => panic!("syllables of infinite order have no oracle image"),
        };
        self.power(&self.generator(s.vertex), n)
    }

    fn evaluate(&self, p: &Presentation, w: &SyllabicWord) -> Self::Element {
        w.syllables()
            .iter()
            .fold(self.identity(), |acc, &s| self.compose(&acc, &self.syllable(p, s)))
    }
}

/// Checks generator orders and the braid relation on every edge.
fn check_relations<M: GroupModel>(model: &M, p: &Presentation) -> Result<()> {
    let id = model.identity();
    for v in p.vertices() {
        let f = p
            .order(v)
            .finite()
            .ok_or_else(|| Error::Constraint("models need finite vertex orders".into()))?;
        let g = model.generator(v);
        let exact = model.power(&g, f) == id && (1..f).all(|n| model.power(&g, n) != id);
        if !exact {
            return Err(Error::Invariant(format!(
                "image of {} does not have order {f}",
                p.name(v)
            )));
        }
    }
    for (u, v, m) in p.edges() {
        let half = |w: usize| {
            let f = p.order(w).finite().unwrap_or(2);
            let e = if m > 2 && f > 2 { f / 2 } else { 1 };
            model.power(&model.generator(w), e)
        };
        let (a, b) = (half(u), half(v));
        let alternate = |s: &M::Element, t: &M::Element| {
            (0..m).fold(model.identity(), |acc, i| {
                model.compose(&acc, if i % 2 == 0 { s } else { t })
            })
        };
        if alternate(&a, &b) != alternate(&b, &a) {
            return Err(Error::Invariant(format!(
                "braid relation fails on {}-{}",
                p.name(u),
                p.name(v)
            )));
        }
    }
    Ok(())
}

/// Generators act as permutations of `{0, …, degree − 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroupModel {
    degree: usize,
    generator_images: Vec<Vec<u32>>,
}

impl PermGroupModel {
    /// Validates the images against the presentation's relations.
    pub fn new(p: &Presentation, degree: usize, generator_images: Vec<Vec<u32>>) -> Result<Self> {
        if generator_images.len() != p.vertex_count() {
            return Err(Error::Constraint("one image per vertex is required".into()));
        }
        for img in &generator_images {
            let mut seen = vec![false; degree];
            let ok = img.len() == degree
                && img
                    .iter()
                    .all(|&i| (i as usize) < degree && !std::mem::replace(&mut seen[i as usize], true));
            if !ok {
                return Err(Error::Constraint(format!(
                    "{img:?} is not a permutation of degree {degree}"
                )));
            }
        }
        let model = Self {
            degree,
            generator_images,
        };
        check_relations(&model, p)?;
        Ok(model)
    }

    /// Builds images from cycles, e.g. `&[&[0, 1], &[2, 3]]`.
    pub fn from_cycles(p: &Presentation, degree: usize, images: &[&[&[u32]]]) -> Result<Self> {
        let perms = images
            .iter()
            .map(|cycles| {
                let mut perm: Vec<u32> = (0..degree as u32).collect();
                for c in cycles.iter() {
                    for (i, &a) in c.iter().enumerate() {
                        perm[a as usize] = c[(i + 1) % c.len()];
                    }
                }
                perm
            })
            .collect();
        Self::new(p, degree, perms)
    }

    /// Images given as maps on `{0, …, degree − 1}`.
    pub fn from_maps(p: &Presentation, degree: usize, maps: &[&dyn Fn(u32) -> u32]) -> Result<Self> {
        let perms = maps.iter().map(|f| (0..degree as u32).map(f).collect()).collect();
        Self::new(p, degree, perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_images(&self) -> &[Vec<u32>] {
        &self.generator_images
    }
}

impl GroupModel for PermGroupModel {
    type Element = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        (0..self.degree as u32).collect()
    }

    fn generator(&self, v: usize) -> Vec<u32> {
        self.generator_images[v].clone()
    }

    /// Apply `b` first, then `a`.
    fn compose(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        b.iter().map(|&i| a[i as usize]).collect()
    }

    fn is_finite(&self) -> bool {
        true
    }
}

/// `Z_3 × D_∞`: a 3-cycle together with the affine maps `n ↦ −n` and
/// `n ↦ 1 − n` of `Z`. Elements are `(r mod 3, sign, shift)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineModel {
    generators: Vec<(i64, i64, i64)>,
}

impl AffineModel {
    /// Vertices are mapped in order to the reflection `n ↦ −n`, the
    /// rotation, and the reflection `n ↦ 1 − n`.
    pub fn path_232(p: &Presentation) -> Result<Self> {
        let model = Self {
            generators: vec![(0, -1, 0), (1, 1, 0), (0, -1, 1)],
        };
        check_relations(&model, p)?;
        Ok(model)
    }
}

impl GroupModel for AffineModel {
    type Element = (i64, i64, i64);

    fn identity(&self) -> Self::Element {
        (0, 1, 0)
    }

    fn generator(&self, v: usize) -> Self::Element {
        self.generators[v]
    }

    fn compose(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        ((a.0 + b.0).rem_euclid(3), a.1 * b.1, a.1 * b.2 + a.2)
    }

    fn is_finite(&self) -> bool {
        false
    }
}

pub fn oracle_equal<M: GroupModel>(model: &M, p: &Presentation, w1: &SyllabicWord, w2: &SyllabicWord) -> bool {
    model.evaluate(p, w1) == model.evaluate(p, w2)
}

/// One element of a Cayley ball, with a shortest word reaching it.
#[derive(Debug, Clone)]
pub struct BallEntry<E> {
    pub element: E,
    pub word: SyllabicWord,
    pub distance: usize,
}

fn all_syllables(p: &Presentation) -> Result<Vec<Syllable>> {
    let mut out = Vec::new();
    for v in p.vertices() {
        let f = p.order(v).finite().ok_or(Error::NotFinite)?;
        out.extend((1..f as i64).map(|a| Syllable { vertex: v, exponent: a }));
    }
    Ok(out)
}

/// Breadth-first search from the identity over all syllables, up to
/// `radius` (unbounded when `None`, which needs a finite model).
pub fn cayley_bfs<M: GroupModel>(
    model: &M,
    p: &Presentation,
    radius: Option<usize>,
) -> Result<Vec<BallEntry<M::Element>>> {
    if radius.is_none() && !model.is_finite() {
        return Err(Error::NotFinite);
    }
    let syllables = all_syllables(p)?;
    let mut seen: HashMap<M::Element, usize> = HashMap::new();
    let mut out = vec![BallEntry {
        element: model.identity(),
        word: SyllabicWord::empty(),
        distance: 0,
    }];
    seen.insert(model.identity(), 0);
    let mut queue = VecDeque::from([0usize]);
    let images: Vec<_> = syllables.iter().map(|&s| model.syllable(p, s)).collect();
    while let Some(i) = queue.pop_front() {
        if radius.is_some_and(|r| out[i].distance >= r) {
            continue;
        }
        for (s, img) in syllables.iter().zip(&images) {
            let next = model.compose(&out[i].element, img);
            if seen.contains_key(&next) {
                continue;
            }
            seen.insert(next.clone(), out.len());
            let mut word = out[i].word.clone();
            word.0.push(*s);
            queue.push_back(out.len());
            out.push(BallEntry {
                element: next,
                word,
                distance: out[i].distance + 1,
            });
        }
    }
    Ok(out)
}

/// Syllabic length of `w` as its distance from the identity in the Cayley
/// graph over all syllables.
pub fn oracle_length<M: GroupModel>(model: &M, p: &Presentation, w: &SyllabicWord) -> Result<usize> {
    let target = model.evaluate(p, w);
    let ball = cayley_bfs(model, p, Some(w.len()))?;
    ball.into_iter()
        .find(|e| e.element == target)
        .map(|e| e.distance)
        .ok_or_else(|| Error::Invariant("word not reached within its own length".into()))
}

/// Order of a finite model.
pub fn model_order<M: GroupModel>(model: &M, p: &Presentation) -> Result<usize> {
    Ok(cayley_bfs(model, p, None)?.len())
}
