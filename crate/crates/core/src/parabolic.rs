//! Parabolic subgroups `g D_Y g⁻¹`: membership, minimal coset
//! representatives, intersections and parabolic closure.
//!
//! Minimal coset representatives are found by stripping syllables: while
//! some reduced expression of the current element ends (or starts) with a
//! syllable on `Y`, remove it. In a Dyer group the result is the unique
//! element of minimal length in the coset.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::oracles::enumerate_group;
use crate::reducer::{Group, GroupElement};
use crate::syllabic::{SyllabicWord, Syllable};

pub type VertexSet = BTreeSet<usize>;

/// Which coset of `D_Y`: `Left` is `g D_Y`, `Right` is `D_Y g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    /// `g₀`, of minimal length in the coset.
    pub representative: GroupElement,
    /// `h ∈ D_Y` with `g = g₀ h` (left) or `g = h g₀` (right).
    pub residual: GroupElement,
    /// Set outside Dyer presentations, where a coset may have several
    /// elements of minimal length.
    pub non_unique_possible: bool,
}

/// `g = left · representative · right` with `left ∈ D_Y`, `right ∈ D_Y'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetDecomposition {
    pub left: GroupElement,
    pub representative: GroupElement,
    pub right: GroupElement,
}

/// The subgroup `g D_Y g⁻¹`. The stored conjugator is the minimal element
/// of `g D_Y`; two equal subgroups may still have different conjugators,
/// so compare with [`equivalent`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicSubgroup {
    conjugator: GroupElement,
    generators: VertexSet,
}

impl ParabolicSubgroup {
    pub fn new(group: &Group, conjugator: GroupElement, generators: VertexSet) -> Result<Self> {
        check_vertices(group, &generators)?;
        let conjugator = min_coset_rep(group, &conjugator, &generators, Side::Left)?.representative;
        Ok(Self { conjugator, generators })
    }

    /// The standard parabolic `D_Y`.
    pub fn standard(group: &Group, generators: VertexSet) -> Result<Self> {
        Self::new(group, group.identity(), generators)
    }

    pub fn conjugator(&self) -> &GroupElement {
        &self.conjugator
    }

    pub fn generators(&self) -> &VertexSet {
        &self.generators
    }

    /// Renders as `<conjugator>;<v1,v2,…>`, the command-line syntax.
    pub fn display<'a>(&'a self, group: &'a Group) -> impl fmt::Display + 'a {
        ParabolicDisplay { sub: self, group }
    }

    /// Parses `<conjugator word>;<comma-separated vertices>`.
    pub fn parse(group: &Group, text: &str) -> Result<Self> {
        let (word, vertices) = text
            .split_once(';')
            .ok_or_else(|| Error::InvalidWord(format!("expected `<word>;<vertices>`, got `{text}`")))?;
        let g = group.element(word)?;
        let y = parse_vertex_list(group, vertices)?;
        Self::new(group, g, y)
    }
}

struct ParabolicDisplay<'a> {
    sub: &'a ParabolicSubgroup,
    group: &'a Group,
}

impl fmt::Display for ParabolicDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.group.presentation();
        let names: Vec<_> = self.sub.generators.iter().map(|&v| p.name(v)).collect();
        write!(f, "{};{}", self.sub.conjugator, names.join(","))
    }
}

/// Parses a comma-separated vertex list; the empty string is `∅`.
pub fn parse_vertex_list(group: &Group, text: &str) -> Result<VertexSet> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| group.presentation().vertex_index(name))
        .collect()
}

fn check_vertices(group: &Group, y: &VertexSet) -> Result<()> {
    match y.iter().find(|&&v| v >= group.presentation().vertex_count()) {
        Some(v) => Err(Error::UnknownVertex(format!("#{v}"))),
        None => Ok(()),
    }
}

fn require_verified(group: &Group) -> Result<()> {
    if group.verified() {
        Ok(())
    } else {
        Err(Error::NotSupported(format!(
            "supports are only well-defined for Dyer and QD_(m,k) presentations, this one is {}",
            group.class()
        )))
    }
}

fn require_dyer(group: &Group) -> Result<()> {
    if group.is_dyer() {
        Ok(())
    } else {
        Err(Error::NotSupported(format!(
            "this parabolic computation needs a Dyer presentation, this one is {}",
            group.class()
        )))
    }
}

/// `g ∈ D_Y` iff `Supp(g) ⊆ Y`.
pub fn member_standard(group: &Group, g: &GroupElement, y: &VertexSet) -> Result<bool> {
    require_verified(group)?;
    check_vertices(group, y)?;
    Ok(g.support().is_subset(y))
}

/// `D_Y ∩ D_Y' = D_{Y ∩ Y'}`.
pub fn intersect_standard(y: &VertexSet, y2: &VertexSet) -> VertexSet {
    y.intersection(y2).copied().collect()
}

/// Strips syllables on `y` from the right end (`Left`, coset `g D_Y`) or the
/// left end (`Right`, coset `D_Y g`) until no reduced expression allows it.
pub fn min_coset_rep(group: &Group, g: &GroupElement, y: &VertexSet, side: Side) -> Result<CosetDecomposition> {
    check_vertices(group, y)?;
    let mut current = g.clone();
    let mut stripped: Vec<Syllable> = Vec::new();
    loop {
        let hit = group.find_in_orbit(current.normal_form(), |w| {
            let end = match side {
                Side::Left => w.last(),
                Side::Right => w.first(),
            };
            end.is_some_and(|s| y.contains(&s.vertex))
        })?;
        let Some(word) = hit else { break };
        let syl = word.syllables();
        let (s, rest) = match side {
            Side::Left => (syl[syl.len() - 1], &syl[..syl.len() - 1]),
            Side::Right => (syl[0], &syl[1..]),
        };
        stripped.push(s);
        current = group.normal_form(&SyllabicWord(rest.to_vec()))?;
    }
    // Left: g = g₀ s_k ⋯ s_1; right: g = s_1 ⋯ s_k g₀.
    if side == Side::Left {
        stripped.reverse();
    }
    let residual = group.normal_form(&SyllabicWord(stripped))?;
    Ok(CosetDecomposition {
        representative: current,
        residual,
        non_unique_possible: !group.is_dyer(),
    })
}

/// Alternates left stripping by `Y` and right stripping by `Y'` until
/// neither removes anything.
pub fn min_double_coset_rep(
    group: &Group,
    y: &VertexSet,
    g: &GroupElement,
    y2: &VertexSet,
) -> Result<DoubleCosetDecomposition> {
    require_dyer(group)?;
    let mut left = group.identity();
    let mut right = group.identity();
    let mut current = g.clone();
    loop {
        let a = min_coset_rep(group, &current, y, Side::Right)?;
        left = group.multiply(&left, &a.residual)?;
        let b = min_coset_rep(group, &a.representative, y2, Side::Left)?;
        right = group.multiply(&b.residual, &right)?;
        current = b.representative;
        if a.residual.is_identity() && b.residual.is_identity() {
            break;
        }
    }
    Ok(DoubleCosetDecomposition {
        left,
        representative: current,
        right,
    })
}

/// `P1 ∩ P2`, via the minimal double coset representative of `g₁⁻¹ g₂`.
pub fn intersect(group: &Group, p1: &ParabolicSubgroup, p2: &ParabolicSubgroup) -> Result<ParabolicSubgroup> {
    require_dyer(group)?;
    let g1_inv = group.invert(&p1.conjugator)?;
    let a = group.multiply(&g1_inv, &p2.conjugator)?;
    let d = min_double_coset_rep(group, &p1.generators, &a, &p2.generators)?;
    let mut z = VertexSet::new();
    for &y in &p1.generators {
        let target = group.generator(y);
        for &y2 in &p2.generators {
            if group.conjugate(&d.representative, &group.generator(y2))? == target {
                z.insert(y);
                break;
            }
        }
    }
    let conjugator = group.multiply(&p1.conjugator, &d.left)?;
    ParabolicSubgroup::new(group, conjugator, z)
}

/// `g ∈ g₁ D_Y g₁⁻¹` iff `Supp(g₁⁻¹ g g₁) ⊆ Y`.
pub fn contains(group: &Group, p: &ParabolicSubgroup, g: &GroupElement) -> Result<bool> {
    require_verified(group)?;
    let inv = group.invert(&p.conjugator)?;
    let moved = group.product(&[&inv, g, &p.conjugator])?;
    Ok(moved.support().is_subset(&p.generators))
}

/// `P1 ⊆ P2`.
pub fn leq(group: &Group, p1: &ParabolicSubgroup, p2: &ParabolicSubgroup) -> Result<bool> {
    require_dyer(group)?;
    for &y in &p1.generators {
        let g = group.conjugate(&p1.conjugator, &group.generator(y))?;
        if !contains(group, p2, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality of subgroups.
pub fn equivalent(group: &Group, p1: &ParabolicSubgroup, p2: &ParabolicSubgroup) -> Result<bool> {
    Ok(leq(group, p1, p2)? && leq(group, p2, p1)?)
}

#[derive(Debug, Clone)]
pub enum ClosureMode {
    /// Intersect a finite family of parabolics, each containing the input.
    Fold(Vec<ParabolicSubgroup>),
    /// Enumerate every parabolic subgroup of a finite group.
    Enumerate { max_elements: usize },
}

/// Every parabolic subgroup of a finite Dyer group, with its element set.
#[derive(Debug, Clone)]
pub struct ParabolicCatalog {
    elements: Vec<GroupElement>,
    subgroups: Vec<(ParabolicSubgroup, BTreeSet<GroupElement>)>,
}

impl ParabolicCatalog {
    pub fn new(group: &Group, max_elements: usize) -> Result<Self> {
        require_dyer(group)?;
        let n = group.presentation().vertex_count();
        if n >= usize::BITS as usize {
            return Err(Error::BudgetExceeded(format!("{n} generators")));
        }
        let elements = enumerate_group(group, max_elements)?;
        let mut seen: HashMap<BTreeSet<GroupElement>, usize> = HashMap::new();
        let mut subgroups = Vec::new();
        for mask in 0usize..(1 << n) {
            let y: VertexSet = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let standard: Vec<&GroupElement> = elements.iter().filter(|e| e.support().is_subset(&y)).collect();
            for g in &elements {
                let set = standard
                    .iter()
                    .map(|h| group.conjugate(g, h))
                    .collect::<Result<BTreeSet<_>>>()?;
                if seen.contains_key(&set) {
                    continue;
                }
                seen.insert(set.clone(), subgroups.len());
                subgroups.push((ParabolicSubgroup::new(group, g.clone(), y.clone())?, set));
            }
        }
        Ok(Self { elements, subgroups })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Distinct parabolic subgroups with their element sets.
    pub fn subgroups(&self) -> &[(ParabolicSubgroup, BTreeSet<GroupElement>)] {
        &self.subgroups
    }

    /// The smallest parabolic subgroup containing `a`. Fails if the
    /// smallest candidate is not contained in every other one.
    pub fn closure(&self, a: &[GroupElement]) -> Result<ParabolicSubgroup> {
        let candidates: Vec<_> = self
            .subgroups
            .iter()
            .filter(|(_, set)| a.iter().all(|g| set.contains(g)))
            .collect();
        let (best, best_set) = candidates
            .iter()
            .min_by_key(|(_, set)| set.len())
            .ok_or_else(|| Error::Invariant("the whole group is parabolic".into()))?;
        if let Some((other, _)) = candidates.iter().find(|(_, set)| !best_set.is_subset(set)) {
            return Err(Error::Invariant(format!(
                "minimal parabolic over the input is not below {other:?}"
            )));
        }
        Ok(best.clone())
    }
}

/// Parabolics `(p, ∪_a Supp(p⁻¹ a p))` for every prefix `p` of the normal
/// forms in `a`; each one contains all of `a`.
pub fn prefix_family(group: &Group, a: &[GroupElement]) -> Result<Vec<ParabolicSubgroup>> {
    let mut conjugators = vec![group.identity()];
    for g in a {
        let syl = g.normal_form().syllables();
        for k in 1..=syl.len() {
            conjugators.push(group.normal_form(&SyllabicWord(syl[..k].to_vec()))?);
        }
    }
    let mut family = Vec::new();
    for p in conjugators {
        let inv = group.invert(&p)?;
        let mut y = VertexSet::new();
        for g in a {
            y.extend(group.product(&[&inv, g, &p])?.support());
        }
        family.push(ParabolicSubgroup::new(group, p, y)?);
    }
    Ok(family)
}

/// The smallest parabolic subgroup containing `a`.
pub fn parabolic_closure(group: &Group, a: &[GroupElement], mode: ClosureMode) -> Result<ParabolicSubgroup> {
    require_dyer(group)?;
    match mode {
        ClosureMode::Enumerate { max_elements } => ParabolicCatalog::new(group, max_elements)?.closure(a),
        ClosureMode::Fold(family) => {
            let mut members = family.into_iter();
            let Some(first) = members.next() else {
                return Err(Error::InvalidParameters("fold needs a nonempty family".into()));
            };
            for p in std::iter::once(&first).chain(members.as_slice()) {
                for g in a {
                    if !contains(group, p, g)? {
                        return Err(Error::InvalidParameters(format!(
                            "family member {} does not contain {g}",
                            p.display(group)
                        )));
                    }
                }
            }
            members.try_fold(first, |acc, p| intersect(group, &acc, &p))
        }
    }
}
