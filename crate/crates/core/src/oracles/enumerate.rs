use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::presentation::{Order, Presentation};
use crate::reducer::{Group, GroupElement};
use crate::syllabic::Syllable;

/// Why the group is certainly infinite, for the checks that are cheap to
/// decide; `None` means it may be finite.
pub fn infinite_reason(p: &Presentation) -> Option<String> {
    if let Some(v) = p.vertices().find(|&v| p.order(v) == Order::Infinite) {
        return Some(format!("{} has infinite order", p.name(v)));
    }
    for u in p.vertices() {
        for v in u + 1..p.vertex_count() {
            let Some(m) = p.edge_label(u, v) else {
                return Some(format!("{} and {} generate a free product", p.name(u), p.name(v)));
            };
            if m % 2 == 1 && !(p.order(u).is_involution() && p.order(v).is_involution()) {
                return Some(format!("{} and {} generate a proper amalgam", p.name(u), p.name(v)));
            }
        }
    }
    let involutions: Vec<usize> = p.vertices().filter(|&v| p.order(v).is_involution()).collect();
    let all_braids_on_involutions = p
        .edges()
        .all(|(u, v, m)| m == 2 || (p.order(u).is_involution() && p.order(v).is_involution()));
    if all_braids_on_involutions && !positive_definite(p, &involutions) {
        return Some("the Coxeter part is not of finite type".into());
    }
    None
}

/// Cholesky test of the Gram matrix `−cos(π/m)`.
fn positive_definite(p: &Presentation, vertices: &[usize]) -> bool {
    let n = vertices.len();
    let gram = |i: usize, j: usize| {
        if i == j {
            return 1.0;
        }
        let m = p.edge_label(vertices[i], vertices[j]).map_or(f64::INFINITY, f64::from);
        -(PI / m).cos()
    };
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s = gram(i, j) - (0..j).map(|t| l[i][t] * l[j][t]).sum::<f64>();
            if i == j {
                if s <= 1e-9 {
                    return false;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    true
}

/// Every element of a finite group, each once, in breadth-first order over
/// the syllables. Fails with `NotFinite` when [`infinite_reason`] applies
/// and `BudgetExceeded` past `max_elements`.
pub fn enumerate_group(group: &Group, max_elements: usize) -> Result<Vec<GroupElement>> {
    let p = group.presentation();
    if infinite_reason(p).is_some() {
        return Err(Error::NotFinite);
    }
    let syllables: Vec<GroupElement> = p
        .vertices()
        .flat_map(|v| {
            let f = p.order(v).finite().unwrap_or(1) as i64;
            (1..f).map(move |a| Syllable { vertex: v, exponent: a })
        })
        .map(|s| group.syllable(s))
        .collect();
    let mut seen = HashSet::from([group.identity()]);
    let mut out = vec![group.identity()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in &syllables {
            let next = group.multiply(&out[i], s)?;
            if seen.insert(next.clone()) {
                if out.len() >= max_elements {
                    return Err(Error::BudgetExceeded(format!("more than {max_elements} elements")));
                }
                queue.push_back(out.len());
                out.push(next);
            }
        }
    }
    Ok(out)
}
