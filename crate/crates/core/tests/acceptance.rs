//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use dyer::cocycle::{act, cocycle, exchange, Exchange};
use dyer::oracles::{
    amalgam_normal_form, catalog, cayley_bfs, AmalgamElement, CatalogEntry, GroupModel, Model, PermGroupModel,
};
use dyer::parabolic::{
    intersect, leq, min_coset_rep, parabolic_closure, ClosureMode, ParabolicCatalog, ParabolicSubgroup, Side,
};
use dyer::rewriting::{qd_system, word_problem_qd, PairKind, RewritingSystem, Word};
use dyer::{Group, GroupElement, Order, Presentation, SyllabicWord, Syllable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration, what: &str) -> std::result::Result<(), String> {
    let spent = start.elapsed();
    if spent > limit {
        Err(format!("{what} took {spent:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn syllables(p: &Presentation, infinite_range: i64) -> Vec<Syllable> {
    p.vertices()
        .flat_map(|v| {
            let exps: Vec<i64> = match p.order(v) {
                Order::Finite(f) => (1..f as i64).collect(),
                Order::Infinite => (1..=infinite_range).flat_map(|a| [a, -a]).collect(),
            };
            exps.into_iter().map(move |a| Syllable { vertex: v, exponent: a })
        })
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[Syllable], max_len: usize) -> SyllabicWord {
    let n = rng.gen_range(0..=max_len);
    SyllabicWord((0..n).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect())
}

fn all_words(alphabet: &[Syllable], max_len: usize) -> Vec<SyllabicWord> {
    let mut out = vec![SyllabicWord::empty()];
    let mut layer = vec![SyllabicWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &s in alphabet {
                let mut v = w.clone();
                v.0.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn finite_perm(entry: &CatalogEntry) -> Option<&PermGroupModel> {
    match (&entry.model, entry.order) {
        (Model::Perm(m), Some(_)) => Some(m),
        _ => None,
    }
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Check {
    let start = Instant::now();
    let g = ok(Group::new(ok(Presentation::qd(3, 2))?))?;
    let y: BTreeSet<usize> = [0].into();
    let elem = ok(g.element("y x y^2"))?;
    let d_y = [g.identity(), g.generator(0)];
    let coset: BTreeSet<GroupElement> = d_y
        .iter()
        .map(|h| g.multiply(&elem, h))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let lengths: Vec<usize> = coset.iter().map(GroupElement::length).collect();
    let rep = ok(min_coset_rep(&g, &elem, &y, Side::Left))?;
    within(start, Duration::from_secs(1), "the coset example")?;
    ensure!(coset.len() == 2, "coset has {} elements", coset.len());
    ensure!(lengths == [3, 3], "coset lengths {lengths:?}");
    ensure!(rep.non_unique_possible, "non-uniqueness not reported");
    ensure!(
        rep.representative.length() == 3,
        "representative length {}",
        rep.representative.length()
    );
    Ok(format!(
        "coset {{{}}} lengths {lengths:?}, flagged non-unique",
        coset.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
    ))
}

type PairKey = (PairKind, Word, Word, Word, Word, Word);

/// Places `lhs_j` at every offset against `lhs_i` and keeps the placements
/// where the letters agree.
fn brute_force_pairs(r: &RewritingSystem) -> Vec<PairKey> {
    let rules = r.rules();
    let mut out = Vec::new();
    for (i, a) in rules.iter().enumerate() {
        for (j, b) in rules.iter().enumerate() {
            let (la, lb) = (a.lhs.len() as isize, b.lhs.len() as isize);
            for d in 1 - lb..la {
                let agree = (0..lb).all(|t| {
                    let pos = d + t;
                    pos < 0 || pos >= la || a.lhs[pos as usize] == b.lhs[t as usize]
                });
                if !agree {
                    continue;
                }
                if d >= 0 && d + lb <= la {
                    if i == j && d == 0 {
                        continue;
                    }
                    let (d, e) = (d as usize, (d + lb) as usize);
                    out.push((
                        PairKind::Inclusion,
                        a.lhs[..d].to_vec(),
                        b.lhs.clone(),
                        a.lhs[e..].to_vec(),
                        a.rhs.clone(),
                        b.rhs.clone(),
                    ));
                } else if d > 0 && d + lb > la {
                    let d = d as usize;
                    let o = a.lhs.len() - d;
                    out.push((
                        PairKind::Overlap,
                        a.lhs[..d].to_vec(),
                        a.lhs[d..].to_vec(),
                        b.lhs[o..].to_vec(),
                        a.rhs.clone(),
                        b.rhs.clone(),
                    ));
                }
            }
        }
    }
    out
}

/// The eight families of critical pairs of the `QD_{m,k}` system, built
/// from their closed descriptions.
fn expected_families(r: &RewritingSystem, m: u32, k: u32) -> std::result::Result<Vec<Vec<PairKey>>, String> {
    let n = 2 * k;
    let w = |s: &str| ok(r.parse_word(s));
    let y = |a: u32| if a == 1 { "y".to_string() } else { format!("y^{a}") };
    let alt = |first: &str, second: &str, len: u32| {
        (0..len)
            .map(|i| if i % 2 == 0 { first } else { second })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let yk = y(k);
    let ov = |u1: &str, u2: &str, u3: &str, v1: &str, v2: &str| -> std::result::Result<PairKey, String> {
        Ok((PairKind::Overlap, w(u1)?, w(u2)?, w(u3)?, w(v1)?, w(v2)?))
    };
    let mut families = vec![
        vec![ov("x", "x", "x", "", "")?],
        vec![ov("x", "x", &alt(&yk, "x", m - 1), "", &alt(&yk, "x", m))?],
        vec![ov(&alt("x", &yk, m - 1), "x", "x", &alt(&yk, "x", m), "")?],
    ];
    let mut braid = Vec::new();
    for j in (1..m).step_by(2) {
        braid.push(ov(
            &alt("x", &yk, m - j),
            &alt("x", &yk, j),
            &alt(&yk, "x", m - j),
            &alt(&yk, "x", m),
            &alt(&yk, "x", m),
        )?);
    }
    families.push(braid);
    let rhs = |a: u32, b: u32| {
        if (a + b).is_multiple_of(n) {
            String::new()
        } else {
            y((a + b) % n)
        }
    };
    let mut ys = vec![Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let family = match ((a + b) % n == 0, (b + c) % n == 0) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                ys[family].push(ov(&y(a), &y(b), &y(c), &rhs(a, b), &rhs(b, c))?);
            }
        }
    }
    families.extend(ys);
    Ok(families)
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (m, k) in [(3, 2), (5, 2), (3, 3), (5, 3)] {
        let r = ok(qd_system(m, k))?;
        let report = r.confluence_report();
        ensure!(r.confluence_check(), "QD({m},{k}) not confluent");
        ensure!(
            report.is_confluent(),
            "QD({m},{k}): {} unresolved pairs",
            report.unresolved.len()
        );
        for cp in &report.pairs {
            ensure!(r.is_resolved(cp), "QD({m},{k}): unresolved {}", cp.display(&r));
        }
        let mut found: Vec<PairKey> = report
            .pairs
            .iter()
            .map(|c| {
                (
                    c.kind,
                    c.u1.clone(),
                    c.u2.clone(),
                    c.u3.clone(),
                    c.v1.clone(),
                    c.v2.clone(),
                )
            })
            .collect();
        let mut brute = brute_force_pairs(&r);
        found.sort();
        brute.sort();
        ensure!(
            found == brute,
            "QD({m},{k}): {} pairs vs {} by brute force",
            found.len(),
            brute.len()
        );
        let families = expected_families(&r, m, k)?;
        let (m_, q) = (m as usize, 2 * k as usize - 1);
        let counts = [
            1,
            1,
            1,
            (m_ - 1) / 2,
            q,
            q * (q - 1),
            q * (q - 1),
            q * (q - 1) * (q - 1),
        ];
        for (i, (family, &count)) in families.iter().zip(&counts).enumerate() {
            ensure!(
                family.len() == count,
                "QD({m},{k}) family {}: {} pairs, expected {count}",
                i + 1,
                family.len()
            );
        }
        let mut expected: Vec<PairKey> = families.into_iter().flatten().collect();
        expected.sort();
        ensure!(
            found == expected,
            "QD({m},{k}): inventory differs from the eight families"
        );
        summary.push(format!("({m},{k}): {} pairs", found.len()));
    }
    within(start, Duration::from_secs(10), "confluence checks")?;
    Ok(format!("{} all resolved, inventories match", summary.join(", ")))
}

fn check_model<M: GroupModel>(
    entry: &CatalogEntry,
    model: &M,
    radius: Option<usize>,
) -> std::result::Result<(usize, usize), String> {
    let p = &entry.presentation;
    let group = ok(Group::new(p.clone()))?;
    let words = all_words(&syllables(p, 0), 6);
    let mut forward: HashMap<SyllabicWord, M::Element> = HashMap::new();
    let mut backward: HashMap<M::Element, SyllabicWord> = HashMap::new();
    for w in &words {
        let nf = ok(group.normal_form(w))?.normal_form().clone();
        let image = model.evaluate(p, w);
        match forward.get(&nf) {
            Some(e) if *e != image => {
                return Err(format!(
                    "{}: reducer identifies words the model separates ({})",
                    entry.name,
                    w.display(p)
                ))
            }
            _ => {}
        }
        match backward.get(&image) {
            Some(v) if *v != nf => {
                return Err(format!(
                    "{}: model identifies words the reducer separates ({})",
                    entry.name,
                    w.display(p)
                ))
            }
            _ => {}
        }
        forward.insert(nf.clone(), image.clone());
        backward.insert(image, nf);
    }
    let ball = ok(cayley_bfs(model, p, radius))?;
    for e in &ball {
        let len = ok(group.length(&e.word))?;
        ensure!(
            len == e.distance,
            "{}: length {} vs distance {} for {}",
            entry.name,
            len,
            e.distance,
            e.word.display(p)
        );
    }
    Ok((words.len(), ball.len()))
}

fn criterion_3(entries: &[CatalogEntry]) -> Check {
    let start = Instant::now();
    let (mut words, mut elements) = (0, 0);
    for entry in entries {
        let (w, e) = match &entry.model {
            Model::Perm(m) => check_model(entry, m, None)?,
            Model::Affine(m) => check_model(entry, m, Some(6))?,
        };
        if let Some(order) = entry.order {
            ensure!(e == order, "{}: {} elements, expected {order}", entry.name, e);
            let group = ok(Group::new(entry.presentation.clone()))?;
            let n = ok(dyer::oracles::enumerate_group(&group, 10_000))?.len();
            ensure!(
                n == order,
                "{}: enumerate_group found {n}, expected {order}",
                entry.name
            );
        }
        words += w;
        elements += e;
    }
    within(start, Duration::from_secs(300), "oracle equivalence")?;
    Ok(format!(
        "{} groups, all pairs among {words} words agree, {elements} element lengths match",
        entries.len()
    ))
}

fn extra_dyer() -> std::result::Result<Vec<(String, Presentation)>, String> {
    let texts = [
        ("F2", "vertex a order inf\nvertex b order inf\n"),
        ("Z2", "vertex a order inf\nvertex b order inf\nedge a b m 2\n"),
        (
            "RAAG P3",
            "vertex a order inf\nvertex b order inf\nvertex c order inf\nedge a b m 2\nedge b c m 2\n",
        ),
    ];
    texts.iter().map(|(n, t)| Ok((n.to_string(), ok(t.parse())?))).collect()
}

fn cocycle_groups(entries: &[CatalogEntry]) -> std::result::Result<Vec<(String, Presentation)>, String> {
    let mut out: Vec<_> = entries
        .iter()
        .map(|e| (e.name.clone(), e.presentation.clone()))
        .collect();
    out.extend(extra_dyer()?);
    Ok(out)
}

fn criterion_4(entries: &[CatalogEntry]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let groups = cocycle_groups(entries)?;
    let mut total = 0;
    for (name, p) in &groups {
        let group = ok(Group::new(p.clone()))?;
        ensure!(group.is_dyer(), "{name} is not Dyer");
        let alphabet = syllables(p, 3);
        for _ in 0..1000 {
            let (w1, w2) = (random_word(&mut rng, &alphabet, 7), random_word(&mut rng, &alphabet, 7));
            let (g, h) = (ok(group.normal_form(&w1))?, ok(group.normal_form(&w2))?);
            let n_g = ok(cocycle(&group, &w1))?;
            let n_h = ok(cocycle(&group, &w2))?;
            let gh = ok(group.multiply(&g, &h))?;
            let n_gh = ok(cocycle(&group, gh.normal_form()))?;
            ensure!(
                n_gh == n_g.add(&ok(act(&group, &g, &n_h))?),
                "{name}: cocycle law fails for {} and {}",
                w1.display(p),
                w2.display(p)
            );
            ensure!(
                n_g.nonzero_count() == g.length(),
                "{name}: #N(g)={} but length {} for {g}",
                n_g.nonzero_count(),
                g.length()
            );
            ensure!(n_gh.nonzero_count() == gh.length(), "{name}: #N(gh) mismatch for {gh}");
            total += 1;
        }
    }
    Ok(format!("{total} pairs over {} presentations", groups.len()))
}

fn criterion_5(entries: &[CatalogEntry]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let groups = cocycle_groups(entries)?;
    let (mut total, mut lengthened) = (0, 0);
    for (name, p) in &groups {
        let group = ok(Group::new(p.clone()))?;
        let alphabet = syllables(p, 3);
        let (mut cases, mut attempts) = (0, 0);
        while cases < 100 && attempts < 100_000 {
            attempts += 1;
            let w = ok(group.normal_form(&random_word(&mut rng, &alphabet, 7)))?
                .normal_form()
                .clone();
            let s0 = if !w.is_empty() && rng.gen_bool(0.7) {
                let v = w.syllables()[rng.gen_range(0..w.len())].vertex;
                let same: Vec<_> = alphabet.iter().filter(|s| s.vertex == v).collect();
                *same[rng.gen_range(0..same.len())]
            } else {
                alphabet[rng.gen_range(0..alphabet.len())]
            };
            let target = ok(group.multiply(&group.syllable(s0), &ok(group.normal_form(&w))?))?;
            let result = ok(exchange(&group, &w, s0))?;
            if target.length() > w.len() {
                ensure!(
                    result == Exchange::Lengthened,
                    "{name}: expected lengthening for {} · {}",
                    s0.display(p),
                    w.display(p)
                );
                lengthened += 1;
                continue;
            }
            let Exchange::Absorbed { word, .. } = result else {
                return Err(format!("{name}: no exchange for {} · {}", s0.display(p), w.display(p)));
            };
            ensure!(
                ok(group.is_reduced(&word))?,
                "{name}: exchange result {} not reduced",
                word.display(p)
            );
            ensure!(
                ok(group.normal_form(&word))? == target,
                "{name}: exchange result {} wrong element",
                word.display(p)
            );
            ensure!(
                word.len() == w.len() || word.len() + 1 == w.len(),
                "{name}: length {} from {}",
                word.len(),
                w.len()
            );
            cases += 1;
        }
        ensure!(cases == 100, "{name}: only {cases} non-increasing cases found");
        total += cases;
    }
    ensure!(total >= 1000, "only {total} cases");
    Ok(format!(
        "{total} non-increasing cases over {} presentations ({lengthened} lengthening cases also checked)",
        groups.len()
    ))
}

fn subsets(n: usize) -> Vec<BTreeSet<usize>> {
    (0..1usize << n)
        .map(|mask| (0..n).filter(|v| mask >> v & 1 == 1).collect())
        .collect()
}

fn criterion_6(entries: &[CatalogEntry]) -> Check {
    let mut checked = 0;
    for entry in entries.iter().filter(|e| e.order.is_some_and(|n| n <= 48)) {
        let group = ok(Group::new(entry.presentation.clone()))?;
        let elements = ok(dyer::oracles::enumerate_group(&group, 1000))?;
        for y in subsets(entry.presentation.vertex_count()) {
            let d_y: Vec<&GroupElement> = elements.iter().filter(|e| e.support().is_subset(&y)).collect();
            for g in &elements {
                for side in [Side::Left, Side::Right] {
                    let coset: Vec<GroupElement> = d_y
                        .iter()
                        .map(|h| match side {
                            Side::Left => group.multiply(g, h),
                            Side::Right => group.multiply(h, g),
                        })
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    let min = coset.iter().map(GroupElement::length).min().unwrap_or(0);
                    let minimal: Vec<_> = coset.iter().filter(|k| k.length() == min).collect();
                    let rep = ok(min_coset_rep(&group, g, &y, side))?;
                    ensure!(
                        minimal.len() == 1,
                        "{}: {} minimal elements in coset of {g} by {y:?}",
                        entry.name,
                        minimal.len()
                    );
                    ensure!(
                        *minimal[0] == rep.representative,
                        "{}: rep {} is not the minimum {}",
                        entry.name,
                        rep.representative,
                        minimal[0]
                    );
                    ensure!(
                        !rep.non_unique_possible,
                        "{}: Dyer group flagged non-unique",
                        entry.name
                    );
                    for h in &d_y {
                        let k = match side {
                            Side::Left => ok(group.multiply(&rep.representative, h))?,
                            Side::Right => ok(group.multiply(h, &rep.representative))?,
                        };
                        ensure!(
                            k.length() == min + h.length(),
                            "{}: additivity fails for g0={}, h={h}",
                            entry.name,
                            rep.representative
                        );
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} (g, Y, side) cosets: unique minimum, additive lengths"
    ))
}

/// Element set of `g D_Y g⁻¹` in the permutation model, by closure.
fn oracle_set(model: &PermGroupModel, p: &Presentation, sub: &ParabolicSubgroup) -> BTreeSet<Vec<u32>> {
    let g = model.evaluate(p, sub.conjugator().normal_form());
    let g_inv = model.evaluate(p, &sub.conjugator().normal_form().inverse(p));
    let gens: Vec<Vec<u32>> = sub
        .generators()
        .iter()
        .map(|&y| model.compose(&model.compose(&g, &model.generator(y)), &g_inv))
        .collect();
    let mut set = BTreeSet::from([model.identity()]);
    let mut frontier = vec![model.identity()];
    while let Some(e) = frontier.pop() {
        for s in &gens {
            let next = model.compose(&e, s);
            if set.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    set
}

struct Parabolics<'a> {
    entry: &'a CatalogEntry,
    model: &'a PermGroupModel,
    group: Group,
    catalog: ParabolicCatalog,
    sets: Vec<BTreeSet<Vec<u32>>>,
}

fn parabolics(entries: &[CatalogEntry], max_order: usize) -> std::result::Result<Vec<Parabolics<'_>>, String> {
    let mut out = Vec::new();
    for entry in entries.iter().filter(|e| e.order.is_some_and(|n| n <= max_order)) {
        let model = finite_perm(entry).ok_or("finite entry without permutation model")?;
        let group = ok(Group::new(entry.presentation.clone()))?;
        let catalog = ok(ParabolicCatalog::new(&group, 1000))?;
        let sets = catalog
            .subgroups()
            .iter()
            .map(|(s, _)| oracle_set(model, &entry.presentation, s))
            .collect();
        out.push(Parabolics {
            entry,
            model,
            group,
            catalog,
            sets,
        });
    }
    Ok(out)
}

fn criterion_7(all: &[Parabolics<'_>]) -> Check {
    let (mut pairs, mut strict) = (0, 0);
    for c in all {
        let p = &c.entry.presentation;
        let subs = c.catalog.subgroups();
        let distinct: HashSet<_> = c.sets.iter().collect();
        ensure!(
            distinct.len() == subs.len(),
            "{}: oracle sets of listed parabolics are not distinct",
            c.entry.name
        );
        for (i, (p1, _)) in subs.iter().enumerate() {
            for (j, (p2, _)) in subs.iter().enumerate() {
                let r = ok(intersect(&c.group, p1, p2))?;
                let expected: BTreeSet<_> = c.sets[i].intersection(&c.sets[j]).cloned().collect();
                ensure!(
                    oracle_set(c.model, p, &r) == expected,
                    "{}: {} ∩ {} gave {}",
                    c.entry.name,
                    p1.display(&c.group),
                    p2.display(&c.group),
                    r.display(&c.group)
                );
                let below = ok(leq(&c.group, p1, p2))?;
                ensure!(
                    below == c.sets[i].is_subset(&c.sets[j]),
                    "{}: leq disagrees with the oracle",
                    c.entry.name
                );
                if below && !ok(leq(&c.group, p2, p1))? {
                    ensure!(
                        p1.generators().len() < p2.generators().len(),
                        "{}: strict containment without rank drop: {} < {}",
                        c.entry.name,
                        p1.display(&c.group),
                        p2.display(&c.group)
                    );
                    strict += 1;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} pairs over {} groups agree with the oracle; {strict} strict containments drop rank",
        all.len()
    ))
}

fn criterion_8(all: &[Parabolics<'_>]) -> Check {
    let mut checked = 0;
    for c in all.iter().filter(|c| c.entry.order.is_some_and(|n| n <= 24)) {
        let p = &c.entry.presentation;
        let elements = c.catalog.elements();
        let mut inputs: Vec<Vec<GroupElement>> = elements.iter().map(|e| vec![e.clone()]).collect();
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                inputs.push(vec![elements[i].clone(), elements[j].clone()]);
            }
        }
        for a in &inputs {
            let closure = ok(c.catalog.closure(a))?;
            let set = oracle_set(c.model, p, &closure);
            let images: Vec<Vec<u32>> = a.iter().map(|g| c.model.evaluate(p, g.normal_form())).collect();
            ensure!(
                images.iter().all(|g| set.contains(g)),
                "{}: closure misses an input",
                c.entry.name
            );
            for other in &c.sets {
                if images.iter().all(|g| other.contains(g)) {
                    ensure!(
                        set.is_subset(other),
                        "{}: closure {} is not below every parabolic containing A",
                        c.entry.name,
                        closure.display(&c.group)
                    );
                }
            }
            checked += 1;
        }
        // The public entry point must agree with the reused catalog.
        let sample = &inputs[inputs.len() / 2];
        let direct = ok(parabolic_closure(
            &c.group,
            sample,
            ClosureMode::Enumerate { max_elements: 1000 },
        ))?;
        ensure!(
            oracle_set(c.model, p, &direct) == oracle_set(c.model, p, &ok(c.catalog.closure(sample))?),
            "{}: closure modes differ",
            c.entry.name
        );
    }
    Ok(format!(
        "{checked} singleton and pair inputs: closure is the least parabolic containing them"
    ))
}

fn criterion_9() -> Check {
    let mut checked = 0;
    for (m, k) in [(3, 2), (5, 2), (3, 3)] {
        let p = ok(Presentation::qd(m, k))?;
        let nf = |w: Vec<Syllable>| amalgam_normal_form(m, k, &SyllabicWord(w)).map_err(|e| e.to_string());
        let alphabet = syllables(&p, 0);
        let mut small: HashSet<AmalgamElement> = HashSet::from([nf(vec![])?]);
        for &s in &alphabet {
            small.insert(nf(vec![s])?);
        }
        for &s in &alphabet {
            for &t in alphabet.iter().filter(|t| t.vertex != s.vertex) {
                let st = nf(vec![s, t])?;
                ensure!(
                    !small.contains(&st),
                    "QD({m},{k}): {} {} normalizes to a syllable or 1",
                    s.display(&p),
                    t.display(&p)
                );
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} products of syllables on distinct generators, none a syllable or 1"
    ))
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let p = ok(Presentation::qd(3, 2))?;
    let group = ok(Group::new(p.clone()))?;
    let alphabet = syllables(&p, 0);
    let w = |s: &str| ok(SyllabicWord::parse(&p, s));
    let relators = [
        w("x x")?,
        w("y y^3")?,
        w("y^2 y^2")?,
        w("y^3 y")?,
        w("x y^2 x y^2 x y^2")?,
        w("y^2 x y^2 x y^2 x")?,
    ];
    let (mut equal, mut total) = (0, 0);
    for i in 0..1200 {
        let w1 = random_word(&mut rng, &alphabet, 8);
        let w2 = if i % 2 == 0 {
            random_word(&mut rng, &alphabet, 8)
        } else {
            let mut v = w1.0.clone();
            for _ in 0..rng.gen_range(1..=3) {
                let r = &relators[rng.gen_range(0..relators.len())];
                let at = rng.gen_range(0..=v.len());
                v.splice(at..at, r.0.iter().copied());
            }
            SyllabicWord(v)
        };
        let text = |w: &SyllabicWord| w.display(&p).to_string();
        let by_rewriting = ok(word_problem_qd(3, 2, &text(&w1), &text(&w2)))?;
        let by_reducer = ok(group.equal(&w1, &w2))?;
        let by_amalgam = ok(amalgam_normal_form(3, 2, &w1))? == ok(amalgam_normal_form(3, 2, &w2))?;
        ensure!(
            by_rewriting == by_reducer && by_reducer == by_amalgam,
            "disagreement on ({}, {}): rewriting {by_rewriting}, reducer {by_reducer}, amalgam {by_amalgam}",
            text(&w1),
            text(&w2)
        );
        equal += by_reducer as usize;
        total += 1;
    }
    Ok(format!(
        "{total} pairs ({equal} equal) agree across rewriting, reducer and amalgam"
    ))
}

fn main() {
    let entries = catalog().expect("oracle catalog");
    let mut failed = 0;
    let mut report = |n: usize, name: &str, result: Check| match &result {
        Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
        Err(why) => {
            failed += 1;
            println!("criterion {n:>2} FAIL  {name}: {why}");
        }
    };
    report(1, "non-unique minimal coset element in QD(3,2)", criterion_1());
    report(2, "confluence of the QD(m,k) systems", criterion_2());
    report(3, "reducer agrees with permutation oracles", criterion_3(&entries));
    report(4, "cocycle law and length", criterion_4(&entries));
    report(5, "exchange condition", criterion_5(&entries));
    report(6, "unique minimal coset representatives", criterion_6(&entries));
    match parabolics(&entries, 48) {
        Ok(all) => {
            report(7, "parabolic intersections", criterion_7(&all));
            report(8, "parabolic closure", criterion_8(&all));
        }
        Err(why) => {
            report(7, "parabolic intersections", Err(why.clone()));
            report(8, "parabolic closure", Err(why));
        }
    }
    report(9, "QD(m,k) is strongly marked", criterion_9());
    report(10, "cross-engine word problem", criterion_10());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
