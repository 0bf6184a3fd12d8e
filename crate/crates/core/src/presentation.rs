//! Defining data (Γ, m, f) of Dyer and quasi-Dyer groups.
//!
//! A [`Presentation`] is a simplicial graph whose vertices carry generator
//! orders `f(v) ∈ {2, 3, …} ∪ {∞}` and whose edges carry labels `m(e) ≥ 2`.
//! Vertices are identified by their declaration index everywhere downstream;
//! that order is also the total order used by normal forms.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Order of a generator: `f(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    pub fn is_involution(self) -> bool {
        self == Order::Finite(2)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Most specific family a presentation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresentationClass {
    Coxeter,
    GraphProductCyclic,
    Dyer,
    QuasiDyer,
    Invalid,
}

impl PresentationClass {
    /// Coxeter groups and graph products of cyclic groups are Dyer groups.
    pub fn is_dyer(self) -> bool {
        matches!(
            self,
            PresentationClass::Coxeter | PresentationClass::GraphProductCyclic | PresentationClass::Dyer
        )
    }

    pub fn is_quasi_dyer(self) -> bool {
        self != PresentationClass::Invalid
    }
}

impl fmt::Display for PresentationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationClass::Coxeter => "Coxeter",
            PresentationClass::GraphProductCyclic => "GraphProductCyclic",
            PresentationClass::Dyer => "Dyer",
            PresentationClass::QuasiDyer => "QuasiDyer",
            PresentationClass::Invalid => "Invalid",
        })
    }
}

/// The triple (Γ, m, f).
///
/// Structural rules (declared endpoints, no loops, no duplicate edges,
/// `m ≥ 2`, `f ≥ 2`) are enforced on construction. The quasi-Dyer
/// constraints are not: a presentation violating them still exists and
/// classifies as [`PresentationClass::Invalid`].
#[derive(Debug, Clone, Default)]
pub struct Presentation {
    names: Vec<String>,
    orders: Vec<Order>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), u32>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.orders == other.orders && self.edges == other.edges
    }
}

impl Eq for Presentation {}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric())
}

impl Presentation {
    /// The empty presentation of the trivial group.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str, order: Order) -> Result<usize> {
        if !valid_name(name) {
            return Err(Error::Constraint(format!(
                "vertex name `{name}` must be a nonempty alphanumeric string"
            )));
        }
        if self.index.contains_key(name) {
            return Err(Error::Constraint(format!("vertex `{name}` declared twice")));
        }
        if let Order::Finite(n) = order {
            if n < 2 {
                return Err(Error::Constraint(format!(
                    "order of `{name}` must be >= 2 or inf, got {n}"
                )));
            }
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.orders.push(order);
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_edge(&mut self, u: &str, v: &str, m: u32) -> Result<()> {
        let a = self.vertex_index(u)?;
        let b = self.vertex_index(v)?;
        self.add_edge_by_index(a, b, m)
    }

    pub fn add_edge_by_index(&mut self, u: usize, v: usize, m: u32) -> Result<()> {
        if u >= self.names.len() || v >= self.names.len() {
            return Err(Error::Constraint("edge endpoint out of range".into()));
        }
        if u == v {
            return Err(Error::Constraint(format!(
                "self-loop on `{}` is not allowed",
                self.names[u]
            )));
        }
        if m < 2 {
            return Err(Error::Constraint(format!(
                "edge {} {} has label {m}, labels must be >= 2",
                self.names[u], self.names[v]
            )));
        }
        let key = edge_key(u, v);
        if self.edges.contains_key(&key) {
            return Err(Error::Constraint(format!(
                "duplicate edge {} {}",
                self.names[u], self.names[v]
            )));
        }
        self.edges.insert(key, m);
        Ok(())
    }

    /// `QD_{m,k} = ⟨x, y | x² = y^{2k} = 1, [x, y^k]_m = [y^k, x]_m⟩`.
    pub fn qd(m: u32, k: u32) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) || k < 2 {
            return Err(Error::InvalidParameters(format!(
                "QD_(m,k) needs m odd >= 3 and k >= 2, got m={m}, k={k}"
            )));
        }
        let mut p = Self::new();
        p.add_vertex("x", Order::Finite(2))?;
        p.add_vertex("y", Order::Finite(2 * k))?;
        p.add_edge_by_index(0, 1, m)?;
        Ok(p)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self, v: usize) -> Order {
        self.orders[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// `m({u, v})`, or `None` when `u` and `v` are not adjacent.
    pub fn edge_label(&self, u: usize, v: usize) -> Option<u32> {
        self.edges.get(&edge_key(u, v)).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn dyer_edges(&self) -> bool {
        self.edges()
            .all(|(u, v, m)| m == 2 || (self.orders[u].is_involution() && self.orders[v].is_involution()))
    }

    fn quasi_dyer_edges(&self) -> bool {
        self.edges().all(|(u, v, m)| {
            let (fu, fv) = (self.orders[u], self.orders[v]);
            if m == 2 {
                true
            } else if m % 2 == 0 {
                fu.is_involution() && fv.is_involution()
            } else {
                let even = |o: Order| matches!(o, Order::Finite(n) if n % 2 == 0);
                even(fu) && even(fv) && (fu.is_involution() || fv.is_involution())
            }
        })
    }

    /// First rule in the quasi-Dyer constraints that an edge violates.
    pub fn violation(&self) -> Option<String> {
        for (u, v, m) in self.edges() {
            let (fu, fv) = (self.orders[u], self.orders[v]);
            let (nu, nv) = (&self.names[u], &self.names[v]);
            if m > 2 && m % 2 == 0 && !(fu.is_involution() && fv.is_involution()) {
                return Some(format!("edge {nu} {nv}: even m={m} > 2 requires f({nu}) = f({nv}) = 2"));
            }
            if m > 2 && m % 2 == 1 {
                let even = |o: Order| matches!(o, Order::Finite(n) if n % 2 == 0);
                if !(even(fu) && even(fv)) {
                    return Some(format!(
                        "edge {nu} {nv}: odd m={m} requires f({nu}), f({nv}) finite and even"
                    ));
                }
                if !(fu.is_involution() || fv.is_involution()) {
                    return Some(format!("edge {nu} {nv}: odd m={m} requires f({nu}) = 2 or f({nv}) = 2"));
                }
            }
        }
        None
    }

    /// Whether the presentation satisfies the constraints of `class`.
    pub fn satisfies(&self, class: PresentationClass) -> bool {
        match class {
            PresentationClass::Coxeter => self.orders.iter().all(|o| o.is_involution()),
            PresentationClass::GraphProductCyclic => self.edges.values().all(|&m| m == 2),
            PresentationClass::Dyer => self.dyer_edges(),
            PresentationClass::QuasiDyer => self.quasi_dyer_edges(),
            PresentationClass::Invalid => true,
        }
    }

    pub fn classify(&self) -> PresentationClass {
        [
            PresentationClass::Coxeter,
            PresentationClass::GraphProductCyclic,
            PresentationClass::Dyer,
            PresentationClass::QuasiDyer,
        ]
        .into_iter()
        .find(|&c| self.satisfies(c))
        .unwrap_or(PresentationClass::Invalid)
    }

    /// `(m, k)` when this is a two-generator `QD_{m,k}` presentation that is
    /// not a Dyer presentation.
    pub fn qd_parameters(&self) -> Option<(u32, u32)> {
        if self.vertex_count() != 2 || self.edge_count() != 1 {
            return None;
        }
        let m = self.edge_label(0, 1)?;
        if m < 3 || m % 2 == 0 {
            return None;
        }
        match (self.orders[0], self.orders[1]) {
            (Order::Finite(2), Order::Finite(n)) | (Order::Finite(n), Order::Finite(2)) if n >= 4 && n % 2 == 0 => {
                Some((m, n / 2))
            }
            _ => None,
        }
    }

    /// Full subpresentation (Γ_U, m_U, f_U) on the named vertices, keeping
    /// the declaration order of `self`.
    pub fn induced<S: AsRef<str>>(&self, subset: &[S]) -> Result<Self> {
        let ids = subset
            .iter()
            .map(|s| self.vertex_index(s.as_ref()))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(self.induced_by_index(&ids))
    }

    pub fn induced_by_index(&self, subset: &BTreeSet<usize>) -> Self {
        let mut out = Self::new();
        let mut remap = HashMap::new();
        for &v in subset {
            let id = out
                .add_vertex(&self.names[v], self.orders[v])
                .expect("vertices of a valid presentation");
            remap.insert(v, id);
        }
        for (u, v, m) in self.edges() {
            if let (Some(&a), Some(&b)) = (remap.get(&u), remap.get(&v)) {
                out.add_edge_by_index(a, b, m).expect("edges of a valid presentation");
            }
        }
        out
    }

    /// Parses the line-oriented presentation format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let syntax = |message: String| Error::Syntax { line, message };
            let at_line = |e: Error| match e {
                Error::Constraint(msg) => syntax(format!("constraint violated: {msg}")),
                Error::UnknownVertex(v) => syntax(format!("undeclared vertex `{v}`")),
                other => other,
            };
            match tokens.as_slice() {
                ["vertex", name, "order", n] => {
                    let order = parse_order(n).map_err(syntax)?;
                    p.add_vertex(name, order).map_err(at_line)?;
                }
                ["edge", u, v, "m", n] => {
                    let m = n
                        .parse::<u32>()
                        .map_err(|_| syntax(format!("invalid edge label `{n}`")))?;
                    p.add_edge(u, v, m).map_err(at_line)?;
                }
                _ => {
                    return Err(syntax(format!(
                        "expected `vertex <name> order <n|inf>` or `edge <name> <name> m <n>`, got `{content}`"
                    )))
                }
            }
        }
        Ok(p)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (name, order) in self.names.iter().zip(&self.orders) {
            out.push_str(&format!("vertex {name} order {order}\n"));
        }
        for (u, v, m) in self.edges() {
            out.push_str(&format!("edge {} {} m {m}\n", self.names[u], self.names[v]));
        }
        out
    }
}

fn parse_order(token: &str) -> std::result::Result<Order, String> {
    if token == "inf" {
        return Ok(Order::Infinite);
    }
    match token.parse::<u32>() {
        Ok(n) if n >= 2 => Ok(Order::Finite(n)),
        Ok(n) => Err(format!("constraint violated: order must be >= 2 or inf, got {n}")),
        Err(_) => Err(format!("invalid order `{token}`")),
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
