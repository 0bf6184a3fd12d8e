//! Ground truth independent of the reducer: permutation models of small
//! groups, Cayley-graph search, and the amalgamated-product normal form of
//! `QD_{m,k}`. Group enumeration lives here too, though it is built on the
//! reducer and only serves as a consistency check.

mod amalgam;
mod enumerate;
mod perm;

pub use amalgam::{amalgam_normal_form, AmalgamElement, Factor};
pub use enumerate::{enumerate_group, infinite_reason};
pub use perm::{
    cayley_bfs, model_order, oracle_equal, oracle_length, AffineModel, BallEntry, GroupModel, PermGroupModel,
};

use crate::error::Result;
use crate::presentation::{Order, Presentation};

#[derive(Debug, Clone)]
pub enum Model {
    Perm(PermGroupModel),
    /// The infinite path graph product.
    Affine(AffineModel),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Presentation,
    pub model: Model,
    /// Known group order, `None` when infinite.
    pub order: Option<usize>,
}

fn vertices(p: &mut Presentation, spec: &[(&str, u32)]) -> Result<()> {
    for &(name, f) in spec {
        p.add_vertex(name, Order::Finite(f))?;
    }
    Ok(())
}

fn dihedral(m: u32) -> Result<CatalogEntry> {
    let mut p = Presentation::new();
    vertices(&mut p, &[("x", 2), ("y", 2)])?;
    p.add_edge("x", "y", m)?;
    let model = PermGroupModel::from_maps(&p, m as usize, &[&|i| (m - i) % m, &|i| (m + 1 - i) % m])?;
    Ok(CatalogEntry {
        name: format!("I2({m})"),
        presentation: p,
        model: Model::Perm(model),
        order: Some(2 * m as usize),
    })
}

fn cyclic(f: u32) -> Result<CatalogEntry> {
    let mut p = Presentation::new();
    vertices(&mut p, &[("v", f)])?;
    let model = PermGroupModel::from_maps(&p, f as usize, &[&|i| (i + 1) % f])?;
    Ok(CatalogEntry {
        name: format!("Z{f}"),
        presentation: p,
        model: Model::Perm(model),
        order: Some(f as usize),
    })
}

/// The oracle catalog: dihedral Coxeter groups `I2(3..6)`, `A1×A1`,
/// cyclic groups `Z2..Z8`, `A3`, `I2(3)×Z4` and the graph product of
/// `Z2, Z3, Z2` on a path.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for m in 3..=6 {
        out.push(dihedral(m)?);
    }

    let mut p = Presentation::new();
    vertices(&mut p, &[("x", 2), ("y", 2)])?;
    p.add_edge("x", "y", 2)?;
    let model = PermGroupModel::from_cycles(&p, 4, &[&[&[0, 1]], &[&[2, 3]]])?;
    out.push(CatalogEntry {
        name: "A1xA1".into(),
        presentation: p,
        model: Model::Perm(model),
        order: Some(4),
    });

    for f in 2..=8 {
        out.push(cyclic(f)?);
    }

    let mut p = Presentation::new();
    vertices(&mut p, &[("x", 2), ("y", 2), ("z", 2)])?;
    p.add_edge("x", "y", 3)?;
    p.add_edge("y", "z", 3)?;
    p.add_edge("x", "z", 2)?;
    let model = PermGroupModel::from_cycles(&p, 4, &[&[&[0, 1]], &[&[1, 2]], &[&[2, 3]]])?;
    out.push(CatalogEntry {
        name: "A3".into(),
        presentation: p,
        model: Model::Perm(model),
        order: Some(24),
    });

    let mut p = Presentation::new();
    vertices(&mut p, &[("x", 2), ("y", 2), ("z", 4)])?;
    p.add_edge("x", "y", 3)?;
    p.add_edge("x", "z", 2)?;
    p.add_edge("y", "z", 2)?;
    let model = PermGroupModel::from_cycles(&p, 7, &[&[&[1, 2]], &[&[0, 1]], &[&[3, 4, 5, 6]]])?;
    out.push(CatalogEntry {
        name: "I2(3)xZ4".into(),
        presentation: p,
        model: Model::Perm(model),
        order: Some(24),
    });

    let mut p = Presentation::new();
    vertices(&mut p, &[("a", 2), ("b", 3), ("c", 2)])?;
    p.add_edge("a", "b", 2)?;
    p.add_edge("b", "c", 2)?;
    let model = AffineModel::path_232(&p)?;
    out.push(CatalogEntry {
        name: "path(2,3,2)".into(),
        presentation: p,
        model: Model::Affine(model),
        order: None,
    });

    Ok(out)
}
