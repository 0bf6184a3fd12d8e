//! Word problem, normal forms, reflection cocycle and parabolic subgroups
//! for Dyer groups, with quasi-Dyer support where the theory allows it.
//!
//! ```
//! use dyer::{Group, Presentation};
//!
//! let g = Group::new(Presentation::qd(3, 2).unwrap()).unwrap();
//! let a = g.element("x y^2 x").unwrap();
//! let b = g.element("y^2 x y^2").unwrap();
//! assert_eq!(a, b);
//! assert_eq!(a.length(), 3);
//! ```

pub mod cocycle;
pub mod error;
pub mod oracles;
pub mod parabolic;
pub mod presentation;
pub mod reducer;
pub mod rewriting;
pub mod syllabic;

pub use error::{Error, Result};
pub use presentation::{Order, Presentation, PresentationClass};
pub use reducer::{Group, GroupElement, OrbitBudget, ReductionTrace, TraceStep};
pub use syllabic::{MOperation, MoveKind, SyllabicWord, Syllable};
