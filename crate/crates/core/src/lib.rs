//! Half-lightlike surfaces in flat `R⁴_q` and their planar normal sections.
//!
//! A surface is given by coordinate expressions (parametric or as a graph).
//! From exact third-order Taylor jets of the immersion the crate builds the
//! frame `{ξ, v, u, N}`, the induced forms `D1, D2, E1`, shape operators and
//! connection forms, and from those the derivatives `γ′, γ″, γ‴` of the
//! normal sections along `ξ` and along the screen vector `v`. Every quantity
//! can also be computed from Richardson finite differences, and the sections
//! can be traced numerically as the curve `M ∩ E(p, w)`, which gives two
//! independent checks of the jet formulas.
//!
//! ```
//! use halflight::fixtures;
//! use halflight::sections::{planarity, LocalGeometry};
//! use halflight::surface::Backend;
//!
//! let cfg = fixtures::example_ex1();
//! let local = LocalGeometry::at(&cfg.surface, [0.3, -0.2], Backend::Jet).unwrap();
//! let (planar, _) = planarity(&local.degenerate_jet().unwrap(), 1e-8);
//! assert!(planar);
//! ```
//!
//! Modules, bottom up: [`ambient`] (metric, wedges), [`exprjet`] (expression
//! parser and jets), [`fd`], [`surface`], [`frame`], [`forms`], [`sections`],
//! [`trace`], [`classify`], [`fixtures`] and the [`cli`] front end.

pub mod ambient;
pub mod classify;
pub mod cli;
pub mod error;
pub mod exprjet;
pub mod fd;
pub mod fixtures;
pub mod forms;
pub mod frame;
pub mod sections;
pub mod surface;
pub mod trace;

pub use error::Error;
