//! Spatial model checking on finite closure spaces.
//!
//! A finite relation `R` on points induces a closure operator
//! `C(A) = A ∪ { x | ∃a ∈ A. (a, x) ∈ R }`. On top of it this crate provides
//! the spatial operators ([`space`]), the SLCS logic ([`formula`]), closure
//! models and their file formats ([`model`]), a global model checker running
//! in time linear in the model per operator ([`checker`]), brute-force
//! reference semantics ([`oracle`]) and an image front-end ([`image`],
//! [`script`]).
//!
//! ```
//! use slcs::{check, parse, ClosureModel};
//!
//! // 0 -> 1 -> 2
//! let model = ClosureModel::from_edges(3, [(0, 1), (1, 2)], [("p", vec![0]), ("q", vec![1])]).unwrap();
//! let out = check(&model, &parse("p U q").unwrap()).unwrap();
//! assert_eq!(out.satisfying.to_indices(), vec![0]);
//! ```

pub mod checker;
pub mod error;
pub mod formula;
pub mod image;
pub mod model;
pub mod oracle;
pub mod pointset;
pub mod script;
pub mod space;

pub use checker::{check, check_all, check_until, check_with, CheckOptions, CheckOutcome, Stats, UnknownAtoms};
pub use error::{Error, Result};
pub use formula::{parse, Formula};
pub use image::{Adjacency, ColorPredicate, RasterImage};
pub use model::{load_model, load_result, save_model, save_result, ClosureModel, ResultSet};
pub use pointset::{PointId, PointSet};
pub use space::SpaceGraph;
