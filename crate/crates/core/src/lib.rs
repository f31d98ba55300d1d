//! Belief revision by relaxation over bounded satisfaction systems.

pub mod agm;
pub mod dl;
pub mod error;
pub mod fol;
pub mod horn;
pub mod io;
pub mod model_set;
pub mod pl;
pub mod relax;
pub mod revision;
pub mod satsys;

pub use error::{Error, Result};
pub use model_set::{min_models, ModelRelation, ModelSet};
pub use relax::{Relaxation, TrivialRelaxation};
pub use revision::{revise, Mode, RelaxationVector, RevisionConfig, RevisionResult};
pub use satsys::{KnowledgeBase, LogicTag, SatisfactionSystem, Semantics};
