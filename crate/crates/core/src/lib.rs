//! Model checking for two-player interactive belief: Kripke frames,
//! non-well-founded membership graphs and paraconsistent topological models,
//! plus the small-model campaigns that test claims about them.

pub mod eval;
pub mod family;
pub mod fixtures;
pub mod formula;
pub mod harness;
pub mod holes;
pub mod hyperset;
pub mod kripke;
pub mod lawvere;
pub mod modelfile;
pub mod paratopo;
pub mod set;
pub mod topology;

pub use eval::{EvalError, RelationalSemantics};
pub use formula::{parse, Agent, Dir, Formula, Language, ParseError};
pub use hyperset::{HypersetModel, NwfHeartScope};
pub use kripke::{HeartScope, KripkeModel};
pub use modelfile::{AnyModel, ModelError};
pub use paratopo::ParaTopoModel;
pub use set::StateSet;
pub use topology::ClosedTopology;
