//! Rooted unicellular fatgraphs and their reversal distance to plane trees.

pub mod decomposition;
pub mod fixtures;
pub mod io;
pub mod model;
pub mod oracle;
mod perm;
pub mod planner;
pub mod reversal;

pub use decomposition::{
    Adjacency, Block, BlockId, Component, ComponentId, Decomposition, DecompositionError, Interval,
};
pub use model::{
    validate, CanonicalKey, Direction, Fatgraph, ModelError, Ribbon, RibbonId, Sector, Sign, Twist, ValidationReport,
    VertexId, Violation,
};
pub use planner::{formula_distance, plan, r_distance, Plan, PlanError, Rule, Step};
pub use reversal::{Reversal, ReversalError, ReversalKind};
