//! Transformations along a tree decomposition, with budget `Γ + tw + 1`.
//!
//! The sweep fixes a minimum dominating set `D` and walks bags in a
//! leaf-elimination order. At bag `X_j` the current set is rewritten so that
//! every vertex retired before `X_j` agrees with `D`; the root bag is then
//! merged into `D` directly. Two such sweeps (from each endpoint into `D`)
//! joined back to back give the transformation.

mod decomposition;
mod sweep;

pub use decomposition::{
    exact_tree_decomposition, normalize_td, validate_td, NormalizedTd, TdReport, TreeDecomposition,
};
pub use sweep::{
    check_property, final_merge, sweep_to_target, treewidth_transform, tw_step, StepRecord,
    TreewidthOutcome,
};
