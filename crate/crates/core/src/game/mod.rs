//! Extensive games: the generic tree representation, semantic games of
//! sentences, and DOT export.

pub mod dot;
pub mod extensive;
pub mod semantic;

pub use dot::export_dot;
pub use extensive::{
    ExtensiveGame, GameBuilder, InfoKey, InfoSet, InfoSetId, Node, NodeContent, NodeId, Player,
    DEFAULT_NODE_CAP,
};
pub use semantic::{build_semantic_game, build_semantic_game_capped, tree_size, SemanticGame};
