//! Text formats: formulas, structures, Nature strategies, hand-built games,
//! strategy profiles and events.

pub mod event;
pub mod formula;
pub mod game;
pub mod lexer;
pub mod nature;
pub mod profile;
pub mod structure;

pub use event::parse_event;
pub use formula::{format_formula, format_literal, format_term, parse_formula};
pub use game::parse_extensive_game;
pub use nature::parse_nature_strategy;
pub use profile::{parse_profile, Profile};
pub use structure::parse_structure;
