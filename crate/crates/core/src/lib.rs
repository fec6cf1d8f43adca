//! Delay-dominant strategies for compositional synthesis of distributed reactive
//! systems.
//!
//! The crate turns LTL formulas into alternating and universal co-Büchi automata,
//! decides delay dominance between two process strategies on a concrete input word
//! with a Büchi game, builds the universal automaton that recognizes delay-dominant
//! strategies of a process, and synthesizes small Moore machines for it by solving a
//! counting safety game.

pub mod alphabet;
pub mod alternating;
pub mod arch;
pub mod dd_aca;
pub mod dd_game;
pub mod dnf;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod graph;
pub mod ltl;
pub mod mh;
pub mod moore;
pub mod pipeline;
pub mod random;
pub mod synthesis;
pub mod translate;
pub mod universal;

pub use alphabet::{Alphabet, LassoWord, Letter};
pub use alternating::{Acceptance, Alternating};
pub use arch::{Architecture, Process};
pub use error::{Error, Result};
pub use ltl::{parse_ltl, Ltl};
pub use moore::Moore;
pub use universal::Universal;
