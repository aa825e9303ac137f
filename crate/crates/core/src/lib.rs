//! Conflict-of-interest games built from graph states.
//!
//! The crate is split along the analysis pipeline:
//!
//! * [`stabilizer`] – graph-state stabiliser algebra over GF(2) and the exact
//!   joint law of single-qubit X/Z measurements on `|G⟩`.
//! * [`game`] – game descriptions (types, involved sets, parities, weights),
//!   the four C5 builtins and the JSON file format.
//! * [`classical`] – exhaustive enumeration of deterministic profiles: Nash
//!   and Pareto sets, symmetry orbits, ratio regimes and a correlated
//!   equilibrium LP.
//! * [`quantum`] – the graph-state advice, its guarantees, and the exact
//!   equilibrium test for following it.
//! * [`amplification`] – wrong-answer penalties and k-fold repetition.
//! * [`verify`] – the regression/acceptance suite shared by tests and CLI.

pub mod amplification;
pub mod classical;
pub mod game;
pub mod gf2;
pub mod quantum;
pub mod rational;
pub mod stabilizer;
pub mod verify;

pub use game::{builtin_game, BuiltinGame, GameError, GameSpec, PayoffParams, QuestionSpec};
pub use rational::Rational;
pub use stabilizer::{Basis, Graph, OutcomeLaw, PauliWord};
