//! Linear parsing strategies for synchronous context-free grammars.
//!
//! * [`grammar`]: synchronous rules, grammar files, derivation oracles.
//! * [`strategy`]: boundary counts, fan-out, step exponents and exact optimizers.
//! * [`multigraph`]: permutation multigraphs, width profiles, exact cutwidth.
//! * [`reduction`]: the grid gadget built from a cubic graph, its verifier and sweep.
//! * [`parser`]: a chart recognizer driven by per-rule strategies.
//! * [`cli`]: command implementations returning JSON reports.

pub mod cli;
pub mod grammar;
pub mod lexperm;
pub mod multigraph;
pub mod parser;
pub mod reduction;
pub mod strategy;
