//! Exact SO(3) Witten-Reshetikhin-Turaev invariants of Seifert fibered
//! 3-manifolds `X(p1/q1, ..., pn/qn)` at odd levels `r >= 3`.
//!
//! The closed-form evaluator in [`wrt`] is checked against an independent
//! plumbing state sum in [`statesum`]; both work in exact cyclotomic
//! arithmetic ([`cyclotomic`]).

pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod numtheory;
pub mod seifert;
pub mod statesum;
pub mod wrt;

pub use error::{Error, Result};
