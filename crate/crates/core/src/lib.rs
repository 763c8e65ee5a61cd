//! Untyped multiplicative proof-nets with daimons.

pub mod net;
pub mod rewrite;
pub mod logic;
pub mod correctness;
pub mod realisability;
pub mod enumkit;
