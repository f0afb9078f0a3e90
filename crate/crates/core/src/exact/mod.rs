//! Exact scalars and polynomials.

mod chain;
mod poly;
mod rational;

pub use chain::{falling_chain, Chain, ChainStep};
pub use poly::{Assignment, MultiPoly, Var};
pub use rational::{
    binomial, binomial_row, fmt_compact, fmt_exact, half, int, parse_rational, rat,
};
