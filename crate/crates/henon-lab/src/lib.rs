//! A numerical laboratory for Hénon-like dynamics on bidisks in C^k.
//!
//! The crate builds censuses of periodic points by multi-start Newton
//! solving, verifies saddle equidistribution toward the equilibrium
//! measure against a graph–line intersection oracle, evaluates escape-rate
//! Green functions and their functional equations, follows tangent
//! directions through the Grassmannian bundle to the Oseledec fields,
//! estimates dynamical-degree growth from iterated submanifold masses, and
//! quantifies graph–diagonal transversality. Experiments are driven from a
//! declarative TOML configuration via the `henon-lab` binary.

pub mod error;
pub mod linalg;
pub mod maps;
pub mod rng;

pub use error::{Error, Result};
pub use maps::{BidiskDomain, ComplexPoint, GeneralizedHenon, HenonMap};
