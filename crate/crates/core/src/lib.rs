//! Numerics for higher-order convexity.
//!
//! Support polynomials are built by attaching nodes to divided differences.
//! Quadrature rules are synthesized from orthogonal polynomials and then
//! checked against Hermite-Hadamard style inequality chains, which also yield error
//! bounds.

pub mod cli;
pub mod divdiff;
pub mod expr;
pub mod function;
pub mod hadamard;
pub mod integrate;
pub mod numfmt;
pub mod orthopoly;
pub mod poly;
pub mod quadrature;
pub mod support;

pub use divdiff::{DividedDiffTable, Sign, SignCertificate, SignPattern};
pub use expr::{parse_expr, Expr};
pub use function::TestFunction;
pub use orthopoly::WeightFunction;
pub use poly::{Interval, Polynomial};
pub use quadrature::{FixedOperator, QuadratureRule};
pub use support::{AttachMethod, NodeSpec, SupportResult};
