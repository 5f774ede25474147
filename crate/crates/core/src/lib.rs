//! Decision procedures and search tools for polynomial Diophantine equations.
//!
//! - [`poly`]: canonical multivariate integer polynomials and their parser.
//! - [`kbase`]: the decidability grid over ℕ and ℤ.
//! - [`reduce`]: the ℕ ↔ ℤ reductions.
//! - [`linsolve`]: univariate roots, linear equations, Frobenius descriptors.
//! - [`quadsolve`]: binary quadratic equations, including Pell equations.
//! - [`cubes`]: sums of three cubes.
//! - [`oracle`]: exhaustive box search used as ground truth.

pub mod arith;
pub mod cubes;
pub mod kbase;
pub mod linsolve;
pub mod oracle;
pub mod poly;
pub mod quadsolve;
pub mod reduce;
