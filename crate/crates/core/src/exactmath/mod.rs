//! Exact integer and rational arithmetic: polynomials, matrices, resultants,
//! real-root counting and factorization.

pub mod arith;
pub mod factor;
pub mod matrix;
pub mod poly;
pub mod quadring;
pub mod resultant;
pub mod sturm;

pub use arith::{interpolate, is_prime, is_prime_power, prime_power_split, valuation, BiPoly};
pub use factor::{factor_over_integers, Factorization};
pub use matrix::IntegerMatrix;
pub use poly::IntPolynomial;
pub use quadring::{eval_at_neg_sqrt, eval_at_sqrt, sign_of_surd, QuadRingValue};
pub use resultant::{discriminant, resultant};
pub use sturm::{integer_roots, sturm_count, Bound, SturmSequence};
