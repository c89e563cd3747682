//! Exact arithmetic: rationals, Q(√α), Laurent polynomials in `A = √α`,
//! linear algebra and symmetric functions.

mod laurent;
pub mod linalg;
pub mod poly;
mod scalar;
mod surd;
pub mod symfun;

pub use laurent::LaurentA;
pub use scalar::{
    factorial, falling_factorial, int, parse_rational, rat, rat_to_f64, Field, Rational, Ring,
};
pub use surd::{exact_sqrt, Surd};
pub use symfun::{inner_product, m_to_p, p_to_m, Basis, SymFun};
