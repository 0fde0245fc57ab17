//! Floating-point arithmetic for complex polynomials and rational maps on
//! the Riemann sphere: roots with multiplicities, reduced quotients, and
//! divisors of functions and one-forms.

mod divisor;
mod map;
mod poly;
mod roots;
mod sphere;

pub use divisor::Divisor;
pub use map::RationalMap;
pub use poly::{Polynomial, MAX_COEFF, MAX_DEGREE};
pub use roots::{eps_cluster, roots, RootMult, EPS_ROOT};
pub use sphere::{SpherePoint, EPS_MATCH};
