//! Exact scalar arithmetic: rationals, polynomials, rational functions in
//! `(q, t)`, truncated Laurent series in `u = t - 1`, and certified linear
//! algebra over `Q(q)`.

pub mod cyclo;
pub mod ifactor;
pub mod laurent;
pub mod linalg;
pub mod modp;
pub mod modpoly;
pub mod poly1;
pub mod poly2;
pub mod qfunc;
pub mod rat;
pub mod zpoly;

pub use laurent::{laurent_expand, Coeff, LaurentU};
pub use poly1::Poly1;
pub use poly2::{Poly2, RatFunc2};
pub use qfunc::QFunc;
pub use rat::Rat;
