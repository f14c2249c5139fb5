//! Exact arithmetic: rationals, parameter polynomials, phase polynomials and
//! energy polynomials with a symbolic pi factor.

pub mod hpoly;
pub mod linalg;
pub mod param;
pub mod planar;
pub mod rat;
pub mod symbols;
pub mod univariate;

pub use hpoly::HPiPoly;
pub use param::{Monomial, ParamPoly, Point};
pub use planar::{PhaseMono, PlanarPoly};
pub use rat::{fmt_rat, int, parse_rat, rat, to_f64, Rat};
pub use symbols::Symbols;
