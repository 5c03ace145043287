//! Coefficient rings: truncated polynomials, the localized ring of
//! `y`-rational functions, and formal combinations of group elements.

pub mod combo;
pub mod parse;
pub mod poly;
pub mod yrat;

pub use combo::{Coefficient, FCombo};
pub use parse::{parse_poly, parse_yrational};
pub use poly::{ominus_series, pi_operator, supersym_check, Family, Monomial, TruncPoly, Var};
pub use yrat::YRational;
