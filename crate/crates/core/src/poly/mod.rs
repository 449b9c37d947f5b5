//! Exact polynomial arithmetic over ℚ with Gröbner-basis based ideal and
//! submodule membership.

mod groebner;
mod ideal;
mod linear;
mod monomial;
mod parse;
mod polynomial;
mod submodule;

pub use groebner::ModuleOrder;
pub use ideal::{groebner_basis, normal_form_by, Ideal};
pub use linear::solve_linear;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::{Polynomial, Rational};
pub use submodule::{module_normal_form, Submodule};

pub(crate) use polynomial::rational_text;
