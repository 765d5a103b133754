//! Weil algebras and their C∞ structure.
//!
//! Decides whether a polynomial ideal presents a Weil algebra, computes its
//! multiplication tables, forms tensor products, and evaluates smooth
//! expressions on Weil elements. Evaluating on `a + d` in a Weil algebra
//! yields every partial derivative of the expression up to the algebra's
//! nilpotency orders at once.

pub mod error;
pub mod expr;
pub mod groebner;
pub mod polyring;
pub mod scalar;
pub mod smooth;
pub mod weil;

pub use error::{Error, Result};
pub use expr::{
    eval_expr, normalise, parse_expr, symbolic_partial, Carrier, Constant, Elementary, SmoothExpr,
    Symbolic,
};
pub use groebner::{groebner_basis, GroebnerBasis};
pub use polyring::{ExponentVector, Ideal, MonomialOrder, Polynomial, QPolynomial};
pub use scalar::Scalar;
pub use smooth::{lift_series, lift_weil, rf, rf_inv, TaylorPoly, TowerJet};
pub use weil::{weil_tensor, weil_test, NotWeil, WeilElement, WeilSettings, WeilTest};
