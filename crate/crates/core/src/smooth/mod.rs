//! Truncated tower jets, the reciprocal factorial transform, and the C∞
//! liftings to power series and to Weil algebras.

mod jet;
mod lift;
mod rules;

pub use jet::{diff_other, rf, rf_inv, TaylorPoly, TowerJet};
pub use lift::{jet_lift_nary, jet_lift_unary, lift_series, lift_weil, tower_eval};
pub use rules::{elementary_partial, DerivativeRule};
