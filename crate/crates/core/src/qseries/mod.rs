//! Ramanujan's theta functions with certified truncation bounds.
//!
//! Every function takes either a [`QPoint`] or a raw [`Ball`] nome. The
//! product representations are the default; the series are kept as an
//! independent route.

mod product;
mod qpoint;
mod theta;

use crate::precision::Mag;

pub use product::{pochhammer_inf, pochhammer_with_tail};
pub use qpoint::{Nome, QPoint, QValue};
pub use theta::{
    chi, f_neg, f_neg_product, f_neg_series, f_neg_series_terms, f_neg_via, phi, phi_product, phi_series,
    phi_series_terms, phi_via, psi, psi_product, psi_series, psi_series_terms, psi_via, theta_f, Route,
};

/// How a truncated series or product was cut off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesTail {
    pub terms_used: usize,
    /// Proven bound on everything that was left out; already in the radius.
    pub tail_bound: Mag,
}
