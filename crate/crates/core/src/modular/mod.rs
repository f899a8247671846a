//! Elliptic-modular machinery: the `x`, `q`, `z` correspondence and its
//! transforms, multipliers, singular moduli, class invariants and residual
//! checks for the modular equations.

mod elliptic;
mod equations;
mod jims;
mod triple;
mod yi;

pub use elliptic::{
    class_invariant, class_invariant_from_modulus, hyp2f1_half, hyp2f1_half_series, modulus_complement_from_q,
    modulus_from_q, modulus_from_q_by_sign_change, multiplier, nome, singular_modulus_pair, singular_modulus_sq,
};
pub use equations::{
    degree3_first, degree3_second, degree_relation_residual, verify_degree15, verify_degree3, ModEquation, ModExpr,
    ModulusPair,
};
pub use jims::{jims_identity, jims_sides};
pub use triple::{transform, ModularTriple, Transform};
pub use yi::{yi_h, yi_product_theorem, YiQuotient};
