use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::YiQuotient;
use crate::precision::ratio;
use crate::qseries::QPoint;

use super::expr::{cospi, gamma, int, pi, rat, sqrt_of, Expr};
use super::theta_expr::ThetaExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Unverified,
}

/// A claimed equality `lhs = rhs` between a theta expression and a closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub id: String,
    pub lhs: ThetaExpr,
    pub rhs: Expr,
    pub provenance: String,
    pub status: Status,
}

impl Identity {
    pub fn new(id: &str, lhs: ThetaExpr, rhs: Expr, provenance: &str) -> Self {
        Identity { id: id.into(), lhs, rhs, provenance: provenance.into(), status: Status::Unverified }
    }

    pub fn with_rhs(&self, rhs: Expr) -> Identity {
        Identity { rhs, status: Status::Unverified, ..self.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub entries: Vec<Identity>,
}

#[derive(Serialize)]
struct CatalogRow<'a> {
    id: &'a str,
    lhs_text: String,
    rhs_text: String,
    provenance: &'a str,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Result<&Identity> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.into()))
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `[{id, lhs_text, rhs_text, provenance}, ...]`
    pub fn to_json(&self) -> String {
        let rows: Vec<CatalogRow> = self
            .entries
            .iter()
            .map(|e| CatalogRow {
                id: &e.id,
                lhs_text: e.lhs.to_string(),
                rhs_text: e.rhs.to_string(),
                provenance: &e.provenance,
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("catalog rows serialize")
    }
}

fn qp(r: i64) -> ThetaExpr {
    ThetaExpr::phi_at(QPoint::pos(r, 1))
}

fn quotient(num: i64, den: i64) -> ThetaExpr {
    qp(num) / qp(den)
}

fn yih(k: i64, n: i64) -> ThetaExpr {
    ThetaExpr::YiH(YiQuotient::new(ratio(k, 1), ratio(n, 1)))
}

/// `φ(e^-π) = π^(1/4)/Γ(3/4)`
fn phi_e_minus_pi() -> Expr {
    pi().pow(1, 4) / gamma(3, 4)
}

/// `G₉ = ((1 + √3)/√2)^(1/3)`
pub fn g9_expr() -> Expr {
    ((int(1) + sqrt_of(3)) / sqrt_of(2)).cbrt()
}

/// `G₁₆₉ = (√13 + 2 + ((13 + 3√13)/2)^(1/3) (((11 + √13)/2 + 3√3)^(1/3) + ((11 + √13)/2 - 3√3)^(1/3)))/3`
pub fn g169_expr() -> Expr {
    let s13 = sqrt_of(13);
    let half = (int(11) + &s13) / int(2);
    let t = int(3) * sqrt_of(3);
    let inner = (&half + &t).cbrt() + (&half - &t).cbrt();
    let outer = ((int(13) + int(3) * &s13) / int(2)).cbrt();
    (s13 + int(2) + outer * inner) / int(3)
}

/// The four-term closed form for `φ(e^-7π√7)/φ(e^-π√7)` with the given leading factor.
pub fn ln7_rhs_with_factor(factor: Expr) -> Expr {
    let term = |a: i64, b: i64| (cospi(b, 7) / (int(2) * cospi(a, 7).pow(2, 1))).pow(2, 7);
    factor * (int(1) + term(2, 1) + term(3, 2) + term(1, 3))
}

pub fn ln7_rhs() -> Expr {
    ln7_rhs_with_factor(int(7).pow(-3, 4))
}

pub fn ln7_lhs() -> ThetaExpr {
    quotient(343, 7)
}

/// Every entry, in fixed order.
pub fn build_catalog() -> Catalog {
    let s2 = sqrt_of(2);
    let s3 = sqrt_of(3);
    let s5 = sqrt_of(5);
    let s7 = sqrt_of(7);
    let mut v = Vec::new();

    v.push(Identity::new("classical_1", qp(1), phi_e_minus_pi(), "classical value at e^-pi"));

    let classical_sqrt2 = (rat(1, 8) * gamma(1, 8)) / gamma(5, 4) * (gamma(1, 4) / (int(2).pow(1, 4) * pi())).sqrt();
    v.push(Identity::new("classical_sqrt2", qp(2), classical_sqrt2, "classical value at e^-pi*sqrt2"));

    let classical_2 = ((int(2) + &s2).sqrt() / int(2)) * phi_e_minus_pi();
    v.push(Identity::new("classical_2", qp(4), classical_2, "classical value at e^-2pi"));

    let r5 = int(1) / (int(5) * &s5 - int(10)).sqrt();
    v.push(Identity::new("r5", quotient(25, 1), r5, "notebook value, n = 5"));

    let r3 = int(1) / (int(6) * &s3 - int(9)).pow(1, 4);
    v.push(Identity::new("r3", quotient(9, 1), r3, "notebook value, n = 3"));

    let r7 = ((int(13) + &s7).sqrt() + (int(7) + int(3) * &s7).sqrt()) / int(14) * int(28).pow(1, 8);
    let r7_lhs = quotient(49, 1).pow(ratio(2, 1));
    v.push(Identity::new("r7", r7_lhs, r7, "notebook value, n = 7"));

    let r9 = (int(1) + (int(2) * (&s3 + int(1))).cbrt()) / int(3);
    v.push(Identity::new("r9", quotient(81, 1), r9, "notebook value, n = 9"));

    let r45 = (int(3) + &s5 + (&s3 + &s5 + int(60).pow(1, 4)) * (int(2) + &s3).cbrt())
        / (int(3) * (int(10) + int(10) * &s5).sqrt());
    v.push(Identity::new("r45", quotient(2025, 1), r45, "notebook value, n = 45"));

    let g = g169_expr();
    let d = &g - int(1) / &g;
    let a = d.clone().pow(3, 1) + int(7) * &d;
    let cb13 = (g.pow(-3, 1) * (&a + (a.clone().pow(2, 1) + int(52)).sqrt()) / int(2)).pow(-1, 2);
    v.push(Identity::new("cb13", quotient(169, 1), cb13, "value at e^-13pi via G169"));

    let cb27 = (int(1)
        + (&s3 - int(1))
            * (((int(2) * (&s3 + int(1))).cbrt() + int(1)) / ((int(2) * (&s3 - int(1))).cbrt() - int(1))).cbrt())
        / int(3);
    v.push(Identity::new("cb27", quotient(729, 9), cb27, "value at e^-27pi relative to e^-3pi"));

    let f6s7 = (int(6) * &s7).pow(1, 4);
    let r3s7 = (int(3) + &s7).sqrt();
    let cube = (((int(4) + &s7).sqrt() - int(7).pow(1, 4)) / int(2)).pow(3, 1);
    let cb63 = (int(1)
        + cube
            * (&s3 + &s7).sqrt()
            * (int(2) + &s3).pow(1, 6)
            * ((int(2) + &s7 + (int(7) + int(4) * &s7).sqrt()) / int(2)).sqrt()
            * ((&r3s7 + &f6s7) / (&r3s7 - &f6s7)).sqrt())
        / int(3);
    v.push(Identity::new("cb63", quotient(3969, 49), cb63, "value at e^-63pi relative to e^-7pi"));

    let yi_33 = (int(1) - int(2).cbrt() + int(4).cbrt()) / &s3;
    v.push(Identity::new("yi_33", yih(3, 9), yi_33, "Yi quotient h(3,9)"));

    let yi_53 = (&s5 - int(1)).sqrt() / &s2;
    v.push(Identity::new("yi_53", yih(3, 5), yi_53, "Yi quotient h(3,5)"));

    let yi_m6 = (int(1) + &s3 + &s2 * int(3).pow(3, 4)).cbrt()
        / (int(2).pow(11, 24) * int(3).pow(3, 8) * (&s3 - int(1)).pow(1, 6));
    let lhs_m6 = ThetaExpr::phi_at(QPoint::new(-1, ratio(36, 1)).expect("valid nome")) / qp(1);
    v.push(Identity::new("yi_m6", lhs_m6, yi_m6, "value at -e^-6pi"));

    let h = (int(1) + &s5) / int(2);
    let a = &h + h.clone().sqrt();
    let yi_2s5 = int(2) * (int(2) * &a).sqrt() / ((int(3) + &s2 + &s5 + sqrt_of(10)) * (&a - &s5));
    v.push(Identity::new("yi_2s5", yih(5, 4), yi_2s5, "Yi quotient h(5,4)"));

    let t = int(11) * &s3 - int(19);
    let yi_9 = int(2) - &s3 - int(4).cbrt() * (int(5) - int(3) * &s3) / t.clone().cbrt() - (int(2) * t).cbrt();
    v.push(Identity::new("yi_9", yih(9, 9), yi_9, "Yi quotient h(9,9), signs corrected"));

    v.push(Identity::new("ln7", ln7_lhs(), ln7_rhs(), "lost notebook completion at e^-7pi*sqrt7"));

    v.push(Identity::new("g9", ThetaExpr::ClassInv(ratio(9, 1)), g9_expr(), "class invariant G9"));
    v.push(Identity::new("g169", ThetaExpr::ClassInv(ratio(169, 1)), g169_expr(), "class invariant G169"));

    Catalog { entries: v }
}
