use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Field order is alphabetical so the JSON has sorted keys.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyEntry {
    pub agreement_digits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub escalated: bool,
    pub final_prec_bits: u32,
    pub id: String,
    pub lhs_mid_decimal: String,
    pub provenance: String,
    pub runtime_ms: u64,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub entries: Vec<VerifyEntry>,
    pub prec_bits: u32,
    pub tool_version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub contains_zero: bool,
    /// `log10` of the largest absolute value in the ball; `None` for an exact zero.
    pub magnitude_log10: Option<f64>,
    pub name: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepPoint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
    pub point: String,
    pub residuals: Vec<Residual>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub points: Vec<SweepPoint>,
    pub prec_bits: u32,
    pub target: String,
    pub tool_version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompleteReport {
    pub agreement_digits: u32,
    pub branch: String,
    pub c0: String,
    pub c1: String,
    pub c2: String,
    pub final_prec_bits: u32,
    pub lhs_text: String,
    pub p: String,
    pub permutation_index: usize,
    pub pipeline_prec_bits: u32,
    pub prec_bits: u32,
    pub ratio4: String,
    pub rhs_text: String,
    pub roots: Vec<String>,
    pub status: String,
    pub tool_version: String,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// `log10` rounded to two places, so reports do not depend on the last float bits.
pub fn rounded_log10(x: f64) -> Option<f64> {
    x.is_finite().then(|| (x * 100.0).round() / 100.0)
}
