//! Pass/fail records shared by every verifier.

use serde::Serialize;

/// One verification outcome, serialized as
/// `{"check", "labels", "q_order", "status", "first_discrepancy"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub labels: Vec<String>,
    pub q_order: String,
    /// `"pass"` or `"fail"`.
    pub status: String,
    pub first_discrepancy: Option<serde_json::Value>,
}

impl Report {
    pub fn new(
        check: impl Into<String>,
        labels: Vec<String>,
        q_order: impl Into<String>,
        first_discrepancy: Option<serde_json::Value>,
    ) -> Report {
        let status = if first_discrepancy.is_none() { "pass" } else { "fail" };
        Report {
            check: check.into(),
            labels,
            q_order: q_order.into(),
            status: status.into(),
            first_discrepancy,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
