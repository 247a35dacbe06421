//! CSV and JSON rendering of sweep and network results.

use serde::Serialize;

use crate::network::NetworkSlice;
use crate::sweep::SweepRow;

pub const SWEEP_HEADER: &str =
    "varied_name,varied_value,case,s_delta,s_theta,s2,capacity,capacity_delta_only";

/// `{:.16e}`: 17 significant digits, enough to round-trip an `f64`.
fn float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Failed points carry `error: <message>` in the `case` column and `NaN`
/// in the numeric ones.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        let (case, values) = match &row.result {
            Ok(b) => (
                b.case_label.to_string(),
                [
                    b.s_delta,
                    b.s_theta,
                    b.s2,
                    b.capacity,
                    b.capacity_delta_only,
                ],
            ),
            Err(msg) => (format!("error: {}", csv_field(msg)), [f64::NAN; 5]),
        };
        out.push_str(&format!(
            "{},{},{}",
            row.varied_name,
            float(row.varied_value),
            case
        ));
        for v in values {
            out.push(',');
            out.push_str(&float(v));
        }
        out.push('\n');
    }
    out
}

/// Keeps a message inside one CSV field.
fn csv_field(msg: &str) -> String {
    msg.replace([',', '\n', '\r', '"'], " ")
}

#[derive(Serialize)]
#[serde(untagged)]
enum CaseCell {
    Label(u8),
    Error(String),
}

#[derive(Serialize)]
struct JsonRow {
    varied_name: &'static str,
    varied_value: f64,
    case: CaseCell,
    s_delta: Option<f64>,
    s_theta: Option<f64>,
    s2: Option<f64>,
    capacity: Option<f64>,
    capacity_delta_only: Option<f64>,
}

/// Same fields as the CSV; failed points have `null` values and the error
/// message as `case`.
pub fn sweep_json(rows: &[SweepRow]) -> String {
    let rows: Vec<JsonRow> = rows
        .iter()
        .map(|row| match &row.result {
            Ok(b) => JsonRow {
                varied_name: row.varied_name,
                varied_value: row.varied_value,
                case: CaseCell::Label(b.case_label.label()),
                s_delta: Some(b.s_delta),
                s_theta: Some(b.s_theta),
                s2: Some(b.s2),
                capacity: Some(b.capacity),
                capacity_delta_only: Some(b.capacity_delta_only),
            },
            Err(msg) => JsonRow {
                varied_name: row.varied_name,
                varied_value: row.varied_value,
                case: CaseCell::Error(format!("error: {msg}")),
                s_delta: None,
                s_theta: None,
                s2: None,
                capacity: None,
                capacity_delta_only: None,
            },
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
    s.push('\n');
    s
}

pub const NETWORK_HEADER: &str =
    "t_ib,eta_ib,eta_fb,receiver_count,per_receiver_capacity,total_bits";

pub fn network_csv(slices: &[NetworkSlice]) -> String {
    let mut out = String::from(NETWORK_HEADER);
    out.push('\n');
    for s in slices {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            float(s.t_ib),
            float(s.eta_ib),
            float(s.eta_fb),
            s.receiver_count,
            float(s.per_receiver_capacity),
            float(s.total_bits)
        ));
    }
    out
}

pub fn network_json(slices: &[NetworkSlice]) -> String {
    let mut s = serde_json::to_string_pretty(slices).expect("slices serialize");
    s.push('\n');
    s
}
