//! Output records and number formatting.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

/// Significant digits for numbers in JSON output. Enough for any f64 to
/// read back to the same bits.
pub const JSON_DIGITS: usize = 17;
/// Significant digits for numbers in CSV output.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    PointDistance,
    LineDistance,
    LevelSet,
    Horizontal,
    Smile,
    OracleCompare,
}

impl RecordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordKind::PointDistance => "point-distance",
            RecordKind::LineDistance => "line-distance",
            RecordKind::LevelSet => "level-set",
            RecordKind::Horizontal => "horizontal",
            RecordKind::Smile => "smile",
            RecordKind::OracleCompare => "oracle-compare",
        }
    }
}

/// A scalar in the inputs or outputs of a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Num(#[serde(serialize_with = "ser_num")] f64),
    Text(String),
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl Field {
    pub fn to_csv(&self) -> String {
        match self {
            Field::Num(x) => format_sig(*x, CSV_DIGITS),
            Field::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

impl From<&heston_geom::GeomError> for ErrorInfo {
    fn from(e: &heston_geom::GeomError) -> Self {
        ErrorInfo {
            kind: e.name().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_num")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        *self == Diagnostics::default()
    }

    pub fn from_report(report: &heston_geom::SolveReport) -> Self {
        Diagnostics {
            iterations: Some(report.iterations),
            residual: Some(report.residual),
            method: Some(report.method.as_str().to_string()),
            ..Default::default()
        }
    }

    pub fn failed(e: &heston_geom::GeomError) -> Self {
        Diagnostics {
            error: Some(e.into()),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub kind: RecordKind,
    pub inputs: IndexMap<String, Field>,
    pub outputs: IndexMap<String, Field>,
    #[serde(default, skip_serializing_if = "Diagnostics::is_empty")]
    pub diagnostics: Diagnostics,
}

impl OutputRecord {
    pub fn new(kind: RecordKind) -> Self {
        OutputRecord {
            kind,
            inputs: IndexMap::new(),
            outputs: IndexMap::new(),
            diagnostics: Diagnostics::default(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn with_diagnostics(mut self, d: Diagnostics) -> Self {
        self.diagnostics = d;
        self
    }
}

/// `printf("%.{digits}g")`: shortest of fixed or exponent notation, trailing
/// zeros removed. Non-finite values have no JSON spelling and come out as
/// `null`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mant), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn ser_num<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format_sig(*x, JSON_DIGITS)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

fn ser_opt_num<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_num(x, s),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(2.0, 17), "2");
        assert_eq!(format_sig(-0.5, 17), "-0.5");
        assert_eq!(format_sig(std::f64::consts::FRAC_PI_2, 17), "1.5707963267948966");
        assert_eq!(format_sig(0.1, 17), "0.10000000000000001");
        assert_eq!(format_sig(1.5e-7, 12), "1.5e-7");
        assert_eq!(format_sig(123456.0, 3), "1.23e5");
        assert_eq!(format_sig(f64::NAN, 12), "null");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::E * 1e300, 5e-324, -7.25e-9, 0.965_128_520_259_891_2] {
            assert_eq!(format_sig(x, JSON_DIGITS).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn record_round_trips_through_json() {
        let r = OutputRecord::new(RecordKind::LineDistance)
            .input("beta", 0.1)
            .output("value", 1.0 / 3.0)
            .output("branch", "vertical-kp")
            .with_diagnostics(Diagnostics {
                iterations: Some(12),
                residual: Some(1e-17),
                ..Default::default()
            });
        let text = serde_json::to_string(&r).unwrap();
        let back: OutputRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
