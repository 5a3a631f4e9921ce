//! JSON-lines sample files and the decode report.
//!
//! One sample per line: `{"t": "3", "d": "1", "v": "8"}`. Each field is an
//! exact rational written as `"p/q"` or `"p"`; bare JSON integers are also
//! accepted. A `"meta"` field, if present, is ignored.

use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::{DecodeResult, FamilySample};
use crate::Rational;

#[derive(Debug, Error)]
pub enum SampleIoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Deserialize)]
struct RawSample {
    t: Value,
    d: Value,
    v: Value,
    #[serde(default, rename = "meta")]
    _meta: Option<Value>,
}

#[derive(Serialize)]
struct WireSample {
    t: String,
    d: String,
    v: String,
}

fn parse_rational(field: &str, value: &Value) -> Result<Rational, String> {
    match value {
        Value::String(s) => {
            let s = s.trim();
            // BigRational's parser accepts a leading '+'; keep the wire format strict
            if s.is_empty() || s.starts_with('+') {
                return Err(format!("field {field:?}: {s:?} is not an exact rational"));
            }
            Rational::from_str(s).map_err(|e| format!("field {field:?}: {s:?} is not an exact rational ({e})"))
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(format!("field {field:?}: non-integer JSON number {n}; write it as \"p/q\""))
            }
        }
        other => Err(format!("field {field:?}: expected a rational string, got {other}")),
    }
}

pub fn parse_sample_line(line: &str) -> Result<FamilySample, String> {
    let raw: RawSample = serde_json::from_str(line).map_err(|e| e.to_string())?;
    Ok(FamilySample {
        t: parse_rational("t", &raw.t)?,
        d: parse_rational("d", &raw.d)?,
        v: parse_rational("v", &raw.v)?,
    })
}

/// Read a JSON-lines sample file. Blank lines are skipped.
pub fn read_samples<R: BufRead>(reader: R) -> Result<Vec<FamilySample>, SampleIoError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let sample =
            parse_sample_line(&line).map_err(|msg| SampleIoError::Parse { line: i + 1, msg })?;
        out.push(sample);
    }
    Ok(out)
}

pub fn parse_samples(text: &str) -> Result<Vec<FamilySample>, SampleIoError> {
    read_samples(text.as_bytes())
}

pub fn sample_to_line(s: &FamilySample) -> String {
    let wire = WireSample {
        t: s.t.to_string(),
        d: s.d.to_string(),
        v: s.v.to_string(),
    };
    serde_json::to_string(&wire).expect("string fields always serialize")
}

pub fn write_samples<W: Write>(mut w: W, samples: &[FamilySample]) -> std::io::Result<()> {
    for s in samples {
        writeln!(w, "{}", sample_to_line(s))?;
    }
    Ok(())
}

/// Integers above 2^53 are emitted as strings so no JSON reader rounds them.
pub fn json_uint(n: u128) -> Value {
    const SAFE: u128 = 1 << 53;
    if n <= SAFE {
        Value::from(n as u64)
    } else {
        Value::String(n.to_string())
    }
}

/// The decode report. Key order is fixed by field order.
#[derive(Debug, Serialize)]
pub struct DecodeReport {
    pub factors: Vec<u32>,
    pub det_weight: u32,
    pub degree_sum: Value,
    pub dim_product: Value,
    pub samples_used: usize,
    pub dim_sum: Value,
    pub twist_model: &'static str,
}

impl From<&DecodeResult> for DecodeReport {
    fn from(r: &DecodeResult) -> Self {
        Self {
            factors: r.factors.clone(),
            det_weight: r.det_weight,
            degree_sum: json_uint(r.diagnostics.degree_sum as u128),
            dim_product: json_uint(r.diagnostics.dim_product),
            samples_used: r.diagnostics.samples_used,
            dim_sum: json_uint(r.diagnostics.dim_sum),
            twist_model: r.diagnostics.twist_model,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decode::{decode, simulate_family};
    use crate::symrep::RepSpec;
    use crate::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn parses_strings_and_integers() {
        let text = r#"{"t":"3","d":"1","v":"8"}
{"t":"-1/2","d":2,"v":"7/4","meta":{"place":17}}

{"t":" 5 ","d":"4/2","v":"-0"}
"#;
        let s = parse_samples(text).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], FamilySample::new(rat(3), rat(1), rat(8)));
        assert_eq!(s[1], FamilySample::new(ratio(-1, 2), rat(2), ratio(7, 4)));
        assert_eq!(s[2], FamilySample::new(rat(5), rat(2), rat(0)));
    }

    #[test]
    fn rejects_non_rational_inputs() {
        for bad in [
            r#"{"t":"sqrt(2)","d":"1","v":"1"}"#,
            r#"{"t":"1.5","d":"1","v":"1"}"#,
            r#"{"t":1.5,"d":"1","v":"1"}"#,
            r#"{"t":"1/0","d":"1","v":"1"}"#,
            r#"{"t":"+1","d":"1","v":"1"}"#,
            r#"{"t":"1","d":"1"}"#,
            r#"{"t":"1","d":"1","v":null}"#,
            r#"not json"#,
        ] {
            assert!(parse_sample_line(bad).is_err(), "{bad}");
        }
        let err = parse_samples("{\"t\":\"1\",\"d\":\"1\",\"v\":\"1\"}\n{\"t\":\"x\",\"d\":\"1\",\"v\":\"1\"}\n")
            .unwrap_err();
        assert!(matches!(err, SampleIoError::Parse { line: 2, .. }));
    }

    #[test]
    fn wire_format_is_exact() {
        let s = FamilySample::new(ratio(-3, 6), rat(1), rat(12));
        assert_eq!(sample_to_line(&s), r#"{"t":"-1/2","d":"1","v":"12"}"#);
    }

    #[test]
    fn report_shape() {
        let sp = RepSpec::new(vec![2], 1).unwrap();
        let r = decode(&simulate_family(&sp, 20, 4, 1)).unwrap();
        let json = serde_json::to_string(&DecodeReport::from(&r)).unwrap();
        assert_eq!(
            json,
            r#"{"factors":[2],"det_weight":1,"degree_sum":2,"dim_product":3,"samples_used":24,"dim_sum":3,"twist_model":"det_power"}"#
        );
        assert_eq!(json_uint(1 << 53), Value::from(1u64 << 53));
        assert_eq!(json_uint((1 << 53) + 1), Value::String("9007199254740993".into()));
    }

    proptest! {
        #[test]
        fn lines_round_trip(t in (-1000i64..1000, 1i64..50), d in -5i64..40, v in any::<i64>()) {
            let s = FamilySample::new(ratio(t.0, t.1), rat(d), rat(v));
            let back = parse_sample_line(&sample_to_line(&s)).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
