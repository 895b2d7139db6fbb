use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::MeasureError;
use crate::event::SampleSpace;
use crate::scalar::{parse_rational, parse_rational_or_decimal, rational_to_f64};
use crate::theory::{DecoherenceFunctional, Entries, HistoriesTheory};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EntryJson {
    pub re: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Value>,
}

/// On-disk form of a histories theory.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SystemFile {
    pub histories: Vec<String>,
    pub mode: Mode,
    pub matrix: Vec<Vec<EntryJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

fn exact_value(v: &Value) -> Result<BigRational, MeasureError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        other => Err(MeasureError::BadSystemFile(format!("exact entries must be rational strings, found {other}"))),
    }
}

fn float_value(v: &Value) -> Result<f64, MeasureError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| MeasureError::BadSystemFile(format!("bad number {n}"))),
        Value::String(s) => Ok(rational_to_f64(&parse_rational_or_decimal(s)?)),
        other => Err(MeasureError::BadSystemFile(format!("bad entry {other}"))),
    }
}

impl SystemFile {
    pub fn into_theory(self) -> Result<HistoriesTheory, MeasureError> {
        let n = self.histories.len();
        let space = SampleSpace::new(self.histories)?;
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return Err(MeasureError::BadDimension { expected: n, found: self.matrix.iter().map(Vec::len).sum() });
        }
        let cells = self.matrix.iter().flatten();
        let functional = match self.mode {
            Mode::Exact => {
                let mut flat = Vec::with_capacity(n * n);
                for e in cells {
                    let re = exact_value(&e.re)?;
                    let im = match &e.im {
                        Some(v) => exact_value(v)?,
                        None => BigRational::zero(),
                    };
                    flat.push(Complex::new(re, im));
                }
                DecoherenceFunctional::exact(n, flat)?
            }
            Mode::Float => {
                let mut flat = Vec::with_capacity(n * n);
                for e in cells {
                    let im = match &e.im {
                        Some(v) => float_value(v)?,
                        None => 0.0,
                    };
                    flat.push(Complex64::new(float_value(&e.re)?, im));
                }
                DecoherenceFunctional::float(n, flat, self.tolerance)?
            }
        };
        HistoriesTheory::new(space, functional)
    }

    pub fn from_theory(theory: &HistoriesTheory) -> Self {
        let n = theory.len();
        let d = theory.functional();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match d.entries() {
                        Entries::Exact(v) => {
                            let z = &v[i * n + j];
                            EntryJson {
                                re: Value::String(z.re.to_string()),
                                im: if z.im.is_zero() { None } else { Some(Value::String(z.im.to_string())) },
                            }
                        }
                        Entries::Float(v) => {
                            let z = v[i * n + j];
                            EntryJson {
                                re: serde_json::json!(z.re),
                                im: if z.im == 0.0 { None } else { Some(serde_json::json!(z.im)) },
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        SystemFile {
            histories: theory.space().labels().to_vec(),
            mode: if d.is_exact() { Mode::Exact } else { Mode::Float },
            matrix,
            tolerance: if d.is_exact() { None } else { Some(d.tolerance()) },
        }
    }
}

pub fn parse_system(text: &str) -> Result<HistoriesTheory, MeasureError> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| MeasureError::BadSystemFile(e.to_string()))?;
    file.into_theory()
}

pub fn to_json(theory: &HistoriesTheory) -> String {
    serde_json::to_string_pretty(&SystemFile::from_theory(theory)).expect("serializable")
}
