//! Structured command output: lossless exact values, declared tolerances,
//! JSON and flat-CSV rendering.

use num::rational::BigRational;
use serde::Serialize;
use std::collections::BTreeMap;

use unram::hecke::USqrt;

/// An exact rational serialized as a numerator/denominator string pair.
#[derive(Debug, Clone, Serialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl RationalJson {
    pub fn from_rational(r: &BigRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

/// An element a + b*u of Q[u]/(u^2 - p), with the relation recorded.
#[derive(Debug, Clone, Serialize)]
pub struct USqrtJson {
    pub a: RationalJson,
    pub b: RationalJson,
    pub u_squared: u64,
}

impl USqrtJson {
    pub fn from_usqrt(x: &USqrt) -> Self {
        USqrtJson {
            a: RationalJson::from_rational(&x.a),
            b: RationalJson::from_rational(&x.b),
            u_squared: x.p,
        }
    }
}

/// One output value: exact (lossless) or numeric with its tolerance.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OutputValue {
    Exact(RationalJson),
    ExactU(USqrtJson),
    Numeric { value: f64, tolerance: f64 },
    Text { text: String },
    Flag { flag: bool },
}

#[derive(Debug, Clone, Serialize)]
pub struct RouteJson {
    pub route: String,
    pub value: OutputValue,
}

/// The single structured document each subcommand emits.
#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, OutputValue>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub routes: Vec<RouteJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl CommandResult {
    pub fn new(command: &str) -> Self {
        CommandResult {
            command: command.into(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            routes: Vec::new(),
            agreement: None,
            timing_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn output(&mut self, key: &str, value: OutputValue) -> &mut Self {
        self.outputs.insert(key.into(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Flat projection of the JSON document: key,value lines.
    pub fn to_csv(&self) -> String {
        fn value_cell(v: &OutputValue) -> String {
            match v {
                OutputValue::Exact(r) => format!("{}/{}", r.num, r.den),
                OutputValue::ExactU(u) => {
                    format!("{}/{} + {}/{} u (u^2={})", u.a.num, u.a.den, u.b.num, u.b.den, u.u_squared)
                }
                OutputValue::Numeric { value, tolerance } => format!("{value:e} (tol {tolerance:e})"),
                OutputValue::Text { text } => text.clone(),
                OutputValue::Flag { flag } => flag.to_string(),
            }
        }
        let mut lines = vec![format!("command,{}", self.command)];
        for (k, v) in self.inputs.iter() {
            lines.push(format!("input.{k},{}", v.replace(',', ";")));
        }
        for (k, v) in self.outputs.iter() {
            lines.push(format!("output.{k},{}", value_cell(v).replace(',', ";")));
        }
        for r in self.routes.iter() {
            lines.push(format!(
                "route.{},{}",
                r.route,
                value_cell(&r.value).replace(',', ";")
            ));
        }
        if let Some(a) = self.agreement {
            lines.push(format!("agreement,{a}"));
        }
        if let Some(t) = self.timing_ms {
            lines.push(format!("timing_ms,{t}"));
        }
        lines.join("\n") + "\n"
    }
}
