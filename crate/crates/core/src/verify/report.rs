use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write;

/// `f64` fields that may be infinite serialize non-finite values as the
/// strings `"inf"`, `"-inf"` and `"nan"`.
pub mod float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("not a number: {other}"))),
            },
        }
    }
}

/// How a measured value is compared with its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    /// `|value| < threshold`.
    #[serde(rename = "|x|<")]
    AbsLt,
    /// Threshold ignored.
    #[serde(rename = "finite")]
    Finite,
}

impl Relation {
    pub fn holds(self, value: f64, threshold: f64) -> bool {
        match self {
            Relation::Lt => value < threshold,
            Relation::Le => value <= threshold,
            Relation::Gt => value > threshold,
            Relation::Ge => value >= threshold,
            Relation::AbsLt => value.abs() < threshold,
            Relation::Finite => value.is_finite(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::AbsLt => "|x|<",
            Relation::Finite => "finite",
        }
    }
}

/// One checked hypothesis, with the operation and configuration that
/// produced the measured value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Condition {
    pub name: String,
    #[serde(with = "float")]
    pub value: f64,
    pub relation: Relation,
    #[serde(with = "float")]
    pub threshold: f64,
    pub pass: bool,
    /// Informational conditions do not enter the verdict.
    pub required: bool,
    pub op: String,
    pub config: Value,
}

impl Condition {
    pub fn new(name: &str, value: f64, relation: Relation, threshold: f64, op: &str, config: Value) -> Self {
        Self {
            name: name.into(),
            value,
            relation,
            threshold,
            pass: relation.holds(value, threshold),
            required: true,
            op: op.into(),
            config,
        }
    }

    pub fn informational(mut self) -> Self {
        self.required = false;
        self
    }

    /// Overrides the comparison outcome (for verdict-valued checks whose
    /// value is a diagnostic of the verdict).
    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportVerdict {
    Pass,
    Fail,
}

/// Conditions of one theorem-level harness; the verdict is the conjunction
/// of the required conditions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremReport {
    pub theorem: String,
    pub conditions: Vec<Condition>,
    pub verdict: ReportVerdict,
    pub configs: Value,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn new(theorem: &str, conditions: Vec<Condition>, configs: Value) -> Self {
        let mut r = Self {
            theorem: theorem.into(),
            conditions,
            verdict: ReportVerdict::Fail,
            configs,
            notes: Vec::new(),
        };
        r.refresh();
        r
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Recomputes the verdict from the conditions.
    pub fn refresh(&mut self) {
        let ok = self.conditions.iter().filter(|c| c.required).all(|c| c.pass);
        self.verdict = if ok { ReportVerdict::Pass } else { ReportVerdict::Fail };
    }

    pub fn passed(&self) -> bool {
        self.verdict == ReportVerdict::Pass
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// Plain-text table, one row per condition.
    pub fn to_table(&self) -> String {
        let w = self
            .conditions
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(9);
        let mut s = format!("{}\n", self.theorem);
        let _ = writeln!(s, "{:<w$}  {:>14}  {:>6}  {:>14}  {:<4}  {}", "condition", "value", "rel", "threshold", "pass", "op");
        for c in &self.conditions {
            let thr = if c.relation == Relation::Finite {
                "-".to_string()
            } else {
                format!("{:.6e}", c.threshold)
            };
            let _ = writeln!(
                s,
                "{:<w$}  {:>14.6e}  {:>6}  {:>14}  {:<4}  {}{}",
                c.name,
                c.value,
                c.relation.symbol(),
                thr,
                if c.pass { "yes" } else { "no" },
                c.op,
                if c.required { "" } else { " (info)" }
            );
        }
        let _ = writeln!(s, "verdict: {}", if self.passed() { "pass" } else { "fail" });
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
