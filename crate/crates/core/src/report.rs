//! Structured outcome of a single congruence or identity check.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{rat_residue, to_rat, Int, Rat};
use crate::error::Result;

pub(crate) mod dec {
    use super::*;

    pub fn ser_int<S: Serializer>(v: &Int, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn de_int<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        Int::from_str(&s).map_err(serde::de::Error::custom)
    }

    pub fn ser_rat<S: Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn de_rat<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        Rat::from_str(&s).map_err(serde::de::Error::custom)
    }

    pub fn ser_opt<S: Serializer>(v: &Option<Int>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn de_opt<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Int>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|x| Int::from_str(&x).map_err(serde::de::Error::custom)).transpose()
    }
}

/// One identity or congruence instance. `modulus == 0` means exact equality.
///
/// `oracle` carries the independent truth value (e.g., primality) for
/// characterizations; `forms` holds each alternative formulation when an
/// identity has several.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub identity_id: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(serialize_with = "dec::ser_rat", deserialize_with = "dec::de_rat")]
    pub lhs: Rat,
    #[serde(serialize_with = "dec::ser_rat", deserialize_with = "dec::de_rat")]
    pub rhs: Rat,
    #[serde(serialize_with = "dec::ser_int", deserialize_with = "dec::de_int")]
    pub modulus: Int,
    #[serde(serialize_with = "dec::ser_opt", deserialize_with = "dec::de_opt")]
    pub lhs_residue: Option<Int>,
    #[serde(serialize_with = "dec::ser_opt", deserialize_with = "dec::de_opt")]
    pub rhs_residue: Option<Int>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<CongruenceReport>,
}

/// Builder for the `inputs` record.
#[derive(Debug, Clone, Default)]
pub struct Inputs(BTreeMap<String, String>);

impl Inputs {
    pub fn new() -> Self {
        Inputs::default()
    }

    pub fn with(mut self, k: &str, v: impl ToString) -> Self {
        self.0.insert(k.to_string(), v.to_string());
        self
    }

    pub fn into_map(self) -> BTreeMap<String, String> {
        self.0
    }
}

impl From<Inputs> for BTreeMap<String, String> {
    fn from(i: Inputs) -> Self {
        i.0
    }
}

impl CongruenceReport {
    pub fn exact(id: impl Into<String>, inputs: Inputs, lhs: Rat, rhs: Rat) -> Self {
        let pass = lhs == rhs;
        CongruenceReport {
            identity_id: id.into(),
            inputs: inputs.into_map(),
            lhs,
            rhs,
            modulus: Int::zero(),
            lhs_residue: None,
            rhs_residue: None,
            pass,
            oracle: None,
            forms: Vec::new(),
        }
    }

    pub fn exact_int(id: impl Into<String>, inputs: Inputs, lhs: Int, rhs: Int) -> Self {
        Self::exact(id, inputs, to_rat(&lhs), to_rat(&rhs))
    }

    /// Congruence of two exact values modulo m; fractions are inverted mod m.
    pub fn modular(id: impl Into<String>, inputs: Inputs, lhs: Rat, rhs: Rat, m: &Int) -> Result<Self> {
        let lr = rat_residue(&lhs, m)?;
        let rr = rat_residue(&rhs, m)?;
        let pass = lr == rr;
        Ok(CongruenceReport {
            identity_id: id.into(),
            inputs: inputs.into_map(),
            lhs,
            rhs,
            modulus: m.clone(),
            lhs_residue: Some(lr),
            rhs_residue: Some(rr),
            pass,
            oracle: None,
            forms: Vec::new(),
        })
    }

    /// Congruence where only residues were computed (values are too large to
    /// materialize). The residues double as lhs and rhs.
    pub fn residues(id: impl Into<String>, inputs: Inputs, lhs: u64, rhs: u64, m: u64) -> Self {
        let l = Int::from(lhs % m);
        let r = Int::from(rhs % m);
        CongruenceReport {
            identity_id: id.into(),
            inputs: inputs.with("evaluation", "modular").into_map(),
            lhs: to_rat(&l),
            rhs: to_rat(&r),
            modulus: Int::from(m),
            pass: l == r,
            lhs_residue: Some(l),
            rhs_residue: Some(r),
            oracle: None,
            forms: Vec::new(),
        }
    }

    /// Conjunction of several exact checks: lhs counts the passing forms, rhs counts all forms.
    pub fn all_of(id: impl Into<String>, inputs: Inputs, forms: Vec<CongruenceReport>) -> Self {
        let ok = forms.iter().filter(|f| f.pass).count() as i64;
        Self::exact(id, inputs, crate::arith::ri(ok), crate::arith::ri(forms.len() as i64))
            .with_forms(forms)
    }

    pub fn with_oracle(mut self, member: bool) -> Self {
        self.oracle = Some(member);
        self
    }

    pub fn with_forms(mut self, forms: Vec<CongruenceReport>) -> Self {
        self.forms = forms;
        self
    }

    pub fn with_input(mut self, k: &str, v: impl ToString) -> Self {
        self.inputs.insert(k.to_string(), v.to_string());
        self
    }

    /// Every listed formulation reaches the same verdict as the primary one.
    pub fn forms_agree(&self) -> bool {
        self.forms.iter().all(|f| f.pass == self.pass)
    }

    /// The congruence verdict matches the oracle, and all forms agree.
    pub fn consistent(&self) -> bool {
        self.oracle.is_none_or(|o| o == self.pass) && self.forms_agree()
    }

    /// Report invariant: pass is exactly equality or equality of residues.
    pub fn well_formed(&self) -> bool {
        if self.modulus.is_zero() {
            self.pass == (self.lhs == self.rhs)
        } else {
            self.lhs_residue.is_some() && self.pass == (self.lhs_residue == self.rhs_residue)
        }
    }

    pub fn is_conjectural(&self) -> bool {
        self.inputs.get("suite").is_some_and(|s| s == "conjectural")
    }

    /// One CSV row, matching `CSV_HEADER`.
    pub fn to_csv_row(&self) -> String {
        let inputs = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let opt = |v: &Option<Int>| v.as_ref().map(|x| x.to_string()).unwrap_or_default();
        let fields = [
            self.identity_id.clone(),
            inputs,
            self.lhs.to_string(),
            self.rhs.to_string(),
            self.modulus.to_string(),
            opt(&self.lhs_residue),
            opt(&self.rhs_residue),
            self.pass.to_string(),
            self.oracle.map(|o| o.to_string()).unwrap_or_default(),
        ];
        fields.iter().map(|f| csv_quote(f)).collect::<Vec<_>>().join(",")
    }

    /// Parse a row written by `to_csv_row`. Sub-forms are not part of the CSV view.
    pub fn from_csv_row(row: &str) -> Option<Self> {
        let f = csv_split(row)?;
        if f.len() != 9 {
            return None;
        }
        let inputs = if f[1].is_empty() {
            BTreeMap::new()
        } else {
            f[1].split(';')
                .map(|kv| kv.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
                .collect::<Option<_>>()?
        };
        let opt = |s: &str| if s.is_empty() { Ok(None) } else { Int::from_str(s).map(Some) };
        Some(CongruenceReport {
            identity_id: f[0].clone(),
            inputs,
            lhs: Rat::from_str(&f[2]).ok()?,
            rhs: Rat::from_str(&f[3]).ok()?,
            modulus: Int::from_str(&f[4]).ok()?,
            lhs_residue: opt(&f[5]).ok()?,
            rhs_residue: opt(&f[6]).ok()?,
            pass: f[7].parse().ok()?,
            oracle: if f[8].is_empty() { None } else { Some(f[8].parse().ok()?) },
            forms: Vec::new(),
        })
    }
}

pub const CSV_HEADER: &str = "identity_id,inputs,lhs,rhs,modulus,lhs_residue,rhs_residue,pass,oracle";

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_split(row: &str) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut chars = row.chars().peekable();
    let mut quoted = false;
    while let Some(c) = chars.next() {
        match (quoted, c) {
            (true, '"') if chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            (true, '"') => quoted = false,
            (false, '"') if cur.is_empty() => quoted = true,
            (false, ',') => out.push(std::mem::take(&mut cur)),
            (_, c) => cur.push(c),
        }
    }
    if quoted {
        return None;
    }
    out.push(cur);
    Some(out)
}
