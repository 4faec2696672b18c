//! Verification jobs, five-term-sequence assembly, the registry of external
//! constants, and JSON/markdown reports.
//!
//! Every report separates what was computed from what was taken from the
//! literature: external constants are listed by name and citation and never
//! recomputed.

mod expected;
mod jobs;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::fgab::{FgAbelianGroup, Order};

pub use expected::{ExpectedTable, ExpectedValue, Provenance};
pub use jobs::{report_prop_ursp_h2, verify, verify_all, VerifyOptions};

/// Default largest genus accepted by [`verify`].
pub const DEFAULT_GENUS_CAP: usize = 6;

/// A group known from the literature, used as an input and never computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalConstant {
    pub name: String,
    pub value: FgAbelianGroup,
    pub citation: String,
}

/// Named external constants available to the jobs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExternalRegistry {
    constants: BTreeMap<String, ExternalConstant>,
}

/// Registry key of `H_2(SL(g, Z))`.
pub fn h2_sl_name(g: usize) -> String {
    format!("H2(SL({g},Z))")
}

pub const H2_SP6: &str = "H2(Sp(6,Z))";
pub const H3_SL3: &str = "H3(SL(3,Z))";
pub const H1_UR: &str = "H1(ur(2g))";
pub const PSI_SPLITTING: &str = "psi-splitting (g=3)";
pub const H2_M31_BOUND: &str = "H2(M_{3,1}) upper bound";

impl ExternalRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The constants the jobs use, for every genus from 3 to 16.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        for g in 3..=16 {
            let value = if g <= 4 { FgAbelianGroup::elementary(2, 2) } else { FgAbelianGroup::cyclic(2) };
            let citation = if g <= 4 {
                "van der Kallen: H2(SL(g,Z)) = Z2 + Z2 for g = 3, 4"
            } else {
                "van der Kallen: H2(SL(g,Z)) = K2(Z) = Z2 for g >= 5"
            };
            r.insert(ExternalConstant { name: h2_sl_name(g), value, citation: citation.into() });
        }
        r.insert(ExternalConstant {
            name: H2_SP6.into(),
            value: FgAbelianGroup::from_i64(1, &[2]),
            citation: "Stein: H2(Sp(6,Z)) = Z + Z2, and the class of X3^2 ∧ X2^2 attains the Z2 summand".into(),
        });
        r.insert(ExternalConstant {
            name: H3_SL3.into(),
            value: FgAbelianGroup::from_i64(0, &[3, 3, 4, 4]),
            citation: "Soulé: H3(SL(3,Z)) = Z3^2 + Z4^2".into(),
        });
        r.insert(ExternalConstant {
            name: H1_UR.into(),
            value: FgAbelianGroup::cyclic(2),
            citation: "H1(ur(2g)) = H1(GL(g,Z)) = Z2 for g >= 3".into(),
        });
        r.insert(ExternalConstant {
            name: PSI_SPLITTING.into(),
            value: FgAbelianGroup::cyclic(2),
            citation: "the homomorphism psi: H1(L_{3,1}) -> H1(I_{3,1})/Q2 splits the coinvariant term".into(),
        });
        r.insert(ExternalConstant {
            name: H2_M31_BOUND.into(),
            value: FgAbelianGroup::from_i64(1, &[2]),
            citation: "Korkmaz-Stipsicz: H2(M_{3,1}) is Z or Z + Z2".into(),
        });
        r
    }

    pub fn insert(&mut self, c: ExternalConstant) {
        self.constants.insert(c.name.clone(), c);
    }

    pub fn get(&self, name: &str) -> Result<&ExternalConstant> {
        self.constants.get(name).ok_or_else(|| Error::MissingExternal(name.into()))
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }
}

/// Why the extension `coinv -> E -> quotient` may be taken to split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitReason {
    /// The quotient is free, so every extension by it splits.
    FreeQuotient,
    /// A cited fact provides the splitting.
    ExternalFact(String),
}

/// `coinv ⊕ quotient`, the middle term of a split exact sequence
/// `coinv -> E -> quotient -> 0` with `coinv` injecting.
///
/// ```
/// use mclag::report::{assemble_five_term, SplitReason};
/// use mclag::FgAbelianGroup;
///
/// let coinv = FgAbelianGroup::from_i64(4, &[2, 2, 2]);
/// let e = assemble_five_term(&coinv, &FgAbelianGroup::free(6), SplitReason::FreeQuotient).unwrap();
/// assert_eq!(e.to_string(), "Z^10 + (Z/2)^3");
///
/// let z2 = FgAbelianGroup::cyclic(2);
/// assert!(assemble_five_term(&z2, &z2, SplitReason::FreeQuotient).is_err());
/// ```
pub fn assemble_five_term(
    coinv: &FgAbelianGroup,
    quotient: &FgAbelianGroup,
    split: SplitReason,
) -> Result<FgAbelianGroup> {
    match split {
        SplitReason::FreeQuotient if !quotient.is_free() => Err(Error::UnjustifiedSplitting),
        SplitReason::ExternalFact(c) if c.trim().is_empty() => Err(Error::UnjustifiedSplitting),
        _ => Ok(coinv.direct_sum(quotient)),
    }
}

/// A compared quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Group(FgAbelianGroup),
    Order(Order),
    Flag(bool),
    Count(u64),
}

impl Value {
    /// Groups compare up to isomorphism, everything else exactly.
    pub fn matches(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Group(a), Value::Group(b)) => a.iso_equal(b),
            _ => self == other,
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            Value::Group(g) => json!({ "group": serde_json::to_value(g).expect("groups serialize") }),
            Value::Order(o) => json!({ "order": o.to_string() }),
            Value::Flag(b) => json!(b),
            Value::Count(n) => json!(n),
        }
    }

    pub fn from_json(v: &Json) -> Result<Value> {
        match v {
            Json::Bool(b) => Ok(Value::Flag(*b)),
            Json::Number(n) => {
                n.as_u64().map(Value::Count).ok_or_else(|| Error::Parse(format!("count `{n}` is not a natural number")))
            }
            Json::Object(m) if m.contains_key("group") => serde_json::from_value(m["group"].clone())
                .map(Value::Group)
                .map_err(|e| Error::Parse(e.to_string())),
            Json::Object(m) if m.contains_key("order") => match m["order"].as_str() {
                Some("infinite") => Ok(Value::Order(Order::Infinite)),
                Some(s) => s
                    .parse()
                    .map(|n| Value::Order(Order::Finite(n)))
                    .map_err(|_| Error::Parse(format!("bad order `{s}`"))),
                None => Err(Error::Parse("order must be a string".into())),
            },
            other => Err(Error::Parse(format!("cannot read a value from {other}"))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Group(g) => write!(f, "{g}"),
            Value::Order(o) => write!(f, "order {o}"),
            Value::Flag(b) => write!(f, "{}", if *b { "yes" } else { "no" }),
            Value::Count(n) => write!(f, "{n}"),
        }
    }
}

/// Verification job identifiers, as used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JobId {
    LagrangianGeneration,
    TorelliCoinvS2l,
    H1Ilgb,
    H0SlS2l,
    H1SlS2l,
    CoinvWedge2S2l,
    PropUrspH2,
    TorelliCoinvUrsp,
    TorelliCoinvSp,
    H1Lgb,
    SlPerfect,
}

impl JobId {
    pub const ALL: [JobId; 11] = [
        JobId::LagrangianGeneration,
        JobId::TorelliCoinvS2l,
        JobId::H1Ilgb,
        JobId::H0SlS2l,
        JobId::H1SlS2l,
        JobId::CoinvWedge2S2l,
        JobId::PropUrspH2,
        JobId::TorelliCoinvUrsp,
        JobId::TorelliCoinvSp,
        JobId::H1Lgb,
        JobId::SlPerfect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JobId::LagrangianGeneration => "lagrangian-generation",
            JobId::TorelliCoinvS2l => "torelli-coinv-s2l",
            JobId::H1Ilgb => "h1-ilgb",
            JobId::H0SlS2l => "h0-sl-s2l",
            JobId::H1SlS2l => "h1-sl-s2l",
            JobId::CoinvWedge2S2l => "coinv-wedge2-s2l",
            JobId::PropUrspH2 => "prop-ursp-h2",
            JobId::TorelliCoinvUrsp => "torelli-coinv-ursp",
            JobId::TorelliCoinvSp => "torelli-coinv-sp",
            JobId::H1Lgb => "h1-lgb",
            JobId::SlPerfect => "sl-perfect",
        }
    }

    /// What the job checks, one line.
    pub fn title(self) -> &'static str {
        match self {
            JobId::LagrangianGeneration => "twist images generate S2L and their wedges generate ∧2(S2L)",
            JobId::TorelliCoinvS2l => "H1(I_{g,1}) coinvariants under S2L",
            JobId::H1Ilgb => "H1(IL_{g,1}) from the five-term sequence",
            JobId::H0SlS2l => "H0(SL(g,Z); S2L)",
            JobId::H1SlS2l => "H1(SL(g,Z); S2L)",
            JobId::CoinvWedge2S2l => "∧2(S2L) coinvariants under SL(g,Z)",
            JobId::PropUrspH2 => "H1 and H2 of urSp+(2g) from the spectral sequence",
            JobId::TorelliCoinvUrsp => "H1(I_{g,1}) coinvariants under urSp(2g)",
            JobId::TorelliCoinvSp => "H1(I_{g,1}) coinvariants under Sp(2g,Z)",
            JobId::H1Lgb => "H1(L_{g,1}) from the five-term sequence",
            JobId::SlPerfect => "SL(g,Z) is perfect",
        }
    }
}

impl FromStr for JobId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JobId::ALL.into_iter().find(|j| j.name() == s).ok_or_else(|| Error::UnknownJob(s.into()))
    }
}

impl fmt::Display for JobId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One computed quantity against its expected entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub quantity: String,
    pub computed: Value,
    /// `None` when the table has no entry, which fails the comparison.
    pub expected: Option<ExpectedValue>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub job: JobId,
    pub genus: usize,
    pub comparisons: Vec<Comparison>,
    pub externals: Vec<ExternalConstant>,
    pub notes: Vec<String>,
    pub pass: bool,
    /// Metadata only; excluded from [`Self::payload_json`].
    pub wall_time: Duration,
}

impl VerificationReport {
    /// The deterministic part of the report.
    pub fn payload_json(&self) -> Json {
        let comparisons: Vec<Json> = self
            .comparisons
            .iter()
            .map(|c| {
                json!({
                    "quantity": c.quantity,
                    "computed": c.computed.to_json(),
                    "expected": c.expected.as_ref().map(|e| e.value.to_json()),
                    "provenance": c.expected.as_ref().map(|e| e.provenance.to_json()),
                    "pass": c.pass,
                })
            })
            .collect();
        let externals: Vec<Json> = self
            .externals
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "value": serde_json::to_value(&e.value).expect("groups serialize"),
                    "display": e.value.to_string(),
                    "citation": e.citation,
                    "external": true,
                })
            })
            .collect();
        json!({
            "job": self.job.name(),
            "genus": self.genus,
            "pass": self.pass,
            "comparisons": comparisons,
            "externals": externals,
            "notes": self.notes,
        })
    }

    pub fn to_json(&self) -> Json {
        let mut v = self.payload_json();
        v["metadata"] = json!({ "wall_time_ms": self.wall_time.as_secs_f64() * 1e3 });
        v
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "## {} (g = {}): {}\n\n{}\n\n",
            self.job,
            self.genus,
            if self.pass { "PASS" } else { "FAIL" },
            self.job.title()
        );
        out.push_str("| quantity | computed | expected | provenance | result |\n|---|---|---|---|---|\n");
        for c in &self.comparisons {
            let (exp, prov) = match &c.expected {
                Some(e) => (e.value.to_string(), e.provenance.to_string()),
                None => ("(missing)".into(), String::new()),
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                c.quantity,
                c.computed,
                exp,
                prov.replace('|', "\\|"),
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
        if !self.externals.is_empty() {
            out.push_str("\nExternal inputs (not computed):\n\n");
            for e in &self.externals {
                out.push_str(&format!("- {} = {} ({})\n", e.name, e.value, e.citation));
            }
        }
        if !self.notes.is_empty() {
            out.push_str("\nNotes:\n\n");
            for n in &self.notes {
                out.push_str(&format!("- {n}\n"));
            }
        }
        out.push_str(&format!("\nWall time: {:.1} ms\n", self.wall_time.as_secs_f64() * 1e3));
        out
    }
}
