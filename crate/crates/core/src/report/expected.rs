//! Expected values for every job, genus and quantity, each with where it
//! comes from.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value as Json};

use super::{JobId, Value};
use crate::error::{Error, Result};
use crate::fgab::{FgAbelianGroup, Order};
use crate::symplectic::binomial;

/// Where an expected value comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// A statement quoted from the source being reproduced.
    Quoted(String),
    /// Derived from quoted statements or from rank arithmetic.
    Derived(String),
    /// Supplied by the user through an expectations file.
    Override(String),
}

impl Provenance {
    pub fn to_json(&self) -> Json {
        let (kind, text) = match self {
            Provenance::Quoted(t) => ("quoted", t),
            Provenance::Derived(t) => ("derived", t),
            Provenance::Override(t) => ("override", t),
        };
        json!({ "kind": kind, "text": text })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Quoted(t) => write!(f, "quoted: \"{t}\""),
            Provenance::Derived(t) => write!(f, "derived: {t}"),
            Provenance::Override(t) => write!(f, "override: {t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedValue {
    pub value: Value,
    pub provenance: Provenance,
}

/// Quantity names shared by the jobs and the table.
pub(crate) mod q {
    pub const TWISTS_GENERATE: &str = "twist images generate S2L";
    pub const WEDGE_RANK: &str = "rank of the twist wedges";
    pub const WEDGES_GENERATE: &str = "twist wedges generate ∧2(S2L)";
    pub const TORELLI_S2L: &str = "H1(I_{g,1})_{S2L}";
    pub const H1_ILGB: &str = "H1(IL_{g,1})";
    pub const H0_SL_S2L: &str = "H0(SL(g,Z);S2L)";
    pub const H1_SL_S2L: &str = "H1(SL(g,Z);S2L)";
    pub const H1_WITNESS_ORDER: &str = "order of <e12>⊗X3^2";
    pub const H1_WITNESS_GENERATES: &str = "<e12>⊗X3^2 generates";
    pub const WEDGE2: &str = "(∧2 S2L)_{SL(g,Z)}";
    pub const WEDGE2_WITNESS_ORDER: &str = "order of X3^2∧X2^2";
    pub const WEDGE2_WITNESS_GENERATES: &str = "X3^2∧X2^2 generates";
    pub const E01: &str = "E2_{0,1} = H0(SL(g,Z);S2L)";
    pub const E10: &str = "E2_{1,0} = H1(SL(g,Z))";
    pub const E11: &str = "E2_{1,1} = H1(SL(g,Z);S2L)";
    pub const E02: &str = "E2_{0,2} = (∧2 S2L)_{SL(g,Z)}";
    pub const H1_URSP_PLUS: &str = "H1(urSp+(2g))";
    pub const H2_URSP_PLUS: &str = "H2(urSp+(2g))";
    pub const H2_UR: &str = "H2(ur(2g))";
    pub const H2_M31: &str = "H2(M_{3,1}) (corollary)";
    pub const TORELLI_URSP: &str = "H1(I_{g,1})_{urSp(2g)}";
    pub const URSP_WITNESS_ORDER: &str = "order of (y1∧y2∧y3, y1y2y3)";
    pub const URSP_WITNESS_GENERATES: &str = "(y1∧y2∧y3, y1y2y3) generates";
    pub const TORELLI_SP: &str = "H1(I_{g,1})_{Sp(2g,Z)}";
    pub const H1_LGB: &str = "H1(L_{g,1})";
    pub const SL_ABELIANIZATION: &str = "abelianization of the SL(g,Z) presentation";
    pub const SL_H1_TRIVIAL: &str = "H1(SL(g,Z);Z) from the chain complex";
}

type Key = (JobId, usize, String);

/// Expected entries keyed by job, genus and quantity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpectedTable {
    entries: BTreeMap<Key, ExpectedValue>,
}

fn group(free: usize, torsion: &[i64]) -> Value {
    Value::Group(FgAbelianGroup::from_i64(free, torsion))
}

fn twos(k: usize) -> Vec<i64> {
    vec![2; k]
}

fn quoted(value: Value, quote: &str) -> ExpectedValue {
    ExpectedValue { value, provenance: Provenance::Quoted(quote.into()) }
}

fn derived(value: Value, basis: &str) -> ExpectedValue {
    ExpectedValue { value, provenance: Provenance::Derived(basis.into()) }
}

impl ExpectedTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Entries for every job at every genus `3..=max_genus`.
    pub fn standard(max_genus: usize) -> Self {
        let mut t = Self::empty();
        for g in 3..=max_genus {
            t.add_genus(g);
        }
        t
    }

    fn put(&mut self, job: JobId, g: usize, quantity: &str, e: ExpectedValue) {
        self.entries.insert((job, g, quantity.into()), e);
    }

    fn add_genus(&mut self, g: usize) {
        use JobId::*;
        let r = g * (g + 1) / 2;
        let lstar = binomial(g, 3) + g;
        let three = g == 3;

        let gen_basis = "rank S2L = g(g+1)/2, so ∧2(S2L) has rank C(g(g+1)/2, 2)";
        self.put(LagrangianGeneration, g, q::TWISTS_GENERATE, derived(Value::Flag(true), gen_basis));
        self.put(LagrangianGeneration, g, q::WEDGE_RANK, derived(Value::Count(binomial(r, 2) as u64), gen_basis));
        self.put(LagrangianGeneration, g, q::WEDGES_GENERATE, derived(Value::Flag(true), gen_basis));

        let torelli_s2l = if three {
            quoted(group(4, &twos(3)), "∧3 L* ⊕ L* ⊕ ∧2(L* ⊗ Z2) (g = 3)")
        } else {
            quoted(group(lstar, &[]), "∧3 L* ⊕ L* (g ≥ 4)")
        };
        self.put(TorelliCoinvS2l, g, q::TORELLI_S2L, torelli_s2l.clone());
        self.put(H1Ilgb, g, q::TORELLI_S2L, torelli_s2l);
        let ilgb = if three {
            quoted(group(10, &twos(3)), "H1(IL_{g,1}) ≅ ∧3 L* ⊕ L* ⊕ ∧2(L* ⊗ Z2) ⊕ S2 L (g = 3)")
        } else {
            quoted(group(lstar + r, &[]), "H1(IL_{g,1}) ≅ ∧3 L* ⊕ L* ⊕ S2 L (g ≥ 4)")
        };
        self.put(H1Ilgb, g, q::H1_ILGB, ilgb);
        self.put(H1Ilgb, g, q::WEDGES_GENERATE, derived(Value::Flag(true), gen_basis));

        let h0 = quoted(group(0, &[]), "H0(SL(g,Z);S2 L) ≅ (S2 L)_{SL(g,Z)} = 0 for g ≥ 3");
        let h1 = if three {
            quoted(group(0, &[2]), "H1(SL(3,Z);S2 L) ≅ Z2 and it is generated by <e12> ⊗ X3^2")
        } else {
            quoted(group(0, &[]), "H1(SL(g,Z);S2 L) = 0 for g ≥ 4")
        };
        let w2 = if three {
            quoted(group(0, &[2]), "(∧2(S2 L))_{SL(3,Z)} ≅ Z2 and it is generated by X3^2 ∧ X2^2")
        } else {
            quoted(group(0, &[]), "(∧2(S2 L))_{SL(g,Z)} = 0 for g ≥ 4")
        };
        let perfect = quoted(group(0, &[]), "SL(g,Z) is perfect for every g ≥ 3");
        self.put(H0SlS2l, g, q::H0_SL_S2L, h0.clone());
        self.put(H1SlS2l, g, q::H1_SL_S2L, h1.clone());
        self.put(CoinvWedge2S2l, g, q::WEDGE2, w2.clone());
        if three {
            let order2 = Value::Order(Order::Finite(2.into()));
            let q1 = "H1(SL(3,Z);S2 L) ≅ Z2 and it is generated by <e12> ⊗ X3^2";
            self.put(H1SlS2l, g, q::H1_WITNESS_ORDER, quoted(order2.clone(), q1));
            self.put(H1SlS2l, g, q::H1_WITNESS_GENERATES, quoted(Value::Flag(true), q1));
            let q2 = "(∧2(S2 L))_{SL(3,Z)} ≅ Z2 and it is generated by X3^2 ∧ X2^2";
            self.put(CoinvWedge2S2l, g, q::WEDGE2_WITNESS_ORDER, quoted(order2.clone(), q2));
            self.put(CoinvWedge2S2l, g, q::WEDGE2_WITNESS_GENERATES, quoted(Value::Flag(true), q2));
            let q3 = "H1(I_{g,1})_{ur(2g)} is at most Z2 generated by (y1 ∧ y2 ∧ y3, ȳ1ȳ2ȳ3)";
            self.put(TorelliCoinvUrsp, g, q::URSP_WITNESS_ORDER, quoted(order2, q3));
            self.put(TorelliCoinvUrsp, g, q::URSP_WITNESS_GENERATES, quoted(Value::Flag(true), q3));
        }

        self.put(PropUrspH2, g, q::E01, h0);
        self.put(PropUrspH2, g, q::E10, perfect.clone());
        self.put(PropUrspH2, g, q::E11, h1);
        self.put(PropUrspH2, g, q::E02, w2);
        self.put(PropUrspH2, g, q::H1_URSP_PLUS, quoted(group(0, &[]), "urSp+(2g) is perfect, that is H1(urSp+(2g)) = 0 for g ≥ 3"));
        let h2 = match g {
            3 => quoted(group(0, &twos(4)), "Z2 ⊕ Z2 ⊕ Z2 ⊕ Z2 (g = 3)"),
            4 => quoted(group(0, &twos(2)), "Z2 ⊕ Z2 (g = 4)"),
            _ => quoted(group(0, &[2]), "Z2 (g ≥ 5)"),
        };
        self.put(PropUrspH2, g, q::H2_URSP_PLUS, h2.clone());
        self.put(
            PropUrspH2,
            g,
            q::H2_UR,
            ExpectedValue { value: h2.value, provenance: Provenance::Quoted("H2(ur(2g)) ≅ H2(urSp+(2g)) for g ≥ 3".into()) },
        );
        if three {
            self.put(PropUrspH2, g, q::H2_M31, quoted(group(1, &[2]), "H2(M_{3,1}) ≅ Z ⊕ Z2"));
        }

        let ursp = if three {
            quoted(group(0, &[2]), "H1(I_{g,1})_{ur(2g)} ≅ Z2 (g = 3)")
        } else {
            quoted(group(0, &[]), "H1(I_{g,1})_{ur(2g)} ≅ 0 (g ≥ 4)")
        };
        self.put(TorelliCoinvUrsp, g, q::TORELLI_URSP, ursp.clone());
        self.put(H1Lgb, g, q::TORELLI_URSP, ursp);
        let sp = if three {
            quoted(group(0, &[]), "H1(I_{g,1})_{Sp(6,Z)} = 0")
        } else {
            derived(group(0, &[]), "a quotient of the urSp(2g) coinvariants, which vanish for g ≥ 4")
        };
        self.put(TorelliCoinvSp, g, q::TORELLI_SP, sp);
        let lgb = if three {
            quoted(group(0, &[2, 2]), "H1(L_{g,1}) ≅ Z2 ⊕ Z2 (g = 3)")
        } else {
            quoted(group(0, &[2]), "H1(L_{g,1}) ≅ Z2 (g ≥ 4)")
        };
        self.put(H1Lgb, g, q::H1_LGB, lgb);

        self.put(SlPerfect, g, q::SL_ABELIANIZATION, perfect.clone());
        self.put(SlPerfect, g, q::SL_H1_TRIVIAL, perfect);
    }

    pub fn get(&self, job: JobId, g: usize, quantity: &str) -> Option<&ExpectedValue> {
        self.entries.get(&(job, g, quantity.to_string()))
    }

    pub fn insert(&mut self, job: JobId, g: usize, quantity: &str, e: ExpectedValue) {
        self.put(job, g, quantity, e);
    }

    pub fn remove(&mut self, job: JobId, g: usize, quantity: &str) -> Option<ExpectedValue> {
        self.entries.remove(&(job, g, quantity.to_string()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies overrides from a JSON array of
    /// `{"job", "genus", "quantity", "value", "note"?}` objects; `value`
    /// uses the report's value encoding.
    pub fn apply_overrides(&mut self, text: &str) -> Result<usize> {
        let v: Json = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let items = v.as_array().ok_or_else(|| Error::Parse("expectations must be a JSON array".into()))?;
        for item in items {
            let field = |k: &str| item.get(k).ok_or_else(|| Error::Parse(format!("expectation without `{k}`")));
            let job: JobId = field("job")?.as_str().ok_or_else(|| Error::Parse("`job` must be a string".into()))?.parse()?;
            let g = field("genus")?.as_u64().ok_or_else(|| Error::Parse("`genus` must be a number".into()))? as usize;
            let quantity = field("quantity")?.as_str().ok_or_else(|| Error::Parse("`quantity` must be a string".into()))?;
            let value = Value::from_json(field("value")?)?;
            let note = item.get("note").and_then(Json::as_str).unwrap_or("expectations file");
            self.put(job, g, quantity, ExpectedValue { value, provenance: Provenance::Override(note.into()) });
        }
        Ok(items.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shapes() {
        let t = ExpectedTable::standard(6);
        let get = |j, g, q: &str| t.get(j, g, q).unwrap().value.clone();
        assert_eq!(get(JobId::TorelliCoinvS2l, 5, q::TORELLI_S2L), group(15, &[]));
        assert_eq!(get(JobId::H1Ilgb, 4, q::H1_ILGB), group(18, &[]));
        assert_eq!(get(JobId::H1Ilgb, 5, q::H1_ILGB), group(30, &[]));
        assert_eq!(get(JobId::LagrangianGeneration, 5, q::WEDGE_RANK), Value::Count(105));
        assert_eq!(get(JobId::PropUrspH2, 6, q::H2_URSP_PLUS), group(0, &[2]));
        assert!(t.get(JobId::PropUrspH2, 4, q::H2_M31).is_none());
        assert!(t.get(JobId::SlPerfect, 7, q::SL_ABELIANIZATION).is_none());
    }

    #[test]
    fn overrides() {
        let mut t = ExpectedTable::standard(3);
        let n = t
            .apply_overrides(
                r#"[{"job": "h1-sl-s2l", "genus": 3, "quantity": "H1(SL(g,Z);S2L)",
                     "value": {"group": {"free_rank": 0, "invariant_factors": [4]}}, "note": "what if"}]"#,
            )
            .unwrap();
        assert_eq!(n, 1);
        let e = t.get(JobId::H1SlS2l, 3, q::H1_SL_S2L).unwrap();
        assert_eq!(e.value, group(0, &[4]));
        assert_eq!(e.provenance, Provenance::Override("what if".into()));
        assert!(t.apply_overrides(r#"[{"job": "nope", "genus": 3, "quantity": "x", "value": true}]"#).is_err());
        assert!(t.apply_overrides("{}").is_err());
    }
}
