//! JSON encoding of multivectors:
//! `{"sig":[p,q],"terms":[{"blade":[i,...],"coeff":"num/den"}]}`.

use std::collections::BTreeSet;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multivector::{Blade, Multivector};
use crate::scalar::Scalar;
use crate::signature::Signature;

#[derive(Serialize, Deserialize)]
struct WireTerm {
    blade: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireMultivector {
    sig: Signature,
    terms: Vec<WireTerm>,
}

impl<S: Scalar> Multivector<S> {
    fn to_wire(&self) -> WireMultivector {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(b, _)| (b.grade(), b.indices()));
        WireMultivector {
            sig: self.signature(),
            terms: terms
                .into_iter()
                .map(|(b, c)| WireTerm { blade: b.indices(), coeff: c.to_coeff_string() })
                .collect(),
        }
    }

    fn from_wire(w: WireMultivector) -> Result<Self> {
        let n = w.sig.dim();
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(w.terms.len());
        for t in w.terms {
            let blade = Blade::from_indices(&t.blade, n)?;
            if !seen.insert(blade) {
                return Err(Error::Encoding(format!("duplicate blade {:?}", t.blade)));
            }
            let c =
                S::parse_coeff(&t.coeff).ok_or_else(|| Error::Encoding(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((blade, c));
        }
        Ok(Multivector::from_terms(w.sig, terms))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_wire()).expect("wire form is plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let w: WireMultivector = serde_json::from_value(v.clone()).map_err(|e| Error::Encoding(e.to_string()))?;
        Self::from_wire(w)
    }
}

impl<S: Scalar> Serialize for Multivector<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Multivector<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = WireMultivector::deserialize(deserializer)?;
        Multivector::from_wire(w).map_err(D::Error::custom)
    }
}
