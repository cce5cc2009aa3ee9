//! Finite rings from JSON files.
//!
//! ```json
//! { "name": "z4", "elements": ["0","1","2","3"],
//!   "add": [[...], ...], "mul": [[...], ...], "one": 1,
//!   "ideals": { "two": [0, 2] } }
//! ```

use std::collections::BTreeMap;

use relcomm_core::oracle::{FiniteIdeal, FiniteRing};
use relcomm_core::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub add: Vec<Vec<u8>>,
    pub mul: Vec<Vec<u8>>,
    pub one: u8,
    #[serde(default)]
    pub ideals: BTreeMap<String, Vec<u8>>,
}

impl RingSpec {
    pub fn from_ring(ring: &FiniteRing) -> RingSpec {
        let k = ring.size();
        let rows = |t: &[u8]| t.chunks(k).map(<[u8]>::to_vec).collect();
        RingSpec {
            name: ring.name().into(),
            elements: ring.labels().to_vec(),
            add: rows(ring.add_table()),
            mul: rows(ring.mul_table()),
            one: ring.one(),
            ideals: BTreeMap::new(),
        }
    }

    /// Validates the tables and every listed ideal.
    pub fn build(&self) -> Result<(FiniteRing, BTreeMap<String, FiniteIdeal>), Error> {
        let k = self.elements.len();
        if self.add.len() != k || self.mul.len() != k || self.add.iter().chain(&self.mul).any(|r| r.len() != k) {
            return Err(Error::InvalidRing(format!("tables must be {k}x{k}")));
        }
        let ring = FiniteRing::new(&self.name, self.elements.clone(), self.add.concat(), self.mul.concat(), self.one)?;
        let ideals = self
            .ideals
            .iter()
            .map(|(name, members)| {
                FiniteIdeal::new(&ring, members)
                    .map(|i| (name.clone(), i))
                    .map_err(|e| Error::InvalidIdeal(format!("`{name}`: {e}")))
            })
            .collect::<Result<_, _>>()?;
        Ok((ring, ideals))
    }
}
