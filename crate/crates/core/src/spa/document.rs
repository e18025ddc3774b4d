//! JSON interchange for state property spaces.
//!
//! ```json
//! { "states": ["p"], "properties": ["0", "I"], "xi": [["p", "I"]], "ortho": [["0", "I"]] }
//! ```

use serde::{Deserialize, Serialize};

use super::space::FiniteStatePropertySpace;
use super::SpaError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpsDocument {
    pub states: Vec<String>,
    pub properties: Vec<String>,
    /// `[state, property]` pairs with the property actual in the state.
    pub xi: Vec<[String; 2]>,
    /// `[property, complement]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<Vec<[String; 2]>>,
}

impl SpsDocument {
    pub fn from_json(text: &str) -> Result<Self, SpaError> {
        serde_json::from_str(text).map_err(|e| SpaError::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_space(sps: &FiniteStatePropertySpace, ortho: Option<&[(usize, usize)]>) -> Self {
        let label = |a: usize| sps.properties()[a].clone();
        Self {
            states: sps.states().to_vec(),
            properties: sps.properties().to_vec(),
            xi: sps.pairs().into_iter().map(|(p, a)| [sps.states()[p].clone(), label(a)]).collect(),
            ortho: ortho.map(|pairs| pairs.iter().map(|&(a, b)| [label(a), label(b)]).collect()),
        }
    }

    pub fn to_space(&self) -> Result<FiniteStatePropertySpace, SpaError> {
        let pairs: Vec<(&str, &str)> = self.xi.iter().map(|[p, a]| (p.as_str(), a.as_str())).collect();
        FiniteStatePropertySpace::from_pairs(self.states.clone(), self.properties.clone(), &pairs)
    }

    /// The `ortho` pairs as property indices of [`Self::to_space`].
    pub fn ortho_indices(&self) -> Result<Option<Vec<(usize, usize)>>, SpaError> {
        let Some(pairs) = &self.ortho else {
            return Ok(None);
        };
        let idx = |l: &str| {
            self.properties.iter().position(|p| p == l).ok_or_else(|| SpaError::UnknownLabel(l.to_string()))
        };
        pairs.iter().map(|[a, b]| Ok((idx(a)?, idx(b)?))).collect::<Result<Vec<_>, _>>().map(Some)
    }
}
