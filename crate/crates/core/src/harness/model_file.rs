//! TOML model files.
//!
//! ```toml
//! elements = ["0", "a", "b", "1"]
//! order = [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]]
//! bimodule = [["0", "0"], ["0", "a"]]   # optional, every related pair
//!
//! [valuation]
//! p = ["a", "1"]
//! ```
//!
//! The order is closed reflexively and transitively on load; exports write
//! the cover relation.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::filters::{filter_violation, Filter};
use crate::lattice::{complete_lattice, FinLattice, FinPoset, LatticeError};
use crate::modal::{check_stable_bimodule, ModalError};
use crate::semantics::{StableModel, Valuation};

use super::HarnessError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub order: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::Invalid(msg.into())
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("model files always serialize")
    }

    /// The frame described by `elements` and `order`, validated as a
    /// distributive lattice.
    pub fn frame(&self) -> Result<FinLattice, HarnessError> {
        let mut index = HashMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(invalid(format!("element '{name}' listed twice")));
            }
        }
        let lookup = |name: &str, field: &str| {
            index.get(name).copied().ok_or_else(|| invalid(format!("unknown element '{name}' in {field}")))
        };
        let pairs = self
            .order
            .iter()
            .map(|[a, b]| Ok((lookup(a, "order")?, lookup(b, "order")?)))
            .collect::<Result<Vec<_>, HarnessError>>()?;
        let names = self.elements.clone();
        let n = |i: usize| names[i].clone();
        let poset = FinPoset::from_generators(names.len(), &pairs).map_err(|e| match e {
            LatticeError::Antisymmetry { i, j } => {
                invalid(format!("order is not antisymmetric: {} and {} are below each other", n(i), n(j)))
            }
            other => invalid(format!("order is invalid: {other}")),
        })?;
        let lattice = complete_lattice(poset.with_names(names.clone())).map_err(|e| match e {
            LatticeError::NotALattice { a, b } => {
                invalid(format!("order is not a lattice: {} and {} lack a meet or a join", n(a), n(b)))
            }
            LatticeError::Empty => invalid("frame has no elements"),
            other => invalid(format!("order is invalid: {other}")),
        })?;
        if let Some([a, x, y]) = lattice.distributivity_witness() {
            return Err(invalid(format!("frame not distributive: witness ({},{},{})", n(a), n(x), n(y))));
        }
        Ok(lattice)
    }

    pub fn into_model(&self) -> Result<StableModel, HarnessError> {
        let frame = Arc::new(self.frame()?);
        let lookup = |name: &str, field: &str| {
            frame.poset().index_of(name).ok_or_else(|| invalid(format!("unknown element '{name}' in {field}")))
        };
        let mut valuation = Valuation::new();
        for (atom, names) in &self.valuation {
            let field = format!("valuation '{atom}'");
            let members = names.iter().map(|s| lookup(s, &field)).collect::<Result<ElemSet, _>>()?;
            if let Some(v) = filter_violation(&frame, members) {
                return Err(invalid(format!("valuation '{atom}' is not a filter: {}", v.describe(&frame))));
            }
            valuation.insert(atom.clone(), Filter::new(frame.clone(), members)?);
        }
        let bimodule = match &self.bimodule {
            None => None,
            Some(pairs) => {
                let mut rows = vec![ElemSet::EMPTY; frame.len()];
                for [w, v] in pairs {
                    rows[lookup(w, "bimodule")?].insert(lookup(v, "bimodule")?);
                }
                match check_stable_bimodule(frame.clone(), rows) {
                    Ok(b) => Some(b),
                    Err(ModalError::NotStable { message, .. }) => {
                        return Err(invalid(format!("bimodule is not stable: {message}")))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        };
        Ok(StableModel::new(frame, valuation, bimodule)?)
    }

    /// Cover relation, valuation members and every related pair, by name.
    pub fn from_model(m: &StableModel) -> ModelFile {
        let frame = m.frame();
        let name = |i: usize| frame.name(i).to_string();
        ModelFile {
            elements: frame.names().to_vec(),
            order: frame.poset().covers().into_iter().map(|(a, b)| [name(a), name(b)]).collect(),
            bimodule: m.bimodule().map(|b| b.pairs().into_iter().map(|(w, v)| [name(w), name(v)]).collect()),
            valuation: m
                .valuation()
                .iter()
                .map(|(atom, f)| (atom.clone(), f.members().iter().map(name).collect()))
                .collect(),
        }
    }
}

pub fn parse_model(text: &str) -> Result<StableModel, HarnessError> {
    ModelFile::parse(text)?.into_model()
}

pub fn load_model(path: &Path) -> Result<StableModel, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_model(&text)
}

pub fn model_to_toml(m: &StableModel) -> String {
    ModelFile::from_model(m).to_toml()
}

/// World index by name.
pub fn world_index(m: &StableModel, name: &str) -> Result<usize, HarnessError> {
    m.frame().poset().index_of(name).ok_or_else(|| HarnessError::UnknownWorld(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::named::*;
    use crate::modal::StableBimodule;

    pub(crate) const D4_FILE: &str = r#"
elements = ["0", "a", "b", "1"]
order = [["0", "a"], ["0", "b"], ["a", "1"], ["b", "1"]]

[valuation]
p = ["a", "1"]
q = ["b", "1"]
"#;

    #[test]
    fn loads_d4() {
        let m = parse_model(D4_FILE).unwrap();
        assert_eq!(m.frame().len(), 4);
        assert_eq!(*m.frame().as_ref(), d4());
        assert_eq!(m.valuation()["p"].members(), d4().up(1));
    }

    #[test]
    fn valuation_must_be_a_filter() {
        let text = D4_FILE.replace(r#"p = ["a", "1"]"#, r#"p = ["a", "b", "1"]"#);
        let err = parse_model(&text).unwrap_err();
        assert_eq!(err.to_string(), "valuation 'p' is not a filter: missing a∧b");
    }

    #[test]
    fn pentagon_is_rejected() {
        let text = r#"
elements = ["0", "a", "b", "c", "1"]
order = [["0", "a"], ["a", "c"], ["c", "1"], ["0", "b"], ["b", "1"]]
"#;
        assert_eq!(parse_model(text).unwrap_err().to_string(), "frame not distributive: witness (c,a,b)");
    }

    #[test]
    fn unknown_fields_and_names_are_rejected() {
        assert!(matches!(ModelFile::parse("elements = [\"0\"]\nextra = 1\n"), Err(HarnessError::Parse(_))));
        let text = D4_FILE.replace(r#"q = ["b", "1"]"#, r#"q = ["z"]"#);
        assert_eq!(parse_model(&text).unwrap_err().to_string(), "unknown element 'z' in valuation 'q'");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = ModelFile::parse("elements = [\"0\"\norder = 3\n").unwrap_err().to_string();
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn export_then_load_is_identity() {
        let m = parse_model(D4_FILE).unwrap();
        let frame = m.frame().clone();
        let with_b = StableModel::new(frame.clone(), m.valuation().clone(), Some(StableBimodule::identity(frame)))
            .unwrap();
        for model in [m, with_b] {
            let text = model_to_toml(&model);
            let back = parse_model(&text).unwrap();
            assert_eq!(back.frame(), model.frame());
            assert_eq!(back.valuation(), model.valuation());
            assert_eq!(back.bimodule(), model.bimodule());
            assert_eq!(model_to_toml(&back), text);
        }
    }

    #[test]
    fn unstable_bimodule_is_rejected() {
        let text = format!("{}\n", D4_FILE.replace("\n[valuation]", "bimodule = [[\"1\", \"0\"]]\n\n[valuation]"));
        let err = parse_model(&text).unwrap_err().to_string();
        assert!(err.starts_with("bimodule is not stable:"), "{err}");
    }
}
