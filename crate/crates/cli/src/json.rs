//! JSON formats: lattices as `{"elements": [...], "covers": [[i,j],...]}`,
//! Cayley tables as `{"order", "zero", "table", "class_names"}`, and
//! derivation chains with per-step justifications.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use varlat_core::derive::{DerivationChain, Direction};
use varlat_core::model::FiniteSemigroup;
use varlat_core::nil::FreeNilObject;
use varlat_core::parse::format_word;
use varlat_core::words::Word;
use varlat_core::{FiniteLattice, LatticeError};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl LatticeJson {
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let elements = (0..l.size())
            .map(|i| {
                l.label(i)
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("e{i}"))
            })
            .collect();
        LatticeJson {
            elements,
            covers: l.covers(),
        }
    }

    /// Validates into a lattice, covers first, labels attached.
    pub fn to_lattice(&self) -> Result<FiniteLattice, LatticeError> {
        FiniteLattice::from_covers(self.elements.len(), &self.covers)?
            .with_labels(self.elements.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CayleyJson {
    pub order: usize,
    pub zero: Option<usize>,
    pub table: Vec<Vec<usize>>,
    pub class_names: Vec<String>,
}

impl CayleyJson {
    pub fn from_free_object(obj: &FreeNilObject) -> Self {
        let m = obj.order();
        CayleyJson {
            order: m,
            zero: Some(obj.zero_class()),
            table: (0..m)
                .map(|a| (0..m).map(|b| obj.mult(a, b)).collect())
                .collect(),
            class_names: (0..m).map(|c| obj.class_name(c)).collect(),
        }
    }

    pub fn from_semigroup(s: &FiniteSemigroup) -> Self {
        let names = match s.labels() {
            Some(labels) => labels.to_vec(),
            None => (0..s.order()).map(|i| format!("e{i}")).collect(),
        };
        CayleyJson {
            order: s.order(),
            zero: s.absorbing_zero(),
            table: s.rows(),
            class_names: names,
        }
    }

    pub fn to_semigroup(&self) -> Result<FiniteSemigroup, varlat_core::ModelError> {
        FiniteSemigroup::from_table_with_labels(&self.table, self.class_names.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainJson {
    pub words: Vec<String>,
    pub steps: Vec<StepJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepJson {
    pub axiom: usize,
    pub dir: String,
    pub subst: BTreeMap<String, String>,
    pub left_ctx: String,
    pub right_ctx: String,
}

fn letters_to_string(letters: &[u32]) -> String {
    if letters.is_empty() {
        String::new()
    } else {
        format_word(&Word::new(letters.to_vec()).unwrap())
    }
}

impl ChainJson {
    pub fn from_chain(chain: &DerivationChain) -> Self {
        ChainJson {
            words: chain.words.iter().map(format_word).collect(),
            steps: chain
                .steps
                .iter()
                .map(|s| StepJson {
                    axiom: s.axiom,
                    dir: match s.direction {
                        Direction::Lr => "LR".to_string(),
                        Direction::Rl => "RL".to_string(),
                    },
                    subst: s
                        .substitution
                        .iter()
                        .map(|(l, w)| (letters_to_string(&[*l]), format_word(w)))
                        .collect(),
                    left_ctx: letters_to_string(&s.left_ctx),
                    right_ctx: letters_to_string(&s.right_ctx),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use varlat_core::derive::{derives, Derivation, DeriveBounds};
    use varlat_core::parse::{parse_basis, parse_identity};

    #[test]
    fn lattice_round_trip() {
        let lat = varlat_core::subgroups::subgroup_lattice(3).unwrap().lattice;
        let json = LatticeJson::from_lattice(&lat);
        assert_eq!(json.elements.len(), 6);
        assert_eq!(json.covers.len(), 8);
        let back = json.to_lattice().unwrap();
        assert_eq!(back.size(), lat.size());
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(back.leq(a, b), lat.leq(a, b));
            }
        }
        let text = serde_json::to_string(&json).unwrap();
        let reparsed: LatticeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed.covers, json.covers);
    }

    #[test]
    fn bad_lattice_json_rejected() {
        let json = LatticeJson {
            elements: vec!["a".into(), "b".into(), "c".into()],
            covers: vec![(0, 1), (0, 2)],
        };
        assert!(json.to_lattice().is_err());
    }

    #[test]
    fn cayley_round_trip_through_free_object() {
        let pres = varlat_core::NilPresentation::parse("nil_bound: 3\nxyz = yxz = xzy\nx^2y = 0")
            .unwrap();
        let obj = pres.free_object(3);
        let json = CayleyJson::from_free_object(&obj);
        assert_eq!(json.order, 14);
        assert_eq!(json.zero, Some(obj.zero_class()));
        assert_eq!(json.class_names[0], "x");
        let s = json.to_semigroup().unwrap();
        assert_eq!(s.order(), 14);
        let again = CayleyJson::from_semigroup(&s);
        assert_eq!(again.table, json.table);
        assert_eq!(again.zero, json.zero);
    }

    #[test]
    fn chain_json_shape() {
        let basis = parse_basis("xy = yx").unwrap();
        let target = parse_identity("xy = yx").unwrap();
        let Ok(Some(Derivation::Chain(chain))) = derives(
            &basis,
            &target,
            DeriveBounds {
                max_len: 2,
                max_steps: 2,
            },
        ) else {
            panic!("commutativity must derive itself");
        };
        let json = ChainJson::from_chain(&chain);
        assert_eq!(json.words, vec!["xy", "yx"]);
        assert_eq!(json.steps.len(), 1);
        assert_eq!(json.steps[0].dir, "LR");
        assert_eq!(json.steps[0].left_ctx, "");
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"axiom\":0"));
    }
}
