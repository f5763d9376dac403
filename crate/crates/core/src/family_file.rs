//! JSON document format for function families.
//!
//! ```json
//! {
//!   "domain_size": 3,
//!   "alphabet": ["a", "b"],
//!   "order": "equality",
//!   "functions": ["aba", "bab"]
//! }
//! ```
//!
//! `order` is `"equality"`, `"pointwise"` (alphabet position order) or a list
//! of `[lesser, greater]` member index pairs; reflexive pairs are implied.
//! A function is a word of single-character symbols or a list of symbols.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{FiniteFunction, FunctionFamily, OrderKind, PosetError, Relation};

#[derive(Debug, Error)]
pub enum FamilyFileError {
    #[error("alphabet symbols must be distinct and nonempty")]
    BadAlphabet,
    #[error("function {index}: unknown symbol {symbol:?}")]
    UnknownSymbol { index: usize, symbol: String },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedOrder {
    Equality,
    Pointwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderField {
    Named(NamedOrder),
    Pairs(Vec<[usize; 2]>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordField {
    Word(String),
    Symbols(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub domain_size: usize,
    pub alphabet: Vec<String>,
    pub order: OrderField,
    pub functions: Vec<WordField>,
}

impl FamilyFile {
    pub fn parse(text: &str) -> Result<Self, FamilyFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("family files always serialize")
    }

    pub fn to_family(&self) -> Result<FunctionFamily, FamilyFileError> {
        let mut sorted = self.alphabet.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.alphabet.len() || self.alphabet.iter().any(String::is_empty) {
            return Err(FamilyFileError::BadAlphabet);
        }
        let lookup = |index: usize, sym: &str| -> Result<u32, FamilyFileError> {
            self.alphabet
                .iter()
                .position(|a| a == sym)
                .map(|p| p as u32)
                .ok_or_else(|| FamilyFileError::UnknownSymbol { index, symbol: sym.to_string() })
        };
        let functions = self
            .functions
            .iter()
            .enumerate()
            .map(|(index, w)| {
                let values = match w {
                    WordField::Word(word) => word.chars().map(|c| lookup(index, &c.to_string())).collect::<Result<Vec<_>, _>>()?,
                    WordField::Symbols(syms) => syms.iter().map(|s| lookup(index, s)).collect::<Result<Vec<_>, _>>()?,
                };
                Ok(FiniteFunction::new(values, self.alphabet.len())?)
            })
            .collect::<Result<Vec<_>, FamilyFileError>>()?;
        let order = match &self.order {
            OrderField::Named(NamedOrder::Equality) => OrderKind::Equality,
            OrderField::Named(NamedOrder::Pointwise) => OrderKind::Pointwise,
            OrderField::Pairs(pairs) => {
                let pairs: Vec<(usize, usize)> = pairs.iter().map(|p| (p[0], p[1])).collect();
                OrderKind::Explicit(Relation::from_pairs(functions.len(), &pairs)?)
            }
        };
        Ok(FunctionFamily::new(self.domain_size, self.alphabet.len(), functions, order)?)
    }

    /// Describes a family with the given alphabet, which must cover its codomain.
    pub fn from_family(family: &FunctionFamily, alphabet: Vec<String>) -> Self {
        assert!(alphabet.len() >= family.codomain_size());
        let single = alphabet.iter().all(|s| s.chars().count() == 1);
        let functions = family
            .functions()
            .iter()
            .map(|f| {
                if single {
                    WordField::Word(f.render(&alphabet))
                } else {
                    WordField::Symbols(f.values().iter().map(|&v| alphabet[v as usize].clone()).collect())
                }
            })
            .collect();
        let order = match family.order() {
            OrderKind::Equality => OrderField::Named(NamedOrder::Equality),
            OrderKind::Pointwise => OrderField::Named(NamedOrder::Pointwise),
            OrderKind::Explicit(rel) => OrderField::Pairs(rel.strict_pairs().into_iter().map(|(a, b)| [a, b]).collect()),
        };
        Self { domain_size: family.domain_size(), alphabet, order, functions }
    }

    /// Letters `a, b, ..` for the codomain, or digits for 0/1 families.
    pub fn default_alphabet(codomain_size: usize) -> Vec<String> {
        if codomain_size <= 2 {
            vec!["0".into(), "1".into()]
        } else if codomain_size <= 26 {
            (0..codomain_size).map(|i| char::from(b'a' + i as u8).to_string()).collect()
        } else {
            (0..codomain_size).map(|i| i.to_string()).collect()
        }
    }
}
