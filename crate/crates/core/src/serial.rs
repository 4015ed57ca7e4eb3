//! Text formats for modules and simple records.

use std::collections::BTreeMap;

use klr_exact::{Field, SparseMatrix, SparseVec};
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, RootVector};
use crate::character::CoeffJson;
use crate::module::{BasisVector, GradedModule};
use crate::simples::Simple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub word: String,
    pub degree: i32,
}

/// A module as weight, basis and sparse `(row, col, scalar)` triples; the
/// scalars are expressions in `symbols`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub symbols: Vec<String>,
    pub weight: Vec<u32>,
    pub basis: Vec<BasisJson>,
    pub x: Vec<Vec<(usize, usize, String)>>,
    pub tau: Vec<Vec<(usize, usize, String)>>,
}

fn triples<F: Field>(m: &SparseMatrix<F>, symbols: &[String]) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    for c in 0..m.cols() {
        for (r, v) in m.column(c).iter() {
            out.push((*r, c, v.to_ratfunc().fmt_with(symbols)));
        }
    }
    out.sort_by_key(|t| (t.0, t.1));
    out
}

impl ModuleJson {
    pub fn of<F: Field>(m: &GradedModule<F>, datum: &CartanDatum, symbols: &[String]) -> Self {
        ModuleJson {
            symbols: symbols.to_vec(),
            weight: m.weight().0.clone(),
            basis: m.basis().iter().map(|b| BasisJson { word: datum.word_string(&b.word), degree: b.degree }).collect(),
            x: (0..m.height()).map(|k| triples(m.x(k), symbols)).collect(),
            tau: (0..m.height().saturating_sub(1)).map(|k| triples(m.tau(k), symbols)).collect(),
        }
    }

    pub fn to_module<F: Field>(&self, datum: &CartanDatum) -> Result<GradedModule<F>, String> {
        let weight = RootVector(self.weight.clone());
        if weight.0.len() != datum.rank() {
            return Err(format!("weight has {} entries for rank {}", weight.0.len(), datum.rank()));
        }
        let h = weight.height() as usize;
        let dim = self.basis.len();
        let mut basis = Vec::with_capacity(dim);
        for (k, b) in self.basis.iter().enumerate() {
            let word = datum.parse_word(&b.word).map_err(|e| e.to_string())?;
            if word.len() != h || datum.word_weight(&word) != weight {
                return Err(format!("basis vector {k} has word {} outside the weight", b.word));
            }
            basis.push(BasisVector { word, degree: b.degree, label: format!("b{k}") });
        }
        let matrix = |t: &[(usize, usize, String)]| -> Result<SparseMatrix<F>, String> {
            let mut cols: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); dim];
            for (r, c, s) in t {
                if *r >= dim || *c >= dim {
                    return Err(format!("entry ({r}, {c}) outside a {dim}-dimensional module"));
                }
                let v = crate::expr::parse(s, &self.symbols).map_err(|e| e.to_string())?;
                let v = F::from_ratfunc(&v).ok_or_else(|| format!("scalar {s} is not in the coefficient field"))?;
                cols[*c].insert(*r, v);
            }
            Ok(SparseMatrix::from_columns(dim, cols.into_iter().map(SparseVec::from_pairs).collect()))
        };
        if self.x.len() != h || self.tau.len() != h.saturating_sub(1) {
            return Err(format!("expected {h} x matrices and {} tau matrices", h.saturating_sub(1)));
        }
        let x = self.x.iter().map(|t| matrix(t)).collect::<Result<_, _>>()?;
        let tau = self.tau.iter().map(|t| matrix(t)).collect::<Result<_, _>>()?;
        Ok(GradedModule::new(weight, basis, x, tau))
    }
}

/// A simple module with its crystal word, character and `eps` values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleJson {
    pub crystal_word: String,
    pub dimension: usize,
    pub epsilon: BTreeMap<String, u32>,
    pub character: BTreeMap<String, CoeffJson>,
    pub module: ModuleJson,
}

impl SimpleJson {
    pub fn of<F: Field>(s: &Simple<F>, datum: &CartanDatum, symbols: &[String]) -> Self {
        SimpleJson {
            crystal_word: datum.word_string(&s.crystal_word),
            dimension: s.module.dim(),
            epsilon: datum.vertices().map(|i| (datum.label(i).to_string(), s.epsilon(i))).collect(),
            character: s.character.to_json(datum),
            module: ModuleJson::of(&s.module, datum, symbols),
        }
    }
}
