//! Characters: formal sums of words with Laurent polynomial coefficients.

use std::collections::BTreeMap;

use klr_exact::LaurentPoly;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, Vertex, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Character {
    terms: BTreeMap<Word, LaurentPoly>,
}

/// Serialized form of one coefficient: `coeffs[k]` multiplies `q^(offset + k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub offset: i32,
    pub coeffs: Vec<i64>,
}

impl CoeffJson {
    pub fn from_poly(p: &LaurentPoly) -> Self {
        let (offset, coeffs) = p.to_coeff_list();
        CoeffJson { offset, coeffs }
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_coeff_list(self.offset, &self.coeffs)
    }
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(word: Word, coeff: LaurentPoly) -> Self {
        let mut c = Self::zero();
        c.add_term(word, &coeff);
        c
    }

    pub fn add_term(&mut self, word: Word, coeff: &LaurentPoly) {
        let entry = self.terms.entry(word.clone()).or_default();
        *entry = entry.add(coeff);
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, word: &Word) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total dimension, the sum of all coefficients at `q = 1`.
    pub fn dimension(&self) -> i64 {
        self.terms.values().map(LaurentPoly::eval_one).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::one().neg()))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.mul(c));
        }
        out
    }

    /// Multiplication by `q^r`.
    pub fn shift(&self, r: i32) -> Self {
        Character { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.shift(r))).collect() }
    }

    /// Applies `q -> q^-1` to every coefficient.
    pub fn bar(&self) -> Self {
        Character { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_bar_invariant)
    }

    /// The `r` with `q^(2r) ch = bar(ch)`, if one exists.
    pub fn self_dual_shift(&self) -> Option<i32> {
        let twice = -(self.min_degree()? + self.max_degree()?);
        if twice % 2 != 0 {
            return None;
        }
        let r = twice / 2;
        (self.shift(2 * r) == self.bar()).then_some(r)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.values().filter_map(LaurentPoly::max_degree).max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.values().filter_map(LaurentPoly::min_degree).min()
    }

    /// Largest `n` such that a word ending in `i^n` has nonzero coefficient.
    pub fn epsilon(&self, i: Vertex) -> u32 {
        self.terms.keys().map(|w| w.letters().iter().rev().take_while(|&&v| v == i).count() as u32).max().unwrap_or(0)
    }

    /// Keeps the words ending in `i` and drops that last letter.
    pub fn restrict_e(&self, i: Vertex) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            if w.last() == Some(i) {
                out.add_term(w.truncated(), c);
            }
        }
        out
    }

    /// Character of a convolution product: the quantum shuffle product. A
    /// letter `j` of the right factor moving past a letter `i` of the left
    /// factor contributes `q^{-(alpha_i | alpha_j)}`.
    pub fn shuffle(&self, other: &Self, datum: &CartanDatum) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let coeff = c1.mul(c2);
                for (w, e) in shuffle_words(w1.letters(), w2.letters(), datum) {
                    out.add_term(Word(w), &coeff.shift(e));
                }
            }
        }
        out
    }

    pub fn fmt_with(&self, datum: &CartanDatum) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = datum.word_string(w);
                let cs = c.to_string();
                if cs == "1" {
                    format!("e({word})")
                } else if c.terms().count() == 1 && !cs.contains(' ') {
                    format!("{cs}e({word})")
                } else {
                    format!("({cs})e({word})")
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn to_json(&self, datum: &CartanDatum) -> BTreeMap<String, CoeffJson> {
        self.terms.iter().map(|(w, c)| (datum.word_string(w), CoeffJson::from_poly(c))).collect()
    }

    pub fn from_json(json: &BTreeMap<String, CoeffJson>, datum: &CartanDatum) -> Result<Self, String> {
        let mut out = Self::zero();
        for (w, c) in json {
            let word = datum.parse_word(w).map_err(|e| e.to_string())?;
            out.add_term(word, &c.to_poly());
        }
        Ok(out)
    }
}

fn shuffle_words(a: &[Vertex], b: &[Vertex], datum: &CartanDatum) -> Vec<(Vec<Vertex>, i32)> {
    if a.is_empty() {
        return vec![(b.to_vec(), 0)];
    }
    if b.is_empty() {
        return vec![(a.to_vec(), 0)];
    }
    let mut out = Vec::new();
    for (mut w, e) in shuffle_words(&a[1..], b, datum) {
        w.insert(0, a[0]);
        out.push((w, e));
    }
    let passed: i64 = a.iter().map(|&i| datum.form(i, b[0])).sum();
    for (mut w, e) in shuffle_words(a, &b[1..], datum) {
        w.insert(0, b[0]);
        out.push((w, e - passed as i32));
    }
    out
}
