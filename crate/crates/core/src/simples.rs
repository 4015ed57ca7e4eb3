//! Self-dual simple modules, the crystal operators on them and
//! decomposition of characters into simple characters.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use klr_exact::{Field, LaurentPoly, Matrix, Rat, Solution};

use crate::algebra::Klr;
use crate::cartan::{RootVector, Vertex, Word};
use crate::character::Character;
use crate::convolve::ConvolveError;
use crate::module::GradedModule;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplesError {
    #[error(transparent)]
    Convolve(#[from] ConvolveError),
    #[error("head of F_{i} applied to the simple {word} is not simple")]
    NotSimple { word: String, i: String },
    #[error("the module obtained along {0} is not self-dual")]
    NotSelfDual(String),
    #[error("height {height} exceeds the configured bound {bound}")]
    HeightBound { height: u32, bound: u32 },
    #[error("character does not decompose into simple characters with nonnegative integer coefficients")]
    Inconsistent,
}

/// A self-dual simple module together with a crystal word `(i_1, ..., i_n)`
/// such that it is `F~_{i_n} ... F~_{i_1}` of the trivial module.
#[derive(Debug, Clone)]
pub struct Simple<F> {
    pub crystal_word: Word,
    pub module: GradedModule<F>,
    pub character: Character,
}

impl<F: Field> Simple<F> {
    pub fn epsilon(&self, i: Vertex) -> u32 {
        self.character.epsilon(i)
    }

    pub fn weight(&self) -> &RootVector {
        self.module.weight()
    }
}

/// A class in the Grothendieck group: coefficients of simple classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KClass {
    pub terms: Vec<(Word, LaurentPoly)>,
}

impl KClass {
    pub fn coeff(&self, word: &Word) -> LaurentPoly {
        self.terms.iter().find(|(w, _)| w == word).map(|(_, c)| c.clone()).unwrap_or_default()
    }
}

type Catalog<F> = Arc<Vec<Arc<Simple<F>>>>;

/// Memoized crystal computations at one parameter point.
pub struct Simples<F> {
    klr: Klr<F>,
    bound: u32,
    by_word: RwLock<HashMap<Word, Arc<Simple<F>>>>,
    by_weight: RwLock<HashMap<RootVector, Catalog<F>>>,
}

impl<F: Field> Simples<F> {
    pub fn new(klr: Klr<F>, bound: u32) -> Self {
        Simples { klr, bound, by_word: RwLock::new(HashMap::new()), by_weight: RwLock::new(HashMap::new()) }
    }

    pub fn klr(&self) -> &Klr<F> {
        &self.klr
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    fn check_height(&self, height: u32) -> Result<(), SimplesError> {
        if height > self.bound {
            return Err(SimplesError::HeightBound { height, bound: self.bound });
        }
        Ok(())
    }

    pub fn vacuum(&self) -> Arc<Simple<F>> {
        let module = GradedModule::vacuum(self.klr.datum().rank());
        Arc::new(Simple { crystal_word: Word::empty(), character: module.character(), module })
    }

    fn word_string(&self, w: &Word) -> String {
        format!("({})", self.klr.datum().word_string(w))
    }

    /// `F~_i S = q_i^{eps_i(S)} hd(S ∘ L(i))`.
    pub fn crystal_f(&self, s: &Simple<F>, i: Vertex) -> Result<Simple<F>, SimplesError> {
        self.check_height(s.module.height() as u32 + 1)?;
        let induced = self.klr.induce_f(&s.module, i)?;
        let shift = self.klr.datum().d(i) as i32 * s.epsilon(i) as i32;
        let module = head_of_induced(&induced, i, s.epsilon(i) + 1).grade_shift(shift);
        let crystal_word = Word(s.crystal_word.letters().iter().copied().chain([i]).collect());
        if !module.is_simple() {
            return Err(SimplesError::NotSimple {
                word: self.word_string(&s.crystal_word),
                i: self.klr.datum().label(i).to_string(),
            });
        }
        let character = module.character();
        if !character.is_bar_invariant() {
            return Err(SimplesError::NotSelfDual(self.word_string(&crystal_word)));
        }
        Ok(Simple { crystal_word, module, character })
    }

    /// `E~_i S = q_i^{1 - eps_i(S)} soc(E_i S)`, named after the catalog
    /// entry with the same character. `None` when `eps_i(S) = 0`.
    pub fn crystal_e(&self, s: &Simple<F>, i: Vertex) -> Result<Option<Simple<F>>, SimplesError> {
        let eps = s.epsilon(i);
        if eps == 0 {
            return Ok(None);
        }
        // the socle of E_i S is simple
        let restricted = s.module.restrict_e(i);
        let shift = self.klr.datum().d(i) as i32 * (1 - eps as i32);
        let module = restricted.simple_socle().grade_shift(shift);
        let character = module.character();
        if !module.is_simple() {
            return Err(SimplesError::NotSimple {
                word: self.word_string(&s.crystal_word),
                i: self.klr.datum().label(i).to_string(),
            });
        }
        if !character.is_bar_invariant() {
            return Err(SimplesError::NotSelfDual(self.word_string(&s.crystal_word)));
        }
        let crystal_word = match self.identify(&character, module.weight())? {
            Some(t) => t.crystal_word.clone(),
            None => s.crystal_word.truncated(),
        };
        Ok(Some(Simple { crystal_word, module, character }))
    }

    /// `F~_{i_n} ... F~_{i_1}` of the trivial module.
    pub fn build(&self, word: &Word) -> Result<Arc<Simple<F>>, SimplesError> {
        self.check_height(word.len() as u32)?;
        if word.is_empty() {
            return Ok(self.vacuum());
        }
        if let Some(s) = self.by_word.read().expect("lock").get(word) {
            return Ok(s.clone());
        }
        let prev = self.build(&word.truncated())?;
        let s = Arc::new(self.crystal_f(&prev, word.last().expect("nonempty"))?);
        self.by_word.write().expect("lock").insert(word.clone(), s.clone());
        Ok(s)
    }

    /// All self-dual simples of weight `beta`, each named by the first
    /// crystal word reaching it (extending catalog entries of lower weight
    /// by one letter, letters in index order).
    pub fn catalog(&self, beta: &RootVector) -> Result<Catalog<F>, SimplesError> {
        self.check_height(beta.height())?;
        let mut beta = beta.clone();
        beta.0.resize(self.klr.datum().rank(), 0);
        if let Some(c) = self.by_weight.read().expect("lock").get(&beta) {
            return Ok(c.clone());
        }
        let out: Vec<Arc<Simple<F>>> = if beta.height() == 0 {
            vec![self.vacuum()]
        } else {
            let mut found: Vec<Arc<Simple<F>>> = Vec::new();
            for i in self.klr.datum().vertices() {
                let Some(prev_weight) = beta.checked_sub(&RootVector::simple(beta.0.len(), i)) else {
                    continue;
                };
                for s in self.catalog(&prev_weight)?.iter() {
                    let word = Word(s.crystal_word.letters().iter().copied().chain([i]).collect());
                    let t = self.build(&word)?;
                    if !found.iter().any(|f| f.character == t.character) {
                        found.push(t);
                    }
                }
            }
            found
        };
        let out = Arc::new(out);
        self.by_weight.write().expect("lock").insert(beta, out.clone());
        Ok(out)
    }

    /// All catalog entries of height at most `h`, grouped by height.
    pub fn catalog_up_to(&self, h: u32) -> Result<Vec<Arc<Simple<F>>>, SimplesError> {
        let rank = self.klr.datum().rank();
        let mut out = Vec::new();
        for height in 0..=h {
            for beta in weights_of_height(rank, height) {
                out.extend(self.catalog(&beta)?.iter().cloned());
            }
        }
        Ok(out)
    }

    /// Catalog entry with the given character, if any.
    pub fn identify(&self, ch: &Character, beta: &RootVector) -> Result<Option<Arc<Simple<F>>>, SimplesError> {
        Ok(self.catalog(beta)?.iter().find(|s| s.character == *ch).cloned())
    }

    /// Writes `ch` as a combination of simple characters of weight `beta`
    /// with coefficients in `N[q, q^-1]`.
    pub fn jh_decompose(&self, ch: &Character, beta: &RootVector) -> Result<KClass, SimplesError> {
        let catalog = self.catalog(beta)?;
        decompose(ch, &catalog.iter().map(|s| (s.crystal_word.clone(), s.character.clone())).collect::<Vec<_>>())
    }
}

/// Head of `S ∘ L(i)` with `eps_i(S) = k - 1`. Every composition factor
/// other than the head has `eps_i < k`, so the radical is the largest
/// submodule killed by the idempotents of words ending in `i^k`. Falls back
/// to the trace-form radical if the quotient is not simple.
pub fn head_of_induced<F: Field>(m: &GradedModule<F>, i: Vertex, k: u32) -> GradedModule<F> {
    let k = k as usize;
    let coords: Vec<usize> = (0..m.dim())
        .filter(|&b| {
            let w = m.basis()[b].word.letters();
            w.len() >= k && w[w.len() - k..].iter().all(|&l| l == i)
        })
        .collect();
    let head = m.quotient(&m.largest_submodule_avoiding(&coords));
    if head.is_simple() {
        head
    } else {
        m.cosocle()
    }
}

/// All weights of the given height on `rank` vertices.
pub fn weights_of_height(rank: usize, height: u32) -> Vec<RootVector> {
    let mut out = Vec::new();
    let mut cur = vec![0; rank];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<RootVector>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(RootVector(cur.clone()));
            return;
        }
        for m in (0..=left).rev() {
            cur[k] = m;
            rec(k + 1, left - m, cur, out);
        }
    }
    if rank == 0 {
        return out;
    }
    rec(0, height, &mut cur, &mut out);
    out
}

/// Solves `ch = sum_b c_b(q) basis_b` exactly over `Q`; coefficients must be
/// nonnegative integers.
pub fn decompose(ch: &Character, basis: &[(Word, Character)]) -> Result<KClass, SimplesError> {
    let k = decompose_signed(ch, basis)?;
    if k.terms.iter().all(|(_, c)| c.is_nonnegative()) {
        Ok(k)
    } else {
        Err(SimplesError::Inconsistent)
    }
}

/// As [`decompose`], allowing negative integer coefficients.
pub fn decompose_signed(ch: &Character, basis: &[(Word, Character)]) -> Result<KClass, SimplesError> {
    if ch.is_zero() {
        return Ok(KClass::default());
    }
    let (lo, hi) = (ch.min_degree().expect("nonzero"), ch.max_degree().expect("nonzero"));
    let mut unknowns: Vec<(usize, i32)> = Vec::new();
    for (b, (_, c)) in basis.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (blo, bhi) = (c.min_degree().expect("nonzero"), c.max_degree().expect("nonzero"));
        for r in (lo - bhi)..=(hi - blo) {
            unknowns.push((b, r));
        }
    }
    let mut rows: Vec<(Word, i32)> = Vec::new();
    let mut index: HashMap<(Word, i32), usize> = HashMap::new();
    let mut push_row = |w: &Word, e: i32, rows: &mut Vec<(Word, i32)>| -> usize {
        *index.entry((w.clone(), e)).or_insert_with(|| {
            rows.push((w.clone(), e));
            rows.len() - 1
        })
    };
    let mut entries: Vec<(usize, usize, i64)> = Vec::new();
    for (col, &(b, r)) in unknowns.iter().enumerate() {
        for (w, c) in basis[b].1.terms() {
            for (e, k) in c.terms() {
                let row = push_row(w, e + r, &mut rows);
                entries.push((row, col, k));
            }
        }
    }
    let mut rhs_rows = Vec::new();
    for (w, c) in ch.terms() {
        for (e, k) in c.terms() {
            let row = push_row(w, e, &mut rows);
            rhs_rows.push((row, k));
        }
    }
    let mut a = Matrix::<Rat>::zeros(rows.len(), unknowns.len());
    for (r, c, k) in entries {
        a.set(r, c, Rat::from_int(k));
    }
    let mut rhs = vec![Rat::zero(); rows.len()];
    for (r, k) in rhs_rows {
        rhs[r] = Rat::from_int(k);
    }
    let sol = match a.solve(&rhs) {
        Solution::Inconsistent => return Err(SimplesError::Inconsistent),
        Solution::Affine { particular, kernel } => {
            if !kernel.is_empty() {
                // simple characters are linearly independent, so this only
                // happens with a bad basis
                return Err(SimplesError::Inconsistent);
            }
            particular
        }
    };
    let mut coeffs: Vec<LaurentPoly> = vec![LaurentPoly::zero(); basis.len()];
    for (&(b, r), x) in unknowns.iter().zip(&sol) {
        if x.is_zero() {
            continue;
        }
        let k = x.to_i64().filter(|_| x.is_integer()).ok_or(SimplesError::Inconsistent)?;
        coeffs[b].add_term(r, k);
    }
    Ok(KClass {
        terms: basis.iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).map(|((w, _), c)| (w.clone(), c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::params::ParamPoint;
    use klr_exact::RatFunc;

    fn engine() -> Simples<Rat> {
        let d = CartanDatum::a1_affine();
        Simples::new(Klr::new(d.clone(), ParamPoint::c0(&d).unwrap()).unwrap(), 6)
    }

    #[test]
    fn crystal_f_on_a_single_color_gives_row_simples() {
        let e = engine();
        for n in 1..=3 {
            let s = e.build(&Word(vec![0; n])).unwrap();
            assert_eq!(s.character, e.klr().simple_row(0, n).character());
        }
    }

    #[test]
    fn weights_enumeration() {
        assert_eq!(
            weights_of_height(2, 2),
            vec![RootVector(vec![2, 0]), RootVector(vec![1, 1]), RootVector(vec![0, 2])]
        );
        assert_eq!(weights_of_height(3, 3).len(), 10);
    }

    #[test]
    fn catalog_sizes_in_small_weights() {
        let e = engine();
        assert_eq!(e.catalog(&RootVector(vec![1, 1])).unwrap().len(), 2);
        assert_eq!(e.catalog(&RootVector(vec![2, 0])).unwrap().len(), 1);
        // Kostant partitions of 2a0 + a1 over the roots a0, a1, a0 + a1, 2a0 + a1
        assert_eq!(e.catalog(&RootVector(vec![2, 1])).unwrap().len(), 3);
    }

    #[test]
    fn crystal_e_undoes_crystal_f() {
        let e = engine();
        for beta in weights_of_height(2, 3) {
            for s in e.catalog(&beta).unwrap().iter() {
                for i in 0..2 {
                    let f = e.crystal_f(s, i).unwrap();
                    let back = e.crystal_e(&f, i).unwrap().expect("eps > 0");
                    assert_eq!(back.character, s.character);
                    assert_eq!(f.epsilon(i), s.epsilon(i) + 1);
                }
            }
        }
    }

    #[test]
    fn decomposition_of_products() {
        let e = engine();
        let l0 = e.build(&Word(vec![0])).unwrap();
        let l1 = e.build(&Word(vec![1])).unwrap();
        let d = e.klr().datum().clone();
        let ch = l0.character.shuffle(&l1.character, &d);
        let k = e.jh_decompose(&ch, &RootVector(vec![1, 1])).unwrap();
        assert_eq!(k.terms.len(), 2);
        assert!(k.terms.iter().all(|(_, c)| c.terms().count() == 1));
        let bad = ch.sub(&e.build(&Word(vec![0, 1])).unwrap().character.scale(&LaurentPoly::monomial(0, 2)));
        assert!(matches!(e.jh_decompose(&bad, &RootVector(vec![1, 1])), Err(SimplesError::Inconsistent)));
        let _ = RatFunc::one();
    }
}
