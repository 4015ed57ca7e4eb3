//! The algebra attached to a Cartan datum and a parameter point: its
//! polynomials `Q_ij`, the relation checker and the row simples `L(i^n)`.

use std::collections::{BTreeMap, HashMap};

use klr_exact::{Field, SparseMatrix, SparseVec};

use crate::cartan::{CartanDatum, RootVector, Vertex, Word};
use crate::module::{BasisVector, Gen, GradedModule};
use crate::params::{ParamError, ParamPoint};
use crate::perm::{all_perms, Perm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KlrError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("parameter `{0}` does not lie in the requested coefficient field")]
    Field(String),
}

/// A polynomial in the strand variables `x_0, ..., x_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly<F> {
    n: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> XPoly<F> {
    pub fn zero(n: usize) -> Self {
        XPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, exps: &[(usize, u32)], c: F) -> Self {
        let mut e = vec![0; n];
        for &(k, p) in exps {
            e[k] += p;
        }
        let mut out = Self::zero(n);
        out.add_term(e, c);
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, next);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }

    /// Applies the polynomial to `v` through the matrices `x`.
    pub fn apply(&self, v: &SparseVec<F>, mut x: impl FnMut(usize, &SparseVec<F>) -> SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::zero();
        for (e, c) in &self.terms {
            let mut w = v.clone();
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    if w.is_zero() {
                        break;
                    }
                    w = x(k, &w);
                }
            }
            acc = acc.add_scaled(&w, c);
        }
        acc
    }
}

/// Structure constants of the algebra over the coefficient field `F`.
#[derive(Debug, Clone)]
pub struct Klr<F> {
    datum: CartanDatum,
    point: ParamPoint,
    q: Vec<Vec<Vec<(u32, u32, F)>>>,
}

impl<F: Field> Klr<F> {
    pub fn new(datum: CartanDatum, point: ParamPoint) -> Result<Self, KlrError> {
        point.validate(&datum)?;
        let n = datum.rank();
        let mut q = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for (p, e, v) in point.q_terms(i, j) {
                    let c = F::from_ratfunc(&v).ok_or_else(|| KlrError::Field(v.fmt_with(point.symbols())))?;
                    q[i][j].push((p, e, c));
                }
            }
        }
        Ok(Klr { datum, point, q })
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn point(&self) -> &ParamPoint {
        &self.point
    }

    pub fn q_terms(&self, i: Vertex, j: Vertex) -> &[(u32, u32, F)] {
        &self.q[i][j]
    }

    /// `Q_ij(x_a, x_b)` in `n` variables.
    pub fn q_poly(&self, i: Vertex, j: Vertex, a: usize, b: usize, n: usize) -> XPoly<F> {
        let mut out = XPoly::zero(n);
        for (p, e, c) in &self.q[i][j] {
            out = out.add(&XPoly::monomial(n, &[(a, *p), (b, *e)], c.clone()));
        }
        out
    }

    /// `(Q_ij(x_k, x_{k+1}) - Q_ij(x_{k+2}, x_{k+1})) / (x_k - x_{k+2})`.
    pub fn divided_difference(&self, i: Vertex, j: Vertex, k: usize, n: usize) -> XPoly<F> {
        let mut out = XPoly::zero(n);
        for (p, e, c) in &self.q[i][j] {
            for s in 0..*p {
                out = out.add(&XPoly::monomial(n, &[(k, s), (k + 2, p - 1 - s), (k + 1, *e)], c.clone()));
            }
        }
        out
    }

    /// Degree of `g e(word)`.
    pub fn gen_degree(&self, g: Gen, word: &Word) -> i32 {
        let w = word.letters();
        match g {
            Gen::X(k) => self.datum.form(w[k], w[k]) as i32,
            Gen::T(l) => -self.datum.form(w[l], w[l + 1]) as i32,
        }
    }

    /// Every defining relation, checked on every basis vector.
    pub fn check_relations(&self, m: &GradedModule<F>) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = m.height();
        let x = |k: usize, v: &SparseVec<F>| m.x(k).apply(v);
        for (b, basis) in m.basis().iter().enumerate() {
            let nu = &basis.word;
            let w = nu.letters();
            let v = SparseVec::<F>::unit(b);
            let mut fail = |relation: &str, detail: String| {
                out.push(Violation { relation: relation.to_string(), word: nu.clone(), basis_index: b, detail });
            };
            if w.len() != n || self.datum.word_weight(nu) != *m.weight() {
                fail("weight", "basis vector has word of the wrong weight".to_string());
                continue;
            }
            for g in m.gens() {
                let target = match g {
                    Gen::X(_) => nu.clone(),
                    Gen::T(l) => nu.swapped(l),
                };
                let deg = basis.degree + self.gen_degree(g, nu);
                for (r, _) in m.act(g, &v).iter() {
                    let rb = &m.basis()[*r];
                    if rb.word != target || rb.degree != deg {
                        fail("grading", format!("{g} does not map e(word) in degree {} homogeneously", basis.degree));
                        break;
                    }
                }
            }
            for k in 0..n {
                for l in k + 1..n {
                    if m.act(Gen::X(k), &m.act(Gen::X(l), &v)) != m.act(Gen::X(l), &m.act(Gen::X(k), &v)) {
                        fail("x commute", format!("x{} x{}", k + 1, l + 1));
                    }
                }
            }
            for k in 0..n.saturating_sub(1) {
                for l in k + 2..n.saturating_sub(1) {
                    if m.act_word(&[Gen::T(k), Gen::T(l)], &v) != m.act_word(&[Gen::T(l), Gen::T(k)], &v) {
                        fail("tau commute", format!("tau{} tau{}", k + 1, l + 1));
                    }
                }
                let sq = m.act_word(&[Gen::T(k), Gen::T(k)], &v);
                let q = self.q_poly(w[k], w[k + 1], k, k + 1, n).apply(&v, x);
                if sq != q {
                    fail("quadratic", format!("tau{}^2", k + 1));
                }
                for l in 0..n {
                    let sl = if l == k {
                        k + 1
                    } else if l == k + 1 {
                        k
                    } else {
                        l
                    };
                    let lhs = m.act_word(&[Gen::T(k), Gen::X(l)], &v).sub(&m.act_word(&[Gen::X(sl), Gen::T(k)], &v));
                    let rhs = if w[k] != w[k + 1] {
                        SparseVec::zero()
                    } else if l == k {
                        v.neg()
                    } else if l == k + 1 {
                        v.clone()
                    } else {
                        SparseVec::zero()
                    };
                    if lhs != rhs {
                        fail("tau x", format!("tau{} x{}", k + 1, l + 1));
                    }
                }
            }
            for k in 0..n.saturating_sub(2) {
                let lhs = m
                    .act_word(&[Gen::T(k + 1), Gen::T(k), Gen::T(k + 1)], &v)
                    .sub(&m.act_word(&[Gen::T(k), Gen::T(k + 1), Gen::T(k)], &v));
                let rhs = if w[k] == w[k + 2] {
                    self.divided_difference(w[k], w[k + 1], k, n).apply(&v, x)
                } else {
                    SparseVec::zero()
                };
                if lhs != rhs {
                    fail("braid", format!("tau{} tau{} tau{}", k + 2, k + 1, k + 2));
                }
            }
        }
        out
    }

    /// `L(i^n)`: the quotient of the nilHecke algebra by the left ideal of
    /// the polynomial generators, shifted so that its character is the
    /// balanced quantum factorial.
    pub fn simple_row(&self, i: Vertex, n: usize) -> GradedModule<F> {
        let rank = self.datum.rank();
        let perms = all_perms(n);
        let index: HashMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let di = self.datum.d(i) as i32;
        let top = di * (n * n.saturating_sub(1) / 2) as i32;
        let word = Word(vec![i; n]);
        let basis = perms
            .iter()
            .map(|w| BasisVector {
                word: word.clone(),
                degree: top - 2 * di * w.length() as i32,
                label: format!("tau{:?}", w.canonical_word().iter().map(|a| a + 1).collect::<Vec<_>>()),
            })
            .collect();
        let dim = perms.len();
        let tau: Vec<SparseMatrix<F>> = (0..n.saturating_sub(1))
            .map(|l| {
                let cols = perms
                    .iter()
                    .map(|w| {
                        let s = w.left_mul_s(l);
                        if s.length() > w.length() {
                            SparseVec::unit(index[&s])
                        } else {
                            SparseVec::zero()
                        }
                    })
                    .collect();
                SparseMatrix::from_columns(dim, cols)
            })
            .collect();
        // x_j tau_a tau_rest = tau_a x_{s_a(j)} tau_rest + [j = a+1] tau_rest - [j = a] tau_rest
        let mut memo: HashMap<(usize, usize), SparseVec<F>> = HashMap::new();
        fn x_col<F: Field>(
            j: usize,
            w: usize,
            perms: &[Perm],
            index: &HashMap<Perm, usize>,
            tau: &[SparseMatrix<F>],
            memo: &mut HashMap<(usize, usize), SparseVec<F>>,
        ) -> SparseVec<F> {
            if let Some(v) = memo.get(&(j, w)) {
                return v.clone();
            }
            let word = perms[w].canonical_word();
            let out = match word.first() {
                None => SparseVec::zero(),
                Some(&a) => {
                    let rest = index[&perms[w].left_mul_s(a)];
                    let sj = if j == a {
                        a + 1
                    } else if j == a + 1 {
                        a
                    } else {
                        j
                    };
                    let inner = x_col(sj, rest, perms, index, tau, memo);
                    let mut v = tau[a].apply(&inner);
                    if j == a + 1 {
                        v = v.add(&SparseVec::unit(rest));
                    } else if j == a {
                        v = v.sub(&SparseVec::unit(rest));
                    }
                    v
                }
            };
            memo.insert((j, w), out.clone());
            out
        }
        let x = (0..n)
            .map(|j| {
                let cols = (0..dim).map(|w| x_col(j, w, &perms, &index, &tau, &mut memo)).collect();
                SparseMatrix::from_columns(dim, cols)
            })
            .collect();
        let mut weight = RootVector::zero(rank);
        weight.0[i] = n as u32;
        let mut m = GradedModule::new(weight, basis, x, tau);
        m.canonicalize();
        m
    }
}

/// A failed relation on a basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub word: Word,
    pub basis_index: usize,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} relation fails on basis vector {}: {}", self.relation, self.basis_index, self.detail)
    }
}
