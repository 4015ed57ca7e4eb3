//! Convolution products `M ∘ N`.
//!
//! The product has basis `tau_w (m ⊗ n)` where `w` runs over minimal coset
//! representatives of `S_{a+b} / (S_a x S_b)` and `tau_w` is read off the
//! lexicographically smallest reduced word of `w`. Generators act by
//! straightening: reduced words are rewritten by commutation and braid moves,
//! and each braid move on equal outer colors contributes a divided-difference
//! correction.

use std::collections::HashMap;

use klr_exact::{Field, SparseMatrix, SparseVec};

use crate::algebra::Klr;
use crate::cartan::{Vertex, Word};
use crate::module::{BasisVector, Gen, GradedModule};
use crate::perm::{min_coset_reps, rewrite_path, Move, Perm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvolveError {
    #[error("straightening did not terminate within {0} steps")]
    Fuel(usize),
    #[error("the two factors have different ranks")]
    Rank,
}

/// Which shuffle basis vector `tau_w (m_i ⊗ n_j)` a basis vector of the
/// product is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleTag {
    /// Canonical reduced word of `w`, 0-based.
    pub word: Vec<usize>,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone)]
pub struct Convolution<F> {
    pub module: GradedModule<F>,
    /// One tag per basis vector of `module`, in basis order.
    pub tags: Vec<ShuffleTag>,
}

const FUEL: usize = 50_000_000;

struct Engine<'a, F: Field> {
    klr: &'a Klr<F>,
    m: &'a GradedModule<F>,
    n: &'a GradedModule<F>,
    hm: usize,
    total: usize,
    reps: Vec<Perm>,
    canon: Vec<Vec<usize>>,
    rep_index: HashMap<Perm, usize>,
    memo: HashMap<(Gen, usize), SparseVec<F>>,
    paths: HashMap<(Vec<usize>, Vec<usize>), Vec<Move>>,
    fuel: usize,
}

impl<'a, F: Field> Engine<'a, F> {
    fn idx(&self, r: usize, mi: usize, ni: usize) -> usize {
        (r * self.m.dim() + mi) * self.n.dim() + ni
    }

    fn decode(&self, b: usize) -> (usize, usize, usize) {
        let ni = b % self.n.dim();
        let rest = b / self.n.dim();
        (rest / self.m.dim(), rest % self.m.dim(), ni)
    }

    fn base_word(&self, mi: usize, ni: usize) -> Vec<Vertex> {
        let mut w = self.m.basis()[mi].word.letters().to_vec();
        w.extend_from_slice(self.n.basis()[ni].word.letters());
        w
    }

    fn word(&self, b: usize) -> Vec<Vertex> {
        let (r, mi, ni) = self.decode(b);
        self.reps[r].act_on(&self.base_word(mi, ni))
    }

    fn degree(&self, b: usize) -> i32 {
        let (r, mi, ni) = self.decode(b);
        let mut colors = self.base_word(mi, ni);
        let mut deg = self.m.basis()[mi].degree + self.n.basis()[ni].degree;
        for &a in self.canon[r].iter().rev() {
            deg -= self.klr.datum().form(colors[a], colors[a + 1]) as i32;
            colors.swap(a, a + 1);
        }
        deg
    }

    /// Action of a generator of the parabolic subalgebra on `m ⊗ n`, placed
    /// under the representative `r`.
    fn parabolic(&self, g: Gen, r: usize, mi: usize, ni: usize) -> SparseVec<F> {
        let hm = self.hm;
        let (on_left, mat) = match g {
            Gen::X(k) if k < hm => (true, self.m.x(k)),
            Gen::X(k) => (false, self.n.x(k - hm)),
            Gen::T(l) if l + 1 < hm => (true, self.m.tau(l)),
            Gen::T(l) if l >= hm => (false, self.n.tau(l - hm)),
            Gen::T(_) => unreachable!("boundary crossing is not parabolic"),
        };
        if on_left {
            SparseVec::from_pairs(mat.column(mi).iter().map(|(k, c)| (self.idx(r, *k, ni), c.clone())))
        } else {
            SparseVec::from_pairs(mat.column(ni).iter().map(|(k, c)| (self.idx(r, mi, *k), c.clone())))
        }
    }

    fn apply(&mut self, g: Gen, v: &SparseVec<F>) -> Result<SparseVec<F>, ConvolveError> {
        let mut acc = SparseVec::zero();
        for (b, c) in v.iter() {
            let col = self.col(g, *b)?;
            acc = acc.add_scaled(&col, c);
        }
        Ok(acc)
    }

    fn apply_x_poly(
        &mut self,
        poly: &crate::algebra::XPoly<F>,
        v: &SparseVec<F>,
    ) -> Result<SparseVec<F>, ConvolveError> {
        let mut acc = SparseVec::zero();
        for (e, c) in poly.terms() {
            let mut w = v.clone();
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    w = self.apply(Gen::X(k), &w)?;
                }
            }
            acc = acc.add_scaled(&w, c);
        }
        Ok(acc)
    }

    /// `tau_{word} (1 ⊗ m ⊗ n)`, computed one generator at a time.
    fn eval_word(&mut self, word: &[usize], start: SparseVec<F>) -> Result<SparseVec<F>, ConvolveError> {
        let mut v = start;
        for &a in word.iter().rev() {
            v = self.apply(Gen::T(a), &v)?;
        }
        Ok(v)
    }

    /// `tau_src (m ⊗ n) - tau_dst (m ⊗ n)` for two reduced words of the same
    /// permutation.
    fn corrections(
        &mut self,
        src: &[usize],
        dst: &[usize],
        mi: usize,
        ni: usize,
    ) -> Result<SparseVec<F>, ConvolveError> {
        let key = (src.to_vec(), dst.to_vec());
        let path = match self.paths.get(&key) {
            Some(p) => p.clone(),
            None => {
                let p = rewrite_path(src, dst).expect("reduced words of one permutation are connected");
                self.paths.insert(key, p.clone());
                p
            }
        };
        let base = self.base_word(mi, ni);
        let start = SparseVec::unit(self.idx(0, mi, ni));
        let mut cur = src.to_vec();
        let mut acc = SparseVec::zero();
        for mv in path {
            if mv.braid {
                let p = mv.pos;
                let (a, b) = (cur[p], cur[p + 1]);
                let k = a.min(b);
                let suffix = cur[p + 3..].to_vec();
                let colors = Perm::from_word(self.total, &suffix).act_on(&base);
                if colors[k] == colors[k + 2] {
                    let dd = self.klr.divided_difference(colors[k], colors[k + 1], k, self.total);
                    let v = self.eval_word(&suffix, start.clone())?;
                    let v = self.apply_x_poly(&dd, &v)?;
                    let v = self.eval_word(&cur[..p], v)?;
                    acc = if a == k + 1 { acc.add(&v) } else { acc.sub(&v) };
                }
            }
            mv.apply(&mut cur);
        }
        Ok(acc)
    }

    /// `Q_{colors}(x_l, x_{l+1})` applied to basis vector `b`.
    fn quadratic(&mut self, l: usize, b: usize) -> Result<SparseVec<F>, ConvolveError> {
        let colors = self.word(b);
        let q = self.klr.q_poly(colors[l], colors[l + 1], l, l + 1, self.total);
        self.apply_x_poly(&q, &SparseVec::unit(b))
    }

    fn col(&mut self, g: Gen, b: usize) -> Result<SparseVec<F>, ConvolveError> {
        if let Some(v) = self.memo.get(&(g, b)) {
            return Ok(v.clone());
        }
        self.fuel = self.fuel.checked_sub(1).ok_or(ConvolveError::Fuel(FUEL))?;
        let (r, mi, ni) = self.decode(b);
        let c = self.canon[r].clone();
        let out = match g {
            Gen::X(j) => match c.first() {
                None => self.parabolic(g, 0, mi, ni),
                Some(&a) => {
                    // x_j tau_a = tau_a x_{s_a(j)} + [j = a+1] - [j = a] on equal colors
                    let rest = self.idx(self.rep_index[&self.reps[r].left_mul_s(a)], mi, ni);
                    let sj = if j == a {
                        a + 1
                    } else if j == a + 1 {
                        a
                    } else {
                        j
                    };
                    let inner = self.col(Gen::X(sj), rest)?;
                    let mut v = self.apply(Gen::T(a), &inner)?;
                    let colors = self.word(rest);
                    if colors[a] == colors[a + 1] {
                        if j == a + 1 {
                            v = v.add(&SparseVec::unit(rest));
                        } else if j == a {
                            v = v.sub(&SparseVec::unit(rest));
                        }
                    }
                    v
                }
            },
            Gen::T(l) => {
                let w = self.reps[r].clone();
                let lw = w.left_mul_s(l);
                if lw.length() > w.length() {
                    let mut src = vec![l];
                    src.extend_from_slice(&c);
                    if let Some(&target) = self.rep_index.get(&lw) {
                        let dst = self.canon[target].clone();
                        let corr = self.corrections(&src, &dst, mi, ni)?;
                        corr.add(&SparseVec::unit(self.idx(target, mi, ni)))
                    } else {
                        // s_l w = w s_j with s_j in the parabolic subgroup
                        let j = (0..self.total - 1)
                            .find(|&j| j + 1 != self.hm && lw.has_right_descent(j))
                            .expect("Deodhar's lemma");
                        let mut dst = c.clone();
                        dst.push(j);
                        let corr = self.corrections(&src, &dst, mi, ni)?;
                        corr.add(&self.parabolic(Gen::T(j), r, mi, ni))
                    }
                } else {
                    let rest = self.idx(self.rep_index[&lw], mi, ni);
                    let main = self.quadratic(l, rest)?;
                    if c[0] == l {
                        main
                    } else {
                        let mut dst = vec![l];
                        dst.extend_from_slice(&self.canon[self.rep_index[&lw]].clone());
                        let corr = self.corrections(&c, &dst, mi, ni)?;
                        main.add(&self.apply(Gen::T(l), &corr)?)
                    }
                }
            }
        };
        self.memo.insert((g, b), out.clone());
        Ok(out)
    }
}

impl<F: Field> Klr<F> {
    /// The convolution product `M ∘ N`.
    pub fn convolve(&self, m: &GradedModule<F>, n: &GradedModule<F>) -> Result<Convolution<F>, ConvolveError> {
        if m.weight().0.len() != n.weight().0.len() {
            return Err(ConvolveError::Rank);
        }
        let (hm, hn) = (m.height(), n.height());
        let total = hm + hn;
        let reps = min_coset_reps(hm, hn);
        let canon: Vec<Vec<usize>> = reps.iter().map(Perm::canonical_word).collect();
        let rep_index = reps.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let mut e = Engine {
            klr: self,
            m,
            n,
            hm,
            total,
            reps,
            canon,
            rep_index,
            memo: HashMap::new(),
            paths: HashMap::new(),
            fuel: FUEL,
        };
        let dim = e.reps.len() * m.dim() * n.dim();
        let mut basis = Vec::with_capacity(dim);
        let mut tags = Vec::with_capacity(dim);
        for b in 0..dim {
            let (r, mi, ni) = e.decode(b);
            let word = e.canon[r].clone();
            let shown: Vec<usize> = word.iter().map(|a| a + 1).collect();
            basis.push(BasisVector {
                word: Word(e.word(b)),
                degree: e.degree(b),
                label: format!("tau{:?}({} ⊗ {})", shown, m.basis()[mi].label, n.basis()[ni].label),
            });
            tags.push(ShuffleTag { word, left: mi, right: ni });
        }
        let mut x = Vec::with_capacity(total);
        for k in 0..total {
            let cols = (0..dim).map(|b| e.col(Gen::X(k), b)).collect::<Result<Vec<_>, _>>()?;
            x.push(SparseMatrix::from_columns(dim, cols));
        }
        let mut tau = Vec::with_capacity(total.saturating_sub(1));
        for l in 0..total.saturating_sub(1) {
            let cols = (0..dim).map(|b| e.col(Gen::T(l), b)).collect::<Result<Vec<_>, _>>()?;
            tau.push(SparseMatrix::from_columns(dim, cols));
        }
        let module = GradedModule::new(m.weight().add(n.weight()), basis, x, tau);
        // sort by (word, degree) and carry the tags along
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| {
            let (ba, bb) = (&module.basis()[a], &module.basis()[b]);
            (&ba.word, ba.degree).cmp(&(&bb.word, bb.degree))
        });
        let tags = order.iter().map(|&k| tags[k].clone()).collect();
        let mut module = module;
        module.canonicalize();
        Ok(Convolution { module, tags })
    }

    /// `F_i M = M ∘ L(i)`.
    pub fn induce_f(&self, m: &GradedModule<F>, i: Vertex) -> Result<GradedModule<F>, ConvolveError> {
        Ok(self.convolve(m, &self.simple_row(i, 1))?.module)
    }
}
