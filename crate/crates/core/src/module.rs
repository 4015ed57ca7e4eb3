//! Finite-dimensional graded modules given by explicit generator matrices.

use std::fmt;

use klr_exact::{Field, SparseMatrix, SparseVec, Subspace};

use crate::cartan::{RootVector, Vertex, Word};
use crate::character::Character;

/// A generator of the algebra, 0-based: `X(k)` is multiplication by the
/// `k`-th polynomial variable, `T(l)` the crossing of strands `l` and `l + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X(usize),
    T(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(k) => write!(f, "x{}", k + 1),
            Gen::T(l) => write!(f, "tau{}", l + 1),
        }
    }
}

/// A homogeneous basis vector: it lies in `e(word) M` in the given degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub word: Word,
    pub degree: i32,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule<F> {
    weight: RootVector,
    height: usize,
    basis: Vec<BasisVector>,
    x: Vec<SparseMatrix<F>>,
    tau: Vec<SparseMatrix<F>>,
}

impl<F: Field> GradedModule<F> {
    /// Assembles a module from its data; `x` has one matrix per strand and
    /// `tau` one per adjacent pair.
    pub fn new(
        weight: RootVector,
        basis: Vec<BasisVector>,
        x: Vec<SparseMatrix<F>>,
        tau: Vec<SparseMatrix<F>>,
    ) -> Self {
        let height = weight.height() as usize;
        assert_eq!(x.len(), height, "one x matrix per strand");
        assert_eq!(tau.len(), height.saturating_sub(1), "one tau matrix per adjacent pair");
        let dim = basis.len();
        for m in x.iter().chain(&tau) {
            assert_eq!((m.rows(), m.cols()), (dim, dim), "generator matrix has wrong shape");
        }
        GradedModule { weight, height, basis, x, tau }
    }

    pub fn zero(weight: RootVector) -> Self {
        let h = weight.height() as usize;
        Self::new(
            weight,
            Vec::new(),
            vec![SparseMatrix::zeros(0, 0); h],
            vec![SparseMatrix::zeros(0, 0); h.saturating_sub(1)],
        )
    }

    /// The one-dimensional module of weight zero.
    pub fn vacuum(rank: usize) -> Self {
        let b = BasisVector { word: Word::empty(), degree: 0, label: "1".into() };
        Self::new(RootVector::zero(rank), vec![b], Vec::new(), Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn weight(&self) -> &RootVector {
        &self.weight
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn x(&self, k: usize) -> &SparseMatrix<F> {
        &self.x[k]
    }

    pub fn tau(&self, l: usize) -> &SparseMatrix<F> {
        &self.tau[l]
    }

    pub fn gens(&self) -> Vec<Gen> {
        (0..self.height).map(Gen::X).chain((0..self.height.saturating_sub(1)).map(Gen::T)).collect()
    }

    pub fn gen(&self, g: Gen) -> &SparseMatrix<F> {
        match g {
            Gen::X(k) => &self.x[k],
            Gen::T(l) => &self.tau[l],
        }
    }

    pub fn act(&self, g: Gen, v: &SparseVec<F>) -> SparseVec<F> {
        self.gen(g).apply(v)
    }

    /// Applies `gens[0] gens[1] ... gens[k-1]` to `v` (the last one first).
    pub fn act_word(&self, gens: &[Gen], v: &SparseVec<F>) -> SparseVec<F> {
        gens.iter().rev().fold(v.clone(), |acc, g| self.act(*g, &acc))
    }

    /// Sorts the basis by (word, degree), keeping the current order among ties.
    pub fn canonicalize(&mut self) {
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| {
            (&self.basis[a].word, self.basis[a].degree).cmp(&(&self.basis[b].word, self.basis[b].degree))
        });
        let mut perm = vec![0; self.dim()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        self.basis = order.iter().map(|&k| self.basis[k].clone()).collect();
        self.x = self.x.iter().map(|m| m.permuted(&perm)).collect();
        self.tau = self.tau.iter().map(|m| m.permuted(&perm)).collect();
    }

    /// `q^r M`: every degree goes up by `r`.
    pub fn grade_shift(&self, r: i32) -> Self {
        let mut out = self.clone();
        for b in &mut out.basis {
            b.degree += r;
        }
        out
    }

    /// The graded dual: transposed matrices in the dual basis, degrees negated.
    pub fn dual(&self) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisVector { word: b.word.clone(), degree: -b.degree, label: format!("{}*", b.label) })
            .collect();
        let mut out = GradedModule {
            weight: self.weight.clone(),
            height: self.height,
            basis,
            x: self.x.iter().map(SparseMatrix::transpose).collect(),
            tau: self.tau.iter().map(SparseMatrix::transpose).collect(),
        };
        out.canonicalize();
        out
    }

    /// `E_i M`: the subspace `e(*, i) M` as a module over the algebra of
    /// height one less. Zero (of unchanged weight) when `i` does not occur.
    pub fn restrict_e(&self, i: Vertex) -> Self {
        if self.weight.0[i] == 0 {
            return Self::zero(self.weight.clone());
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|&k| self.basis[k].word.last() == Some(i)).collect();
        let mut index = vec![None; self.dim()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = Some(new);
        }
        let restrict = |m: &SparseMatrix<F>| {
            SparseMatrix::from_columns(keep.len(), keep.iter().map(|&c| m.column(c).reindex(|r| index[r])).collect())
        };
        let h = self.height;
        let mut weight = self.weight.clone();
        weight.0[i] -= 1;
        let basis = keep
            .iter()
            .map(|&k| {
                let b = &self.basis[k];
                BasisVector { word: b.word.truncated(), degree: b.degree, label: b.label.clone() }
            })
            .collect();
        GradedModule {
            weight,
            height: h - 1,
            basis,
            x: self.x[..h - 1].iter().map(restrict).collect(),
            tau: self.tau[..h.saturating_sub(2)].iter().map(restrict).collect(),
        }
    }

    pub fn character(&self) -> Character {
        let mut ch = Character::zero();
        for b in &self.basis {
            ch.add_term(b.word.clone(), &klr_exact::LaurentPoly::q_pow(b.degree));
        }
        ch
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.weight, other.weight, "direct sum of different weights");
        let n = self.dim();
        let total = n + other.dim();
        let join = |a: &SparseMatrix<F>, b: &SparseMatrix<F>| {
            let mut cols: Vec<SparseVec<F>> = a.columns().to_vec();
            cols.extend(b.columns().iter().map(|c| c.reindex(|r| Some(r + n))));
            SparseMatrix::from_columns(total, cols)
        };
        let mut out = GradedModule {
            weight: self.weight.clone(),
            height: self.height,
            basis: self.basis.iter().chain(&other.basis).cloned().collect(),
            x: self.x.iter().zip(&other.x).map(|(a, b)| join(a, b)).collect(),
            tau: self.tau.iter().zip(&other.tau).map(|(a, b)| join(a, b)).collect(),
        };
        out.canonicalize();
        out
    }

    /// Whether `v` lies in a single `e(word) M_degree`.
    pub fn is_homogeneous(&self, v: &SparseVec<F>) -> bool {
        let mut it = v.iter().map(|(k, _)| (&self.basis[*k].word, self.basis[*k].degree));
        match it.next() {
            None => true,
            Some(first) => it.all(|x| x == first),
        }
    }

    /// The smallest submodule containing `vectors`.
    pub fn generated(&self, vectors: impl IntoIterator<Item = SparseVec<F>>) -> Subspace<F> {
        let mut span = Subspace::new();
        let mut queue: Vec<SparseVec<F>> = Vec::new();
        for v in vectors {
            // split into homogeneous pieces so the closure stays graded
            for piece in self.homogeneous_parts(&v) {
                if span.insert(piece.clone()) {
                    queue.push(piece);
                }
            }
        }
        let gens = self.gens();
        while let Some(v) = queue.pop() {
            for &g in &gens {
                let w = self.act(g, &v);
                if span.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        span
    }

    /// Splits `v` by (word, degree) of the basis vectors it involves.
    pub fn homogeneous_parts(&self, v: &SparseVec<F>) -> Vec<SparseVec<F>> {
        let mut groups: std::collections::BTreeMap<(&Word, i32), Vec<(usize, F)>> = Default::default();
        for (k, c) in v.iter() {
            groups.entry((&self.basis[*k].word, self.basis[*k].degree)).or_default().push((*k, c.clone()));
        }
        groups.into_values().map(SparseVec::from_pairs).collect()
    }

    /// The submodule with basis given by the (homogeneous) echelon basis of
    /// an invariant subspace.
    pub fn submodule(&self, sub: &Subspace<F>) -> Self {
        let basis: Vec<BasisVector> = sub
            .basis()
            .iter()
            .zip(sub.pivots())
            .map(|(v, &p)| {
                debug_assert!(self.is_homogeneous(v), "submodule basis must be homogeneous");
                self.basis[p].clone()
            })
            .collect();
        let n = basis.len();
        let restrict = |m: &SparseMatrix<F>| {
            let cols = sub
                .basis()
                .iter()
                .map(|v| {
                    let img = m.apply(v);
                    debug_assert!(sub.contains(&img), "subspace is not invariant");
                    SparseVec::from_pairs(sub.pivots().iter().enumerate().map(|(k, &p)| (k, img.get(p))))
                })
                .collect();
            SparseMatrix::from_columns(n, cols)
        };
        let mut out = GradedModule {
            weight: self.weight.clone(),
            height: self.height,
            basis,
            x: self.x.iter().map(restrict).collect(),
            tau: self.tau.iter().map(restrict).collect(),
        };
        out.canonicalize();
        out
    }

    /// `M / sub` with basis the images of the non-pivot basis vectors.
    pub fn quotient(&self, sub: &Subspace<F>) -> Self {
        let keep: Vec<usize> = (0..self.dim()).filter(|&k| !sub.is_pivot(k)).collect();
        let mut index = vec![None; self.dim()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = Some(new);
        }
        let restrict = |m: &SparseMatrix<F>| {
            SparseMatrix::from_columns(
                keep.len(),
                keep.iter().map(|&c| sub.reduce(m.column(c)).reindex(|r| index[r])).collect(),
            )
        };
        GradedModule {
            weight: self.weight.clone(),
            height: self.height,
            basis: keep.iter().map(|&k| self.basis[k].clone()).collect(),
            x: self.x.iter().map(restrict).collect(),
            tau: self.tau.iter().map(restrict).collect(),
        }
    }

    /// Image of `v` in `M / sub`, in the basis used by [`GradedModule::quotient`].
    pub fn quotient_image(&self, sub: &Subspace<F>, v: &SparseVec<F>) -> SparseVec<F> {
        let mut index = vec![None; self.dim()];
        for (new, old) in (0..self.dim()).filter(|&k| !sub.is_pivot(k)).enumerate() {
            index[old] = Some(new);
        }
        sub.reduce(v).reindex(|r| index[r])
    }

    /// Converts every matrix entry; `None` from `f` aborts.
    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<GradedModule<G>> {
        let conv = |m: &SparseMatrix<F>| -> Option<SparseMatrix<G>> {
            let cols = m
                .columns()
                .iter()
                .map(|c| {
                    c.iter().map(|(i, x)| f(x).map(|y| (*i, y))).collect::<Option<Vec<_>>>().map(SparseVec::from_pairs)
                })
                .collect::<Option<Vec<_>>>()?;
            Some(SparseMatrix::from_columns(m.rows(), cols))
        };
        Some(GradedModule {
            weight: self.weight.clone(),
            height: self.height,
            basis: self.basis.clone(),
            x: self.x.iter().map(conv).collect::<Option<_>>()?,
            tau: self.tau.iter().map(conv).collect::<Option<_>>()?,
        })
    }

    /// Indices of basis vectors in `e(word) M`.
    pub fn word_block(&self, word: &Word) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.basis[k].word == *word).collect()
    }

    /// The distinct (word, degree) blocks, in basis order.
    pub fn blocks(&self) -> Vec<(Word, i32, Vec<usize>)> {
        let mut map: std::collections::BTreeMap<(Word, i32), Vec<usize>> = Default::default();
        for (k, b) in self.basis.iter().enumerate() {
            map.entry((b.word.clone(), b.degree)).or_default().push(k);
        }
        map.into_iter().map(|((w, d), v)| (w, d, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use klr_exact::Rat;

    fn two_dim() -> GradedModule<Rat> {
        // e(00) with tau acting nilpotently: basis u (deg 1), tau u (deg -1)
        let basis = vec![
            BasisVector { word: Word(vec![0, 0]), degree: 1, label: "u".into() },
            BasisVector { word: Word(vec![0, 0]), degree: -1, label: "tu".into() },
        ];
        let tau = SparseMatrix::from_columns(2, vec![SparseVec::unit(1), SparseVec::zero()]);
        let x1 = SparseMatrix::from_columns(2, vec![SparseVec::zero(), SparseVec::single(0, Rat::from_int(-1))]);
        let x2 = SparseMatrix::from_columns(2, vec![SparseVec::zero(), SparseVec::unit(0)]);
        let mut m = GradedModule::new(RootVector(vec![2, 0]), basis, vec![x1, x2], vec![tau]);
        m.canonicalize();
        m
    }

    #[test]
    fn dual_twice_is_identity() {
        let m = two_dim();
        let dd = m.dual().dual();
        assert_eq!(dd.character(), m.character());
        assert_eq!(dd.tau(0), m.tau(0));
        assert_eq!(m.dual().character(), m.character().bar());
    }

    #[test]
    fn submodule_and_quotient() {
        let m = two_dim();
        assert_eq!(m.generated([SparseVec::unit(0)]).dim(), 2);
        let sum = m.direct_sum(&m.grade_shift(4));
        // basis of the sum: degrees -1, 1 (first copy), 3, 5 (second copy)
        let sub = sum.generated([SparseVec::unit(0)]);
        assert_eq!(sub.dim(), 2);
        let s = sum.submodule(&sub);
        assert_eq!(s.character(), m.character());
        let q = sum.quotient(&sub);
        assert_eq!(q.character(), m.character().shift(4));
        assert_eq!(q.tau(0).nnz(), 1);
    }

    #[test]
    fn restriction_and_shift() {
        let m = two_dim();
        let e = m.restrict_e(0);
        assert_eq!(e.height(), 1);
        assert_eq!(e.dim(), 2);
        assert_eq!(m.grade_shift(3).character(), m.character().shift(3));
        let s = m.direct_sum(&m.grade_shift(2));
        assert_eq!(s.dim(), 4);
        assert_eq!(s.character(), m.character().add(&m.character().shift(2)));
    }
}
