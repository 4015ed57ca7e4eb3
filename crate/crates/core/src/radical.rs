//! Radicals, socles, heads and homomorphisms of graded modules.
//!
//! The image of the algebra in `End(M)` is built by closing the idempotents
//! `e(word)` under left multiplication by generators. It splits into
//! components indexed by (target word, source word, degree shift). The
//! Jacobson radical of the image is the radical of the trace form
//! `(a, b) -> tr(ab)`, which pairs a component only with its opposite.

use std::collections::{BTreeMap, HashMap};

use klr_exact::{Field, SparseMatrix, SparseVec, Subspace};

use crate::cartan::Word;
use crate::module::GradedModule;

type CompKey = (Word, Word, i32);

/// The image of the algebra in `End(M)`; elements are stored as flattened
/// matrices with entry `(r, c)` at index `r * dim + c`.
pub struct ImageAlgebra<F> {
    dim: usize,
    components: BTreeMap<CompKey, Subspace<F>>,
}

impl<F: Field> ImageAlgebra<F> {
    pub fn of(m: &GradedModule<F>) -> Self {
        let dim = m.dim();
        let basis = m.basis();
        let key_of = |v: &SparseVec<F>| -> CompKey {
            let (idx, _) = v.entries()[0];
            let (r, c) = (idx / dim, idx % dim);
            (basis[r].word.clone(), basis[c].word.clone(), basis[r].degree - basis[c].degree)
        };
        // number of matrix positions a component can occupy
        let mut sizes: BTreeMap<(&Word, i32), usize> = BTreeMap::new();
        for b in basis {
            *sizes.entry((&b.word, b.degree)).or_default() += 1;
        }
        let capacity = |key: &CompKey| -> usize {
            sizes
                .iter()
                .filter(|((w, _), _)| **w == key.1)
                .map(|((_, d), n)| n * sizes.get(&(&key.0, d + key.2)).copied().unwrap_or(0))
                .sum()
        };
        let mut components: BTreeMap<CompKey, Subspace<F>> = BTreeMap::new();
        let mut caps: HashMap<CompKey, usize> = HashMap::new();
        let mut queue = Vec::new();
        let mut words: Vec<&Word> = basis.iter().map(|b| &b.word).collect();
        words.dedup();
        words.sort();
        words.dedup();
        for w in words {
            let e = SparseVec::from_pairs(m.word_block(w).into_iter().map(|k| (k * dim + k, F::one())));
            queue.push(e);
        }
        let gens: Vec<&SparseMatrix<F>> = m.gens().into_iter().map(|g| m.gen(g)).collect();
        while let Some(a) = queue.pop() {
            let key = key_of(&a);
            let cap = *caps.entry(key.clone()).or_insert_with(|| capacity(&key));
            let comp = components.entry(key).or_default();
            if comp.dim() >= cap || !comp.insert(a.clone()) {
                continue;
            }
            for g in &gens {
                let mut cols: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
                for (idx, c) in a.iter() {
                    cols.entry(idx % dim).or_default().push((idx / dim, c.clone()));
                }
                let mut prod = Vec::new();
                for (c, entries) in cols {
                    let col = g.apply(&SparseVec::from_pairs(entries));
                    prod.extend(col.iter().map(|(r, x)| (r * dim + c, x.clone())));
                }
                let prod = SparseVec::from_pairs(prod);
                if !prod.is_zero() {
                    queue.push(prod);
                }
            }
        }
        ImageAlgebra { dim, components }
    }

    pub fn dim(&self) -> usize {
        self.components.values().map(Subspace::dim).sum()
    }

    /// Basis of the Jacobson radical, one component at a time.
    pub fn radical(&self) -> Vec<SparseVec<F>> {
        let dim = self.dim;
        let transpose = |v: &SparseVec<F>| v.reindex(|idx| Some((idx % dim) * dim + idx / dim));
        let mut out = Vec::new();
        for ((wo, wi, d), comp) in &self.components {
            let op_key = (wi.clone(), wo.clone(), -d);
            let op: Vec<SparseVec<F>> = match self.components.get(&op_key) {
                Some(s) => s.basis().iter().map(transpose).collect(),
                None => Vec::new(),
            };
            // gram[i][j] = tr(a_i b_j) = <a_i, b_j^T>; kernel of the transpose
            let n = comp.dim();
            let columns =
                op.iter().map(|bt| SparseVec::from_pairs(comp.basis().iter().enumerate().map(|(i, a)| (i, a.dot(bt)))));
            let rows = Subspace::spanned_by(columns);
            for lambda in rows.null_space(n) {
                let el = lambda.iter().fold(SparseVec::zero(), |acc, (i, c)| acc.add_scaled(&comp.basis()[*i], c));
                out.push(el);
            }
        }
        out
    }

    /// Columns of a flattened element, as vectors of `M`.
    pub fn columns(&self, el: &SparseVec<F>) -> Vec<SparseVec<F>> {
        let mut cols: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for (idx, c) in el.iter() {
            cols.entry(idx % self.dim).or_default().push((idx / self.dim, c.clone()));
        }
        cols.into_values().map(SparseVec::from_pairs).collect()
    }
}

/// Structure of a module computed from its radical.
pub struct RadicalData<F> {
    pub radical: Vec<SparseVec<F>>,
    pub algebra_dim: usize,
    /// `rad(A) M`.
    pub rad_module: Subspace<F>,
}

impl<F: Field> GradedModule<F> {
    pub fn radical_data(&self) -> RadicalData<F> {
        let alg = ImageAlgebra::of(self);
        let radical = alg.radical();
        let mut rad_module = Subspace::new();
        for el in &radical {
            for col in alg.columns(el) {
                rad_module.insert(col);
            }
        }
        RadicalData { algebra_dim: alg.dim(), radical, rad_module }
    }

    /// The radical `rad(A) M` of the module, a submodule.
    pub fn radical_submodule(&self) -> Subspace<F> {
        self.radical_data().rad_module
    }

    /// `M / rad M`.
    pub fn cosocle(&self) -> GradedModule<F> {
        self.quotient(&self.radical_submodule())
    }

    /// The socle: vectors killed by the radical of the image algebra.
    pub fn socle_subspace(&self) -> Subspace<F> {
        let dim = self.dim();
        let rad = ImageAlgebra::of(self).radical();
        let mut out = Subspace::new();
        for (_, _, block) in self.blocks() {
            let local: HashMap<usize, usize> = block.iter().enumerate().map(|(k, &b)| (b, k)).collect();
            let mut eqs: Subspace<F> = Subspace::new();
            for el in &rad {
                let mut rows: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
                for (idx, c) in el.iter() {
                    if let Some(&k) = local.get(&(idx % dim)) {
                        rows.entry(idx / dim).or_default().push((k, c.clone()));
                    }
                }
                for row in rows.into_values() {
                    eqs.insert(SparseVec::from_pairs(row));
                }
            }
            for v in eqs.null_space(block.len()) {
                out.insert(v.reindex(|k| Some(block[k])));
            }
        }
        out
    }

    pub fn socle(&self) -> GradedModule<F> {
        self.submodule(&self.socle_subspace())
    }

    /// The largest submodule contained in `{m : m_b = 0 for b in coords}`:
    /// the annihilator of the functionals generated from the coordinate
    /// functionals under the transposed action.
    pub fn largest_submodule_avoiding(&self, coords: &[usize]) -> Subspace<F> {
        let gens = self.gens();
        let mut functionals: Subspace<F> = Subspace::new();
        let mut queue: Vec<SparseVec<F>> = coords.iter().map(|&c| SparseVec::unit(c)).collect();
        let transposes: Vec<SparseMatrix<F>> = gens.iter().map(|g| self.gen(*g).transpose()).collect();
        while let Some(f) = queue.pop() {
            if functionals.insert(f.clone()) {
                for t in &transposes {
                    let img = t.apply(&f);
                    if !img.is_zero() {
                        queue.push(img);
                    }
                }
            }
        }
        Subspace::spanned_by(functionals.null_space(self.dim()))
    }

    /// Dimension of `End_A(M)` in degree `d`.
    pub fn endomorphisms(&self, d: i32) -> Vec<SparseMatrix<F>> {
        hom_space(self, self, d)
    }

    /// Total dimension of the commutant `End_A(M)`.
    pub fn commutant_dim(&self) -> usize {
        let degs: Vec<i32> = self.basis().iter().map(|b| b.degree).collect();
        let mut shifts: Vec<i32> = degs.iter().flat_map(|a| degs.iter().map(move |b| a - b)).collect();
        shifts.sort();
        shifts.dedup();
        shifts.into_iter().map(|d| hom_space(self, self, d).len()).sum()
    }

    /// Simplicity over the algebraic closure: `rad(A) M = 0` and the
    /// commutant is one-dimensional.
    pub fn is_simple(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        if let Some(answer) = self.simple_by_thin_block() {
            return answer;
        }
        self.is_simple_by_radical()
    }

    /// The trace-form test alone, without shortcuts.
    pub fn is_simple_by_radical(&self) -> bool {
        self.dim() > 0 && self.radical_submodule().dim() == 0 && self.commutant_dim() == 1
    }

    /// A basis vector spanning a one-dimensional (word, degree) block.
    pub fn thin_block(&self) -> Option<usize> {
        self.blocks().into_iter().find(|(_, _, v)| v.len() == 1).map(|(_, _, v)| v[0])
    }

    /// If the (word, degree) block of `v` is one-dimensional, `M` is simple
    /// exactly when `v` generates `M` and no nonzero submodule avoids `v`.
    /// An endomorphism is then fixed by the scalar it multiplies `v` by, so
    /// the commutant is one-dimensional as well.
    pub fn simple_by_thin_block(&self) -> Option<bool> {
        let b = self.thin_block()?;
        if self.generated([SparseVec::unit(b)]).dim() != self.dim() {
            return Some(false);
        }
        Some(self.largest_submodule_avoiding(&[b]).dim() == 0)
    }

    /// A simple submodule, assuming the socle is simple (so that every
    /// nonzero submodule contains it). Shrinks along thin blocks and falls
    /// back to the radical socle when no thin block is left.
    pub fn simple_socle(&self) -> GradedModule<F> {
        let mut cur = self.clone();
        loop {
            let Some(b) = cur.thin_block() else {
                return cur.socle();
            };
            let gen = cur.generated([SparseVec::unit(b)]);
            if gen.dim() != cur.dim() {
                cur = cur.submodule(&gen);
                continue;
            }
            let avoid = cur.largest_submodule_avoiding(&[b]);
            if avoid.dim() == 0 {
                return cur;
            }
            cur = cur.submodule(&avoid);
        }
    }
}

/// Basis of the degree-`d` homomorphisms `M -> N` (maps raising degree by
/// `d`), as `dim N x dim M` matrices.
pub fn hom_space<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>, d: i32) -> Vec<SparseMatrix<F>> {
    assert_eq!(m.height(), n.height());
    let (dm, dn) = (m.dim(), n.dim());
    // unknowns phi[r][c] with matching word and deg r = deg c + d
    let mut unknown: HashMap<(usize, usize), usize> = HashMap::new();
    let mut list = Vec::new();
    let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); dm];
    for c in 0..dm {
        for r in 0..dn {
            let (bm, bn) = (&m.basis()[c], &n.basis()[r]);
            if bm.word == bn.word && bn.degree == bm.degree + d {
                unknown.insert((r, c), list.len());
                list.push((r, c));
                by_col[c].push(r);
            }
        }
    }
    if list.is_empty() {
        return Vec::new();
    }
    let mut eqs: Subspace<F> = Subspace::new();
    for g in m.gens() {
        let (gm, gn) = (m.gen(g), n.gen(g));
        for c in 0..dm {
            // (phi g_M - g_N phi) e_c, one equation per output row
            let mut rows: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
            for (c2, x) in gm.column(c).iter() {
                for &r in &by_col[*c2] {
                    rows.entry(r).or_default().push((unknown[&(r, *c2)], x.clone()));
                }
            }
            for &r2 in &by_col[c] {
                for (r, x) in gn.column(r2).iter() {
                    rows.entry(*r).or_default().push((unknown[&(r2, c)], x.neg()));
                }
            }
            for row in rows.into_values() {
                let v = SparseVec::from_pairs(merge(row));
                if !v.is_zero() {
                    eqs.insert(v);
                }
            }
        }
    }
    eqs.null_space(list.len())
        .into_iter()
        .map(|sol| {
            let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); dm];
            for (k, x) in sol.iter() {
                let (r, c) = list[*k];
                cols[c].push((r, x.clone()));
            }
            SparseMatrix::from_columns(dn, cols.into_iter().map(SparseVec::from_pairs).collect())
        })
        .collect()
}

fn merge<F: Field>(mut pairs: Vec<(usize, F)>) -> Vec<(usize, F)> {
    pairs.sort_by_key(|p| p.0);
    let mut out: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
    for (k, x) in pairs {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = last.1.add(&x),
            _ => out.push((k, x)),
        }
    }
    out.retain(|p| !p.1.is_zero());
    out
}

fn is_invertible<F: Field>(a: &SparseMatrix<F>) -> bool {
    a.rows() == a.cols() && Subspace::spanned_by(a.columns().iter().cloned()).dim() == a.rows()
}

/// A degree-preserving isomorphism `M -> N`, if one exists.
pub fn isomorphism<F: Field>(m: &GradedModule<F>, n: &GradedModule<F>) -> Option<SparseMatrix<F>> {
    if m.character() != n.character() {
        return None;
    }
    let homs = hom_space(m, n, 0);
    if homs.is_empty() {
        return if m.dim() == 0 { Some(SparseMatrix::zeros(0, 0)) } else { None };
    }
    // a generic combination is invertible if any is; try a few integer ones
    for attempt in 0..8i64 {
        let mut phi = SparseMatrix::zeros(n.dim(), m.dim());
        for (k, h) in homs.iter().enumerate() {
            let c = F::from_int(1 + (attempt + 1) * k as i64 + attempt * attempt * (k * k) as i64);
            phi = phi.add(&h.scale(&c));
        }
        if is_invertible(&phi) {
            return Some(phi);
        }
    }
    None
}
