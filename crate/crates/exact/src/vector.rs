//! Sparse vectors and subspaces kept in reduced echelon form.

use crate::field::Field;

/// A sparse vector: sorted `(index, value)` pairs with nonzero values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    pub fn single(i: usize, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) pairs.
    pub fn from_pairs<I: IntoIterator<Item = (usize, F)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, F)> = pairs.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.add(&c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut out = vec![F::zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x.neg())).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i].0 < b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 > b[j].0 {
                out.push((b[j].0, b[j].1.mul(c)));
                j += 1;
            } else {
                let s = a[i].1.add(&b[j].1.mul(c));
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(k, x)| (*k, x.mul(c))));
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one().neg())
    }

    pub fn dot(&self, other: &Self) -> F {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = F::zero();
        while i < a.len() && j < b.len() {
            if a[i].0 < b[j].0 {
                i += 1;
            } else if a[i].0 > b[j].0 {
                j += 1;
            } else {
                acc = acc.add(&a[i].1.mul(&b[j].1));
                i += 1;
                j += 1;
            }
        }
        acc
    }

    /// Applies `f` to every entry and drops zeros.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (*i, f(c))).filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Reindexes entries through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        Self::from_pairs(self.entries.iter().filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))))
    }
}

/// A subspace of `F^n`, stored as a reduced echelon basis: each basis vector
/// has a pivot coordinate where it equals one and every other basis vector is
/// zero.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    basis: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Default for Subspace<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Subspace<F> {
    pub fn new() -> Self {
        Subspace { basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<I: IntoIterator<Item = SparseVec<F>>>(vectors: I) -> Self {
        let mut s = Self::new();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivots.contains(&i)
    }

    /// Eliminates the pivot coordinates of `v`.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r.get(p);
            if !c.is_zero() {
                r = r.add_scaled(b, &c.neg());
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false when it was already contained.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(&v);
        if r.is_zero() {
            return false;
        }
        let (p, c) = r.iter().min_by_key(|(i, c)| (c.complexity(), *i)).map(|(i, c)| (*i, c.clone())).expect("nonzero");
        let r = r.scale(&c.inv());
        for b in self.basis.iter_mut() {
            let k = b.get(p);
            if !k.is_zero() {
                *b = b.add_scaled(&r, &k.neg());
            }
        }
        self.basis.push(r);
        self.pivots.push(p);
        true
    }

    /// Basis of the vectors in `F^n` orthogonal (under the plain dot product)
    /// to every vector of this subspace, i.e. the null space of the matrix
    /// whose rows span it.
    pub fn null_space(&self, n: usize) -> Vec<SparseVec<F>> {
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        (0..n)
            .filter(|f| !pivot_set.contains(f))
            .map(|f| {
                let mut pairs = vec![(f, F::one())];
                for (b, &p) in self.basis.iter().zip(&self.pivots) {
                    let c = b.get(f);
                    if !c.is_zero() {
                        pairs.push((p, c.neg()));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v.get(p)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn subspace_insert_reduce_coordinates() {
        let mut s = Subspace::new();
        let a = SparseVec::from_dense(&[r(1), r(2), r(0)]);
        let b = SparseVec::from_dense(&[r(0), r(1), r(1)]);
        assert!(s.insert(a.clone()));
        assert!(s.insert(b.clone()));
        assert!(!s.insert(a.add(&b.scale(&r(3)))));
        assert_eq!(s.dim(), 2);
        let v = a.scale(&r(2)).sub(&b);
        let coords = s.coordinates(&v).unwrap();
        let rebuilt = s.basis().iter().zip(&coords).fold(SparseVec::zero(), |acc, (bv, c)| acc.add_scaled(bv, c));
        assert_eq!(rebuilt, v);
        assert!(s.coordinates(&SparseVec::unit(2).add(&SparseVec::unit(0))).is_none());
    }

    #[test]
    fn null_space_is_orthogonal_and_complementary() {
        let rows = [
            SparseVec::from_dense(&[r(1), r(2), r(0), r(-1)]),
            SparseVec::from_dense(&[r(2), r(4), r(1), r(0)]),
            SparseVec::from_dense(&[r(3), r(6), r(1), r(-1)]),
        ];
        let s = Subspace::spanned_by(rows.iter().cloned());
        let ns = s.null_space(4);
        assert_eq!(ns.len() + s.dim(), 4);
        for k in &ns {
            for row in &rows {
                assert!(row.dot(k).is_zero());
            }
        }
        assert_eq!(Subspace::spanned_by(ns).dim(), 2);
    }
}
