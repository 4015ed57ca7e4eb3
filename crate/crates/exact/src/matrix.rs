//! Dense exact matrices and linear solving.

use std::fmt;

use crate::field::Field;

/// A dense matrix over an exact field, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Solution set of `A x = b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Solution<F> {
    /// `particular + span(kernel)`.
    Affine {
        particular: Vec<F>,
        kernel: Vec<Vec<F>>,
    },
    Inconsistent,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Reduces to reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best =
                (r..self.rows).filter(|&i| !self.get(i, c).is_zero()).min_by_key(|&i| (self.get(i, c).complexity(), i));
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rv = self.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j).sub(&f.mul(rv));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![F::zero(); self.cols];
                x[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = m.get(r, f).neg();
                }
                x
            })
            .collect()
    }

    /// Solves `A x = b` exactly. Any returned solution is checked by
    /// substitution before it is handed back.
    pub fn solve(&self, b: &[F]) -> Solution<F> {
        assert_eq!(self.rows, b.len(), "right-hand side has wrong length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solution::Inconsistent;
        }
        let mut particular = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            particular[p] = aug.get(r, self.cols).clone();
        }
        assert_eq!(self.mul_vec(&particular), b, "back-substitution check failed");
        let kernel = self.kernel();
        Solution::Affine { particular, kernel }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use crate::ratfunc::RatFunc;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn identity_solves_uniquely() {
        let b = vec![q(3), q(-1), q(7)];
        match Matrix::<Rat>::identity(3).solve(&b) {
            Solution::Affine { particular, kernel } => {
                assert_eq!(particular, b);
                assert!(kernel.is_empty());
            }
            Solution::Inconsistent => panic!("identity system is consistent"),
        }
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let z = Matrix::<Rat>::zeros(3, 4);
        match z.solve(&[q(0), q(0), q(0)]) {
            Solution::Affine { kernel, .. } => assert_eq!(kernel.len(), 4),
            Solution::Inconsistent => panic!("homogeneous system is consistent"),
        }
        assert_eq!(z.solve(&[q(1), q(0), q(0)]), Solution::Inconsistent);
    }

    #[test]
    fn planted_solution_over_rational_functions() {
        // Deterministic 5x5 system over Q(t) with a planted solution.
        let t = RatFunc::var(0);
        let k = |n: i64| RatFunc::from_int(n);
        let mut rows = Vec::new();
        for i in 0..5i64 {
            let mut row = Vec::new();
            for j in 0..5i64 {
                let e = ((i * 7 + j * 3) % 5) - 2;
                let entry = if (i + j) % 3 == 0 { t.mul(&k(e)).add(&k(1)) } else { k(e).add(&t.mul(&t)) };
                row.push(entry);
            }
            rows.push(row);
        }
        let a = Matrix::from_rows(rows);
        let x: Vec<RatFunc> = (0..5).map(|i| k(i).add(&t).div(&t.add(&k(i + 2)))).collect();
        let b = a.mul_vec(&x);
        match a.solve(&b) {
            Solution::Affine { particular, kernel } => {
                if kernel.is_empty() {
                    assert_eq!(particular, x);
                } else {
                    assert_eq!(a.mul_vec(&particular), b);
                }
            }
            Solution::Inconsistent => panic!("planted system is consistent"),
        }
        assert!(a.is_invertible());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(5), q(3)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.kernel().len(), 1);
    }
}
