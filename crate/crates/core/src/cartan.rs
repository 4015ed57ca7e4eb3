//! Cartan data, root-lattice vectors and words.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a vertex of the Dynkin diagram, i.e. a position in the index set.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("Cartan matrix must be square of size {expected}, got a row of length {got}")]
    Shape { expected: usize, got: usize },
    #[error("diagonal entry a[{0},{0}] must be 2")]
    Diagonal(String),
    #[error("off-diagonal entry a[{0},{1}] must be nonpositive")]
    Positive(String, String),
    #[error("a[{0},{1}] = 0 but a[{1},{0}] != 0")]
    ZeroPattern(String, String),
    #[error("symmetrizer entry for {0} must be positive")]
    Symmetrizer(String),
    #[error("d_{0} a[{0},{1}] != d_{1} a[{1},{0}]: matrix is not symmetrized by the given symmetrizer")]
    NotSymmetrizable(String, String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("height {height} exceeds the configured bound {bound}")]
    HeightBound { height: u32, bound: u32 },
    #[error("unknown built-in Cartan datum `{0}` (expected a2, a1affine or a2affine)")]
    UnknownNamed(String),
}

/// A symmetrizable generalized Cartan matrix with its symmetrizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDatum {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
}

impl CartanDatum {
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<i64>>, symmetrizer: Vec<i64>) -> Result<Self, CartanError> {
        let n = labels.len();
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(CartanError::DuplicateLabel(l.clone()));
            }
        }
        if matrix.len() != n {
            return Err(CartanError::Shape { expected: n, got: matrix.len() });
        }
        if symmetrizer.len() != n {
            return Err(CartanError::Shape { expected: n, got: symmetrizer.len() });
        }
        for row in &matrix {
            if row.len() != n {
                return Err(CartanError::Shape { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(CartanError::Diagonal(labels[i].clone()));
            }
            if symmetrizer[i] <= 0 {
                return Err(CartanError::Symmetrizer(labels[i].clone()));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(CartanError::Positive(labels[i].clone(), labels[j].clone()));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(CartanError::ZeroPattern(labels[i].clone(), labels[j].clone()));
                }
                if symmetrizer[i] * matrix[i][j] != symmetrizer[j] * matrix[j][i] {
                    return Err(CartanError::NotSymmetrizable(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(CartanDatum { labels, matrix, symmetrizer })
    }

    /// Finite type A2 on the index set {1, 2}.
    pub fn a2() -> Self {
        Self::new(vec!["1".into(), "2".into()], vec![vec![2, -1], vec![-1, 2]], vec![1, 1]).expect("valid datum")
    }

    /// Affine type A1^(1) on {0, 1}.
    pub fn a1_affine() -> Self {
        Self::new(vec!["0".into(), "1".into()], vec![vec![2, -2], vec![-2, 2]], vec![1, 1]).expect("valid datum")
    }

    /// Affine type A2^(1) on {0, 1, 2}.
    pub fn a2_affine() -> Self {
        Self::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            vec![1, 1, 1],
        )
        .expect("valid datum")
    }

    pub fn named(name: &str) -> Result<Self, CartanError> {
        match name {
            "a2" => Ok(Self::a2()),
            "a1affine" => Ok(Self::a1_affine()),
            "a2affine" => Ok(Self::a2_affine()),
            other => Err(CartanError::UnknownNamed(other.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.rank()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: Vertex) -> &str {
        &self.labels[i]
    }

    pub fn vertex(&self, label: &str) -> Result<Vertex, CartanError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| CartanError::UnknownLabel(label.to_string()))
    }

    pub fn a(&self, i: Vertex, j: Vertex) -> i64 {
        self.matrix[i][j]
    }

    pub fn d(&self, i: Vertex) -> i64 {
        self.symmetrizer[i]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    /// `(alpha_i | alpha_j) = d_i a_ij`.
    pub fn form(&self, i: Vertex, j: Vertex) -> i64 {
        self.symmetrizer[i] * self.matrix[i][j]
    }

    pub fn bilinear(&self, beta: &RootVector, gamma: &RootVector) -> i64 {
        let mut acc = 0;
        for i in self.vertices() {
            for j in self.vertices() {
                acc += beta.mult(i) as i64 * gamma.mult(j) as i64 * self.form(i, j);
            }
        }
        acc
    }

    /// The exponent set `S_ij = {(p, q) >= 0 : (a_i|a_i) p + (a_j|a_j) q = -2 (a_i|a_j)}`.
    pub fn exponent_set(&self, i: Vertex, j: Vertex) -> Vec<(u32, u32)> {
        let (aii, ajj, rhs) = (self.form(i, i), self.form(j, j), -2 * self.form(i, j));
        let mut out = Vec::new();
        let mut p = 0;
        while aii * p <= rhs {
            let rest = rhs - aii * p;
            if rest % ajj == 0 {
                out.push((p as u32, (rest / ajj) as u32));
            }
            p += 1;
        }
        out
    }

    pub fn word_weight(&self, word: &Word) -> RootVector {
        let mut m = vec![0; self.rank()];
        for &v in word.letters() {
            m[v] += 1;
        }
        RootVector(m)
    }

    /// All words of weight `beta` in lexicographic order.
    pub fn enumerate_words(&self, beta: &RootVector, bound: u32) -> Result<Vec<Word>, CartanError> {
        let height = beta.height();
        if height > bound {
            return Err(CartanError::HeightBound { height, bound });
        }
        let mut out = Vec::new();
        let mut remaining = beta.0.clone();
        remaining.resize(self.rank(), 0);
        let mut cur = Vec::new();
        fn rec(rem: &mut [u32], cur: &mut Vec<Vertex>, out: &mut Vec<Word>) {
            if rem.iter().all(|&m| m == 0) {
                out.push(Word(cur.clone()));
                return;
            }
            for i in 0..rem.len() {
                if rem[i] > 0 {
                    rem[i] -= 1;
                    cur.push(i);
                    rec(rem, cur, out);
                    cur.pop();
                    rem[i] += 1;
                }
            }
        }
        rec(&mut remaining, &mut cur, &mut out);
        Ok(out)
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, CartanError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let parts: Vec<&str> = if s.contains(',') {
            s.split(',').map(str::trim).collect()
        } else if self.labels.iter().all(|l| l.chars().count() == 1) {
            s.split("").filter(|p| !p.is_empty()).collect()
        } else {
            vec![s]
        };
        parts.into_iter().map(|p| self.vertex(p)).collect::<Result<Vec<_>, _>>().map(Word)
    }

    /// Concatenated labels when all labels are single characters, otherwise
    /// comma separated.
    pub fn word_string(&self, w: &Word) -> String {
        let short = self.labels.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = w.0.iter().map(|&v| self.label(v)).collect();
        if short {
            parts.concat()
        } else {
            parts.join(",")
        }
    }
}

/// An element of the positive root lattice, given by its multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct RootVector(pub Vec<u32>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: Vertex) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn mult(&self, i: Vertex) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        let n = self.0.len().max(other.0.len());
        RootVector((0..n).map(|i| self.mult(i) + other.mult(i)).collect())
    }

    /// `self - other`, if it stays in the positive cone.
    pub fn checked_sub(&self, other: &RootVector) -> Option<RootVector> {
        let n = self.0.len().max(other.0.len());
        (0..n).map(|i| self.mult(i).checked_sub(other.mult(i))).collect::<Option<Vec<_>>>().map(RootVector)
    }
}

/// A sequence of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Vertex>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Swaps positions `l` and `l + 1` (0-based).
    pub fn swapped(&self, l: usize) -> Word {
        let mut w = self.0.clone();
        w.swap(l, l + 1);
        Word(w)
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn truncated(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
