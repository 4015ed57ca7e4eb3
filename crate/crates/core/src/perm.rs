//! Permutations, minimal coset representatives and reduced words.
//!
//! Generators are 0-based: `s_l` swaps positions `l` and `l + 1`. A word
//! `(a_1, ..., a_k)` denotes the product `s_{a_1} ... s_{a_k}`.

use std::collections::{HashMap, VecDeque};

/// A permutation in one-line notation: `self.0[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(n);
        for &a in word.iter().rev() {
            w = w.left_mul_s(a);
        }
        w
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &w) in self.0.iter().enumerate() {
            inv[w] = i;
        }
        Perm(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// `s_l * self`.
    pub fn left_mul_s(&self, l: usize) -> Self {
        Perm(
            self.0
                .iter()
                .map(|&v| {
                    if v == l {
                        l + 1
                    } else if v == l + 1 {
                        l
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// `self * s_l`.
    pub fn right_mul_s(&self, l: usize) -> Self {
        let mut w = self.0.clone();
        w.swap(l, l + 1);
        Perm(w)
    }

    /// `l(s_l self) < l(self)`.
    pub fn has_left_descent(&self, l: usize) -> bool {
        let inv = self.inverse();
        inv.0[l] > inv.0[l + 1]
    }

    /// `l(self s_l) < l(self)`.
    pub fn has_right_descent(&self, l: usize) -> bool {
        self.0[l] > self.0[l + 1]
    }

    /// The lexicographically smallest reduced word.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::with_capacity(self.length());
        while let Some(l) = (0..w.size().saturating_sub(1)).find(|&l| w.has_left_descent(l)) {
            out.push(l);
            w = w.left_mul_s(l);
        }
        out
    }

    /// Whether `self` is the minimal length representative of its coset
    /// modulo the Young subgroup `S_m x S_{n-m}` acting on the right.
    pub fn is_min_coset_rep(&self, m: usize) -> bool {
        (0..self.size().saturating_sub(1)).all(|l| l + 1 == m || !self.has_right_descent(l))
    }

    /// Places letter `k` of `word` at position `self(k)`.
    pub fn act_on<T: Clone>(&self, word: &[T]) -> Vec<T> {
        let mut out = word.to_vec();
        for (k, x) in word.iter().enumerate() {
            out[self.0[k]] = x.clone();
        }
        out
    }
}

/// Minimal length representatives of `S_{m+n} / (S_m x S_n)`, ordered by
/// length and then by canonical word. The identity comes first.
pub fn min_coset_reps(m: usize, n: usize) -> Vec<Perm> {
    let total = m + n;
    let mut reps = Vec::new();
    // choose the images of 0..m as an increasing sequence
    let mut chosen = Vec::with_capacity(m);
    fn rec(start: usize, total: usize, m: usize, chosen: &mut Vec<usize>, reps: &mut Vec<Perm>) {
        if chosen.len() == m {
            let rest: Vec<usize> = (0..total).filter(|v| !chosen.contains(v)).collect();
            reps.push(Perm(chosen.iter().copied().chain(rest).collect()));
            return;
        }
        for v in start..total {
            chosen.push(v);
            rec(v + 1, total, m, chosen, reps);
            chosen.pop();
        }
    }
    rec(0, total, m, &mut chosen, &mut reps);
    reps.sort_by_cached_key(|w| (w.length(), w.canonical_word()));
    reps
}

/// All permutations of `0..n`, ordered by length and canonical word.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![Perm::identity(n)];
    let mut frontier = out.clone();
    let mut seen: std::collections::HashSet<Perm> = out.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..n.saturating_sub(1) {
                let v = w.left_mul_s(l);
                if v.length() > w.length() && seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by_cached_key(|w| (w.length(), w.canonical_word()));
    out
}

/// An elementary move between reduced words at position `pos`: a commutation
/// `ab -> ba` with `|a - b| > 1` or a braid move `aba -> bab` with
/// `|a - b| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub pos: usize,
    pub braid: bool,
}

impl Move {
    pub fn apply(&self, word: &mut [usize]) {
        if self.braid {
            let (a, b) = (word[self.pos], word[self.pos + 1]);
            word[self.pos] = b;
            word[self.pos + 1] = a;
            word[self.pos + 2] = b;
        } else {
            word.swap(self.pos, self.pos + 1);
        }
    }
}

fn moves_from(word: &[usize]) -> Vec<Move> {
    let mut out = Vec::new();
    for pos in 0..word.len().saturating_sub(1) {
        if word[pos].abs_diff(word[pos + 1]) > 1 {
            out.push(Move { pos, braid: false });
        }
        if pos + 2 < word.len() && word[pos] == word[pos + 2] && word[pos].abs_diff(word[pos + 1]) == 1 {
            out.push(Move { pos, braid: true });
        }
    }
    out
}

/// A shortest sequence of moves turning the reduced word `from` into the
/// reduced word `to`. Both must represent the same permutation.
pub fn rewrite_path(from: &[usize], to: &[usize]) -> Option<Vec<Move>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut parent: HashMap<Vec<usize>, (Vec<usize>, Move)> = HashMap::new();
    let mut queue = VecDeque::from([from.to_vec()]);
    parent.insert(from.to_vec(), (Vec::new(), Move { pos: usize::MAX, braid: false }));
    while let Some(w) = queue.pop_front() {
        for mv in moves_from(&w) {
            let mut next = w.clone();
            mv.apply(&mut next);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), (w.clone(), mv));
            if next == to {
                let mut path = Vec::new();
                let mut cur = next;
                while cur != from {
                    let (prev, mv) = parent[&cur].clone();
                    path.push(mv);
                    cur = prev;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(next);
        }
    }
    None
}
