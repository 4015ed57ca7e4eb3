use std::collections::BTreeMap;
use std::fmt;

/// An element of `Z[q, q^-1]`.
///
/// Stored as a sparse map from exponent to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * q^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(e, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds `sum_k coeffs[k] q^(offset + k)`.
    pub fn from_coeff_list(offset: i32, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (offset + k as i32, c)))
    }

    /// Returns `(offset, coefficient list)`; the zero polynomial is `(0, [])`.
    pub fn to_coeff_list(&self) -> (i32, Vec<i64>) {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo, (lo..=hi).map(|e| self.coeff(e)).collect()),
            _ => (0, Vec::new()),
        }
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `q^r`.
    pub fn shift(&self, r: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + r, c)))
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    /// Exact division; `None` when `rhs` does not divide `self` in `Z[q, q^-1]`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (rlo, rhi) = (rhs.min_degree()?, rhs.max_degree()?);
        let lead = rhs.coeff(rhi);
        let floor = match self.min_degree() {
            Some(lo) => lo - rlo,
            None => return Some(Self::zero()),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_degree() {
            let c = rem.coeff(hi);
            if c % lead != 0 || hi - rhi < floor {
                return None;
            }
            let t = Self::monomial(hi - rhi, c / lead);
            rem = rem.sub(&t.mul(rhs));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// The quantum integer `[n]_d = (q^(dn) - q^(-dn)) / (q^d - q^(-d))`.
    pub fn quantum_int(n: u32, d: u32) -> Self {
        let (n, d) = (n as i32, d as i32);
        Self::from_terms((0..n).map(|k| (d * (n - 1 - 2 * k), 1)))
    }

    /// `[n]_d! = [1]_d [2]_d ... [n]_d`.
    pub fn quantum_factorial(n: u32, d: u32) -> Self {
        (1..=n).fold(Self::one(), |acc, k| acc.mul(&Self::quantum_int(k, d)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev().map(|(&e, &c)| (e, c)) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
