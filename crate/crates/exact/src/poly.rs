//! Sparse multivariate polynomials over `Q` with lexicographic term order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rat::Rat;

/// A monomial, stored as an exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(v: usize, e: u32) -> Self {
        let mut exps = vec![0; v + 1];
        exps[v] = e;
        Mono::from_exps(exps)
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Mono(exps)
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, rhs: &Mono) -> Mono {
        let n = self.0.len().max(rhs.0.len());
        Mono::from_exps((0..n).map(|v| self.exp(v) + rhs.exp(v)).collect())
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn div(&self, rhs: &Mono) -> Option<Mono> {
        if rhs.0.len() > self.0.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for v in 0..self.0.len() {
            out.push(self.exp(v).checked_sub(rhs.exp(v))?);
        }
        Some(Mono::from_exps(out))
    }

    pub fn gcd(&self, rhs: &Mono) -> Mono {
        let n = self.0.len().min(rhs.0.len());
        Mono::from_exps((0..n).map(|v| self.exp(v).min(rhs.exp(v))).collect())
    }

    fn without(&self, v: usize) -> Mono {
        let mut exps = self.0.clone();
        if v < exps.len() {
            exps[v] = 0;
        }
        Mono::from_exps(exps)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for v in 0..n {
            match self.exp(v).cmp(&other.exp(v)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `Q[x_0, x_1, ...]`. Terms are kept sorted by decreasing
/// monomial in lex order, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Mono, Rat)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn var(v: usize) -> Self {
        Poly { terms: vec![(Mono::var(v, 1), Rat::one())] }
    }

    pub fn term(m: Mono, c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(terms: I) -> Self {
        let mut acc: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert_with(Rat::zero);
            *e = e.add(&c);
        }
        Self::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Mono, Rat>) -> Self {
        Poly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Rat)> {
        self.terms.first()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Variables that occur with positive exponent.
    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.terms {
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    out.insert(v);
                }
            }
        }
        out
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        merge(&self.terms, &rhs.terms, false)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        merge(&self.terms, &rhs.terms, true)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul(k))).collect() }
    }

    pub fn mul_term(&self, m: &Mono, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        // Multiplying by a monomial preserves the term order.
        Poly { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.mul(k))).collect() }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(Rat::zero);
                *e = e.add(&c1.mul(c2));
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv()));
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, Rat)> = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(dm)?;
            let c = rc.div(dc);
            rem = rem.sub(&d.mul_term(&m, &c));
            quot.push((m, c));
        }
        // Quotient terms were produced in decreasing order.
        Some(Poly { terms: quot })
    }

    /// Coefficients as a polynomial in `v`: entry `k` is the coefficient of `v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Rat)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without(v), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_coeffs_in(v: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let vm = Mono::var(v, k as u32);
            for (m, c) in &p.terms {
                terms.push((m.mul(&vm), c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes rational values for the variables in `assign`.
    pub fn substitute(&self, assign: &BTreeMap<usize, Rat>) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exps().to_vec();
            for (v, e) in exps.iter_mut().enumerate() {
                if *e > 0 {
                    if let Some(val) = assign.get(&v) {
                        coeff = coeff.mul(&val.pow(*e));
                        *e = 0;
                    }
                }
            }
            terms.push((Mono::from_exps(exps), coeff));
        }
        Poly::from_terms(terms)
    }

    /// Substitutes polynomials for variables (all occurrences of `v` by `images[v]`).
    pub fn compose(&self, images: &BTreeMap<usize, Poly>) -> Poly {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut rest = Vec::new();
            for (v, &e) in m.exps().iter().enumerate() {
                match images.get(&v) {
                    Some(img) if e > 0 => {
                        t = t.mul(&img.pow(e));
                        rest.push(0);
                    }
                    _ => rest.push(e),
                }
            }
            acc = acc.add(&t.mul_term(&Mono::from_exps(rest), &Rat::one()));
        }
        acc
    }

    /// Greatest common divisor, normalized to leading coefficient one.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a.terms.len() == 1 || b.terms.len() == 1 {
            let (single, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
            let mut g = single.terms[0].0.clone();
            for (m, _) in &other.terms {
                g = g.gcd(m);
                if g.is_one() {
                    break;
                }
            }
            return Poly::term(g, Rat::one());
        }
        if a == b {
            return a.monic();
        }
        if b.div_exact(a).is_some() {
            return a.monic();
        }
        if a.div_exact(b).is_some() {
            return b.monic();
        }
        let v = *a.vars().union(&b.vars()).max().expect("nonconstant");
        let (da, db) = (a.degree_in(v), b.degree_in(v));
        if da == 0 {
            return Poly::gcd(a, &b.content_in(v));
        }
        if db == 0 {
            return Poly::gcd(&a.content_in(v), b);
        }
        let (ca, cb) = (a.content_in(v), b.content_in(v));
        let c = Poly::gcd(&ca, &cb);
        let mut p = a.div_exact(&ca).expect("content divides");
        let mut q = b.div_exact(&cb).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = pseudo_rem(&p, &q, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                q = Poly::one();
                break;
            }
            let r = r.div_exact(&r.content_in(v)).expect("content divides").monic();
            p = q;
            q = r;
        }
        let q = q.div_exact(&q.content_in(v)).expect("content divides");
        c.mul(&q).monic()
    }

    /// Gcd of the coefficients of `self` viewed as a polynomial in `v`.
    pub fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero();
        for coeff in self.coeffs_in(v).iter().rev() {
            if coeff.is_zero() {
                continue;
            }
            g = Poly::gcd(&g, coeff);
            if g.is_constant() {
                return Poly::one();
            }
        }
        g.monic()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { c.neg() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn merge(a: &[(Mono, Rat)], b: &[(Mono, Rat)], negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let bval = |c: &Rat| if negate_b { c.neg() } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), bval(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), bval(c))));
    Poly { terms: out }
}

/// Pseudo-remainder of `p` by `q` as polynomials in `v`, up to a factor that is
/// a power of the leading coefficient of `q`.
fn pseudo_rem(p: &Poly, q: &Poly, v: usize) -> Poly {
    let qc = q.coeffs_in(v);
    let n = qc.len() - 1;
    let lq = qc[n].clone();
    let mut r = p.coeffs_in(v);
    loop {
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() || r.len() - 1 < n {
            break;
        }
        let d = r.len() - 1;
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = c.mul(&lq);
        }
        for (k, qk) in qc.iter().enumerate() {
            let idx = d - n + k;
            r[idx] = r[idx].sub(&lr.mul(qk));
        }
        debug_assert!(r[d].is_zero());
    }
    Poly::from_coeffs_in(v, &r)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn z() -> Poly {
        Poly::var(2)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(Rat::from_int(n))
    }

    #[test]
    fn lex_order_and_display() {
        let p = y().add(&x().mul(&x())).add(&c(3));
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(p.fmt_with(&names), "a^2 + b + 3");
        assert_eq!(p.sub(&p), Poly::zero());
    }

    #[test]
    fn exact_division() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&x()), None);
    }

    #[test]
    fn gcd_multivariate() {
        let common = x().mul(&y()).add(&z()).add(&c(1));
        let a = common.mul(&x().sub(&c(2)));
        let b = common.mul(&y().add(&z()));
        assert_eq!(Poly::gcd(&a, &b), common.monic());
        assert_eq!(Poly::gcd(&x(), &y()), Poly::one());
        assert_eq!(Poly::gcd(&x().mul(&x()).mul(&y()), &x().mul(&y()).mul(&y()).add(&x())), x());
    }

    #[test]
    fn gcd_univariate_rational() {
        let a = x().mul(&x()).sub(&c(4)).scale(&Rat::new(1, 3));
        let b = x().sub(&c(2)).mul(&x().add(&c(7)));
        assert_eq!(Poly::gcd(&a, &b), x().sub(&c(2)));
    }

    #[test]
    fn substitution() {
        let p = x().mul(&y()).add(&c(1));
        let mut assign = BTreeMap::new();
        assign.insert(0, Rat::from_int(3));
        assert_eq!(p.substitute(&assign), y().scale(&Rat::from_int(3)).add(&c(1)));
        let mut images = BTreeMap::new();
        images.insert(1, x().add(&c(1)));
        assert_eq!(p.compose(&images), x().mul(&x()).add(&x()).add(&c(1)));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 1..5).prop_map(|ts| {
            Poly::from_terms(ts.into_iter().map(|((a, b, c), k)| (Mono::from_exps(vec![a, b, c]), Rat::from_int(k))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn gcd_divides_and_is_maximal(a in arb_poly(), b in arb_poly(), g in arb_poly()) {
            prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
            let (ga, gb) = (g.mul(&a), g.mul(&b));
            let d = Poly::gcd(&ga, &gb);
            prop_assert!(ga.div_exact(&d).is_some());
            prop_assert!(gb.div_exact(&d).is_some());
            prop_assert!(d.div_exact(&g.monic()).is_some());
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
