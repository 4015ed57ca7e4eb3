//! Rational functions over `Q` in canonical reduced form.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;
use crate::poly::Poly;
use crate::rat::Rat;

/// A quotient `num / den` of polynomials with `gcd(num, den) = 1` and `den`
/// monic in lex order, so that equal functions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("denominator vanishes under the substitution")]
    DenominatorVanishes,
}

impl RatFunc {
    pub fn constant(c: Rat) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn var(v: usize) -> Self {
        Self::from_poly(Poly::var(v))
    }

    /// Builds `num / den` in canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        if let Some(d) = den.constant_value() {
            return RatFunc { num: num.scale(&d.inv()), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading().expect("nonzero").1.clone();
        if !lc.is_one() {
            let k = lc.inv();
            num = num.scale(&k);
            den = den.scale(&k);
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Substitutes rational values for some of the variables.
    pub fn substitute(&self, assign: &BTreeMap<usize, Rat>) -> Result<RatFunc, SubstError> {
        let den = self.den.substitute(assign);
        if den.is_zero() {
            return Err(SubstError::DenominatorVanishes);
        }
        Ok(RatFunc::new(self.num.substitute(assign), den))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.num.fmt_with(names);
        if self.den.is_constant() {
            return n;
        }
        let d = self.den.fmt_with(names);
        let wrap = |s: String, p: &Poly| if p.num_terms() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }

    fn both_const(&self, rhs: &Self) -> Option<(Rat, Rat)> {
        Some((self.as_constant()?, rhs.as_constant()?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&[]))
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    fn from_int(n: i64) -> Self {
        RatFunc::constant(Rat::from_int(n))
    }

    fn from_rat(q: &Rat) -> Self {
        RatFunc::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.constant_value().is_some_and(|c| c.is_one())
    }

    fn add(&self, rhs: &Self) -> Self {
        if let Some((a, b)) = self.both_const(rhs) {
            return RatFunc::constant(a.add(&b));
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_constant() {
                return RatFunc::from_poly(self.num.add(&rhs.num));
            }
            return RatFunc::new(self.num.add(&rhs.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let ld = self.den.div_exact(&g).expect("gcd divides");
        let rd = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&rd).add(&rhs.num.mul(&ld));
        RatFunc::new(num, self.den.mul(&rd))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if let Some((a, b)) = self.both_const(rhs) {
            return RatFunc::constant(a.mul(&b));
        }
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return RatFunc { num: rhs.num.scale(&c), den: rhs.den.clone() };
        }
        if let Some(c) = rhs.as_constant() {
            return RatFunc { num: self.num.scale(&c), den: self.den.clone() };
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RatFunc::from_poly(self.num.mul(&rhs.num));
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let k = lc.inv();
            RatFunc { num: num.scale(&k), den: den.scale(&k) }
        }
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        if let Some(c) = self.as_constant() {
            return RatFunc::constant(c.inv());
        }
        let lc = self.num.leading().expect("nonzero").1.inv();
        RatFunc { num: self.den.scale(&lc), den: self.num.scale(&lc) }
    }

    fn complexity(&self) -> usize {
        if let Some(c) = self.as_constant() {
            return c.bits();
        }
        64 * (self.num.num_terms() + self.den.num_terms())
    }

    fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        Some(r.clone())
    }

    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: usize) -> RatFunc {
        RatFunc::var(i)
    }
    fn k(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn canonical_form_makes_equality_decidable() {
        // (a^2 - 1)/(2a - 2) == (a + 1)/2
        let a = v(0);
        let lhs = a.mul(&a).sub(&k(1)).div(&k(2).mul(&a).sub(&k(2)));
        let rhs = a.add(&k(1)).div(&k(2));
        assert_eq!(lhs, rhs);
        assert!(lhs.is_polynomial());
        let t = a.div(&v(1)).add(&v(1).div(&a));
        assert_eq!(t.mul(&a).mul(&v(1)), a.mul(&a).add(&v(1).mul(&v(1))));
    }

    #[test]
    fn substitution_detects_vanishing_denominator() {
        let f = k(1).div(&v(0));
        let mut assign = BTreeMap::new();
        assign.insert(0, Rat::zero());
        assert_eq!(f.substitute(&assign), Err(SubstError::DenominatorVanishes));
        assign.insert(0, Rat::from_int(4));
        assert_eq!(f.substitute(&assign).unwrap(), RatFunc::constant(Rat::new(1, 4)));
    }

    fn arb_rf() -> impl Strategy<Value = RatFunc> {
        let atom = prop_oneof![(-3i64..4).prop_map(k), (0usize..3).prop_map(v),];
        proptest::collection::vec((atom.clone(), atom), 1..4).prop_map(|pairs| {
            pairs.into_iter().fold(RatFunc::zero(), |acc, (p, q)| {
                let q = if q.is_zero() { k(1) } else { q };
                acc.add(&p.div(&q.add(&k(5))))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn field_axioms(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).mul(&b), a.clone());
            }
        }
    }
}
