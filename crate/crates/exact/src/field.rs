use std::fmt;

use crate::rat::Rat;
use crate::ratfunc::RatFunc;

/// A field of characteristic zero with exact arithmetic.
///
/// Implemented by [`Rat`] (the rationals) and [`RatFunc`] (rational functions
/// in named parameters). Values are immutable; every operation returns a new
/// value.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rat(q: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    /// Size heuristic used when choosing pivots; smaller is cheaper.
    fn complexity(&self) -> usize;
    /// Converts a rational function into this field, if it lies in it.
    fn from_ratfunc(r: &RatFunc) -> Option<Self>;
    fn to_ratfunc(&self) -> RatFunc;
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_int(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Rat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rat::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Rat::neg(self)
    }
    fn inv(&self) -> Self {
        Rat::inv(self)
    }
    fn div(&self, rhs: &Self) -> Self {
        Rat::div(self, rhs)
    }
    fn complexity(&self) -> usize {
        self.bits()
    }
    fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        r.as_constant()
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::constant(self.clone())
    }
}
