//! Exact arithmetic kernel: rationals, parameter scalars, sparse
//! polynomials and rational functions with factored linear denominators.

pub mod json;
pub mod param;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod var;

use std::fmt;

pub use param::{AffineForm, ParamFrac, ParamScalar};
pub use poly::{Monomial, Polynomial};
pub use ratfun::{Denominator, LinearFactor, RationalFunction};
pub use rational::Q;
pub use var::{num_vars, row_slots, VarIndex, MAX_RANK, MAX_VARS};

/// Commutative coefficient rings used by module vectors and matrices.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn from_q(q: Q) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;

    fn one() -> Self {
        Self::from_q(Q::one())
    }

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Q::zero()
    }
    fn from_q(q: Q) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Ring for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn from_q(q: Q) -> Self {
        Polynomial::constant(q)
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn from_q(q: Q) -> Self {
        RationalFunction::constant(q)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

impl Ring for ParamFrac {
    fn zero() -> Self {
        ParamFrac::zero()
    }
    fn from_q(q: Q) -> Self {
        ParamFrac::from_q(q)
    }
    fn is_zero(&self) -> bool {
        ParamFrac::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

/// Builds a point (one scalar per flat slot) from rows `1..=n`.
pub fn point_from_rows(rows: &[Vec<ParamScalar>]) -> crate::error::Result<Vec<ParamScalar>> {
    for (idx, r) in rows.iter().enumerate() {
        if r.len() != idx + 1 {
            return Err(crate::error::GtError::Invalid(format!(
                "row {} has {} entries, expected {}",
                idx + 1,
                r.len(),
                idx + 1
            )));
        }
    }
    Ok(rows.iter().flatten().cloned().collect())
}
