use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::{Ring, Q};

/// A finitely supported formal combination `sum c_b b`; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct LinComb<B: Ord + Clone, C: Ring> {
    terms: BTreeMap<B, C>,
}

impl<B: Ord + Clone, C: Ring> Default for LinComb<B, C> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone, C: Ring> LinComb<B, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::single(b, C::one())
    }

    pub fn single(b: B, c: C) -> Self {
        let mut v = Self::zero();
        v.add_term(b, c);
        v
    }

    pub fn add_term(&mut self, b: B, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (b, c) in &o.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, c: &C, o: &Self) {
        for (b, d) in &o.terms {
            self.add_term(b.clone(), c.times(d));
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(&C::from_q(Q::from_int(-1)), o);
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = Self::zero();
        r.add_scaled(c, self);
        r
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        self.scale(&C::from_q(q.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Option<&C> {
        self.terms.get(b)
    }

    pub fn terms(&self) -> &BTreeMap<B, C> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &C)> {
        self.terms.iter()
    }

    /// Applies `f` to every coefficient, dropping results that vanish.
    pub fn try_map_coeffs<D: Ring, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<LinComb<B, D>, E> {
        let mut r = LinComb::zero();
        for (b, c) in &self.terms {
            r.add_term(b.clone(), f(c)?);
        }
        Ok(r)
    }

    /// Relabels basis elements, merging collisions.
    pub fn map_basis<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> B2) -> LinComb<B2, C> {
        let mut r = LinComb::zero();
        for (b, c) in &self.terms {
            r.add_term(f(b), c.clone());
        }
        r
    }
}

impl<B: Ord + Clone, C: Ring> FromIterator<(B, C)> for LinComb<B, C> {
    fn from_iter<I: IntoIterator<Item = (B, C)>>(iter: I) -> Self {
        let mut r = Self::zero();
        for (b, c) in iter {
            r.add_term(b, c);
        }
        r
    }
}

impl<B: Ord + Clone + fmt::Display, C: Ring> fmt::Display for LinComb<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(b, c)| format!("({}) {}", c, b)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
