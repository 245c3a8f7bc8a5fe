//! Rational functions whose denominators are products of linear forms
//! `x_a - x_b - m`.
//!
//! Every denominator produced by the Gelfand-Tsetlin formulas, divided
//! differences and the lattice constructions has this shape, so cancellation
//! is exact trial division by linear forms and no multivariate gcd is needed.

use std::collections::BTreeMap;
use std::fmt;

use super::param::{ParamFrac, ParamScalar};
use super::poly::Polynomial;
use super::rational::Q;
use super::var::x_name;
use crate::error::{GtError, Result};
use crate::symcomb::Refinement;

/// `x_a - x_b - m` with `a < b` (flat slots).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFactor {
    a: usize,
    b: usize,
    m: i64,
}

impl LinearFactor {
    /// The form `x_a - x_b - m` in canonical orientation, together with the
    /// sign relating it to the requested one (`true` when negated).
    pub fn oriented(a: usize, b: usize, m: i64) -> (LinearFactor, bool) {
        assert!(a != b, "degenerate linear factor");
        if a < b {
            (LinearFactor { a, b, m }, false)
        } else {
            (LinearFactor { a: b, b: a, m: -m }, true)
        }
    }

    pub fn first(&self) -> usize {
        self.a
    }

    pub fn second(&self) -> usize {
        self.b
    }

    pub fn shift(&self) -> i64 {
        self.m
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::linear(self.a, self.b, &Q::from_int(self.m))
    }

    /// Exact quotient of `p` by this form, if it divides.
    pub fn divide(&self, p: &Polynomial) -> Option<Polynomial> {
        if !p.may_vanish_on(self.a, self.b, self.m) {
            return None;
        }
        let c = Polynomial::var(self.b).add(&Polynomial::constant(Q::from_int(self.m)));
        p.div_linear(self.a, &c)
    }

    /// Value at a parameter point.
    pub fn eval(&self, v: &[ParamScalar]) -> ParamScalar {
        v[self.a].sub(&v[self.b]).add_int(-self.m)
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", x_name(self.a), x_name(self.b))?;
        match self.m {
            0 => Ok(()),
            m if m > 0 => write!(f, " - {}", m),
            m => write!(f, " + {}", -m),
        }
    }
}

/// Multiset of linear factors.
pub type Denominator = BTreeMap<LinearFactor, u32>;

/// A reduced fraction `num / prod(den)`: no denominator factor divides the
/// numerator, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalFunction {
    num: Polynomial,
    den: Denominator,
}

fn den_poly(den: &Denominator) -> Polynomial {
    let mut p = Polynomial::one();
    for (f, m) in den {
        for _ in 0..*m {
            p = p.mul(&f.to_poly());
        }
    }
    p
}

fn lcm(a: &Denominator, b: &Denominator) -> Denominator {
    let mut out = a.clone();
    for (f, m) in b {
        let e = out.entry(*f).or_insert(0);
        *e = (*e).max(*m);
    }
    out
}

/// Product of the factors of `full` not already in `part`.
fn cofactor(full: &Denominator, part: &Denominator) -> Polynomial {
    let missing: Denominator = full
        .iter()
        .filter_map(|(f, m)| {
            let have = part.get(f).copied().unwrap_or(0);
            (*m > have).then_some((*f, m - have))
        })
        .collect();
    den_poly(&missing)
}

impl RationalFunction {
    pub fn zero() -> RationalFunction {
        RationalFunction::default()
    }

    pub fn one() -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn constant(c: Q) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn var(slot: usize) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::var(slot))
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        RationalFunction { num: p, den: Denominator::new() }
    }

    /// `num / prod(den)`, reduced.
    pub fn new(num: Polynomial, den: Denominator) -> RationalFunction {
        RationalFunction::reduced(num, den)
    }

    /// `1 / (x_a - x_b - m)`.
    pub fn inv_linear(a: usize, b: usize, m: i64) -> RationalFunction {
        let (f, neg) = LinearFactor::oriented(a, b, m);
        let mut den = Denominator::new();
        den.insert(f, 1);
        let num = if neg { -Q::one() } else { Q::one() };
        RationalFunction { num: Polynomial::constant(num), den }
    }

    fn reduced(mut num: Polynomial, den: Denominator) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let mut out = Denominator::new();
        for (f, mut mult) in den {
            while mult > 0 {
                match f.divide(&num) {
                    Some(q) => {
                        num = q;
                        mult -= 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                out.insert(f, mult);
            }
        }
        RationalFunction { num, den: out }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Denominator {
        &self.den
    }

    pub fn denominator_poly(&self) -> Polynomial {
        den_poly(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn to_polynomial(&self) -> Option<Polynomial> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Q) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RationalFunction::reduced(self.num.add(&o.num), self.den.clone());
        }
        let l = lcm(&self.den, &o.den);
        let num = self.num.mul(&cofactor(&l, &self.den)).add(&o.num.mul(&cofactor(&l, &o.den)));
        RationalFunction::reduced(num, l)
    }

    pub fn sub(&self, o: &RationalFunction) -> RationalFunction {
        self.add(&o.neg())
    }

    /// The numerator of `self` written over `den`, which must contain the
    /// current denominator (with multiplicity).
    pub fn numerator_over(&self, den: &Denominator) -> Polynomial {
        for (f, m) in &self.den {
            assert!(den.get(f).copied().unwrap_or(0) >= *m, "denominator {} is not contained in the target", f);
        }
        self.num.mul(&cofactor(den, &self.den))
    }

    /// Sum of many fractions over a single common denominator.
    pub fn sum<'a, I: IntoIterator<Item = &'a RationalFunction>>(items: I) -> RationalFunction {
        let items: Vec<&RationalFunction> = items.into_iter().filter(|r| !r.is_zero()).collect();
        match items.len() {
            0 => return RationalFunction::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut l = Denominator::new();
        for r in &items {
            l = lcm(&l, &r.den);
        }
        // Group terms sharing a denominator before scaling.
        let mut groups: BTreeMap<&Denominator, Polynomial> = BTreeMap::new();
        for r in &items {
            let e = groups.entry(&r.den).or_default();
            *e = e.add(&r.num);
        }
        let mut num = Polynomial::zero();
        for (d, p) in groups {
            num = num.add(&p.mul(&cofactor(&l, d)));
        }
        RationalFunction::reduced(num, l)
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        // Cancel across before multiplying: each operand is already reduced.
        let (mut na, mut db) = (self.num.clone(), o.den.clone());
        let (mut nb, mut da) = (o.num.clone(), self.den.clone());
        cross_cancel(&mut na, &mut db);
        cross_cancel(&mut nb, &mut da);
        let mut den = da;
        for (f, m) in db {
            *den.entry(f).or_insert(0) += m;
        }
        RationalFunction { num: na.mul(&nb), den }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalFunction {
        self.mul(&RationalFunction::from_poly(p.clone()))
    }

    /// Division by `x_a - x_b - m`.
    pub fn div_linear(&self, a: usize, b: usize, m: i64) -> RationalFunction {
        self.mul(&RationalFunction::inv_linear(a, b, m))
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        let mut acc = RationalFunction::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Renames variables: slot `s` becomes slot `perm[s]`.
    pub fn permute(&self, perm: &[usize]) -> RationalFunction {
        let mut num = self.num.permute(perm);
        let mut den = Denominator::new();
        let mut negate = false;
        for (f, m) in &self.den {
            let (g, neg) = LinearFactor::oriented(perm[f.a], perm[f.b], f.m);
            if neg && m % 2 == 1 {
                negate = !negate;
            }
            *den.entry(g).or_insert(0) += m;
        }
        if negate {
            num = num.neg();
        }
        RationalFunction { num, den }
    }

    /// `f(x + z)`.
    pub fn shift(&self, z: &[i64]) -> RationalFunction {
        if z.iter().all(|&s| s == 0) {
            return self.clone();
        }
        let num = self.num.shift(z);
        let at = |s: usize| z.get(s).copied().unwrap_or(0);
        let den =
            self.den.iter().map(|(f, m)| (LinearFactor { a: f.a, b: f.b, m: f.m - (at(f.a) - at(f.b)) }, *m)).collect();
        RationalFunction { num, den }
    }

    /// Value at a parameter point; fails if a denominator factor vanishes there.
    pub fn evaluate(&self, v: &[ParamScalar]) -> Result<ParamFrac> {
        let mut dens = Vec::new();
        for (f, m) in &self.den {
            let val = f.eval(v);
            if val.is_zero() {
                return Err(GtError::DenominatorVanishes(f.to_string()));
            }
            for _ in 0..*m {
                dens.push(val.clone());
            }
        }
        let images: Vec<Polynomial> = v.iter().map(|s| s.to_poly()).collect();
        let num = self.num.compose(&images);
        ParamFrac::new(num, &dens)
    }

    /// Value at a rational point.
    pub fn evaluate_q(&self, v: &[Q]) -> Result<Q> {
        let mut den = Q::one();
        for (f, m) in &self.den {
            let val = &(&v[f.a] - &v[f.b]) - &Q::from_int(f.m);
            if val.is_zero() {
                return Err(GtError::DenominatorVanishes(f.to_string()));
            }
            den = &den * &val.pow(*m);
        }
        Ok(&self.num.eval_q(v) / &den)
    }

    /// Membership in the localization `B_eta`: every denominator factor is a
    /// same-row difference below the top row that is either shifted by a
    /// nonzero integer or joins two different `eta`-blocks.
    pub fn in_b_eta(&self, eta: &Refinement) -> bool {
        self.den.keys().all(|f| factor_in_b_eta(f, eta))
    }

    /// The denominator factors that fail [`Self::in_b_eta`].
    pub fn b_eta_violations(&self, eta: &Refinement) -> Vec<LinearFactor> {
        self.den.keys().filter(|f| !factor_in_b_eta(f, eta)).copied().collect()
    }
}

fn factor_in_b_eta(f: &LinearFactor, eta: &Refinement) -> bool {
    let (ka, kb) = (eta.row_of(f.a), eta.row_of(f.b));
    if ka != kb || ka >= eta.rank() {
        return false;
    }
    f.m != 0 || eta.block_of(f.a) != eta.block_of(f.b)
}

fn cross_cancel(num: &mut Polynomial, den: &mut Denominator) {
    if num.is_constant() || den.is_empty() {
        return;
    }
    let keys: Vec<LinearFactor> = den.keys().copied().collect();
    for f in keys {
        while den.get(&f).copied().unwrap_or(0) > 0 {
            match f.divide(num) {
                Some(q) => {
                    *num = q;
                    let e = den.get_mut(&f).unwrap();
                    *e -= 1;
                    if *e == 0 {
                        den.remove(&f);
                    }
                }
                None => break,
            }
        }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> RationalFunction {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (idx, (lf, m)) in self.den.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", lf)?;
            if *m > 1 {
                write!(f, "^{}", m)?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: usize) -> RationalFunction {
        RationalFunction::var(s)
    }

    #[test]
    fn orientation_sign() {
        // 1/(x2 - x1) == -1/(x1 - x2)
        let a = RationalFunction::inv_linear(2, 1, 0);
        let b = RationalFunction::inv_linear(1, 2, 0).neg();
        assert_eq!(a, b);
        // 1/(x2 - x1 - 3) == -1/(x1 - x2 + 3)
        assert_eq!(RationalFunction::inv_linear(2, 1, 3), RationalFunction::inv_linear(1, 2, -3).neg());
    }

    #[test]
    fn cancellation_on_addition() {
        // x1/(x1-x2) - x2/(x1-x2) == 1
        let d = RationalFunction::inv_linear(1, 2, 0);
        let s = x(1).mul(&d).sub(&x(2).mul(&d));
        assert_eq!(s, RationalFunction::one());
    }

    #[test]
    fn shift_moves_offsets() {
        // 1/(x1 - x2) shifted by delta at slot 1 -> 1/(x1 - x2 + 1)
        let f = RationalFunction::inv_linear(1, 2, 0);
        let mut z = vec![0; 3];
        z[1] = 1;
        assert_eq!(f.shift(&z), RationalFunction::inv_linear(1, 2, -1));
        assert_eq!(x(1).shift(&z), x(1).add(&RationalFunction::one()));
    }

    #[test]
    fn evaluation_detects_poles() {
        let v = vec![ParamScalar::int(0), ParamScalar::t(1), ParamScalar::t(1)];
        let diff = x(1).sub(&x(2));
        assert!(diff.evaluate(&v).unwrap().is_zero());
        let pole = RationalFunction::inv_linear(1, 2, 0);
        assert!(matches!(pole.evaluate(&v), Err(GtError::DenominatorVanishes(_))));
    }
}
