//! Exact stand-ins for complex tableau entries.
//!
//! An entry is `r + c_1 t_1 + ... + c_s t_s` with rational `r, c_j` and formal,
//! algebraically independent transcendentals `t_j`. Evaluating a rational
//! function at such entries yields a [`ParamFrac`]: a polynomial in the `t_j`
//! over a product of affine forms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Polynomial};
use super::rational::Q;
use super::var::{t_name, MAX_VARS};
use crate::error::GtError;

/// `rat + sum_j sym[j] * t_j`, canonical (no zero coefficients stored).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamScalar {
    rat: Q,
    /// Sorted by transcendental index (1-based), nonzero coefficients only.
    sym: Vec<(usize, Q)>,
}

impl ParamScalar {
    pub fn rational(q: Q) -> ParamScalar {
        ParamScalar { rat: q, sym: Vec::new() }
    }

    pub fn int(n: i64) -> ParamScalar {
        ParamScalar::rational(Q::from_int(n))
    }

    /// The transcendental `t_j` (1-based).
    pub fn t(j: usize) -> ParamScalar {
        ParamScalar::new(Q::zero(), vec![(j, Q::one())])
    }

    pub fn new(rat: Q, sym: Vec<(usize, Q)>) -> ParamScalar {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (j, c) in sym {
            assert!((1..=MAX_VARS).contains(&j), "transcendental index out of range");
            *map.entry(j).or_default() += &c;
        }
        ParamScalar { rat, sym: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn rational_part(&self) -> &Q {
        &self.rat
    }

    pub fn transcendental_part(&self) -> &[(usize, Q)] {
        &self.sym
    }

    pub fn is_rational(&self) -> bool {
        self.sym.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.sym.is_empty() && self.rat.is_zero()
    }

    pub fn add(&self, o: &ParamScalar) -> ParamScalar {
        let mut sym = self.sym.clone();
        sym.extend(o.sym.iter().cloned());
        ParamScalar::new(&self.rat + &o.rat, sym)
    }

    pub fn neg(&self) -> ParamScalar {
        ParamScalar { rat: -&self.rat, sym: self.sym.iter().map(|(j, c)| (*j, -c)).collect() }
    }

    pub fn sub(&self, o: &ParamScalar) -> ParamScalar {
        self.add(&o.neg())
    }

    pub fn add_int(&self, z: i64) -> ParamScalar {
        ParamScalar { rat: &self.rat + &Q::from_int(z), sym: self.sym.clone() }
    }

    pub fn scale(&self, c: &Q) -> ParamScalar {
        if c.is_zero() {
            return ParamScalar::default();
        }
        ParamScalar { rat: &self.rat * c, sym: self.sym.iter().map(|(j, k)| (*j, k * c)).collect() }
    }

    /// True iff `self - other` is an integer.
    pub fn integral_difference(&self, other: &ParamScalar) -> bool {
        self.sym == other.sym && (&self.rat - &other.rat).is_integer()
    }

    /// The entry as a degree-one polynomial in the transcendentals (`t_j` in slot `j-1`).
    pub fn to_poly(&self) -> Polynomial {
        let mut terms = vec![(Monomial::one(), self.rat.clone())];
        for (j, c) in &self.sym {
            terms.push((Monomial::var(j - 1), c.clone()));
        }
        Polynomial::from_terms(terms)
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt_with(f, &t_name)
    }
}

/// JSON form: `{"rat": "p/q", "sym": {"t1": "c1", ...}}`.
#[derive(Serialize, Deserialize)]
struct ParamScalarJson {
    #[serde(default)]
    rat: Option<Q>,
    #[serde(default)]
    sym: BTreeMap<String, Q>,
}

impl Serialize for ParamScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let sym = self.sym.iter().map(|(j, c)| (format!("t{}", j), c.clone())).collect();
        ParamScalarJson { rat: Some(self.rat.clone()), sym }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<ParamScalar, D::Error> {
        let raw = ParamScalarJson::deserialize(d)?;
        let mut sym = Vec::new();
        for (name, c) in raw.sym {
            let j = name
                .strip_prefix('t')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&j| (1..=MAX_VARS).contains(&j))
                .ok_or_else(|| serde::de::Error::custom(format!("bad transcendental name {:?}", name)))?;
            sym.push((j, c));
        }
        Ok(ParamScalar::new(raw.rat.unwrap_or_default(), sym))
    }
}

/// A nonconstant affine form in the transcendentals, scaled so that the
/// coefficient of its lowest-index transcendental is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm(ParamScalar);

impl AffineForm {
    /// Splits a nonconstant scalar into `(unit, form)` with `s = unit * form`.
    fn normalize(s: &ParamScalar) -> (Q, AffineForm) {
        let lead = s.sym[0].1.clone();
        (lead.clone(), AffineForm(s.scale(&lead.inv())))
    }

    pub fn as_scalar(&self) -> &ParamScalar {
        &self.0
    }

    /// Exact division of a polynomial in the `t_j` by this form.
    fn divide(&self, p: &Polynomial) -> Option<Polynomial> {
        let lead_slot = self.0.sym[0].0 - 1;
        let rest = ParamScalar { rat: self.0.rat.clone(), sym: self.0.sym[1..].to_vec() };
        p.div_linear(lead_slot, &rest.neg().to_poly())
    }
}

/// Value of a rational function at a parameter point: a polynomial in the
/// transcendentals divided by a product of affine forms, fully reduced.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamFrac {
    num: Polynomial,
    den: Vec<(AffineForm, u32)>,
}

impl ParamFrac {
    pub fn zero() -> ParamFrac {
        ParamFrac::default()
    }

    pub fn from_poly(p: Polynomial) -> ParamFrac {
        ParamFrac { num: p, den: Vec::new() }
    }

    pub fn from_q(q: Q) -> ParamFrac {
        ParamFrac::from_poly(Polynomial::constant(q))
    }

    /// `num / prod(dens)`. Fails if some denominator is zero.
    pub fn new(num: Polynomial, dens: &[ParamScalar]) -> Result<ParamFrac, GtError> {
        let mut num = num;
        let mut den: BTreeMap<AffineForm, u32> = BTreeMap::new();
        for d in dens {
            if d.is_zero() {
                return Err(GtError::DenominatorVanishes(d.to_string()));
            }
            if d.is_rational() {
                num = num.scale(&d.rational_part().inv());
            } else {
                let (unit, form) = AffineForm::normalize(d);
                num = num.scale(&unit.inv());
                *den.entry(form).or_insert(0) += 1;
            }
        }
        Ok(ParamFrac::reduced(num, den))
    }

    fn reduced(mut num: Polynomial, den: BTreeMap<AffineForm, u32>) -> ParamFrac {
        if num.is_zero() {
            return ParamFrac::zero();
        }
        let mut out = Vec::new();
        for (form, mut mult) in den {
            while mult > 0 {
                match form.divide(&num) {
                    Some(q) => {
                        num = q;
                        mult -= 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                out.push((form, mult));
            }
        }
        ParamFrac { num, den: out }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &[(AffineForm, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn den_poly(den: &[(AffineForm, u32)]) -> Polynomial {
        let mut p = Polynomial::one();
        for (f, m) in den {
            p = p.mul(&f.0.to_poly().pow(*m));
        }
        p
    }

    pub fn add(&self, o: &ParamFrac) -> ParamFrac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return ParamFrac::reduced(self.num.add(&o.num), self.den.iter().cloned().collect());
        }
        let a: BTreeMap<_, _> = self.den.iter().cloned().collect();
        let b: BTreeMap<_, _> = o.den.iter().cloned().collect();
        let mut lcm = a.clone();
        for (f, m) in &b {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let cof = |d: &BTreeMap<AffineForm, u32>| -> Vec<(AffineForm, u32)> {
            lcm.iter()
                .filter_map(|(f, m)| {
                    let have = d.get(f).copied().unwrap_or(0);
                    (m > &have).then(|| (f.clone(), m - have))
                })
                .collect()
        };
        let num = self.num.mul(&Self::den_poly(&cof(&a))).add(&o.num.mul(&Self::den_poly(&cof(&b))));
        ParamFrac::reduced(num, lcm)
    }

    pub fn neg(&self) -> ParamFrac {
        ParamFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &ParamFrac) -> ParamFrac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ParamFrac) -> ParamFrac {
        if self.is_zero() || o.is_zero() {
            return ParamFrac::zero();
        }
        let mut den: BTreeMap<AffineForm, u32> = self.den.iter().cloned().collect();
        for (f, m) in &o.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        ParamFrac::reduced(self.num.mul(&o.num), den)
    }

    pub fn scale(&self, c: &Q) -> ParamFrac {
        if c.is_zero() {
            return ParamFrac::zero();
        }
        ParamFrac { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl fmt::Display for ParamFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return self.num.fmt_with(f, &t_name);
        }
        write!(f, "(")?;
        self.num.fmt_with(f, &t_name)?;
        write!(f, ")/(")?;
        for (idx, (form, m)) in self.den.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "({})", form.0)?;
            if *m > 1 {
                write!(f, "^{}", m)?;
            }
        }
        write!(f, ")")
    }
}

/// Serialized as its canonical printed form.
impl Serialize for ParamFrac {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for ParamFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamFrac({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(j: usize) -> ParamScalar {
        ParamScalar::t(j)
    }

    #[test]
    fn integral_difference_needs_equal_symbolic_parts() {
        let a = t(1).add_int(3);
        assert!(a.integral_difference(&t(1)));
        assert!(!a.integral_difference(&t(2)));
        let half = t(1).add(&ParamScalar::rational(Q::new(1, 2)));
        assert!(!half.integral_difference(&t(1)));
        assert!(ParamScalar::int(4).integral_difference(&ParamScalar::int(-1)));
    }

    #[test]
    fn fractions_reduce_and_compare_canonically() {
        // (2 t1 - 2 t2) / (t1 - t2) == 2
        let num = t(1).sub(&t(2)).scale(&Q::from_int(2)).to_poly();
        let f = ParamFrac::new(num, &[t(1).sub(&t(2))]).unwrap();
        assert_eq!(f, ParamFrac::from_q(Q::from_int(2)));
        // 1/(2 t1) + 1/(2 t1) == 1/t1
        let h = ParamFrac::new(Polynomial::one(), &[t(1).scale(&Q::from_int(2))]).unwrap();
        let one_over = ParamFrac::new(Polynomial::one(), &[t(1)]).unwrap();
        assert_eq!(h.add(&h), one_over);
        assert!(ParamFrac::new(Polynomial::one(), &[ParamScalar::default()]).is_err());
    }

    #[test]
    fn json_form() {
        let s = t(2).scale(&Q::new(-3, 2)).add_int(1);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"rat":"1","sym":{"t2":"-3/2"}}"#);
        let back: ParamScalar = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
