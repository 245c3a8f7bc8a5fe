//! Canonical JSON forms.
//!
//! A polynomial is `{"nvars": N, "terms": [[[e_1, ..., e_N], "p/q"], ...]}` with
//! terms in increasing graded-lex order; a rational function is
//! `{"num": <polynomial>, "den": [[k, i, k2, i2, m], ...]}` where each entry is
//! the factor `x_{k,i} - x_{k2,i2} - m`, repeated according to multiplicity.

use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Polynomial};
use super::ratfun::{Denominator, LinearFactor, RationalFunction};
use super::rational::Q;
use super::var::{VarIndex, MAX_VARS};
use crate::error::{GtError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, Q)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunJson {
    pub num: PolyJson,
    pub den: Vec<[i64; 5]>,
}

impl PolyJson {
    pub fn from_poly(p: &Polynomial, nvars: usize) -> PolyJson {
        assert!(p.var_bound() <= nvars, "polynomial uses more than {} variables", nvars);
        let terms =
            p.terms().iter().map(|(m, c)| (m.exps()[..nvars].iter().map(|&e| e as u32).collect(), c.clone())).collect();
        PolyJson { nvars, terms }
    }

    pub fn to_poly(&self) -> Result<Polynomial> {
        if self.nvars > MAX_VARS {
            return Err(GtError::Invalid(format!("nvars {} exceeds {}", self.nvars, MAX_VARS)));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e.len() != self.nvars || e.iter().any(|&x| x > 255) {
                return Err(GtError::Invalid(format!("bad exponent vector {:?}", e)));
            }
            terms.push((Monomial::from_exps(e), c.clone()));
        }
        Ok(Polynomial::from_terms(terms))
    }
}

impl RatFunJson {
    pub fn from_ratfun(f: &RationalFunction, nvars: usize) -> RatFunJson {
        let mut den = Vec::new();
        for (lf, m) in f.denominator() {
            let (a, b) = (VarIndex::from_flat(lf.first()), VarIndex::from_flat(lf.second()));
            for _ in 0..*m {
                den.push([a.k as i64, a.i as i64, b.k as i64, b.i as i64, lf.shift()]);
            }
        }
        RatFunJson { num: PolyJson::from_poly(f.numerator(), nvars), den }
    }

    pub fn to_ratfun(&self) -> Result<RationalFunction> {
        let num = self.num.to_poly()?;
        let mut den = Denominator::new();
        let mut sign_flips = 0;
        for &[k, i, k2, i2, m] in &self.den {
            let valid = |k: i64, i: i64| k >= 1 && i >= 1 && i <= k && ((k * (k + 1) / 2) as usize) <= MAX_VARS;
            if !valid(k, i) || !valid(k2, i2) || (k, i) == (k2, i2) {
                return Err(GtError::Invalid(format!("bad factor {:?}", [k, i, k2, i2, m])));
            }
            let a = VarIndex::new(k as usize, i as usize).flat();
            let b = VarIndex::new(k2 as usize, i2 as usize).flat();
            let (f, neg) = LinearFactor::oriented(a, b, m);
            if neg {
                sign_flips += 1;
            }
            *den.entry(f).or_insert(0) += 1;
        }
        let num = if sign_flips % 2 == 1 { num.neg() } else { num };
        Ok(RationalFunction::new(num, den))
    }
}

pub fn poly_to_json(p: &Polynomial, nvars: usize) -> String {
    serde_json::to_string(&PolyJson::from_poly(p, nvars)).expect("serializable")
}

pub fn poly_from_json(s: &str) -> Result<Polynomial> {
    let j: PolyJson = serde_json::from_str(s).map_err(|e| GtError::Invalid(e.to_string()))?;
    j.to_poly()
}

pub fn ratfun_to_json(f: &RationalFunction, nvars: usize) -> String {
    serde_json::to_string(&RatFunJson::from_ratfun(f, nvars)).expect("serializable")
}

pub fn ratfun_from_json(s: &str) -> Result<RationalFunction> {
    let j: RatFunJson = serde_json::from_str(s).map_err(|e| GtError::Invalid(e.to_string()))?;
    j.to_ratfun()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratfun_json_shape() {
        let f = RationalFunction::var(1).mul(&RationalFunction::inv_linear(1, 2, 3));
        let s = ratfun_to_json(&f, 3);
        assert_eq!(s, r#"{"num":{"nvars":3,"terms":[[[0,1,0],"1"]]},"den":[[2,1,2,2,3]]}"#);
        assert_eq!(ratfun_from_json(&s).unwrap(), f);
    }
}
