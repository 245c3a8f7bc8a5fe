//! Gelfand-Tsetlin tableaux and functions, the finite-dimensional modules
//! `V(λ)`, the big module `V_K` and the generators of the Gelfand-Tsetlin
//! subalgebra `Γ`.

mod big;
mod findim;
mod functions;
mod lincomb;
mod relations;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GtError, Result};
use crate::exactalg::{num_vars, ParamScalar, Ring, Q};

pub use big::{BigModule, EvaluatedGeneric, EvaluatedVector, TableauVector};
pub use findim::{
    central_element_matrix, findim_all_eij, findim_generator_matrix, standard_points, standard_tableaux,
    weyl_dimension, FinDimModule, QMatrix,
};
pub use functions::{diag_eigenvalue, e_minus, e_plus, gamma_indices, gamma_poly, GammaGenerator, GtFunction, Sign};
pub use lincomb::LinComb;
pub use relations::{gl_relations, verify_relations, verify_u_relations, Relation, RelationCheck};

/// A canonical generator `E_{k,k+1}`, `E_{k+1,k}` or `E_{k,k}` of `gl(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `E_{k,k+1}`.
    Raise(usize),
    /// `E_{k+1,k}`.
    Lower(usize),
    /// `E_{k,k}`.
    Diag(usize),
}

impl Generator {
    pub fn from_indices(a: usize, b: usize) -> Result<Generator> {
        match (a, b) {
            _ if a == 0 || b == 0 => Err(GtError::Invalid(format!("E_{{{},{}}}: indices start at 1", a, b))),
            _ if a == b => Ok(Generator::Diag(a)),
            _ if b == a + 1 => Ok(Generator::Raise(a)),
            _ if a == b + 1 => Ok(Generator::Lower(b)),
            _ => Err(GtError::Invalid(format!("E_{{{},{}}} is not a canonical generator", a, b))),
        }
    }

    pub fn indices(self) -> (usize, usize) {
        match self {
            Generator::Raise(k) => (k, k + 1),
            Generator::Lower(k) => (k + 1, k),
            Generator::Diag(k) => (k, k),
        }
    }

    /// Errors unless the generator belongs to `gl(n)`.
    pub fn check(self, n: usize) -> Result<()> {
        let (a, b) = self.indices();
        if a.max(b) > n || a.min(b) == 0 {
            return Err(GtError::Invalid(format!("{} is not a generator of gl({})", self, n)));
        }
        Ok(())
    }

    /// All canonical generators of `gl(n)`.
    pub fn all(n: usize) -> Vec<Generator> {
        let mut g: Vec<Generator> = (1..=n).map(Generator::Diag).collect();
        g.extend((1..n).map(Generator::Raise));
        g.extend((1..n).map(Generator::Lower));
        g
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.indices();
        if a < 10 && b < 10 {
            write!(f, "E{}{}", a, b)
        } else {
            write!(f, "E{},{}", a, b)
        }
    }
}

impl FromStr for Generator {
    type Err = GtError;

    /// Accepts `E21`, `E2,1` and `E_{2,1}`.
    fn from_str(s: &str) -> Result<Generator> {
        let bad = || GtError::Invalid(format!("cannot parse generator {:?}", s));
        let body = s.trim().strip_prefix('E').ok_or_else(bad)?;
        let body = body.trim_start_matches('_').trim_start_matches('{').trim_end_matches('}');
        let (a, b) = if let Some((a, b)) = body.split_once(',') {
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        } else if body.len() == 2 && body.chars().all(|c| c.is_ascii_digit()) {
            (body[..1].parse().unwrap(), body[1..].parse().unwrap())
        } else {
            return Err(bad());
        };
        Generator::from_indices(a, b)
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Gelfand-Tsetlin tableau `T(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    n: usize,
    entries: Vec<ParamScalar>,
}

impl Tableau {
    pub fn new(n: usize, entries: Vec<ParamScalar>) -> Result<Tableau> {
        if entries.len() != num_vars(n) {
            return Err(GtError::Invalid(format!("expected {} entries, got {}", num_vars(n), entries.len())));
        }
        Ok(Tableau { n, entries })
    }

    pub fn from_rows(rows: &[Vec<ParamScalar>]) -> Result<Tableau> {
        let entries = crate::exactalg::point_from_rows(rows)?;
        Tableau::new(rows.len(), entries)
    }

    pub fn from_integers(n: usize, vals: &[i64]) -> Result<Tableau> {
        Tableau::new(n, vals.iter().map(|&z| ParamScalar::int(z)).collect())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[ParamScalar] {
        &self.entries
    }

    /// `v_{k,i}` (1-based).
    pub fn get(&self, k: usize, i: usize) -> &ParamScalar {
        &self.entries[k * (k - 1) / 2 + i - 1]
    }

    pub fn rows(&self) -> Vec<Vec<ParamScalar>> {
        (1..=self.n).map(|k| self.entries[k * (k - 1) / 2..k * (k + 1) / 2].to_vec()).collect()
    }

    /// Integer entries, if every entry is an integer.
    pub fn integers(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|e| {
                if e.is_rational() {
                    e.rational_part().to_i64().filter(|_| e.rational_part().is_integer())
                } else {
                    None
                }
            })
            .collect()
    }

    /// `v_{k,i} - v_{k-1,i} ∈ Z≥0` and `v_{k-1,i} - v_{k,i+1} ∈ Z>0` throughout.
    pub fn is_standard(&self) -> bool {
        let step = |a: &ParamScalar, b: &ParamScalar, strict: bool| {
            let d = a.sub(b);
            d.is_rational()
                && d.rational_part().is_integer()
                && if strict { d.rational_part() > &Q::zero() } else { !d.rational_part().is_negative() }
        };
        (2..=self.n).all(|k| {
            (1..k).all(|i| {
                step(self.get(k, i), self.get(k - 1, i), false) && step(self.get(k - 1, i), self.get(k, i + 1), true)
            })
        })
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().rev().map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")).collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// A `gl(n)`-module with a distinguished basis, given by the action of the
/// canonical generators on basis vectors.
pub trait GlModule: Sync {
    type Basis: Ord + Clone + Send + Sync + fmt::Debug;
    type Coeff: Ring;

    fn rank(&self) -> usize;

    fn act_basis(&self, g: Generator, b: &Self::Basis) -> Result<LinComb<Self::Basis, Self::Coeff>>;

    fn act(&self, g: Generator, v: &LinComb<Self::Basis, Self::Coeff>) -> Result<LinComb<Self::Basis, Self::Coeff>> {
        let mut out = LinComb::zero();
        for (b, c) in v.iter() {
            out.add_scaled(c, &self.act_basis(g, b)?);
        }
        Ok(out)
    }

    /// Applies `word[0] word[1] ... word[last]` (rightmost letter first).
    fn act_word(
        &self,
        word: &[Generator],
        v: &LinComb<Self::Basis, Self::Coeff>,
    ) -> Result<LinComb<Self::Basis, Self::Coeff>> {
        let mut cur = v.clone();
        for &g in word.iter().rev() {
            cur = self.act(g, &cur)?;
        }
        Ok(cur)
    }

    /// `E_{a,b}` for arbitrary indices, via `E_{a,c} = [E_{a,a+1}, E_{a+1,c}]`
    /// and `E_{c,a} = [E_{c,c-1}, E_{c-1,a}]`.
    fn act_eij(
        &self,
        a: usize,
        b: usize,
        v: &LinComb<Self::Basis, Self::Coeff>,
    ) -> Result<LinComb<Self::Basis, Self::Coeff>> {
        if a.abs_diff(b) <= 1 {
            return self.act(Generator::from_indices(a, b)?, v);
        }
        let (g, m) = if a < b { (Generator::Raise(a), a + 1) } else { (Generator::Lower(a - 1), a - 1) };
        let left = self.act(g, &self.act_eij(m, b, v)?)?;
        let right = self.act_eij(m, b, &self.act(g, v)?)?;
        Ok(left.sub(&right))
    }

    /// `c_{k,i} v = sum_{r} E_{r_1 r_2} ... E_{r_i r_1} v`, summed by paths.
    fn act_central(
        &self,
        k: usize,
        i: usize,
        v: &LinComb<Self::Basis, Self::Coeff>,
    ) -> Result<LinComb<Self::Basis, Self::Coeff>> {
        if i == 0 || i > k || k > self.rank() {
            return Err(GtError::Invalid(format!("c_{{{},{}}} is not defined for gl({})", k, i, self.rank())));
        }
        let mut total = LinComb::zero();
        for r1 in 1..=k {
            // paths[s] = sum over r_2..r_i of E_{s r_.} ... E_{r_i r1} v
            let mut paths: Vec<LinComb<Self::Basis, Self::Coeff>> =
                (1..=k).map(|s| self.act_eij(s, r1, v)).collect::<Result<_>>()?;
            for _ in 1..i {
                let mut next = Vec::with_capacity(k);
                for s in 1..=k {
                    let mut acc = LinComb::zero();
                    for t in 1..=k {
                        if !paths[t - 1].is_zero() {
                            acc.add_assign(&self.act_eij(s, t, &paths[t - 1])?);
                        }
                    }
                    next.push(acc);
                }
                paths = next;
            }
            total.add_assign(&paths[r1 - 1]);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_parse() {
        assert_eq!("E21".parse::<Generator>().unwrap(), Generator::Lower(1));
        assert_eq!("E_{3,4}".parse::<Generator>().unwrap(), Generator::Raise(3));
        assert_eq!("E2,2".parse::<Generator>().unwrap(), Generator::Diag(2));
        assert!("E13".parse::<Generator>().is_err());
        assert_eq!(Generator::Lower(2).to_string(), "E32");
    }

    #[test]
    fn tableau_standard() {
        let t = Tableau::from_integers(2, &[1, 1, -1]).unwrap();
        assert!(t.is_standard());
        let t = Tableau::from_integers(2, &[2, 1, -1]).unwrap();
        assert!(!t.is_standard());
    }
}
