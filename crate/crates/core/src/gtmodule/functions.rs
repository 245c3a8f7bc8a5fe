use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{GtError, Result};
use crate::exactalg::{Polynomial, RationalFunction, VarIndex, Q};

fn slot(k: usize, i: usize) -> usize {
    VarIndex::new(k, i).flat()
}

/// Sign of a Gelfand-Tsetlin function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// `e^±_{k,i}` together with its realized rational function.
#[derive(Clone, Debug, PartialEq)]
pub struct GtFunction {
    pub sign: Sign,
    pub k: usize,
    pub i: usize,
    pub value: RationalFunction,
}

impl GtFunction {
    pub fn new(sign: Sign, k: usize, i: usize) -> GtFunction {
        let value = match sign {
            Sign::Plus => e_plus(k, i),
            Sign::Minus => e_minus(k, i),
        };
        GtFunction { sign, k, i, value }
    }
}

fn row_denominator(k: usize, i: usize) -> RationalFunction {
    let mut f = RationalFunction::one();
    for j in (1..=k).filter(|&j| j != i) {
        f = f.div_linear(slot(k, i), slot(k, j), 0);
    }
    f
}

/// `e^+_{k,i} = prod_{j<=k+1}(x_{k,i} - x_{k+1,j}) / prod_{j != i}(x_{k,i} - x_{k,j})`.
pub fn e_plus(k: usize, i: usize) -> RationalFunction {
    assert!(i >= 1 && i <= k);
    let num = Polynomial::product(
        &(1..=k + 1).map(|j| Polynomial::linear(slot(k, i), slot(k + 1, j), &Q::zero())).collect::<Vec<_>>(),
    );
    row_denominator(k, i).mul_poly(&num)
}

/// `e^-_{k,i} = prod_{j<=k-1}(x_{k,i} - x_{k-1,j}) / prod_{j != i}(x_{k,i} - x_{k,j})`.
pub fn e_minus(k: usize, i: usize) -> RationalFunction {
    assert!(i >= 1 && i <= k);
    let num = Polynomial::product(
        &(1..k).map(|j| Polynomial::linear(slot(k, i), slot(k - 1, j), &Q::zero())).collect::<Vec<_>>(),
    );
    row_denominator(k, i).mul_poly(&num)
}

/// The eigenvalue of `E_{k,k}` on `T(x)`:
/// `sum_j x_{k,j} - sum_j x_{k-1,j} + k - 1`.
pub fn diag_eigenvalue(k: usize) -> Polynomial {
    let mut terms = vec![Polynomial::constant(Q::from_int(k as i64 - 1))];
    terms.extend((1..=k).map(|j| Polynomial::var(slot(k, j))));
    terms.extend((1..k).map(|j| Polynomial::var(slot(k - 1, j)).neg()));
    terms.iter().fold(Polynomial::zero(), |a, b| a.add(b))
}

/// The index set `{(k, i) : 1 <= i <= k <= n}` of the generators `c_{k,i}`.
pub fn gamma_indices(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|k| (1..=k).map(move |i| (k, i))).collect()
}

fn gamma_uncached(k: usize, i: usize) -> Result<Polynomial> {
    let mut summands = Vec::with_capacity(k);
    for j in 1..=k {
        let base = Polynomial::var(slot(k, j)).add(&Polynomial::constant(Q::from_int(k as i64 - 1)));
        let mut f = RationalFunction::from_poly(base.pow(i as u32));
        for m in (1..=k).filter(|&m| m != j) {
            f = f.mul_poly(&Polynomial::linear(slot(k, j), slot(k, m), &Q::one())).div_linear(
                slot(k, j),
                slot(k, m),
                0,
            );
        }
        summands.push(f);
    }
    RationalFunction::sum(&summands)
        .to_polynomial()
        .ok_or_else(|| GtError::Internal(format!("gamma_{{{},{}}} left a denominator", k, i)))
}

/// `γ_{k,i} = sum_j (x_{k,j} + k - 1)^i prod_{m != j} (1 - 1/(x_{k,j} - x_{k,m}))`,
/// reduced to a polynomial.
pub fn gamma_poly(k: usize, i: usize) -> Result<Polynomial> {
    if i == 0 || i > k {
        return Err(GtError::Invalid(format!("(k, i) = ({}, {}) needs 1 <= i <= k", k, i)));
    }
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Polynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(k, i)) {
        return Ok(p.clone());
    }
    let p = gamma_uncached(k, i)?;
    cache.lock().unwrap().insert((k, i), p.clone());
    Ok(p)
}

/// A generator `c_{k,i}` of the Gelfand-Tsetlin subalgebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaGenerator {
    pub k: usize,
    pub i: usize,
    pub gamma: Polynomial,
}

impl GammaGenerator {
    pub fn new(k: usize, i: usize) -> Result<GammaGenerator> {
        Ok(GammaGenerator { k, i, gamma: gamma_poly(k, i)? })
    }

    /// The index sequences `(r_1, ..., r_i)`; `c_{k,i}` is the sum of the
    /// words `E_{r_1 r_2} E_{r_2 r_3} ... E_{r_i r_1}`.
    pub fn words(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.i {
            out = out
                .into_iter()
                .flat_map(|w: Vec<usize>| {
                    (1..=self.k).map(move |r| {
                        let mut w = w.clone();
                        w.push(r);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_small() {
        assert_eq!(gamma_poly(1, 1).unwrap(), Polynomial::var(0));
        // γ_{2,1} = x_{2,1} + x_{2,2} + 1.
        let g = gamma_poly(2, 1).unwrap();
        let expect = Polynomial::var(1).add(&Polynomial::var(2)).add(&Polynomial::one());
        assert_eq!(g, expect);
    }

    #[test]
    fn gamma_row_symmetric() {
        for (k, i) in gamma_indices(4) {
            let g = gamma_poly(k, i).unwrap();
            for a in 1..k {
                let mut perm: Vec<usize> = (0..crate::exactalg::MAX_VARS).collect();
                perm.swap(slot(k, a), slot(k, a + 1));
                assert_eq!(g.permute(&perm), g, "gamma_{},{}", k, i);
            }
        }
    }

    #[test]
    fn e_functions_shape() {
        // e^-_{1,1} = 1 (empty products).
        assert_eq!(e_minus(1, 1), RationalFunction::one());
        let e = e_plus(1, 1);
        assert!(e.is_polynomial());
        assert_eq!(e_plus(2, 1).denominator().len(), 1);
    }

    #[test]
    fn word_count() {
        assert_eq!(GammaGenerator::new(3, 2).unwrap().words().len(), 9);
    }
}
