use super::functions::{diag_eigenvalue, e_minus, e_plus};
use super::{Generator, GlModule, LinComb};
use crate::error::{GtError, Result};
use crate::exactalg::{num_vars, ParamFrac, ParamScalar, RationalFunction};
use crate::symcomb::{IntegralPoint, Permutation};

/// An element of `V_K`: a `K`-combination of formal tableaux `T(z)`.
pub type TableauVector = LinComb<IntegralPoint, RationalFunction>;

/// A vector of an evaluated module with basis `T(v + z)`.
pub type EvaluatedVector = LinComb<IntegralPoint, ParamFrac>;

/// The big module `V_K` over `K = C(x)`.
#[derive(Clone, Debug)]
pub struct BigModule {
    n: usize,
    e_plus: Vec<Vec<RationalFunction>>,
    e_minus: Vec<Vec<RationalFunction>>,
    diag: Vec<RationalFunction>,
}

impl BigModule {
    pub fn new(n: usize) -> BigModule {
        assert!((1..=crate::exactalg::MAX_RANK).contains(&n), "rank {} is out of range", n);
        let e_plus = (1..n).map(|k| (1..=k).map(|i| e_plus(k, i)).collect()).collect();
        let e_minus = (1..n).map(|k| (1..=k).map(|i| e_minus(k, i)).collect()).collect();
        let diag = (1..=n).map(|k| RationalFunction::from_poly(diag_eigenvalue(k))).collect();
        BigModule { n, e_plus, e_minus, diag }
    }

    /// `E T(z)` for a canonical generator `E`.
    pub fn act_tableau(&self, g: Generator, z: &IntegralPoint) -> Result<TableauVector> {
        g.check(self.n)?;
        let shift = z.values();
        let mut out = TableauVector::zero();
        match g {
            Generator::Diag(k) => out.add_term(z.clone(), self.diag[k - 1].shift(shift)),
            Generator::Raise(k) => {
                for i in 1..=k {
                    let f = self.e_plus[k - 1][i - 1].shift(shift).neg();
                    out.add_term(z.shifted(k * (k - 1) / 2 + i - 1, 1), f);
                }
            }
            Generator::Lower(k) => {
                for i in 1..=k {
                    let f = self.e_minus[k - 1][i - 1].shift(shift);
                    out.add_term(z.shifted(k * (k - 1) / 2 + i - 1, -1), f);
                }
            }
        }
        Ok(out)
    }

    /// The diagonal `S_mu` action `σ(f T(z)) = σ(f) T(σ(z))`.
    pub fn permute(&self, sigma: &Permutation, v: &TableauVector) -> TableauVector {
        let map = sigma.slot_map();
        v.iter().map(|(z, f)| (z.permute(sigma), f.permute(&map))).collect()
    }
}

impl GlModule for BigModule {
    type Basis = IntegralPoint;
    type Coeff = RationalFunction;

    fn rank(&self) -> usize {
        self.n
    }

    fn act_basis(&self, g: Generator, b: &IntegralPoint) -> Result<TableauVector> {
        self.act_tableau(g, b)
    }
}

/// The module `V(T(v))` of a generic point `v`: basis `T(v + z)`, with the
/// coefficients of `V_K` evaluated at `v`.
#[derive(Clone, Debug)]
pub struct EvaluatedGeneric {
    big: BigModule,
    v: Vec<ParamScalar>,
}

impl EvaluatedGeneric {
    pub fn new(v: Vec<ParamScalar>) -> Result<EvaluatedGeneric> {
        let n = (1..=crate::exactalg::MAX_RANK)
            .find(|&n| num_vars(n) == v.len())
            .ok_or_else(|| GtError::Invalid(format!("{} entries is not a triangular number", v.len())))?;
        for k in 1..n {
            let row = &v[num_vars(k - 1)..num_vars(k)];
            for a in 0..k {
                for b in a + 1..k {
                    if row[a].integral_difference(&row[b]) {
                        return Err(GtError::Invalid(format!("point is not generic in row {}", k)));
                    }
                }
            }
        }
        Ok(EvaluatedGeneric { big: BigModule::new(n), v })
    }

    pub fn point(&self) -> &[ParamScalar] {
        &self.v
    }

    pub fn big(&self) -> &BigModule {
        &self.big
    }
}

impl GlModule for EvaluatedGeneric {
    type Basis = IntegralPoint;
    type Coeff = ParamFrac;

    fn rank(&self) -> usize {
        self.big.n
    }

    fn act_basis(&self, g: Generator, b: &IntegralPoint) -> Result<EvaluatedVector> {
        self.big.act_tableau(g, b)?.try_map_coeffs(|f| f.evaluate(&self.v))
    }
}
