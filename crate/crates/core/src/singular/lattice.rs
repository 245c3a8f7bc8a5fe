use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::divdiff::{
    dd_poly, dd_sigma_poly, delta, delta_inverse, dual_basis, invariant_form, sym_poly, DualBasisTable,
};
use crate::error::{GtError, Result};
use crate::exactalg::{Denominator, Polynomial, RationalFunction};
use crate::gtmodule::{BigModule, Generator, GlModule, LinComb, TableauVector};
use crate::symcomb::{
    is_block_descending, normal_form, shuffles, stabilizer_refinement, IntegralPoint, Permutation, Refinement,
};

/// The derived tableau `D_ν T(z)` of a lattice `L_η` (the refinement is
/// that of the surrounding lattice or module).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivedTableau {
    pub z: IntegralPoint,
    pub nu: Permutation,
}

impl fmt::Display for DerivedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[{}]T{}", self.nu, self.z)
    }
}

impl Serialize for DerivedTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DerivedTableau", 2)?;
        st.serialize_field("z", &self.z.rows()[..self.z.rank() - 1])?;
        st.serialize_field("shuffle", &self.nu.to_string())?;
        st.end()
    }
}

/// A `K`-combination of derived tableaux.
pub type DerivedVector = LinComb<DerivedTableau, RationalFunction>;

/// The derived tableaux `D_ν T(z)`, `ν` ranging over the `ε(z)`-shuffles.
pub fn derived_basis_at(eta: &Refinement, z: &IntegralPoint) -> Result<Vec<DerivedTableau>> {
    let eps = stabilizer_refinement(z, eta)?;
    Ok(shuffles(eta, &eps)?.into_iter().map(|nu| DerivedTableau { z: z.clone(), nu }).collect())
}

/// Every derived tableau with `‖z‖∞ <= r`.
pub fn derived_basis_window(eta: &Refinement, r: i64) -> Result<Vec<DerivedTableau>> {
    let mut out = Vec::new();
    for z in IntegralPoint::window(eta.rank(), r) {
        if is_block_descending(&z, eta) {
            out.extend(derived_basis_at(eta, &z)?);
        }
    }
    Ok(out)
}

/// A coefficient of `E T(z)` as a numerator over an `S_η`-invariant
/// denominator, with divided differences of the numerator memoized by word.
struct PreparedCoeff {
    target: DerivedTableau,
    den: Denominator,
    dd: Mutex<HashMap<Vec<usize>, Arc<Polynomial>>>,
}

impl PreparedCoeff {
    /// `∂_word` of the numerator, rightmost letter first.
    fn dd(&self, word: &[usize]) -> Arc<Polynomial> {
        if let Some(p) = self.dd.lock().unwrap().get(word) {
            return p.clone();
        }
        let inner = self.dd(&word[1..]);
        let p = Arc::new(dd_poly(word[0], &inner));
        self.dd.lock().unwrap().insert(word.to_vec(), p.clone());
        p
    }
}

type Prepared = Vec<PreparedCoeff>;

const CONTRACTION_CACHE: usize = 256;

/// The `B_η`-lattice `L_η ⊂ V_K` with its `U`-action on derived tableaux.
pub struct Lattice {
    eta: Refinement,
    table: Arc<DualBasisTable>,
    big: BigModule,
    /// `∂_{ν^{-1}} Δ / (η! Δ)` keyed by `ν`.
    expansion: HashMap<Permutation, RationalFunction>,
    contractions: Mutex<HashMap<(Generator, IntegralPoint), Arc<Prepared>>>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({})", self.eta)
    }
}

impl Lattice {
    pub fn new(eta: &Refinement) -> Result<Lattice> {
        let table = dual_basis(eta)?;
        let d = delta(eta);
        let inv = delta_inverse(eta).scale(&crate::exactalg::Q::from_int(eta.factorial() as i64).inv());
        let expansion = eta
            .elements()
            .into_iter()
            .map(|nu| {
                let f = inv.mul_poly(&dd_sigma_poly(&nu.inverse(), &d));
                (nu, f)
            })
            .collect();
        Ok(Lattice {
            eta: eta.clone(),
            table,
            big: BigModule::new(eta.rank()),
            expansion,
            contractions: Mutex::new(HashMap::new()),
        })
    }

    pub fn refinement(&self) -> &Refinement {
        &self.eta
    }

    pub fn table(&self) -> &DualBasisTable {
        &self.table
    }

    pub fn big(&self) -> &BigModule {
        &self.big
    }

    fn check(&self, d: &DerivedTableau) -> Result<()> {
        if d.z.rank() != self.eta.rank() || d.nu.tag() != self.eta.identity().tag() {
            return Err(GtError::Invalid(format!("{} does not belong to L_{}", d, self.eta)));
        }
        if !is_block_descending(&d.z, &self.eta) {
            return Err(GtError::NotInNormalForm);
        }
        Ok(())
    }

    /// `D_ν T(z) = (1/η!) sum_τ τ(∂_{ν^{-1}} Δ / Δ) T(τ(z))` in `V_K`.
    pub fn expand(&self, d: &DerivedTableau) -> Result<TableauVector> {
        self.check(d)?;
        let base = &self.expansion[&d.nu];
        Ok(self.eta.elements().iter().map(|tau| (d.z.permute(tau), base.permute(&tau.slot_map()))).collect())
    }

    /// Writes a vector of `V_K` in derived coordinates, using
    /// `T(σ(z)) = sum_τ σ((∂_τ Δ)*) D_τ T(z)` for `z` in normal form.
    pub fn contract(&self, w: &TableauVector) -> Result<DerivedVector> {
        let mut out = DerivedVector::zero();
        for (u, c) in w.iter() {
            if u.rank() != self.eta.rank() {
                return Err(GtError::Invalid(format!("tableau {} has the wrong rank", u)));
            }
            let (rep, sigma) = normal_form(u, &self.eta);
            let map = sigma.slot_map();
            for d in derived_basis_at(&self.eta, &rep)? {
                let dual = RationalFunction::from_poly(self.table.dual(&d.nu).permute(&map));
                out.add_term(d, c.mul(&dual));
            }
        }
        Ok(out)
    }

    /// `E T(z)` in derived coordinates, each coefficient put in invariant
    /// form. Cached, since the derived tableaux at one `z` share it.
    fn contraction(&self, g: Generator, z: &IntegralPoint) -> Result<Arc<Prepared>> {
        let key = (g, z.clone());
        if let Some(v) = self.contractions.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let letters = self.eta.simple_slots();
        let v: Prepared = self
            .contract(&self.big.act_tableau(g, z)?)?
            .iter()
            .map(|(t, c)| {
                let (p, den) = invariant_form(&letters, c);
                let dd = Mutex::new(HashMap::from([(Vec::new(), Arc::new(p))]));
                PreparedCoeff { target: t.clone(), den, dd }
            })
            .collect();
        let v = Arc::new(v);
        let mut cache = self.contractions.lock().unwrap();
        if cache.len() >= CONTRACTION_CACHE {
            cache.clear();
        }
        cache.insert(key, v.clone());
        Ok(v)
    }

    /// `E D_ν T(z) = sum D_ν(g_{σ,w}) D_σ T(w)` where `E T(z) = sum g_{σ,w} D_σ T(w)`.
    /// Every coefficient is checked to lie in `B_η`.
    pub fn act(&self, g: Generator, d: &DerivedTableau) -> Result<DerivedVector> {
        self.check(d)?;
        let gz = self.contraction(g, &d.z)?;
        let mut out = DerivedVector::zero();
        let word = d.nu.reduced_word();
        for pc in gz.iter() {
            let c = RationalFunction::new(sym_poly(&self.eta, &pc.dd(&word)), pc.den.clone());
            if !c.in_b_eta(&self.eta) {
                return Err(GtError::LatticeViolation(format!("{} in {} {}", c, g, d)));
            }
            out.add_term(pc.target.clone(), c);
        }
        Ok(out)
    }
}

impl GlModule for Lattice {
    type Basis = DerivedTableau;
    type Coeff = RationalFunction;

    fn rank(&self) -> usize {
        self.eta.rank()
    }

    fn act_basis(&self, g: Generator, b: &DerivedTableau) -> Result<DerivedVector> {
        self.act(g, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta_n3() -> Refinement {
        Refinement::gt(vec![vec![1], vec![2], vec![1, 1, 1]]).unwrap()
    }

    #[test]
    fn window_counts() {
        let eta = Refinement::gt(vec![vec![1], vec![1, 1], vec![3], vec![1, 1, 1, 1]]).unwrap();
        let z = |r: Vec<i64>| IntegralPoint::from_rows(4, &[vec![0], vec![0, 0], r]).unwrap();
        assert_eq!(derived_basis_at(&eta, &z(vec![2, 1, 0])).unwrap().len(), 6);
        assert_eq!(derived_basis_at(&eta, &z(vec![1, 1, 0])).unwrap().len(), 3);
        assert_eq!(derived_basis_at(&eta, &z(vec![1, 0, 0])).unwrap().len(), 3);
        assert_eq!(derived_basis_at(&eta, &z(vec![0, 0, 0])).unwrap().len(), 1);
        assert!(derived_basis_at(&eta, &z(vec![0, 1, 0])).is_err());
    }

    #[test]
    fn expand_non_shuffle_vanishes() {
        let eta = eta_n3();
        let lat = Lattice::new(&eta).unwrap();
        let s = eta.simple(1).unwrap();
        let d = DerivedTableau { z: IntegralPoint::zero(3), nu: s };
        assert!(lat.expand(&d).unwrap().is_zero());
        let id = DerivedTableau { z: IntegralPoint::zero(3), nu: eta.identity() };
        assert_eq!(lat.expand(&id).unwrap(), TableauVector::basis(IntegralPoint::zero(3)));
    }

    #[test]
    fn contract_expand_roundtrip() {
        let eta = eta_n3();
        let lat = Lattice::new(&eta).unwrap();
        for d in derived_basis_window(&eta, 1).unwrap() {
            let back = lat.contract(&lat.expand(&d).unwrap()).unwrap();
            assert_eq!(back, DerivedVector::basis(d.clone()), "{}", d);
        }
    }

    #[test]
    fn diagonal_acts_by_scalar() {
        let eta = eta_n3();
        let lat = Lattice::new(&eta).unwrap();
        let z = IntegralPoint::from_rows(3, &[vec![0], vec![1, 0]]).unwrap();
        for d in derived_basis_at(&eta, &z).unwrap() {
            let out = lat.act(Generator::Diag(2), &d).unwrap();
            assert_eq!(out.len(), 1);
            assert!(out.coeff(&d).is_some());
        }
    }
}
