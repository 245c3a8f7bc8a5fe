use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use super::lattice::{derived_basis_at, DerivedTableau, Lattice};
use super::profile::{is_fully_critical, is_normal_form, singularity};
use crate::divdiff::{delta, sdd_poly};
use crate::error::{GtError, Result};
use crate::exactalg::{ParamFrac, ParamScalar, RationalFunction, Ring};
use crate::gtmodule::{e_minus, e_plus, gamma_indices, gamma_poly, Generator, GlModule, LinComb};
use crate::symcomb::{is_block_descending, stabilizer_refinement, IntegralPoint, Refinement};

type ActCache = Mutex<HashMap<(Generator, DerivedTableau), Arc<LinComb<DerivedTableau, ParamFrac>>>>;

const ACT_CACHE: usize = 1 << 14;

/// `V(T(v)) = C_v ⊗_{B_η} L_η` for a fully critical `v` with `η(v) = η`.
#[derive(Clone)]
pub struct EvaluatedLattice {
    lattice: Arc<Lattice>,
    v: Vec<ParamScalar>,
    acts: Arc<ActCache>,
}

impl std::fmt::Debug for EvaluatedLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EvaluatedLattice").field("eta", self.lattice.refinement()).field("v", &self.v).finish()
    }
}

fn require_critical(v: &[ParamScalar], eta: &Refinement) -> Result<()> {
    if !is_normal_form(v)? || !is_fully_critical(v)? {
        return Err(GtError::Invalid("point is not fully critical".into()));
    }
    let found = singularity(v)?.eta;
    if &found != eta {
        return Err(GtError::Invalid(format!("point has singularity {}, expected {}", found, eta)));
    }
    Ok(())
}

impl EvaluatedLattice {
    pub fn new(lattice: Arc<Lattice>, v: Vec<ParamScalar>) -> Result<EvaluatedLattice> {
        require_critical(&v, lattice.refinement())?;
        Ok(EvaluatedLattice { lattice, v, acts: Arc::default() })
    }

    /// Builds the lattice for `η(v)` as well.
    pub fn for_point(v: Vec<ParamScalar>) -> Result<EvaluatedLattice> {
        let eta = singularity(&v)?.eta;
        EvaluatedLattice::new(Arc::new(Lattice::new(&eta)?), v)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn point(&self) -> &[ParamScalar] {
        &self.v
    }

    /// `v + z`.
    pub fn shifted_point(&self, z: &IntegralPoint) -> Vec<ParamScalar> {
        self.v.iter().zip(z.values()).map(|(a, &b)| a.add_int(b)).collect()
    }

    fn evaluate(&self, f: &RationalFunction) -> Result<ParamFrac> {
        f.evaluate(&self.v).map_err(|e| GtError::Internal(format!("evaluation of a certified coefficient: {}", e)))
    }
}

impl GlModule for EvaluatedLattice {
    type Basis = DerivedTableau;
    type Coeff = ParamFrac;

    fn rank(&self) -> usize {
        self.lattice.refinement().rank()
    }

    /// The coefficients of the lattice action evaluated at `v`.
    fn act_basis(&self, g: Generator, d: &DerivedTableau) -> Result<LinComb<DerivedTableau, ParamFrac>> {
        let key = (g, d.clone());
        if let Some(hit) = self.acts.lock().unwrap().get(&key) {
            return Ok((**hit).clone());
        }
        let out = self.lattice.act(g, d)?.try_map_coeffs(|f| self.evaluate(f))?;
        let mut cache = self.acts.lock().unwrap();
        if cache.len() >= ACT_CACHE {
            cache.clear();
        }
        cache.insert(key, Arc::new(out.clone()));
        Ok(out)
    }
}

/// The matrix of `c_{k,i}` on the derived tableaux `𝒟_ν(v + z)`.
#[derive(Clone, Debug, Serialize)]
pub struct EigenspaceAction {
    pub k: usize,
    pub i: usize,
    pub basis: Vec<DerivedTableau>,
    /// `matrix[row][col]`: coefficient of `basis[row]` in `c_{k,i} basis[col]`.
    pub matrix: Vec<Vec<ParamFrac>>,
    /// `γ_{k,i}(v + z)`.
    pub eigenvalue: ParamFrac,
    /// Least `m` with `(c - γ(v+z))^m 𝒟_ν = 0`, per basis vector.
    pub min_exponents: Vec<usize>,
}

impl EigenspaceAction {
    /// True iff the exponent `ℓ(ν) + 1` annihilates every `𝒟_ν`.
    pub fn nilpotency_holds(&self) -> bool {
        self.basis.iter().zip(&self.min_exponents).all(|(d, &m)| m <= d.nu.length() + 1)
    }
}

/// `c 𝒟_ν = sum_{σ,τ} π_v(d^ν_{σ,τ}) π_v(D_σ(γ(x+z))) 𝒟_τ`, restricted to
/// shuffles `τ` (the other derived tableaux of `T(z)` vanish).
pub fn gamma_action_on_eigenspace(
    m: &EvaluatedLattice,
    k: usize,
    i: usize,
    z: &IntegralPoint,
) -> Result<EigenspaceAction> {
    let eta = m.lattice.refinement();
    let table = m.lattice.table();
    let basis = derived_basis_at(eta, z)?;
    let gz = gamma_poly(k, i)?.shift(z.values());
    let at_v = |p| RationalFunction::from_poly(p).evaluate(&m.v);
    let d_gamma: Vec<ParamFrac> = table.order().iter().map(|s| at_v(sdd_poly(eta, s, &gz))).collect::<Result<_>>()?;
    let mut matrix = vec![vec![ParamFrac::zero(); basis.len()]; basis.len()];
    for (col, nu) in basis.iter().enumerate() {
        for (row, tau) in basis.iter().enumerate() {
            let mut acc = ParamFrac::zero();
            for (s, dg) in table.order().iter().zip(&d_gamma) {
                if dg.is_zero() {
                    continue;
                }
                let d = table.d_coeff(s, &tau.nu, &nu.nu);
                if !d.is_zero() {
                    acc = acc.add(&at_v(d)?.mul(dg));
                }
            }
            matrix[row][col] = acc;
        }
    }
    let eigenvalue = RationalFunction::from_poly(gamma_poly(k, i)?).evaluate(&m.shifted_point(z))?;
    let nmat: Vec<Vec<ParamFrac>> = (0..basis.len())
        .map(|r| {
            (0..basis.len())
                .map(|c| if r == c { matrix[r][c].sub(&eigenvalue) } else { matrix[r][c].clone() })
                .collect()
        })
        .collect();
    let min_exponents = (0..basis.len())
        .map(|col| {
            let mut vec: Vec<ParamFrac> =
                (0..basis.len()).map(|r| if r == col { ParamFrac::one() } else { ParamFrac::zero() }).collect();
            let mut e = 0;
            while vec.iter().any(|x| !x.is_zero()) {
                vec = (0..basis.len())
                    .map(|r| (0..basis.len()).fold(ParamFrac::zero(), |acc, c| acc.add(&nmat[r][c].mul(&vec[c]))))
                    .collect();
                e += 1;
                if e > basis.len() + 1 {
                    break;
                }
            }
            e
        })
        .collect();
    Ok(EigenspaceAction { k, i, basis, matrix, eigenvalue, min_exponents })
}

/// One character of the support of `V(T(v))`.
#[derive(Clone, Debug, Serialize)]
pub struct SupportEntry {
    pub z: Vec<Vec<i64>>,
    /// `(γ_{k,i}(v + z))` over all `(k, i)`, in canonical printed form.
    pub fingerprint: Vec<String>,
    /// `η!/ε(z)!`.
    pub multiplicity: u64,
    /// The number of derived tableaux of `T(z)`.
    pub derived_count: usize,
}

/// The characters `χ_{v+z}` for `z ∈ N_η` with `‖z‖∞ <= r`.
pub fn support_window(v: &[ParamScalar], r: i64) -> Result<Vec<SupportEntry>> {
    let eta = singularity(v)?.eta;
    require_critical(v, &eta)?;
    let n = eta.rank();
    let gammas: Vec<RationalFunction> = gamma_indices(n)
        .into_iter()
        .map(|(k, i)| gamma_poly(k, i).map(RationalFunction::from_poly))
        .collect::<Result<_>>()?;
    let zs: Vec<IntegralPoint> =
        IntegralPoint::window(n, r).into_iter().filter(|z| is_block_descending(z, &eta)).collect();
    zs.par_iter()
        .map(|z| {
            let point: Vec<ParamScalar> = v.iter().zip(z.values()).map(|(a, &b)| a.add_int(b)).collect();
            let fingerprint =
                gammas.iter().map(|g| g.evaluate(&point).map(|f| f.to_string())).collect::<Result<_>>()?;
            let eps = stabilizer_refinement(z, &eta)?;
            Ok(SupportEntry {
                z: z.rows()[..n - 1].to_vec(),
                fingerprint,
                multiplicity: eta.factorial() / eps.factorial(),
                derived_count: derived_basis_at(&eta, z)?.len(),
            })
        })
        .collect()
}

/// True iff no two entries share a fingerprint.
pub fn fingerprints_distinct(entries: &[SupportEntry]) -> bool {
    let mut seen = HashMap::new();
    entries.iter().all(|e| seen.insert(e.fingerprint.clone(), ()).is_none())
}

/// For `z ∈ N_η` with `ε = ε(z)`: whether `Δ_ε e^±_{k,i}(x + z) ∈ B_η`, per function.
pub fn delta_eps_diagnostic(eta: &Refinement, z: &IntegralPoint) -> Result<Vec<(String, bool)>> {
    let eps = stabilizer_refinement(z, eta)?;
    let de = RationalFunction::from_poly(delta(&eps));
    let mut out = Vec::new();
    for k in 1..eta.rank() {
        for i in 1..=k {
            for (name, f) in [("e+", e_plus(k, i)), ("e-", e_minus(k, i))] {
                let g = de.mul(&f.shift(z.values()));
                out.push((format!("{}_{{{},{}}}", name, k, i), g.in_b_eta(eta)));
            }
        }
    }
    Ok(out)
}
