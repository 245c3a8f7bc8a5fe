//! Divided differences over a parabolic subgroup `S_eta`, their symmetrized
//! versions `D_σ = sym ∘ ∂_σ`, and the dual polynomials `(∂_σ Δ)*` that give
//! coordinates of a function over the `S_eta`-invariants.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{GtError, Result};
use crate::exactalg::{Denominator, LinearFactor, Polynomial, RationalFunction, MAX_VARS, Q};
use crate::symcomb::{Permutation, Refinement};

pub mod identities;
pub mod random;

pub const DEFAULT_MAX_FACT: u64 = 24;

static MAX_FACT_OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Sets the `eta!` bound for this process; `None` restores the default lookup.
pub fn set_max_fact(bound: Option<u64>) {
    MAX_FACT_OVERRIDE.store(bound.unwrap_or(0), Ordering::Relaxed);
}

/// The `eta!` bound: the value from [`set_max_fact`], else `GTKIT_MAX_FACT`
/// if set to a positive integer, else 24.
pub fn max_fact() -> u64 {
    let o = MAX_FACT_OVERRIDE.load(Ordering::Relaxed);
    if o > 0 {
        return o;
    }
    std::env::var("GTKIT_MAX_FACT")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&b| b >= 1)
        .unwrap_or(DEFAULT_MAX_FACT)
}

fn swap_map(a: usize) -> Vec<usize> {
    let mut m: Vec<usize> = (0..MAX_VARS).collect();
    m.swap(a, a + 1);
    m
}

/// `Δ_eta`: product of `x_a - x_b` over pairs `a < b` in a common block.
pub fn delta(eta: &Refinement) -> Polynomial {
    let mut p = Polynomial::one();
    for r in eta.nontrivial_blocks() {
        for a in r.clone() {
            for b in a + 1..r.end {
                p = p.mul(&Polynomial::linear(a, b, &Q::zero()));
            }
        }
    }
    p
}

/// `Δ_eta` as a rational function with the factored denominator form, for
/// dividing by it.
pub fn delta_inverse(eta: &Refinement) -> RationalFunction {
    let mut f = RationalFunction::one();
    for r in eta.nontrivial_blocks() {
        for a in r.clone() {
            for b in a + 1..r.end {
                f = f.mul(&RationalFunction::inv_linear(a, b, 0));
            }
        }
    }
    f
}

/// `∂_a` on polynomials, `a` the slot of the simple transposition `(a, a+1)`.
pub fn dd_poly(a: usize, f: &Polynomial) -> Polynomial {
    // Termwise: (x^p y^q - x^q y^p) / (x - y) is a geometric sum.
    let mut acc = Vec::new();
    for (m, c) in f.terms() {
        let (p, q) = (m.exp(a), m.exp(a + 1));
        if p == q {
            continue;
        }
        let (hi, lo, c) = if p > q { (p, q, c.clone()) } else { (q, p, -c) };
        for j in 0..hi - lo {
            acc.push((m.with_exp(a, hi - 1 - j).with_exp(a + 1, lo + j), c.clone()));
        }
    }
    Polynomial::from_terms(acc)
}

/// `∂_a f = (f - s_a f) / (x_a - x_{a+1})`.
pub fn dd_apply(a: usize, f: &RationalFunction) -> RationalFunction {
    if let Some(p) = f.to_polynomial() {
        return RationalFunction::from_poly(dd_poly(a, &p));
    }
    f.sub(&f.permute(&swap_map(a))).div_linear(a, a + 1, 0)
}

/// Rewrites `f = p / Q` with `Q` invariant under the simple transpositions
/// at `letters`. Operators built from these transpositions then act on `p`
/// alone.
pub fn invariant_form(letters: &[usize], f: &RationalFunction) -> (Polynomial, Denominator) {
    let mut den = f.denominator().clone();
    let maps: Vec<(usize, Vec<usize>)> = letters.iter().map(|&a| (a, swap_map(a))).collect();
    loop {
        let mut changed = false;
        let current: Vec<(LinearFactor, u32)> = den.iter().map(|(f, m)| (*f, *m)).collect();
        for (g, m) in current {
            for (_, map) in &maps {
                let (h, _) = LinearFactor::oriented(map[g.first()], map[g.second()], g.shift());
                let e = den.entry(h).or_insert(0);
                if *e < m {
                    *e = m;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // The closed product is invariant up to a sign character; fix each run
    // of consecutive letters where it is the sign by including that run's
    // Vandermonde factors.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for a in sorted {
        match runs.last_mut() {
            Some((_, end)) if *end + 1 == a => *end = a,
            _ => runs.push((a, a)),
        }
    }
    for (start, end) in runs {
        let map = swap_map(start);
        let mut odd = false;
        for (g, m) in &den {
            let (_, neg) = LinearFactor::oriented(map[g.first()], map[g.second()], g.shift());
            if neg && m % 2 == 1 {
                odd = !odd;
            }
        }
        if odd {
            for a in start..=end + 1 {
                for b in a + 1..=end + 1 {
                    *den.entry(LinearFactor::oriented(a, b, 0).0).or_insert(0) += 1;
                }
            }
        }
    }
    (f.numerator_over(&den), den)
}

/// Applies `∂_{a_1} ⋯ ∂_{a_l}` (rightmost first).
pub fn dd_word(word: &[usize], f: &RationalFunction) -> RationalFunction {
    if let Some(p) = f.to_polynomial() {
        return RationalFunction::from_poly(dd_word_poly(word, &p));
    }
    let (p, den) = invariant_form(word, f);
    RationalFunction::new(dd_word_poly(word, &p), den)
}

pub fn dd_word_poly(word: &[usize], f: &Polynomial) -> Polynomial {
    word.iter().rev().fold(f.clone(), |acc, &a| dd_poly(a, &acc))
}

/// `∂_σ` along the lexicographically smallest reduced word of `σ`.
pub fn dd_sigma(sigma: &Permutation, f: &RationalFunction) -> RationalFunction {
    dd_word(&sigma.reduced_word(), f)
}

pub fn dd_sigma_poly(sigma: &Permutation, f: &Polynomial) -> Polynomial {
    dd_word_poly(&sigma.reduced_word(), f)
}

/// `sym_eta f = (1/eta!) Σ σ(f)`.
pub fn sym(eta: &Refinement, f: &RationalFunction) -> RationalFunction {
    let (p, den) = invariant_form(&eta.simple_slots(), f);
    RationalFunction::new(sym_poly(eta, &p), den)
}

pub fn sym_poly(eta: &Refinement, f: &Polynomial) -> Polynomial {
    let mut acc = Vec::with_capacity(f.len() * eta.factorial() as usize);
    for s in eta.elements() {
        let map = s.slot_map();
        acc.extend(f.terms().iter().map(|(m, c)| (m.permute(&map), c.clone())));
    }
    Polynomial::from_terms(acc).scale(&Q::new(1, eta.factorial() as i64))
}

/// `asym_eta f = (1/eta!) Σ sg(σ) σ(f)`.
pub fn asym(eta: &Refinement, f: &RationalFunction) -> RationalFunction {
    let (p, den) = invariant_form(&eta.simple_slots(), f);
    let mut acc = Polynomial::zero();
    for s in eta.elements() {
        let g = p.permute(&s.slot_map());
        acc = if s.sign() < 0 { acc.sub(&g) } else { acc.add(&g) };
    }
    RationalFunction::new(acc.scale(&Q::new(1, eta.factorial() as i64)), den)
}

/// `D_σ^eta f = sym_eta(∂_σ f)`.
pub fn sdd(eta: &Refinement, sigma: &Permutation, f: &RationalFunction) -> RationalFunction {
    let (p, den) = invariant_form(&eta.simple_slots(), f);
    RationalFunction::new(sdd_poly(eta, sigma, &p), den)
}

pub fn sdd_poly(eta: &Refinement, sigma: &Permutation, f: &Polynomial) -> Polynomial {
    sym_poly(eta, &dd_sigma_poly(sigma, f))
}

/// True iff `f` lies in the ideal generated by the block differences
/// `x_a - x_b` (`a`, `b` in one `eta`-block): setting every block's
/// variables equal to one common value kills `f`.
pub fn in_p_eta(eta: &Refinement, f: &Polynomial) -> bool {
    let mut images: Vec<Polynomial> = (0..MAX_VARS).map(Polynomial::var).collect();
    for r in eta.nontrivial_blocks() {
        for s in r.clone() {
            images[s] = Polynomial::var(r.start);
        }
    }
    f.compose(&images).is_zero()
}

/// An element `Σ f_σ σ` of the smash product `F # S_eta`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorElement {
    terms: BTreeMap<Permutation, RationalFunction>,
}

impl OperatorElement {
    pub fn zero() -> OperatorElement {
        OperatorElement { terms: BTreeMap::new() }
    }

    pub fn group(sigma: &Permutation) -> OperatorElement {
        OperatorElement::term(RationalFunction::one(), sigma.clone())
    }

    pub fn term(f: RationalFunction, sigma: Permutation) -> OperatorElement {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(sigma, f);
        }
        OperatorElement { terms }
    }

    /// Multiplication by `f` (the element `f · id`).
    pub fn scalar(eta: &Refinement, f: RationalFunction) -> OperatorElement {
        OperatorElement::term(f, eta.identity())
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, RationalFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∂_a = (1/(x_a - x_{a+1})) (id - s_a)`.
    pub fn simple_dd(eta: &Refinement, a: usize) -> Result<OperatorElement> {
        let s = eta.simple(a)?;
        let c = RationalFunction::inv_linear(a, a + 1, 0);
        Ok(OperatorElement::term(c.clone(), eta.identity()).add(&OperatorElement::term(c.neg(), s)))
    }

    /// `∂_σ` as an element of the smash product.
    pub fn dd(eta: &Refinement, sigma: &Permutation) -> OperatorElement {
        let mut acc = OperatorElement::group(&eta.identity());
        for a in sigma.reduced_word() {
            acc = acc.mul(&OperatorElement::simple_dd(eta, a).expect("reduced word letter"));
        }
        acc
    }

    /// `sym_eta = (1/eta!) Σ σ`.
    pub fn sym(eta: &Refinement) -> OperatorElement {
        let c = RationalFunction::constant(Q::new(1, eta.factorial() as i64));
        let mut terms = BTreeMap::new();
        for s in eta.elements() {
            terms.insert(s, c.clone());
        }
        OperatorElement { terms }
    }

    /// `asym_eta = (1/eta!) Σ sg(σ) σ`.
    pub fn asym(eta: &Refinement) -> OperatorElement {
        let c = Q::new(1, eta.factorial() as i64);
        let mut terms = BTreeMap::new();
        for s in eta.elements() {
            let sign = Q::from_int(s.sign());
            terms.insert(s, RationalFunction::constant(&c * &sign));
        }
        OperatorElement { terms }
    }

    /// `D_σ^eta = sym_eta · ∂_σ`.
    pub fn sdd(eta: &Refinement, sigma: &Permutation) -> OperatorElement {
        OperatorElement::sym(eta).mul(&OperatorElement::dd(eta, sigma))
    }

    pub fn add(&self, o: &OperatorElement) -> OperatorElement {
        let mut terms = self.terms.clone();
        for (s, f) in &o.terms {
            let sum = match terms.get(s) {
                Some(g) => g.add(f),
                None => f.clone(),
            };
            if sum.is_zero() {
                terms.remove(s);
            } else {
                terms.insert(s.clone(), sum);
            }
        }
        OperatorElement { terms }
    }

    pub fn neg(&self) -> OperatorElement {
        OperatorElement { terms: self.terms.iter().map(|(s, f)| (s.clone(), f.neg())).collect() }
    }

    pub fn sub(&self, o: &OperatorElement) -> OperatorElement {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> OperatorElement {
        if c.is_zero() {
            return OperatorElement::zero();
        }
        OperatorElement { terms: self.terms.iter().map(|(s, f)| (s.clone(), f.scale(c))).collect() }
    }

    /// `(f σ)(g τ) = f σ(g) στ`.
    pub fn mul(&self, o: &OperatorElement) -> OperatorElement {
        let mut acc: BTreeMap<Permutation, Vec<RationalFunction>> = BTreeMap::new();
        for (s, f) in &self.terms {
            let map = s.slot_map();
            for (t, g) in &o.terms {
                acc.entry(s.compose(t)).or_default().push(f.mul(&g.permute(&map)));
            }
        }
        let terms =
            acc.into_iter().map(|(p, fs)| (p, RationalFunction::sum(&fs))).filter(|(_, f)| !f.is_zero()).collect();
        OperatorElement { terms }
    }

    /// `Σ f_σ σ(g)`.
    pub fn apply(&self, g: &RationalFunction) -> RationalFunction {
        let parts: Vec<RationalFunction> = self.terms.iter().map(|(s, f)| f.mul(&g.permute(&s.slot_map()))).collect();
        RationalFunction::sum(&parts)
    }
}

/// The dual polynomials `(∂_σ Δ)*` of a parabolic subgroup, with the
/// matrices used to produce them.
#[derive(Clone, Debug)]
pub struct DualBasisTable {
    eta: Refinement,
    order: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    duals: Vec<Polynomial>,
    /// `X^σ_τ = τ(∂_σ Δ / (eta! Δ))`.
    x: Vec<Vec<RationalFunction>>,
    /// `X^{-1}`; its entries are polynomials.
    x_inv: Vec<Vec<Polynomial>>,
}

impl DualBasisTable {
    /// Builds the table without the certification checks.
    pub fn build(eta: &Refinement, bound: u64) -> Result<DualBasisTable> {
        let size = eta.factorial();
        if size > bound {
            return Err(GtError::BoundExceeded { size, bound });
        }
        let order = eta.elements();
        let index: HashMap<Permutation, usize> = order.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let m = order.len();
        let d = delta(eta);
        let w = eta.longest();
        let fact = Q::from_int(size as i64);
        let dd_delta: Vec<Polynomial> = order.iter().map(|s| dd_sigma_poly(s, &d)).collect();
        let maps: Vec<Vec<usize>> = order.iter().map(|s| s.slot_map()).collect();

        let inv_delta = delta_inverse(eta).scale(&fact.inv());
        let x: Vec<Vec<RationalFunction>> = (0..m)
            .map(|si| {
                let base = inv_delta.mul_poly(&dd_delta[si]);
                (0..m).map(|ti| base.permute(&maps[ti])).collect()
            })
            .collect();

        // Y^ρ_ν = (1/eta!) ρ(∂_{νw} Δ).
        let nu_w: Vec<Polynomial> =
            order.iter().map(|nu| dd_sigma_poly(&nu.compose(&w), &d).scale(&fact.inv())).collect();
        let y: Vec<Vec<Polynomial>> = (0..m).map(|ri| (0..m).map(|ni| nu_w[ni].permute(&maps[ri])).collect()).collect();

        // (XY)^σ_ν = (1/eta!^2) ∂_w(∂_σΔ · ∂_{νw}Δ): polynomial, upper
        // unitriangular in the total order.
        let fact2 = (&fact * &fact).inv();
        let mut xy = vec![vec![Polynomial::zero(); m]; m];
        for si in 0..m {
            for ni in 0..m {
                if order[si].length() > order[ni].length() {
                    continue;
                }
                let prod = dd_delta[si].mul(&nu_w[ni]).scale(&fact);
                xy[si][ni] = dd_sigma_poly(&w, &prod).scale(&fact2);
            }
        }
        for si in 0..m {
            if xy[si][si] != Polynomial::one() {
                return Err(GtError::Internal(format!("non-unit pivot at {}", order[si])));
            }
            for ni in 0..si {
                if !xy[si][ni].is_zero() {
                    return Err(GtError::Internal("XY is not upper triangular".into()));
                }
            }
        }
        // Back substitution for (XY)^{-1}, column by column.
        let mut inv = vec![vec![Polynomial::zero(); m]; m];
        for col in 0..m {
            inv[col][col] = Polynomial::one();
            for row in (0..col).rev() {
                let mut acc = Polynomial::zero();
                for k in row + 1..=col {
                    if !xy[row][k].is_zero() && !inv[k][col].is_zero() {
                        acc = acc.add(&xy[row][k].mul(&inv[k][col]));
                    }
                }
                inv[row][col] = acc.neg();
            }
        }
        // X^{-1} = Y (XY)^{-1}.
        let x_inv: Vec<Vec<Polynomial>> = (0..m)
            .map(|ri| {
                (0..m)
                    .map(|ci| {
                        let mut acc = Polynomial::zero();
                        for k in 0..=ci {
                            if !inv[k][ci].is_zero() {
                                acc = acc.add(&y[ri][k].mul(&inv[k][ci]));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let id = index[&eta.identity()];
        let duals = order.iter().map(|s| x_inv[id][index[&s.inverse()]].clone()).collect();
        Ok(DualBasisTable { eta: eta.clone(), order, index, duals, x, x_inv })
    }

    pub fn refinement(&self) -> &Refinement {
        &self.eta
    }

    /// `S_eta` in the fixed total order.
    pub fn order(&self) -> &[Permutation] {
        &self.order
    }

    pub fn position(&self, sigma: &Permutation) -> usize {
        self.index[sigma]
    }

    /// `(∂_σ Δ)*`.
    pub fn dual(&self, sigma: &Permutation) -> &Polynomial {
        &self.duals[self.index[sigma]]
    }

    pub fn duals(&self) -> impl Iterator<Item = (&Permutation, &Polynomial)> {
        self.order.iter().zip(&self.duals)
    }

    pub fn x(&self) -> &[Vec<RationalFunction>] {
        &self.x
    }

    pub fn x_inv(&self) -> &[Vec<Polynomial>] {
        &self.x_inv
    }

    /// Runs every certification check; returns the failures.
    pub fn certify(&self) -> Vec<String> {
        let mut fails = Vec::new();
        let m = self.order.len();
        let w = self.eta.longest();
        let d = delta(&self.eta);
        let fact = Q::from_int(self.eta.factorial() as i64);
        for (s, p) in self.duals() {
            if !p.is_zero() && !p.is_homogeneous(s.length() as u32) {
                fails.push(format!("dual of {} is not homogeneous of degree {}", s, s.length()));
            }
            if p.is_zero() {
                fails.push(format!("dual of {} vanishes", s));
            }
        }
        if self.dual(&self.eta.identity()) != &Polynomial::one() {
            fails.push("dual of id is not 1".into());
        }
        for si in 0..m {
            for ci in 0..m {
                let prods: Vec<RationalFunction> = (0..m).map(|k| self.x[si][k].mul_poly(&self.x_inv[k][ci])).collect();
                let e = RationalFunction::sum(&prods);
                let want = if si == ci { RationalFunction::one() } else { RationalFunction::zero() };
                if e != want {
                    fails.push(format!("(X X^-1)[{}][{}] = {}", self.order[si], self.order[ci], e));
                }
            }
        }
        for (s, p) in self.duals() {
            let col = self.index[&s.inverse()];
            for (ti, t) in self.order.iter().enumerate() {
                if self.x_inv[ti][col] != p.permute(&t.slot_map()) {
                    fails.push(format!("X^-1 column {} is not the orbit of the dual at row {}", s.inverse(), t));
                }
            }
            let target = dd_sigma_poly(&s.inverse().compose(&w), &d).scale(&fact.inv());
            if !in_ideal_i(&self.eta, &p.sub(&target)) {
                fails.push(format!("dual of {} is not congruent to its leading term modulo I", s));
            }
        }
        fails
    }

    /// `σ ↦ D_σ(f)`; `f = Σ D_σ(f) (∂_σΔ)*`.
    pub fn decompose(&self, f: &RationalFunction) -> Vec<(Permutation, RationalFunction)> {
        let (p, den) = invariant_form(&self.eta.simple_slots(), f);
        self.order.iter().map(|s| (s.clone(), RationalFunction::new(sdd_poly(&self.eta, s, &p), den.clone()))).collect()
    }

    pub fn reconstruct(&self, coeffs: &[(Permutation, RationalFunction)]) -> RationalFunction {
        let parts: Vec<RationalFunction> = coeffs.iter().map(|(s, c)| c.mul_poly(self.dual(s))).collect();
        RationalFunction::sum(&parts)
    }

    /// `d^ν_{σ,τ} = D_ν((∂_σΔ)* (∂_τΔ)*)`.
    pub fn d_coeff(&self, sigma: &Permutation, tau: &Permutation, nu: &Permutation) -> Polynomial {
        sdd_poly(&self.eta, nu, &self.dual(sigma).mul(self.dual(tau)))
    }
}

/// Membership in the ideal generated by the `S_eta`-invariant part of `p_eta`:
/// every coordinate `D_ν(f)` must lie in `p_eta`.
pub fn in_ideal_i(eta: &Refinement, f: &Polynomial) -> bool {
    eta.elements().iter().all(|nu| in_p_eta(eta, &sdd_poly(eta, nu, f)))
}

fn cache() -> &'static Mutex<HashMap<Refinement, Arc<DualBasisTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<Refinement, Arc<DualBasisTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds and certifies the table of `eta`, bounded by [`max_fact`].
pub fn dual_basis(eta: &Refinement) -> Result<Arc<DualBasisTable>> {
    dual_basis_with_bound(eta, max_fact())
}

pub fn dual_basis_with_bound(eta: &Refinement, bound: u64) -> Result<Arc<DualBasisTable>> {
    if eta.factorial() > bound {
        return Err(GtError::BoundExceeded { size: eta.factorial(), bound });
    }
    if let Some(t) = cache().lock().expect("cache lock").get(eta) {
        return Ok(t.clone());
    }
    let table = DualBasisTable::build(eta, bound)?;
    let fails = table.certify();
    if let Some(f) = fails.first() {
        return Err(GtError::Internal(format!("dual basis certification failed: {}", f)));
    }
    let table = Arc::new(table);
    cache().lock().expect("cache lock").insert(eta.clone(), table.clone());
    Ok(table)
}

/// `σ ↦ D_σ^eta(f)`.
pub fn decompose(eta: &Refinement, f: &RationalFunction) -> Result<Vec<(Permutation, RationalFunction)>> {
    Ok(dual_basis(eta)?.decompose(f))
}

pub fn d_coeff(eta: &Refinement, sigma: &Permutation, tau: &Permutation, nu: &Permutation) -> Result<Polynomial> {
    Ok(dual_basis(eta)?.d_coeff(sigma, tau, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::VarIndex;

    fn x(k: usize, i: usize) -> Polynomial {
        Polynomial::var(VarIndex::new(k, i).flat())
    }

    fn row2_block() -> Refinement {
        Refinement::gt(vec![vec![1], vec![2], vec![1, 1, 1]]).unwrap()
    }

    #[test]
    fn delta_examples() {
        let e = row2_block();
        assert_eq!(delta(&e), x(2, 1).sub(&x(2, 2)));
        assert_eq!(delta(&Refinement::generic(3)), Polynomial::one());
        let e3 = Refinement::gt(vec![vec![1], vec![1, 1], vec![3], vec![1; 4]]).unwrap();
        let d = delta(&e3);
        for a in e3.simple_slots() {
            assert_eq!(d.permute(&swap_map(a)), d.neg());
        }
    }

    #[test]
    fn dd_examples() {
        let a = VarIndex::new(2, 1).flat();
        let f = RationalFunction::from_poly(x(2, 1));
        assert_eq!(dd_apply(a, &f), RationalFunction::one());
        let sq = RationalFunction::from_poly(x(2, 1).mul(&x(2, 1)));
        assert_eq!(dd_apply(a, &sq), RationalFunction::from_poly(x(2, 1).add(&x(2, 2))));
        let sym = RationalFunction::from_poly(x(2, 1).mul(&x(2, 2)));
        assert!(dd_apply(a, &sym).is_zero());
    }

    #[test]
    fn longest_dd_of_delta_is_factorial() {
        let e = Refinement::gt(vec![vec![1], vec![2], vec![3], vec![1; 4]]).unwrap();
        let d = delta(&e);
        assert_eq!(dd_sigma_poly(&e.longest(), &d), Polynomial::constant(Q::from_int(12)));
        for s in e.elements() {
            if s.length() < e.longest().length() {
                assert!(in_p_eta(&e, &dd_sigma_poly(&s, &d)));
            }
        }
    }

    #[test]
    fn sdd_simple_on_variable() {
        let e = row2_block();
        let s = e.simple(VarIndex::new(2, 1).flat()).unwrap();
        assert_eq!(sdd(&e, &s, &RationalFunction::from_poly(x(2, 1))), RationalFunction::one());
    }

    #[test]
    fn size_two_dual_basis_by_hand() {
        let e = row2_block();
        let t = DualBasisTable::build(&e, 24).unwrap();
        assert!(t.certify().is_empty());
        let s = e.simple(VarIndex::new(2, 1).flat()).unwrap();
        assert_eq!(t.dual(&e.identity()), &Polynomial::one());
        assert_eq!(t.dual(&s), &x(2, 1).sub(&x(2, 2)).scale(&Q::new(1, 2)));
        // Hand-inverted X^{-1} = [[1, d/2], [1, -d/2]] with d = x21 - x22.
        let half = x(2, 1).sub(&x(2, 2)).scale(&Q::new(1, 2));
        assert_eq!(t.x_inv()[0], vec![Polynomial::one(), half.clone()]);
        assert_eq!(t.x_inv()[1], vec![Polynomial::one(), half.neg()]);
        let f = RationalFunction::from_poly(x(2, 1));
        let dec = t.decompose(&f);
        assert_eq!(dec[0].1, RationalFunction::from_poly(x(2, 1).add(&x(2, 2)).scale(&Q::new(1, 2))));
        assert_eq!(dec[1].1, RationalFunction::one());
        assert_eq!(t.reconstruct(&dec), f);
    }

    #[test]
    fn trivial_table() {
        let e = Refinement::generic(3);
        let t = DualBasisTable::build(&e, 24).unwrap();
        assert_eq!(t.order().len(), 1);
        assert_eq!(t.dual(&e.identity()), &Polynomial::one());
    }

    #[test]
    fn bound_exceeded() {
        let e = Refinement::gt(vec![vec![1], vec![2], vec![3], vec![4], vec![1; 5]]).unwrap();
        assert_eq!(DualBasisTable::build(&e, 24).unwrap_err(), GtError::BoundExceeded { size: 288, bound: 24 });
    }

    #[test]
    fn operator_sdd_matches_formula() {
        // D_σ = (1/eta!) Σ_τ τ(∂_{σ^{-1}}Δ / Δ) τ.
        let e = Refinement::gt(vec![vec![1], vec![1, 1], vec![3], vec![1; 4]]).unwrap();
        let d = delta(&e);
        let inv = delta_inverse(&e);
        let fact = Q::new(1, e.factorial() as i64);
        for s in e.elements() {
            let base = inv.mul_poly(&dd_sigma_poly(&s.inverse(), &d)).scale(&fact);
            let mut rhs = OperatorElement::zero();
            for t in e.elements() {
                rhs = rhs.add(&OperatorElement::term(base.permute(&t.slot_map()), t.clone()));
            }
            assert_eq!(OperatorElement::sdd(&e, &s), rhs);
        }
    }
}
