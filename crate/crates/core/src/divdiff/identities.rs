//! Randomized and exhaustive checks of the divided-difference identities,
//! with JSON-ready reports.

use rayon::prelude::*;
use serde::Serialize;

use super::random::{random_b_eta, random_poly_for, rng};
use super::{
    asym, dd_apply, dd_poly, dd_sigma, dd_sigma_poly, dd_word, delta, delta_inverse, in_p_eta, sym, DualBasisTable,
    OperatorElement,
};
use crate::exactalg::{Polynomial, RationalFunction, Q};
use crate::symcomb::{Permutation, Refinement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub refinement: String,
    pub trials: usize,
    pub status: String,
    pub counterexample: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

struct Tally {
    name: &'static str,
    eta: String,
    trials: usize,
    fail: Option<String>,
}

impl Tally {
    fn new(name: &'static str, eta: &Refinement) -> Tally {
        Tally { name, eta: eta.to_string(), trials: 0, fail: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok && self.fail.is_none() {
            self.fail = Some(what());
        }
    }

    fn report(self) -> IdentityReport {
        IdentityReport {
            name: self.name.to_string(),
            refinement: self.eta,
            trials: self.trials,
            status: if self.fail.is_none() { "pass" } else { "fail" }.to_string(),
            counterexample: self.fail,
        }
    }
}

/// One representative refinement of `(1,2,3,4,1^5)` for every multiset of
/// block sizes with `eta! <= 24` (the top row is kept trivial).
pub fn test_refinements() -> Vec<Refinement> {
    let top = vec![1; 5];
    let rows: Vec<Vec<Vec<usize>>> = vec![
        vec![vec![1], vec![1, 1], vec![1, 1, 1], vec![1, 1, 1, 1]],
        vec![vec![1], vec![2], vec![1, 1, 1], vec![1, 1, 1, 1]],
        vec![vec![1], vec![1, 1], vec![3], vec![1, 1, 1, 1]],
        vec![vec![1], vec![1, 1], vec![1, 1, 1], vec![4]],
        vec![vec![1], vec![1, 1], vec![1, 1, 1], vec![2, 2]],
        vec![vec![1], vec![2], vec![3], vec![1, 1, 1, 1]],
        vec![vec![1], vec![2], vec![2, 1], vec![2, 1, 1]],
        vec![vec![1], vec![2], vec![2, 1], vec![2, 2]],
        vec![vec![1], vec![2], vec![3], vec![2, 1, 1]],
    ];
    rows.into_iter()
        .map(|mut r| {
            r.push(top.clone());
            Refinement::gt(r).expect("valid refinement")
        })
        .collect()
}

/// Every reduced word of `sigma`, leftmost letter first.
pub fn all_reduced_words(eta: &Refinement, sigma: &Permutation) -> Vec<Vec<usize>> {
    if sigma.is_identity() {
        return vec![vec![]];
    }
    let img = sigma.one_line();
    let mut pos = vec![0; img.len()];
    for (s, &t) in img.iter().enumerate() {
        pos[t] = s;
    }
    let mut out = Vec::new();
    for a in eta.simple_slots() {
        if pos[a + 1] < pos[a] {
            let rest = eta.simple(a).expect("simple").compose(sigma);
            for mut w in all_reduced_words(eta, &rest) {
                w.insert(0, a);
                out.push(w);
            }
        }
    }
    out
}

fn poly_rf(p: Polynomial) -> RationalFunction {
    RationalFunction::from_poly(p)
}

/// The relations of the divided-difference operators and the three
/// smash-product identities, each applied to `trials` random inputs.
pub fn dd_suite(eta: &Refinement, trials: usize, seed: u64) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    let simples = eta.simple_slots();
    let mut r = rng(seed);
    let w = eta.longest();
    let fact = Q::from_int(eta.factorial() as i64);

    let mut sq = Tally::new("dd_square_zero", eta);
    let mut braid = Tally::new("braid", eta);
    let mut comm = Tally::new("distant_commutation", eta);
    let mut leib = Tally::new("twisted_leibniz", eta);
    for _ in 0..trials {
        let f = random_poly_for(&mut r, eta);
        let g = random_poly_for(&mut r, eta);
        for &a in &simples {
            sq.check(dd_poly(a, &dd_poly(a, &f)).is_zero(), || format!("a={} f={}", a, f));
            let s = eta.simple(a).unwrap().slot_map();
            let lhs = dd_poly(a, &f.mul(&g));
            let rhs = f.permute(&s).mul(&dd_poly(a, &g)).add(&dd_poly(a, &f).mul(&g));
            leib.check(lhs == rhs, || format!("a={} f={} g={}", a, f, g));
            if simples.contains(&(a + 1)) && eta.block_of(a) == eta.block_of(a + 2) {
                let l = dd_poly(a, &dd_poly(a + 1, &dd_poly(a, &f)));
                let rr = dd_poly(a + 1, &dd_poly(a, &dd_poly(a + 1, &f)));
                braid.check(l == rr, || format!("a={} f={}", a, f));
            }
            for &b in &simples {
                if b > a + 1 {
                    let l = dd_poly(a, &dd_poly(b, &f));
                    let rr = dd_poly(b, &dd_poly(a, &f));
                    comm.check(l == rr, || format!("a={} b={} f={}", a, b, f));
                }
            }
        }
    }
    out.extend([sq.report(), braid.report(), comm.report(), leib.report()]);

    // ∂_σ ∂_τ = ∂_{στ} if lengths add, else 0; every pair, cycled until
    // `trials` inputs have been used.
    let elems = eta.elements();
    let mut comp = Tally::new("composition_law", eta);
    let pairs: Vec<(&Permutation, &Permutation)> =
        elems.iter().flat_map(|s| elems.iter().map(move |t| (s, t))).collect();
    let n = pairs.len().max(trials);
    for i in 0..n {
        let (s, t) = pairs[i % pairs.len()];
        let f = random_poly_for(&mut r, eta);
        let st = s.compose(t);
        let lhs = dd_sigma_poly(s, &dd_sigma_poly(t, &f));
        let rhs = if s.length() + t.length() == st.length() { dd_sigma_poly(&st, &f) } else { Polynomial::zero() };
        comp.check(lhs == rhs, || format!("σ={} τ={} f={}", s, t, f));
    }
    out.push(comp.report());

    // Every reduced word of σ gives the same operator, ℓ(σ) <= 4.
    let mut words = Tally::new("reduced_word_independence", eta);
    let short: Vec<&Permutation> = elems.iter().filter(|s| s.length() <= 4 && s.length() >= 2).collect();
    let n = if short.is_empty() { 0 } else { short.len().max(trials) };
    for i in 0..n {
        let s = short[i % short.len()];
        let f = poly_rf(random_poly_for(&mut r, eta));
        let base = dd_sigma(s, &f);
        let ok = all_reduced_words(eta, s).iter().all(|wd| dd_word(wd, &f) == base);
        words.check(ok, || format!("σ={} f={}", s, f));
    }
    out.push(words.report());

    // Item 1: ∂_s · f = s(f) ∂_s + ∂_s(f) in F # S_eta, and applied to g.
    let mut item1 = Tally::new("smash_leibniz", eta);
    // Item 2: ∂_w · f ∂_σ = ∂_w · ∂_{σ^{-1}}(f), applied to g.
    let mut item2 = Tally::new("longest_absorbs_dd", eta);
    // Item 3: (1/eta!) ∂_w = (1/Δ) asym = sym · (1/Δ), applied to f.
    let mut item3 = Tally::new("longest_is_symmetrizer", eta);
    let inv_d = delta_inverse(eta);
    let dw_op = OperatorElement::dd(eta, &w);
    for i in 0..trials {
        let f = random_b_eta(&mut r, eta);
        let g = random_b_eta(&mut r, eta);
        for &a in &simples {
            let s = eta.simple(a).unwrap();
            let lhs = OperatorElement::simple_dd(eta, a).unwrap().mul(&OperatorElement::scalar(eta, f.clone()));
            let rhs = OperatorElement::scalar(eta, f.permute(&s.slot_map()))
                .mul(&OperatorElement::simple_dd(eta, a).unwrap())
                .add(&OperatorElement::scalar(eta, dd_apply(a, &f)));
            let applied = lhs.apply(&g) == rhs.apply(&g);
            item1.check(lhs == rhs && applied, || format!("a={} f={} g={}", a, f, g));
        }
        if !simples.is_empty() {
            let sigma = &elems[i % elems.len()];
            let lhs = dd_sigma(&w, &f.mul(&dd_sigma(sigma, &g)));
            let rhs = dd_sigma(&w, &dd_sigma(&sigma.inverse(), &f).mul(&g));
            let mut ok = lhs == rhs;
            if i < 3 {
                // The operator form itself, on a few samples.
                let l = dw_op.mul(&OperatorElement::scalar(eta, f.clone())).mul(&OperatorElement::dd(eta, sigma));
                let rr = dw_op.mul(&OperatorElement::scalar(eta, dd_sigma(&sigma.inverse(), &f)));
                ok &= l == rr;
            }
            item2.check(ok, || format!("σ={} f={} g={}", sigma, f, g));
        }
        let a = dd_sigma(&w, &f).scale(&fact.inv());
        let b = inv_d.mul(&asym(eta, &f));
        let c = sym(eta, &f.mul(&inv_d));
        item3.check(a == b && b == c, || format!("f={}", f));
    }
    out.extend([item1.report(), item2.report(), item3.report()]);

    let d = delta(eta);
    let mut dd_delta = Tally::new("dd_of_delta", eta);
    for s in &elems {
        let p = dd_sigma_poly(s, &d);
        if s == &w {
            dd_delta.check(p == Polynomial::constant(fact.clone()), || format!("∂_w Δ = {}", p));
        } else {
            dd_delta.check(in_p_eta(eta, &p), || format!("∂_{} Δ = {} not in p_eta", s, p));
        }
    }
    out.push(dd_delta.report());
    out
}

/// Certificate of the dual basis, reconstruction and invariance of the
/// coordinates on random elements of `B_eta`.
pub fn dual_basis_suite(eta: &Refinement, trials: usize, seed: u64, bound: u64) -> Vec<IdentityReport> {
    let mut cert = Tally::new("dual_basis_certificate", eta);
    let table = match DualBasisTable::build(eta, bound) {
        Ok(t) => t,
        Err(e) => {
            cert.check(false, || e.to_string());
            return vec![cert.report()];
        }
    };
    let fails = table.certify();
    cert.check(fails.is_empty(), || fails.join("; "));
    let mut rec = Tally::new("reconstruction", eta);
    let mut inv = Tally::new("coordinates_invariant", eta);
    let mut r = rng(seed);
    for _ in 0..trials {
        let f = random_b_eta(&mut r, eta);
        let coeffs = table.decompose(&f);
        rec.check(table.reconstruct(&coeffs) == f, || format!("f={}", f));
        let ok = coeffs
            .iter()
            .all(|(_, c)| eta.simple_slots().iter().all(|&a| c.permute(&eta.simple(a).unwrap().slot_map()) == *c));
        inv.check(ok, || format!("f={}", f));
    }
    vec![cert.report(), rec.report(), inv.report()]
}

/// The length trichotomy of `d^ν_{σ,τ}`: exhaustive when `eta! <= exhaustive_limit`,
/// otherwise `samples` random triples.
pub fn d_coeff_suite(
    eta: &Refinement,
    exhaustive_limit: u64,
    samples: usize,
    seed: u64,
    bound: u64,
) -> Vec<IdentityReport> {
    let mut unit = Tally::new("d_unit", eta);
    let mut vanish = Tally::new("d_vanishes_below", eta);
    let mut ideal = Tally::new("d_in_p_eta_above", eta);
    let mut resid = Tally::new("d_residue_invariant", eta);
    let table = match DualBasisTable::build(eta, bound) {
        Ok(t) => t,
        Err(e) => {
            unit.check(false, || e.to_string());
            return vec![unit.report()];
        }
    };
    let elems = table.order().to_vec();
    let id = eta.identity();
    for nu in &elems {
        let a = table.d_coeff(nu, &id, nu);
        let b = table.d_coeff(&id, nu, nu);
        unit.check(a == Polynomial::one() && b == Polynomial::one(), || format!("ν={}: {} / {}", nu, a, b));
    }
    let triples: Vec<(usize, usize, usize)> = if eta.factorial() <= exhaustive_limit {
        let m = elems.len();
        (0..m).flat_map(|s| (0..m).flat_map(move |t| (0..m).map(move |v| (s, t, v)))).collect()
    } else {
        use rand::Rng;
        let mut r = rng(seed);
        let m = elems.len();
        (0..samples).map(|_| (r.gen_range(0..m), r.gen_range(0..m), r.gen_range(0..m))).collect()
    };
    let simples = eta.simple_slots();
    let results: Vec<(usize, usize, usize, Polynomial)> =
        triples.par_iter().map(|&(s, t, v)| (s, t, v, table.d_coeff(&elems[s], &elems[t], &elems[v]))).collect();
    for (s, t, v, d) in results {
        let (ls, lt, lv) = (elems[s].length(), elems[t].length(), elems[v].length());
        let what = || format!("σ={} τ={} ν={} d={}", elems[s], elems[t], elems[v], d);
        if ls + lt < lv {
            vanish.check(d.is_zero(), what);
        } else if ls + lt > lv {
            ideal.check(in_p_eta(eta, &d), what);
            let inv = simples.iter().all(|&a| d.permute(&eta.simple(a).unwrap().slot_map()) == d);
            resid.check(inv, || format!("σ={} τ={} ν={}", elems[s], elems[t], elems[v]));
        }
    }
    vec![unit.report(), vanish.report(), ideal.report(), resid.report()]
}

/// All suites over every refinement of [`test_refinements`] within `bound`.
pub fn full_suite(trials: usize, seed: u64, bound: u64) -> Vec<IdentityReport> {
    let etas: Vec<Refinement> = test_refinements().into_iter().filter(|e| e.factorial() <= bound).collect();
    let chunks: Vec<Vec<IdentityReport>> = etas
        .par_iter()
        .enumerate()
        .map(|(i, eta)| {
            let s = seed.wrapping_add(1000 * i as u64);
            let mut v = dd_suite(eta, trials, s);
            v.extend(dual_basis_suite(eta, trials, s + 1, bound));
            v.extend(d_coeff_suite(eta, 6, trials, s + 2, bound));
            v
        })
        .collect();
    chunks.into_iter().flatten().collect()
}
