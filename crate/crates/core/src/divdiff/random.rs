//! Seeded random test inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{Monomial, Polynomial, RationalFunction, Q};
use crate::symcomb::Refinement;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Slots below the top row; slots of nontrivial blocks are listed twice so
/// they are drawn more often.
pub fn weighted_slots(eta: &Refinement) -> Vec<usize> {
    let top = eta.rank();
    let mut slots: Vec<usize> = (0..eta.size()).filter(|&s| eta.row_of(s) < top).collect();
    for r in eta.nontrivial_blocks() {
        slots.extend(r.clone());
    }
    slots
}

/// A random polynomial with at most `max_terms` terms of degree at most
/// `max_deg` in the given slots, coefficients in `[-5, 5]`.
pub fn random_poly<R: Rng>(rng: &mut R, slots: &[usize], max_deg: u32, max_terms: usize) -> Polynomial {
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=max_deg);
        let mut m = Monomial::one();
        for _ in 0..deg {
            if let Some(&s) = slots.choose(rng) {
                m = m.mul(&Monomial::var(s));
            }
        }
        let c = loop {
            let c: i64 = rng.gen_range(-5..=5);
            if c != 0 {
                break c;
            }
        };
        terms.push((m, Q::from_int(c)));
    }
    Polynomial::from_terms(terms)
}

/// A random polynomial suited to `eta`: degree up to `ℓ(w_eta) + 1`.
pub fn random_poly_for<R: Rng>(rng: &mut R, eta: &Refinement) -> Polynomial {
    let deg = eta.longest().length() as u32 + 1;
    random_poly(rng, &weighted_slots(eta), deg.min(7), 3)
}

/// A random element of `B_eta`: a random polynomial over up to two
/// denominator factors allowed in `B_eta`, at most one of them touching a
/// nontrivial block (its orbit, and so the work per operator, stays small).
pub fn random_b_eta<R: Rng>(rng: &mut R, eta: &Refinement) -> RationalFunction {
    let mut f = RationalFunction::from_poly(random_poly_for(rng, eta));
    let rows: Vec<usize> = (2..eta.rank()).filter(|&k| k <= eta.size()).collect();
    let nfac = rng.gen_range(0..=2);
    let mut touched = false;
    for _ in 0..nfac {
        let Some(&k) = rows.choose(rng) else { break };
        let slots: Vec<usize> = (0..eta.size()).filter(|&s| eta.row_of(s) == k).collect();
        if slots.len() < 2 {
            continue;
        }
        let a = *slots.choose(rng).unwrap();
        let b = loop {
            let b = *slots.choose(rng).unwrap();
            if b != a {
                break b;
            }
        };
        let big = |s: usize| eta.blocks()[eta.block_of(s)].len() > 1;
        if big(a) || big(b) {
            if touched {
                continue;
            }
            touched = true;
        }
        let m = if eta.block_of(a) == eta.block_of(b) {
            *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap()
        } else {
            rng.gen_range(-3..=3)
        };
        f = f.div_linear(a, b, m);
    }
    f
}
