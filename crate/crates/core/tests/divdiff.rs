use proptest::prelude::*;

use gtkit::divdiff::identities::{d_coeff_suite, dd_suite, dual_basis_suite, test_refinements};
use gtkit::divdiff::*;
use gtkit::exactalg::{Monomial, Polynomial, RationalFunction, Q};
use gtkit::symcomb::Refinement;

fn small_poly(nv: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, nv), -5i64..=5), 0..6).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), Q::from_int(c))).collect())
    })
}

fn swap(a: usize) -> Vec<usize> {
    let mut m: Vec<usize> = (0..gtkit::exactalg::MAX_VARS).collect();
    m.swap(a, a + 1);
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The termwise formula agrees with the defining quotient.
    #[test]
    fn simple_dd_is_the_quotient(f in small_poly(6), a in 0usize..5) {
        let f = RationalFunction::from_poly(f);
        let quotient = f.sub(&f.permute(&swap(a))).div_linear(a, a + 1, 0);
        prop_assert_eq!(RationalFunction::from_poly(dd_poly(a, f.numerator())), quotient.clone());
        prop_assert_eq!(dd_apply(a, &f), quotient);
    }

    #[test]
    fn dd_lowers_degree(f in small_poly(6), a in 0usize..5) {
        for (d, part) in f.homogeneous_parts() {
            let g = dd_poly(a, &part);
            prop_assert!(g.is_zero() || (d >= 1 && g.is_homogeneous(d - 1)));
        }
    }

    #[test]
    fn sym_is_an_invariant_projection(f in small_poly(6)) {
        let eta = Refinement::gt(vec![vec![1], vec![2], vec![3]]).unwrap();
        let s = sym_poly(&eta, &f);
        for a in eta.simple_slots() {
            prop_assert_eq!(s.permute(&swap(a)), s.clone());
        }
        prop_assert_eq!(sym_poly(&eta, &s), s);
    }
}

/// `D_τ((∂_σΔ)*) = δ_{στ}`: the duals are characterized by their coordinates.
#[test]
fn duals_have_kronecker_coordinates() {
    for eta in test_refinements() {
        let table = dual_basis_with_bound(&eta, 24).unwrap();
        for s in table.order() {
            for t in table.order() {
                let c = sdd_poly(&eta, t, table.dual(s));
                let want = if s == t { Polynomial::one() } else { Polynomial::zero() };
                assert_eq!(c, want, "η={} σ={} τ={}", eta, s, t);
            }
        }
    }
}

#[test]
fn three_block_duals_by_hand() {
    // One block of size 3 on slots 3, 4, 5 (row 3 of the staircase).
    let eta = Refinement::gt(vec![vec![1], vec![1, 1], vec![3]]).unwrap();
    let table = dual_basis(&eta).unwrap();
    let x = Polynomial::var;
    let w = eta.longest();
    // Leading term of the top dual: (1/6) ∂_id Δ = (1/6) Δ, up to I.
    let d = delta(&eta);
    assert_eq!(d, x(3).sub(&x(4)).mul(&x(3).sub(&x(5))).mul(&x(4).sub(&x(5))));
    assert!(in_ideal_i(&eta, &table.dual(&w).sub(&d.scale(&Q::new(1, 6)))));
    assert_eq!(dd_sigma_poly(&w, &d), Polynomial::constant(Q::from_int(6)));
}

#[test]
fn d_coefficient_trichotomy_small_cases() {
    for eta in test_refinements().into_iter().filter(|e| e.factorial() <= 6) {
        let table = dual_basis(&eta).unwrap();
        let id = eta.identity();
        for nu in table.order() {
            assert_eq!(table.d_coeff(nu, &id, nu), Polynomial::one());
            assert_eq!(table.d_coeff(&id, nu, nu), Polynomial::one());
            for s in table.order() {
                for t in table.order() {
                    let d = table.d_coeff(s, t, nu);
                    if s.length() + t.length() < nu.length() {
                        assert!(d.is_zero());
                    } else if s.length() + t.length() > nu.length() {
                        assert!(in_p_eta(&eta, &d), "σ={} τ={} ν={}", s, t, nu);
                    }
                }
            }
        }
    }
}

#[test]
fn identity_suites_pass_on_small_parabolics() {
    for eta in test_refinements().into_iter().filter(|e| e.factorial() <= 6) {
        let mut reports = dd_suite(&eta, 20, 7);
        reports.extend(dual_basis_suite(&eta, 20, 8, 24));
        reports.extend(d_coeff_suite(&eta, 6, 20, 9, 24));
        for r in reports {
            assert!(r.passed(), "{:?}", r);
        }
    }
}

#[test]
fn bound_is_enforced() {
    let eta = Refinement::gt(vec![vec![1], vec![2], vec![3], vec![4]]).unwrap();
    assert!(dual_basis_with_bound(&eta, 24).is_err());
}
