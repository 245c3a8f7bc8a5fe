use std::collections::HashSet;

use gtkit::exactalg::{ParamScalar, Q};
use gtkit::gtmodule::*;
use gtkit::symcomb::{IntegralPoint, Refinement};

/// `prod_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
fn weyl_dimension(lambda: &[i64]) -> i64 {
    let n = lambda.len();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..n {
        for j in i + 1..n {
            num *= lambda[i] - lambda[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    assert_eq!(num % den, 0);
    num / den
}

fn test_weights() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 0..=3 {
        out.push(vec![a, 0]);
        for b in 0..=a {
            out.push(vec![a, b, 0]);
        }
    }
    out.push(vec![2, 1, 0, 0]);
    out.push(vec![1, -1]);
    out.push(vec![2, 2, -1]);
    out
}

#[test]
fn dimensions_match_weyl_formula() {
    for l in test_weights() {
        assert_eq!(standard_points(&l).unwrap().len() as i64, weyl_dimension(&l), "{:?}", l);
    }
    assert_eq!(standard_points(&[2, 1, 0]).unwrap().len(), 8);
}

#[test]
fn tableaux_are_standard_and_distinct_orbits() {
    for l in test_weights() {
        let tabs = standard_tableaux(&l).unwrap();
        let mut orbits = HashSet::new();
        for t in &tabs {
            assert!(t.is_standard());
            let mut rows = t.rows();
            for r in rows.iter_mut() {
                r.sort();
            }
            assert!(orbits.insert(rows), "two tableaux of V({:?}) share an orbit", l);
        }
    }
}

#[test]
fn commutators_and_central_elements() {
    for l in test_weights() {
        let m = FinDimModule::new(&l).unwrap();
        assert!(m.commutator_failures().is_empty(), "{:?}", l);
        assert!(m.central_failures().unwrap().is_empty(), "{:?}", l);
    }
}

#[test]
fn diagonal_eigenvalue_formula() {
    let m = FinDimModule::new(&[2, 1, 0]).unwrap();
    for k in 1..=3 {
        let d = m.generator(Generator::Diag(k)).unwrap();
        for (j, v) in m.basis().iter().enumerate() {
            let row = |r: usize| -> i64 {
                if r == 0 {
                    0
                } else {
                    v[r * (r - 1) / 2..r * (r + 1) / 2].iter().sum()
                }
            };
            assert_eq!(d.get(j, j), &Q::from_int(row(k) - row(k - 1) + k as i64 - 1));
        }
    }
}

#[test]
fn gl2_central_scalar() {
    let c = central_element_matrix(&[1, 0], 2, 1).unwrap();
    // E11 + E22 = 1 on the defining representation; γ_{2,1} = x21 + x22 + 1 = 1 + (-1) + 1.
    assert_eq!(c, gtkit::gtmodule::QMatrix::identity(2));
}

#[test]
fn disjoint_indices_commute_gl4() {
    let e = findim_all_eij(&[2, 1, 0, 0]).unwrap();
    assert!(e[&(1, 2)].commutator(&e[&(3, 4)]).is_zero());
}

#[test]
fn big_module_relations() {
    for n in 2..=3 {
        let probe = TableauVector::basis(IntegralPoint::zero(n));
        let report = verify_u_relations(n, &probe, 3).unwrap();
        for r in &report {
            assert!(r.passed, "n={} {}", n, r.name);
        }
    }
}

#[test]
fn big_module_equivariance() {
    let n = 3;
    let m = BigModule::new(n);
    let mu = Refinement::gt((1..=n).map(|k| vec![k]).collect()).unwrap();
    let z = IntegralPoint::from_rows(n, &[vec![1], vec![-1, 2]]).unwrap();
    let tz = TableauVector::basis(z);
    for a in mu.simple_slots() {
        let s = mu.simple(a).unwrap();
        for g in Generator::all(n) {
            let lhs = m.permute(&s, &m.act(g, &tz).unwrap());
            let rhs = m.act(g, &m.permute(&s, &tz)).unwrap();
            assert_eq!(lhs, rhs, "{} {}", s, g);
        }
    }
}

#[test]
fn generic_evaluation_is_gt_module() {
    let n = 3;
    let v: Vec<ParamScalar> = vec![
        ParamScalar::t(1),
        ParamScalar::t(2),
        ParamScalar::t(3),
        ParamScalar::t(4),
        ParamScalar::t(5),
        ParamScalar::t(6),
    ];
    let m = EvaluatedGeneric::new(v.clone()).unwrap();
    for z in [IntegralPoint::zero(n), IntegralPoint::from_rows(n, &[vec![1], vec![0, -1]]).unwrap()] {
        let probe = EvaluatedVector::basis(z.clone());
        for (k, i) in gamma_indices(n) {
            let out = m.act_central(k, i, &probe).unwrap();
            let point: Vec<ParamScalar> = v.iter().zip(z.values()).map(|(a, &b)| a.add_int(b)).collect();
            let g = gtkit::exactalg::RationalFunction::from_poly(gamma_poly(k, i).unwrap()).evaluate(&point).unwrap();
            assert_eq!(out, EvaluatedVector::single(z.clone(), g), "c_{},{}", k, i);
        }
    }
}
