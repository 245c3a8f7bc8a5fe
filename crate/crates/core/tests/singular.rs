use std::collections::BTreeSet;

use rayon::prelude::*;

use gtkit::exactalg::{point_from_rows, ParamScalar};
use gtkit::gtmodule::{gamma_indices, verify_relations, EvaluatedGeneric, Generator, GlModule, LinComb};
use gtkit::singular::*;
use gtkit::symcomb::{is_block_descending, IntegralPoint, Refinement};

fn t(j: usize) -> ParamScalar {
    ParamScalar::t(j)
}

fn crit3() -> Vec<ParamScalar> {
    point_from_rows(&[vec![t(1)], vec![t(2), t(2)], vec![t(3), t(4), t(5)]]).unwrap()
}

fn crit4() -> Vec<ParamScalar> {
    point_from_rows(&[vec![t(1)], vec![t(2), t(3)], vec![t(4), t(4), t(4)], vec![t(5), t(6), t(7), t(8)]]).unwrap()
}

fn generic3() -> Vec<ParamScalar> {
    point_from_rows(&[vec![t(1)], vec![t(2), t(3)], vec![t(4), t(5), t(6)]]).unwrap()
}

fn eta4() -> Refinement {
    Refinement::gt(vec![vec![1], vec![1, 1], vec![3], vec![1, 1, 1, 1]]).unwrap()
}

/// Applies every generator to every `step`-th derived tableau of the radius-1 window.
fn sweep(v: Vec<ParamScalar>, step: usize) -> usize {
    let m = EvaluatedLattice::for_point(v).unwrap();
    let lat = m.lattice();
    let eta = lat.refinement().clone();
    let window: Vec<DerivedTableau> = derived_basis_window(&eta, 1).unwrap().into_iter().step_by(step).collect();
    let jobs: Vec<(Generator, DerivedTableau)> =
        Generator::all(eta.rank()).into_iter().flat_map(|g| window.iter().map(move |d| (g, d.clone()))).collect();
    let fails: Vec<String> =
        jobs.par_iter().filter_map(|(g, d)| lat.act(*g, d).err().map(|e| format!("{} {}: {}", g, d, e))).collect();
    assert!(fails.is_empty(), "{:?}", &fails[..fails.len().min(3)]);
    jobs.len()
}

#[test]
fn lattice_closed_n3_full_window() {
    assert_eq!(sweep(crit3(), 1), 9 * 21);
}

#[test]
fn lattice_closed_n4_sampled_window() {
    assert!(sweep(crit4(), 11) > 0);
}

#[test]
fn diagonal_generators_act_by_shifted_eigenvalue() {
    let m = EvaluatedLattice::for_point(crit4()).unwrap();
    let eta = m.lattice().refinement().clone();
    for d in derived_basis_window(&eta, 1).unwrap().into_iter().step_by(17) {
        let w = m.shifted_point(&d.z);
        for k in 1..=4 {
            let out = m.act_basis(Generator::Diag(k), &d).unwrap();
            // Row sums of v + z, rows k and k-1.
            let s = |r: usize| -> ParamScalar {
                let lo = r * (r - 1) / 2;
                (lo..lo + r).fold(ParamScalar::int(0), |a, s| a.add(&w[s]))
            };
            let mut e = s(k).add_int(k as i64 - 1);
            if k > 1 {
                e = e.sub(&s(k - 1));
            }
            assert_eq!(
                out,
                LinComb::single(d.clone(), gtkit::exactalg::ParamFrac::from_poly(e.to_poly())),
                "E{}{} on {}",
                k,
                k,
                d
            );
        }
    }
}

#[test]
fn relations_on_evaluated_module_n3() {
    let m = EvaluatedLattice::for_point(crit3()).unwrap();
    let eta = m.lattice().refinement().clone();
    let window = derived_basis_window(&eta, 1).unwrap();
    let bad: Vec<String> = window
        .par_iter()
        .flat_map(|d| {
            verify_relations(&m, &LinComb::basis(d.clone()), 3)
                .unwrap()
                .into_iter()
                .filter(|r| !r.passed)
                .map(|r| format!("{} on {}", r.name, d))
                .collect::<Vec<_>>()
        })
        .collect();
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn gamma_action_matches_words_n3() {
    let m = EvaluatedLattice::for_point(crit3()).unwrap();
    let eta = m.lattice().refinement().clone();
    for z in IntegralPoint::window(3, 1).into_iter().filter(|z| is_block_descending(z, &eta)) {
        for (k, i) in gamma_indices(3) {
            let a = gamma_action_on_eigenspace(&m, k, i, &z).unwrap();
            assert!(a.nilpotency_holds(), "{:?}", a.min_exponents);
            for (col, d) in a.basis.iter().enumerate() {
                let direct = m.act_central(k, i, &LinComb::basis(d.clone())).unwrap();
                let via: LinComb<DerivedTableau, _> =
                    a.basis.iter().enumerate().map(|(row, b)| (b.clone(), a.matrix[row][col].clone())).collect();
                assert_eq!(direct, via, "c_{},{} on {}", k, i, d);
            }
        }
    }
}

#[test]
fn gamma_nilpotency_n4_window() {
    let m = EvaluatedLattice::for_point(crit4()).unwrap();
    let eta = m.lattice().refinement().clone();
    let zs: Vec<IntegralPoint> =
        IntegralPoint::window(4, 1).into_iter().filter(|z| is_block_descending(z, &eta)).collect();
    let bad: Vec<String> = zs
        .par_iter()
        .flat_map(|z| {
            gamma_indices(4)
                .into_iter()
                .filter_map(|(k, i)| {
                    let a = gamma_action_on_eigenspace(&m, k, i, z).unwrap();
                    // The identity shuffle is always an honest eigenvector.
                    let id_col = a.basis.iter().position(|d| d.nu.is_identity()).unwrap();
                    let id_ok = a.min_exponents[id_col] <= 1;
                    (!a.nilpotency_holds() || !id_ok).then(|| format!("c_{},{} at {}: {:?}", k, i, z, a.min_exponents))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn gamma_on_repeated_pair_is_three_by_three() {
    let m = EvaluatedLattice::for_point(crit4()).unwrap();
    let z = IntegralPoint::from_rows(4, &[vec![0], vec![0, 0], vec![1, 1, 0]]).unwrap();
    let mut nontrivial = false;
    for (k, i) in gamma_indices(4) {
        let a = gamma_action_on_eigenspace(&m, k, i, &z).unwrap();
        assert_eq!(a.basis.len(), 3);
        assert!(a.min_exponents.iter().all(|&e| e <= 3));
        assert!(a.nilpotency_holds());
        nontrivial |= a.min_exponents.iter().any(|&e| e > 1);
    }
    // Some central element acts with a nonzero nilpotent part.
    assert!(nontrivial);
}

/// One-line notation of `nu` restricted to row 3 of a rank-4 layout, as
/// cycles in local 1-based labels.
fn row3_cycles(d: &DerivedTableau) -> String {
    let img: Vec<usize> = (3..6).map(|s| d.nu.apply(s) - 3).collect();
    let mut seen = [false; 3];
    let mut out = String::new();
    for s in 0..3 {
        if seen[s] || img[s] == s {
            continue;
        }
        let mut c = vec![s + 1];
        seen[s] = true;
        let mut x = img[s];
        while x != s {
            seen[x] = true;
            c.push(x + 1);
            x = img[x];
        }
        out += &format!("({})", c.iter().map(|x| x.to_string()).collect::<String>());
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

#[test]
fn derived_tableaux_per_row_pattern() {
    let eta = eta4();
    let cases: [(Vec<i64>, &[&str]); 4] = [
        (vec![2, 1, 0], &["id", "(12)", "(23)", "(123)", "(132)", "(13)"]),
        (vec![1, 1, 0], &["id", "(23)", "(123)"]),
        (vec![1, 0, 0], &["id", "(12)", "(132)"]),
        (vec![0, 0, 0], &["id"]),
    ];
    for (row, expected) in cases {
        let z = IntegralPoint::from_rows(4, &[vec![0], vec![1, -1], row.clone()]).unwrap();
        let got: BTreeSet<String> = derived_basis_at(&eta, &z).unwrap().iter().map(row3_cycles).collect();
        let want: BTreeSet<String> = expected.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, want, "row 3 = {:?}", row);
    }
}

#[test]
fn support_radius_two() {
    for v in [crit3(), crit4()] {
        let eta = singularity(&v).unwrap().eta;
        let entries = support_window(&v, 2).unwrap();
        assert!(!entries.is_empty());
        for e in &entries {
            assert_eq!(e.multiplicity as usize, e.derived_count);
        }
        let total: u64 = entries.iter().map(|e| e.multiplicity).sum();
        assert_eq!(total as usize, derived_basis_window(&eta, 2).unwrap().len());
        assert!(fingerprints_distinct(&entries));
    }
}

#[test]
fn support_radius_zero_is_one_character() {
    let entries = support_window(&crit4(), 0).unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0].multiplicity, 1);
}

#[test]
fn generic_point_matches_generic_construction() {
    let v = generic3();
    let sing = EvaluatedLattice::for_point(v.clone()).unwrap();
    assert_eq!(sing.lattice().refinement(), &Refinement::generic(3));
    let gen = EvaluatedGeneric::new(v.clone()).unwrap();
    for d in derived_basis_window(&Refinement::generic(3), 1).unwrap() {
        assert!(d.nu.is_identity());
        for g in Generator::all(3) {
            let a = sing.act_basis(g, &d).unwrap().map_basis(|b| b.z.clone());
            let b = gen.act_basis(g, &d.z).unwrap();
            assert_eq!(a, b, "{} on {}", g, d);
        }
        for (k, i) in gamma_indices(3) {
            let a = gamma_action_on_eigenspace(&sing, k, i, &d.z).unwrap();
            assert_eq!(a.basis.len(), 1);
            assert_eq!(a.matrix[0][0], a.eigenvalue);
        }
    }
    let entries = support_window(&v, 1).unwrap();
    assert!(entries.iter().all(|e| e.multiplicity == 1));
    assert!(fingerprints_distinct(&entries));
}

#[test]
fn five_row_singularity_and_normal_forms() {
    let (a, b, c, d, e, f) = (t(1), t(2), t(3), t(4), t(5), t(6));
    let top: Vec<ParamScalar> = (7..12).map(t).collect();
    let build = |r4: [ParamScalar; 4], r3: [ParamScalar; 3]| {
        point_from_rows(&[vec![f.clone()], vec![e.clone(), e.clone()], r3.to_vec(), r4.to_vec(), top.clone()]).unwrap()
    };
    let v = build([a.clone(), b.add_int(-1), b.clone(), a.add_int(1)], [c.clone(), c.add_int(1), d.clone()]);
    let v1 = build([a.add_int(1), a.clone(), b.clone(), b.add_int(-1)], [c.add_int(1), c.clone(), d.clone()]);
    let v2 = build([b.clone(), b.add_int(-1), a.add_int(1), a.clone()], [c.add_int(1), c.clone(), d.clone()]);
    let want = Refinement::gt(vec![vec![1], vec![2], vec![2, 1], vec![2, 2], vec![1; 5]]).unwrap();
    for p in [&v, &v1, &v2] {
        assert_eq!(singularity(p).unwrap().eta, want);
        assert!(!is_fully_critical(p).unwrap());
    }
    assert!(!is_normal_form(&v).unwrap());
    assert!(is_normal_form(&v1).unwrap());
    assert!(is_normal_form(&v2).unwrap());
    let nf = normalize(&v).unwrap();
    assert!(is_normal_form(&nf.point).unwrap());
    assert!(is_fully_critical(&nf.point).unwrap());
    assert_eq!(singularity(&nf.point).unwrap().eta, want);
}

#[test]
fn orbit_consistency() {
    let v = crit4();
    let base = support_window(&v, 1).unwrap();
    let fps: BTreeSet<Vec<String>> = base.iter().map(|e| e.fingerprint.clone()).collect();
    let mults: Vec<u64> = {
        let mut m: Vec<u64> = base.iter().map(|e| e.multiplicity).collect();
        m.sort_unstable();
        m
    };
    let mu = Refinement::gt((1..=4).map(|k| vec![k]).collect()).unwrap();
    for sigma in mu.elements().into_iter().step_by(37) {
        let w = sigma.act_on(&v);
        assert_eq!(singularity(&w).unwrap().eta, eta4());
        let nf = normalize(&w).unwrap();
        assert_eq!(nf.shift, IntegralPoint::zero(4));
        let other = support_window(&nf.point, 1).unwrap();
        let mut m: Vec<u64> = other.iter().map(|e| e.multiplicity).collect();
        m.sort_unstable();
        assert_eq!(m, mults);
        assert_eq!(other.iter().map(|e| e.fingerprint.clone()).collect::<BTreeSet<_>>(), fps);
    }
}

#[test]
fn shifted_eigenvalue_hypothesis_diagnostic() {
    let eta = eta4();
    for z in IntegralPoint::window(4, 1).into_iter().filter(|z| is_block_descending(z, &eta)).step_by(5) {
        let diag = delta_eps_diagnostic(&eta, &z).unwrap();
        assert_eq!(diag.len(), 12);
        assert!(diag.iter().all(|(_, ok)| *ok), "{}: {:?}", z, diag);
    }
}
