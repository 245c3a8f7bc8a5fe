use serde::Serialize;

use crate::error::{GtError, Result};
use crate::exactalg::{num_vars, ParamScalar, MAX_RANK};
use crate::symcomb::{IntegralPoint, Permutation, Refinement};

pub(crate) fn rank_of(v: &[ParamScalar]) -> Result<usize> {
    (1..=MAX_RANK)
        .find(|&n| num_vars(n) == v.len())
        .ok_or_else(|| GtError::Invalid(format!("{} entries is not a triangular number", v.len())))
}

fn row(v: &[ParamScalar], k: usize) -> &[ParamScalar] {
    &v[num_vars(k - 1)..num_vars(k)]
}

/// Columns of one row grouped by integral differences (0-based), largest
/// group first, ties by first column.
fn row_classes(row: &[ParamScalar]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, e) in row.iter().enumerate() {
        // Integral difference is an equivalence relation, so one representative suffices.
        match classes.iter_mut().find(|c| row[c[0]].integral_difference(e)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    classes
}

/// The singularity of a point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityProfile {
    pub point: Vec<ParamScalar>,
    pub eta: Refinement,
    /// Per row, the 1-based column groups, largest first.
    pub classes: Vec<Vec<Vec<usize>>>,
}

/// `η(v)`: per row below the top, the connected components of the graph
/// joining columns whose entries differ by an integer. The top row is `1^n`.
pub fn singularity(v: &[ParamScalar]) -> Result<SingularityProfile> {
    let n = rank_of(v)?;
    let mut classes = Vec::with_capacity(n);
    for k in 1..=n {
        let c = if k < n { row_classes(row(v, k)) } else { (0..n).map(|i| vec![i]).collect() };
        classes.push(c.into_iter().map(|g| g.into_iter().map(|i| i + 1).collect()).collect::<Vec<Vec<usize>>>());
    }
    let eta = Refinement::gt(classes.iter().map(|r| r.iter().map(Vec::len).collect()).collect())?;
    Ok(SingularityProfile { point: v.to_vec(), eta, classes })
}

/// The block intervals of one row (0-based columns) for the given sizes.
fn intervals(sizes: &[usize]) -> Vec<usize> {
    let mut owner = Vec::new();
    for (b, &s) in sizes.iter().enumerate() {
        owner.extend(std::iter::repeat_n(b, s));
    }
    owner
}

fn row_in_normal_form(row: &[ParamScalar], sizes: &[usize]) -> bool {
    let owner = intervals(sizes);
    for i in 0..row.len() {
        for j in i + 1..row.len() {
            if !row[i].integral_difference(&row[j]) {
                continue;
            }
            if owner[i] != owner[j] || row[i].sub(&row[j]).rational_part().is_negative() {
                return false;
            }
        }
    }
    true
}

/// Normal form: entries differing by integers share an `η(v)`-block, and
/// each block is weakly descending. The top row is ignored.
pub fn is_normal_form(v: &[ParamScalar]) -> Result<bool> {
    let p = singularity(v)?;
    let n = p.eta.rank();
    Ok((1..n).all(|k| row_in_normal_form(row(v, k), p.eta.parts()[k - 1].parts())))
}

/// True iff entries in one row (below the top) that differ by an integer are equal.
pub fn is_fully_critical(v: &[ParamScalar]) -> Result<bool> {
    let n = rank_of(v)?;
    Ok((1..n).all(|k| {
        let r = row(v, k);
        (0..r.len()).all(|i| (i + 1..r.len()).all(|j| !r[i].integral_difference(&r[j]) || r[i] == r[j]))
    }))
}

/// The result of [`normalize`].
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    /// `σ ∈ S_mu` with `σ(v)` in normal form.
    pub sigma: Permutation,
    /// `z` with `σ(v) + z` fully critical.
    pub shift: IntegralPoint,
    /// `σ(v) + z`.
    pub point: Vec<ParamScalar>,
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The group `S_mu` as a refinement with one block per row.
pub(crate) fn mu_group(n: usize) -> Refinement {
    Refinement::gt((1..=n).map(|k| vec![k]).collect()).expect("valid composition")
}

/// Brings `v` to normal form by the minimal-length (then lexicographically
/// least) `σ ∈ S_mu`, then equalizes each block to its first entry.
pub fn normalize(v: &[ParamScalar]) -> Result<Normalization> {
    let p = singularity(v)?;
    let n = p.eta.rank();
    let mut img: Vec<usize> = (0..num_vars(n)).collect();
    for k in 1..n {
        let r = row(v, k);
        let sizes = p.eta.parts()[k - 1].parts();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut best: Option<(usize, Vec<usize>)> = None;
        loop {
            // (σ r)_{σ(a)} = r_a
            let mut w = r.to_vec();
            for a in 0..k {
                w[perm[a]] = r[a].clone();
            }
            if row_in_normal_form(&w, sizes) {
                let len = inversions(&perm);
                if best.as_ref().is_none_or(|(l, _)| len < *l) {
                    best = Some((len, perm.clone()));
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let (_, perm) = best.ok_or_else(|| GtError::Internal(format!("row {} has no normal form", k)))?;
        for a in 0..k {
            img[num_vars(k - 1) + a] = num_vars(k - 1) + perm[a];
        }
    }
    let sigma = mu_group(n).permutation(img)?;
    let moved = sigma.act_on(v);
    let mut shift = vec![0i64; num_vars(n)];
    for b in p.eta.blocks() {
        for s in b.clone() {
            let d = moved[b.start].sub(&moved[s]);
            shift[s] = d
                .rational_part()
                .to_i64()
                .filter(|_| d.is_rational())
                .ok_or_else(|| GtError::Internal("block entries do not differ by integers".into()))?;
        }
    }
    let shift = IntegralPoint::from_flat(n, shift)?;
    let point = moved.iter().zip(shift.values()).map(|(e, &z)| e.add_int(z)).collect();
    Ok(Normalization { sigma, shift, point })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::point_from_rows;

    fn t(j: usize, c: i64) -> ParamScalar {
        ParamScalar::t(j).add_int(c)
    }

    #[test]
    fn generic_singularity() {
        let v: Vec<ParamScalar> = (1..=6).map(ParamScalar::t).collect();
        assert_eq!(singularity(&v).unwrap().eta, Refinement::generic(3));
    }

    #[test]
    fn full_row_block() {
        let v = point_from_rows(&[
            vec![t(1, 0)],
            vec![t(2, 0), t(3, 0)],
            vec![t(4, 0), t(4, 0), t(4, 0)],
            vec![t(5, 0), t(6, 0), t(7, 0), t(8, 0)],
        ])
        .unwrap();
        let p = singularity(&v).unwrap();
        assert_eq!(p.eta.parts()[2].parts(), &[3]);
        assert!(is_fully_critical(&v).unwrap());
        let nf = normalize(&v).unwrap();
        assert!(nf.sigma.is_identity());
        assert_eq!(nf.shift, IntegralPoint::zero(4));
        assert_eq!(nf.point, v);
    }

    #[test]
    fn critical_predicates() {
        let v = point_from_rows(&[vec![t(1, 0)], vec![t(2, 1), t(2, 0)], vec![t(3, 0), t(4, 0), t(5, 0)]]).unwrap();
        assert!(!is_fully_critical(&v).unwrap());
        assert!(is_normal_form(&v).unwrap());
        let w = point_from_rows(&[vec![t(1, 0)], vec![t(2, 0), t(2, 1)], vec![t(3, 0), t(4, 0), t(5, 0)]]).unwrap();
        assert!(!is_normal_form(&w).unwrap());
        let nf = normalize(&w).unwrap();
        assert_eq!(nf.sigma.length(), 1);
        assert!(is_fully_critical(&nf.point).unwrap());
        assert!(is_normal_form(&nf.point).unwrap());
    }
}
