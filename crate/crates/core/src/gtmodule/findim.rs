use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::functions::{diag_eigenvalue, e_minus, e_plus, gamma_poly};
use super::{Generator, Tableau};
use crate::error::{GtError, Result};
use crate::exactalg::{num_vars, Q};

/// A dense square matrix over `Q`; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QMatrix {
    rows: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn zeros(d: usize) -> QMatrix {
        QMatrix { rows: vec![vec![Q::zero(); d]; d] }
    }

    pub fn identity(d: usize) -> QMatrix {
        let mut m = QMatrix::zeros(d);
        for i in 0..d {
            m.rows[i][i] = Q::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Q) {
        self.rows[i][j] = q;
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        let d = self.dim();
        let mut out = QMatrix::zeros(d);
        for i in 0..d {
            for (k, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in o.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out.rows[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    fn zip(&self, o: &QMatrix, f: impl Fn(&Q, &Q) -> Q) -> QMatrix {
        QMatrix {
            rows: self.rows.iter().zip(&o.rows).map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect()).collect(),
        }
    }

    pub fn add(&self, o: &QMatrix) -> QMatrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        QMatrix { rows: self.rows.iter().map(|r| r.iter().map(|a| a * c).collect()).collect() }
    }

    /// `[self, o] = self o - o self`.
    pub fn commutator(&self, o: &QMatrix) -> QMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Q::is_zero))
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, a)| i == j || a.is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Q> {
        (0..self.dim()).map(|i| self.rows[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        let (d, mut rank) = (self.dim(), 0);
        for col in 0..d {
            let Some(p) = (rank..d).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = m[rank][col].inv();
            for r in 0..d {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] * &inv;
                    for c in col..d {
                        let t = &f * &m[rank][c];
                        m[r][c] -= &t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn check_dominant(lambda: &[i64]) -> Result<()> {
    if lambda.is_empty() || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(GtError::NotDominant(lambda.to_vec()));
    }
    Ok(())
}

/// Flat integer points of all standard tableaux with top row
/// `λ - (0, 1, ..., n-1)`.
///
/// Rows are filled from row `n-1` down to row 1, left to right, each entry
/// running from its largest admissible value downwards.
pub fn standard_points(lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
    check_dominant(lambda)?;
    let n = lambda.len();
    let top: Vec<i64> = lambda.iter().enumerate().map(|(j, l)| l - j as i64).collect();
    let mut rows_list = vec![vec![top]];
    for k in (1..n).rev() {
        let mut next = Vec::new();
        for rows in rows_list {
            let above = rows.last().unwrap().clone();
            let mut choices: Vec<Vec<i64>> = vec![Vec::new()];
            for i in 0..k {
                // above[i+1] < v_{k,i} <= above[i]
                choices = choices
                    .into_iter()
                    .flat_map(|c| {
                        ((above[i + 1] + 1)..=above[i]).rev().map(move |x| {
                            let mut c = c.clone();
                            c.push(x);
                            c
                        })
                    })
                    .collect();
            }
            for c in choices {
                let mut r = rows.clone();
                r.push(c);
                next.push(r);
            }
        }
        rows_list = next;
    }
    Ok(rows_list
        .into_iter()
        .map(|rows| {
            let mut flat = Vec::with_capacity(num_vars(n));
            for r in rows.iter().rev() {
                flat.extend_from_slice(r);
            }
            flat
        })
        .collect())
}

/// The standard tableaux of `V(λ)` in basis order.
pub fn standard_tableaux(lambda: &[i64]) -> Result<Vec<Tableau>> {
    standard_points(lambda)?.iter().map(|p| Tableau::from_integers(lambda.len(), p)).collect()
}

/// `V(λ)` with exact generator matrices in the standard tableau basis.
#[derive(Clone, Debug)]
pub struct FinDimModule {
    lambda: Vec<i64>,
    basis: Vec<Vec<i64>>,
    generators: BTreeMap<Generator, QMatrix>,
}

impl FinDimModule {
    pub fn new(lambda: &[i64]) -> Result<FinDimModule> {
        let basis = standard_points(lambda)?;
        let n = lambda.len();
        let index: HashMap<&[i64], usize> = basis.iter().enumerate().map(|(j, v)| (v.as_slice(), j)).collect();
        let d = basis.len();
        let mut generators = BTreeMap::new();
        for g in Generator::all(n) {
            let mut m = QMatrix::zeros(d);
            for (col, v) in basis.iter().enumerate() {
                let vq: Vec<Q> = v.iter().map(|&z| Q::from_int(z)).collect();
                match g {
                    Generator::Diag(k) => m.set(col, col, diag_eigenvalue(k).eval_q(&vq)),
                    Generator::Raise(k) | Generator::Lower(k) => {
                        for i in 1..=k {
                            let s = k * (k - 1) / 2 + i - 1;
                            let mut w = v.clone();
                            let (f, c) = if let Generator::Raise(_) = g {
                                w[s] += 1;
                                (e_plus(k, i), Q::from_int(-1))
                            } else {
                                w[s] -= 1;
                                (e_minus(k, i), Q::one())
                            };
                            if let Some(&row) = index.get(w.as_slice()) {
                                let val = f.evaluate_q(&vq)?;
                                m.set(row, col, &c * &val);
                            }
                        }
                    }
                }
            }
            generators.insert(g, m);
        }
        Ok(FinDimModule { lambda: lambda.to_vec(), basis, generators })
    }

    pub fn weight(&self) -> &[i64] {
        &self.lambda
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn generator(&self, g: Generator) -> Result<&QMatrix> {
        g.check(self.rank())?;
        Ok(&self.generators[&g])
    }

    pub fn generators(&self) -> &BTreeMap<Generator, QMatrix> {
        &self.generators
    }

    /// Matrices of every `E_{a,b}`, indexed `[a-1][b-1]`.
    pub fn all_eij(&self) -> Vec<Vec<QMatrix>> {
        let n = self.rank();
        let mut e: Vec<Vec<Option<QMatrix>>> = vec![vec![None; n]; n];
        for (g, m) in &self.generators {
            let (a, b) = g.indices();
            e[a - 1][b - 1] = Some(m.clone());
        }
        for gap in 2..n {
            for a in 0..n - gap {
                let c = a + gap;
                let up = e[a][a + 1].as_ref().unwrap().commutator(e[a + 1][c].as_ref().unwrap());
                let down = e[c][c - 1].as_ref().unwrap().commutator(e[c - 1][a].as_ref().unwrap());
                e[a][c] = Some(up);
                e[c][a] = Some(down);
            }
        }
        e.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect()
    }

    /// The matrix of `c_{k,i} = sum E_{r_1 r_2} ... E_{r_i r_1}`.
    pub fn central_element(&self, k: usize, i: usize) -> Result<QMatrix> {
        if i == 0 || i > k || k > self.rank() {
            return Err(GtError::Invalid(format!("c_{{{},{}}} is not defined for gl({})", k, i, self.rank())));
        }
        let e = self.all_eij();
        // p[r][s] = sum of words of the current length from r to s.
        let mut p: Vec<Vec<QMatrix>> = (0..k).map(|r| (0..k).map(|s| e[r][s].clone()).collect()).collect();
        for _ in 1..i {
            p = (0..k)
                .map(|r| {
                    (0..k)
                        .map(|s| (0..k).fold(QMatrix::zeros(self.dim()), |acc, t| acc.add(&p[r][t].mul(&e[t][s]))))
                        .collect()
                })
                .collect();
        }
        Ok((0..k).fold(QMatrix::zeros(self.dim()), |acc, r| acc.add(&p[r][r])))
    }

    /// Every failing instance of `[E_ab, E_cd] = δ_bc E_ad - δ_da E_cb`.
    pub fn commutator_failures(&self) -> Vec<(usize, usize, usize, usize)> {
        let n = self.rank();
        let e = self.all_eij();
        let zero = QMatrix::zeros(self.dim());
        let mut bad = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = e[a][b].commutator(&e[c][d]);
                        let mut rhs = zero.clone();
                        if b == c {
                            rhs = rhs.add(&e[a][d]);
                        }
                        if d == a {
                            rhs = rhs.sub(&e[c][b]);
                        }
                        if lhs != rhs {
                            bad.push((a + 1, b + 1, c + 1, d + 1));
                        }
                    }
                }
            }
        }
        bad
    }

    /// `(k, i)` for which `c_{k,i}` is not diagonal with entries `γ_{k,i}(v)`.
    pub fn central_failures(&self) -> Result<Vec<(usize, usize)>> {
        let mut bad = Vec::new();
        for (k, i) in super::gamma_indices(self.rank()) {
            let m = self.central_element(k, i)?;
            let g = gamma_poly(k, i)?;
            let ok = m.is_diagonal()
                && self.basis.iter().enumerate().all(|(j, v)| {
                    let vq: Vec<Q> = v.iter().map(|&z| Q::from_int(z)).collect();
                    m.get(j, j) == &g.eval_q(&vq)
                });
            if !ok {
                bad.push((k, i));
            }
        }
        Ok(bad)
    }
}

/// `prod_{i<j} (λ_i - λ_j + j - i) / (j - i)`.
pub fn weyl_dimension(lambda: &[i64]) -> u64 {
    let n = lambda.len();
    let mut d = Q::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i64;
            d = &d * &Q::new(lambda[i] - lambda[j] + gap, gap);
        }
    }
    d.to_i64().map_or(0, |x| x.max(0) as u64)
}

pub fn findim_generator_matrix(lambda: &[i64], g: Generator) -> Result<QMatrix> {
    FinDimModule::new(lambda)?.generator(g).cloned()
}

pub fn findim_all_eij(lambda: &[i64]) -> Result<BTreeMap<(usize, usize), QMatrix>> {
    let e = FinDimModule::new(lambda)?.all_eij();
    Ok(e.into_iter()
        .enumerate()
        .flat_map(|(a, r)| r.into_iter().enumerate().map(move |(b, m)| ((a + 1, b + 1), m)))
        .collect())
}

pub fn central_element_matrix(lambda: &[i64], k: usize, i: usize) -> Result<QMatrix> {
    FinDimModule::new(lambda)?.central_element(k, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_defining() {
        let pts = standard_points(&[1, 0]).unwrap();
        assert_eq!(pts, vec![vec![1, 1, -1], vec![0, 1, -1]]);
        let m = FinDimModule::new(&[1, 0]).unwrap();
        assert_eq!(m.generator(Generator::Diag(1)).unwrap().diagonal(), vec![Q::one(), Q::zero()]);
        assert!(m.commutator_failures().is_empty());
    }

    #[test]
    fn not_dominant() {
        assert_eq!(standard_points(&[0, 1]), Err(GtError::NotDominant(vec![0, 1])));
    }

    #[test]
    fn e13_rank_one() {
        let e = findim_all_eij(&[1, 0, 0]).unwrap();
        assert_eq!(e[&(1, 3)].rank(), 1);
        assert_eq!(e[&(1, 3)], e[&(1, 2)].commutator(&e[&(2, 3)]));
    }

    #[test]
    fn trivial_module() {
        let m = FinDimModule::new(&[0, 0, 0]).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.generator(Generator::Raise(1)).unwrap().is_zero());
        assert!(m.central_failures().unwrap().is_empty());
    }
}
