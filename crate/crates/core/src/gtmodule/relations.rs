use rayon::prelude::*;
use serde::Serialize;

use super::big::{BigModule, TableauVector};
use super::{Generator, GlModule, LinComb};
use crate::error::Result;
use crate::exactalg::Q;

/// A relation `sum_j c_j w_j = 0` among words in the canonical generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(Q, Vec<Generator>)>,
}

impl Relation {
    fn bracket(name: String, a: Generator, b: Generator, rhs: Vec<(Q, Generator)>) -> Relation {
        let mut terms = vec![(Q::one(), vec![a, b]), (Q::from_int(-1), vec![b, a])];
        terms.extend(rhs.into_iter().filter(|(c, _)| !c.is_zero()).map(|(c, g)| (-c, vec![g])));
        Relation { name, terms }
    }

    pub fn depth(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    /// `sum_j c_j w_j v`.
    pub fn apply<M: GlModule>(&self, m: &M, v: &LinComb<M::Basis, M::Coeff>) -> Result<LinComb<M::Basis, M::Coeff>> {
        let mut acc = LinComb::zero();
        for (c, w) in &self.terms {
            acc.add_assign(&m.act_word(w, v)?.scale_q(c));
        }
        Ok(acc)
    }
}

fn kronecker(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// The defining relations of `gl(n)` in the generators `E_{k,k±1}, E_{k,k}`:
/// brackets of pairs (word length 2) and Serre relations (length 3).
pub fn gl_relations(n: usize, depth: usize) -> Vec<Relation> {
    use Generator::*;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Relation::bracket(format!("[E{i}{i},E{j}{j}]"), Diag(i), Diag(j), vec![]));
        }
        for j in 1..n {
            let c = Q::from_int(kronecker(i, j) - kronecker(i, j + 1));
            out.push(Relation::bracket(
                format!("[{},{}]", Diag(i), Raise(j)),
                Diag(i),
                Raise(j),
                vec![(c.clone(), Raise(j))],
            ));
            out.push(Relation::bracket(format!("[{},{}]", Diag(i), Lower(j)), Diag(i), Lower(j), vec![(-c, Lower(j))]));
        }
    }
    for i in 1..n {
        for j in 1..n {
            let rhs = if i == j { vec![(Q::one(), Diag(i)), (Q::from_int(-1), Diag(i + 1))] } else { vec![] };
            out.push(Relation::bracket(format!("[{},{}]", Raise(i), Lower(j)), Raise(i), Lower(j), rhs));
            if j > i + 1 {
                out.push(Relation::bracket(format!("[{},{}]", Raise(i), Raise(j)), Raise(i), Raise(j), vec![]));
                out.push(Relation::bracket(format!("[{},{}]", Lower(i), Lower(j)), Lower(i), Lower(j), vec![]));
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            for (gi, gj) in [(Raise(i), Raise(j)), (Lower(i), Lower(j))] {
                out.push(Relation {
                    name: format!("[{gi},[{gi},{gj}]]"),
                    terms: vec![
                        (Q::one(), vec![gi, gi, gj]),
                        (Q::from_int(-2), vec![gi, gj, gi]),
                        (Q::one(), vec![gj, gi, gi]),
                    ],
                });
            }
        }
    }
    out.retain(|r| r.depth() <= depth);
    out
}

/// The outcome of one relation applied to a probe vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
    /// Number of basis vectors with a nonzero residual coefficient.
    pub residual_terms: usize,
}

/// Applies every relation of depth at most `depth` to `probe`.
pub fn verify_relations<M: GlModule>(
    m: &M,
    probe: &LinComb<M::Basis, M::Coeff>,
    depth: usize,
) -> Result<Vec<RelationCheck>> {
    gl_relations(m.rank(), depth)
        .par_iter()
        .map(|r| {
            let res = r.apply(m, probe)?;
            Ok(RelationCheck { name: r.name.clone(), passed: res.is_zero(), residual_terms: res.len() })
        })
        .collect()
}

/// The relation suite on `V_K`.
pub fn verify_u_relations(n: usize, probe: &TableauVector, depth: usize) -> Result<Vec<RelationCheck>> {
    verify_relations(&BigModule::new(n), probe, depth)
}
