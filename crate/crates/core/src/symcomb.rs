//! Compositions, refinements, parabolic subgroups of the symmetric group and
//! integral points.
//!
//! Entries of a `mu`-point are stored in one flat array, block after block, so
//! a refinement `eta` of `mu` is a partition of the flat slots into
//! consecutive intervals and `S_eta` is the group of slot permutations
//! preserving each interval.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GtError, Result};
use crate::exactalg::{num_vars, MAX_VARS};

/// A composition `(mu_1, ..., mu_r)` of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl TryFrom<Vec<usize>> for Composition {
    type Error = GtError;
    fn try_from(parts: Vec<usize>) -> Result<Composition> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Vec<usize> {
        c.0
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Composition> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(GtError::Invalid(format!("not a composition: {:?}", parts)));
        }
        Ok(Composition(parts))
    }

    /// `(1, 2, ..., n)`, the shape of a rank-`n` tableau.
    pub fn staircase(n: usize) -> Composition {
        Composition((1..=n).collect())
    }

    pub fn ones(n: usize) -> Composition {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// First position of block `k` (1-based positions and blocks).
    pub fn alpha(&self, k: usize) -> usize {
        self.0[..k - 1].iter().sum::<usize>() + 1
    }

    /// Last position of block `k`.
    pub fn beta(&self, k: usize) -> usize {
        self.0[..k].iter().sum()
    }

    /// `mu! = prod mu_k!`.
    pub fn factorial(&self) -> u64 {
        self.0.iter().map(|&p| factorial(p)).product()
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A refinement of `mu`: one composition of `mu_k` per block of `mu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Refinement {
    base: Composition,
    parts: Vec<Composition>,
    /// For each flat slot: its `mu`-block (1-based).
    row: Vec<usize>,
    /// For each flat slot: the global index of its `eta`-block (0-based).
    block: Vec<usize>,
    /// Slot ranges of the `eta`-blocks, in order.
    ranges: Vec<std::ops::Range<usize>>,
}

impl Refinement {
    pub fn new(base: Composition, parts: Vec<Composition>) -> Result<Refinement> {
        if parts.len() != base.len() {
            return Err(GtError::Invalid("refinement needs one composition per block".into()));
        }
        for (k, p) in parts.iter().enumerate() {
            if p.total() != base.parts()[k] {
                return Err(GtError::Invalid(format!(
                    "composition {:?} does not sum to block size {}",
                    p.parts(),
                    base.parts()[k]
                )));
            }
        }
        if base.total() > MAX_VARS {
            return Err(GtError::Invalid(format!("at most {} entries supported", MAX_VARS)));
        }
        let mut row = Vec::new();
        let mut block = Vec::new();
        let mut ranges = Vec::new();
        let mut start = 0;
        for (k, p) in parts.iter().enumerate() {
            for &size in p.parts() {
                let b = ranges.len();
                ranges.push(start..start + size);
                for _ in 0..size {
                    row.push(k + 1);
                    block.push(b);
                }
                start += size;
            }
        }
        Ok(Refinement { base, parts, row, block, ranges })
    }

    /// A refinement of the staircase `(1, ..., n)` given row by row.
    pub fn gt(rows: Vec<Vec<usize>>) -> Result<Refinement> {
        let n = rows.len();
        let parts = rows.into_iter().map(Composition::new).collect::<Result<Vec<_>>>()?;
        Refinement::new(Composition::staircase(n), parts)
    }

    /// The finest refinement of the staircase: `S_eta` trivial.
    pub fn generic(n: usize) -> Refinement {
        Refinement::gt((1..=n).map(|k| vec![1; k]).collect()).expect("valid")
    }

    pub fn base(&self) -> &Composition {
        &self.base
    }

    pub fn parts(&self) -> &[Composition] {
        &self.parts
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|p| p.parts().to_vec()).collect()
    }

    /// Number of blocks of `mu` (the rank `n` for tableaux).
    pub fn rank(&self) -> usize {
        self.base.len()
    }

    /// Number of flat slots.
    pub fn size(&self) -> usize {
        self.row.len()
    }

    pub fn row_of(&self, slot: usize) -> usize {
        self.row[slot]
    }

    pub fn block_of(&self, slot: usize) -> usize {
        self.block[slot]
    }

    pub fn blocks(&self) -> &[std::ops::Range<usize>] {
        &self.ranges
    }

    /// Slot ranges of the blocks with more than one element.
    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = &std::ops::Range<usize>> {
        self.ranges.iter().filter(|r| r.len() > 1)
    }

    /// `eta! = |S_eta|`.
    pub fn factorial(&self) -> u64 {
        self.parts.iter().map(|p| p.factorial()).product()
    }

    /// Concatenated block sizes: the tag shared by elements of `S_eta`.
    pub fn flat_parts(&self) -> Vec<usize> {
        self.ranges.iter().map(|r| r.len()).collect()
    }

    /// True iff every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Refinement) -> bool {
        self.base == coarser.base && self.ranges.iter().all(|r| coarser.block[r.start] == coarser.block[r.end - 1])
    }

    /// All elements of `S_eta`, sorted by length then one-line notation.
    pub fn elements(&self) -> Vec<Permutation> {
        let tag = Arc::new(self.flat_parts());
        let mut out = vec![(0..self.size()).collect::<Vec<usize>>()];
        for r in self.nontrivial_blocks() {
            let local = permutations_of(r.len());
            let mut next = Vec::with_capacity(out.len() * local.len());
            for img in &out {
                for l in &local {
                    let mut img = img.clone();
                    for (p, &q) in l.iter().enumerate() {
                        img[r.start + p] = r.start + q;
                    }
                    next.push(img);
                }
            }
            out = next;
        }
        let mut perms: Vec<Permutation> = out.into_iter().map(|img| Permutation { img, tag: tag.clone() }).collect();
        sort_total_order(&mut perms);
        perms
    }

    pub fn identity(&self) -> Permutation {
        Permutation { img: (0..self.size()).collect(), tag: Arc::new(self.flat_parts()) }
    }

    /// The simple transposition swapping slots `a` and `a + 1` of one block.
    pub fn simple(&self, a: usize) -> Result<Permutation> {
        if a + 1 >= self.size() || self.block[a] != self.block[a + 1] {
            return Err(GtError::Invalid(format!("s at slot {} is not in S_eta", a)));
        }
        let mut p = self.identity();
        p.img.swap(a, a + 1);
        Ok(p)
    }

    /// All simple transpositions, as slot indices `a` (swapping `a`, `a+1`).
    pub fn simple_slots(&self) -> Vec<usize> {
        (0..self.size().saturating_sub(1)).filter(|&a| self.block[a] == self.block[a + 1]).collect()
    }

    /// Builds an element of `S_eta` from its one-line notation on slots.
    pub fn permutation(&self, img: Vec<usize>) -> Result<Permutation> {
        if img.len() != self.size() {
            return Err(GtError::Invalid("one-line notation has the wrong length".into()));
        }
        let mut seen = vec![false; img.len()];
        for (s, &t) in img.iter().enumerate() {
            if t >= img.len() || seen[t] {
                return Err(GtError::Invalid("not a bijection".into()));
            }
            seen[t] = true;
            if self.block[s] != self.block[t] {
                return Err(GtError::Invalid(format!("permutation does not preserve the blocks of {}", self)));
            }
        }
        Ok(Permutation { img, tag: Arc::new(self.flat_parts()) })
    }

    /// Parses `id` or products of disjoint cycles on 1-based slots, such as
    /// `(4 5)(7 9 8)`, the form printed by `Permutation`'s `Display`.
    pub fn parse_permutation(&self, s: &str) -> Result<Permutation> {
        let s = s.trim();
        let mut img: Vec<usize> = (0..self.size()).collect();
        if s == "id" || s.is_empty() {
            return self.permutation(img);
        }
        let bad = || GtError::Invalid(format!("cannot parse permutation {:?}", s));
        let mut rest = s;
        let mut used = vec![false; self.size()];
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let cycle: Vec<usize> = body[..end]
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().ok().filter(|&x| x >= 1 && x <= self.size()).map(|x| x - 1))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            for (j, &a) in cycle.iter().enumerate() {
                if used[a] {
                    return Err(bad());
                }
                used[a] = true;
                img[a] = cycle[(j + 1) % cycle.len()];
            }
            rest = body[end + 1..].trim_start();
        }
        self.permutation(img)
    }

    /// Reinterprets `p` as an element of `S_self`, checking membership.
    pub fn embed(&self, p: &Permutation) -> Result<Permutation> {
        self.permutation(p.img.clone())
    }

    /// Longest element `w_eta`: reverses every block.
    pub fn longest(&self) -> Permutation {
        let mut p = self.identity();
        for r in &self.ranges {
            for s in r.clone() {
                p.img[s] = r.start + r.end - 1 - s;
            }
        }
        p
    }
}

impl PartialOrd for Refinement {
    fn partial_cmp(&self, o: &Refinement) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Refinement {
    fn cmp(&self, o: &Refinement) -> std::cmp::Ordering {
        (&self.base, &self.parts).cmp(&(&o.base, &o.parts))
    }
}

impl fmt::Display for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let s: Vec<String> = p.parts().iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        write!(f, ")")
    }
}

impl Serialize for Refinement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Refinement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Refinement, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(d)?;
        Refinement::gt(rows).map_err(serde::de::Error::custom)
    }
}

fn permutations_of(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations_of(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Sorts by the fixed total order on a parabolic group: length, then one-line notation.
pub fn sort_total_order(perms: &mut [Permutation]) {
    perms.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.img.cmp(&b.img)));
}

/// A slot permutation tagged with the parabolic subgroup it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<usize>,
    tag: Arc<Vec<usize>>,
}

impl Permutation {
    pub fn one_line(&self) -> &[usize] {
        &self.img
    }

    /// One-line notation with 1-based values.
    pub fn one_line_1based(&self) -> Vec<usize> {
        self.img.iter().map(|x| x + 1).collect()
    }

    pub fn tag(&self) -> &[usize] {
        &self.tag
    }

    pub fn apply(&self, slot: usize) -> usize {
        self.img[slot]
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(s, &t)| s == t)
    }

    /// `self ∘ other`. Panics when the two live in different parabolics.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.tag, other.tag, "composing permutations of different parabolic subgroups");
        Permutation { img: other.img.iter().map(|&s| self.img[s]).collect(), tag: self.tag.clone() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0; self.img.len()];
        for (s, &t) in self.img.iter().enumerate() {
            img[t] = s;
        }
        Permutation { img, tag: self.tag.clone() }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.img.len();
        let mut inv = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.img[a] > self.img[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Slot map padded with fixed points to all `MAX_VARS` slots, as used by
    /// the variable-renaming actions on polynomials.
    pub fn slot_map(&self) -> Vec<usize> {
        let mut m: Vec<usize> = (0..MAX_VARS).collect();
        m[..self.img.len()].copy_from_slice(&self.img);
        m
    }

    /// Lexicographically smallest reduced word, as slots `a` of the simple
    /// transpositions `(a, a+1)`, leftmost factor first.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.img.clone();
        loop {
            let mut pos = vec![0; cur.len()];
            for (s, &t) in cur.iter().enumerate() {
                pos[t] = s;
            }
            // s_a is a left descent iff value a+1 occurs before value a.
            let Some(a) = (0..cur.len().saturating_sub(1)).find(|&a| pos[a + 1] < pos[a]) else {
                break;
            };
            word.push(a);
            for t in cur.iter_mut() {
                if *t == a {
                    *t = a + 1;
                } else if *t == a + 1 {
                    *t = a;
                }
            }
        }
        word
    }

    /// Nontrivial cycles, each starting at its smallest slot.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.img.len()];
        let mut out = Vec::new();
        for s in 0..self.img.len() {
            if seen[s] || self.img[s] == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut t = self.img[s];
            while t != s {
                seen[t] = true;
                c.push(t);
                t = self.img[t];
            }
            out.push(c);
        }
        out
    }

    /// Permutes a vector of values: `(σ v)_{σ(a)} = v_a`.
    pub fn act_on<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (a, &t) in self.img.iter().enumerate() {
            out[t] = v[a].clone();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// Longest element of `S_eta`.
pub fn longest_word(eta: &Refinement) -> Permutation {
    eta.longest()
}

/// The `eps`-shuffles of `S_eta`: elements increasing on every `eps`-block,
/// one minimal-length representative per coset `σ S_eps`.
pub fn shuffles(eta: &Refinement, eps: &Refinement) -> Result<Vec<Permutation>> {
    if !eps.refines(eta) {
        return Err(GtError::Invalid(format!("{} does not refine {}", eps, eta)));
    }
    Ok(eta
        .elements()
        .into_iter()
        .filter(|p| eps.blocks().iter().all(|r| r.clone().skip(1).all(|s| p.img[s - 1] < p.img[s])))
        .collect())
}

/// A point of `Z^mu_0`: integers on rows `1..n-1`, zeros on the top row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralPoint {
    n: usize,
    vals: Vec<i64>,
}

impl IntegralPoint {
    pub fn zero(n: usize) -> IntegralPoint {
        IntegralPoint { n, vals: vec![0; num_vars(n)] }
    }

    pub fn from_flat(n: usize, vals: Vec<i64>) -> Result<IntegralPoint> {
        if vals.len() != num_vars(n) {
            return Err(GtError::Invalid(format!("expected {} entries, got {}", num_vars(n), vals.len())));
        }
        if vals[num_vars(n - 1)..].iter().any(|&z| z != 0) {
            return Err(GtError::Invalid("top row of an integral point must be zero".into()));
        }
        Ok(IntegralPoint { n, vals })
    }

    /// From rows `1..n` (the top row may be omitted).
    pub fn from_rows(n: usize, rows: &[Vec<i64>]) -> Result<IntegralPoint> {
        let mut vals = Vec::new();
        for (k, r) in rows.iter().enumerate() {
            if r.len() != k + 1 {
                return Err(GtError::Invalid(format!("row {} has {} entries", k + 1, r.len())));
            }
            vals.extend_from_slice(r);
        }
        vals.resize(num_vars(n), 0);
        IntegralPoint::from_flat(n, vals)
    }

    /// `δ^{k,i}`, `k < n`.
    pub fn delta(n: usize, k: usize, i: usize) -> IntegralPoint {
        assert!(k < n && i >= 1 && i <= k);
        let mut p = IntegralPoint::zero(n);
        p.vals[k * (k - 1) / 2 + i - 1] = 1;
        p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.vals
    }

    pub fn get(&self, slot: usize) -> i64 {
        self.vals[slot]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (1..=self.n).map(|k| self.vals[k * (k - 1) / 2..k * (k + 1) / 2].to_vec()).collect()
    }

    pub fn add(&self, o: &IntegralPoint) -> IntegralPoint {
        IntegralPoint { n: self.n, vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &IntegralPoint) -> IntegralPoint {
        IntegralPoint { n: self.n, vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a - b).collect() }
    }

    /// Adds `d` at `slot`.
    pub fn shifted(&self, slot: usize, d: i64) -> IntegralPoint {
        let mut p = self.clone();
        p.vals[slot] += d;
        p
    }

    pub fn norm_inf(&self) -> i64 {
        self.vals.iter().map(|z| z.abs()).max().unwrap_or(0)
    }

    /// `σ(z)`: `(σ z)_{σ(a)} = z_a`.
    pub fn permute(&self, p: &Permutation) -> IntegralPoint {
        IntegralPoint { n: self.n, vals: p.act_on(&self.vals) }
    }

    /// All points with `|z_{k,i}| <= r` on rows `1..n-1`.
    pub fn window(n: usize, r: i64) -> Vec<IntegralPoint> {
        let free = num_vars(n - 1);
        let mut out = vec![Vec::new()];
        for _ in 0..free {
            let mut next = Vec::new();
            for v in &out {
                for z in -r..=r {
                    let mut w: Vec<i64> = v.clone();
                    w.push(z);
                    next.push(w);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|mut v| {
                v.resize(num_vars(n), 0);
                IntegralPoint { n, vals: v }
            })
            .collect()
    }
}

impl fmt::Display for IntegralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows()[..self.n - 1]
            .iter()
            .map(|r| r.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

/// True iff every `eta`-block of `z` is weakly descending.
pub fn is_block_descending(z: &IntegralPoint, eta: &Refinement) -> bool {
    eta.blocks().iter().all(|r| r.clone().skip(1).all(|s| z.vals[s - 1] >= z.vals[s]))
}

/// `ε(z)`: the maximal runs of equal entries inside each `eta`-block, for a
/// point in normal form; the stabilizer of `z` in `S_eta` is `S_ε(z)`.
pub fn stabilizer_refinement(z: &IntegralPoint, eta: &Refinement) -> Result<Refinement> {
    if !is_block_descending(z, eta) {
        return Err(GtError::NotInNormalForm);
    }
    let mut parts = Vec::new();
    for (k, comp) in eta.parts().iter().enumerate() {
        let mut slot = eta.base().alpha(k + 1) - 1;
        let mut row = Vec::new();
        for &size in comp.parts() {
            let vals = &z.vals[slot..slot + size];
            let mut run = 1;
            for w in vals.windows(2) {
                if w[0] == w[1] {
                    run += 1;
                } else {
                    row.push(run);
                    run = 1;
                }
            }
            row.push(run);
            slot += size;
        }
        parts.push(Composition::new(row)?);
    }
    Refinement::new(eta.base().clone(), parts)
}

/// The representative of the `S_eta`-orbit of `z` with descending blocks,
/// and the minimal-length `σ ∈ S_eta` with `σ(rep) = z`.
pub fn normal_form(z: &IntegralPoint, eta: &Refinement) -> (IntegralPoint, Permutation) {
    let mut rep = z.clone();
    let mut sigma = eta.identity();
    for r in eta.blocks() {
        if r.len() == 1 {
            continue;
        }
        let vals = &z.vals[r.clone()];
        // Stable sort descending keeps equal entries in order: minimal length.
        let mut order: Vec<usize> = (0..r.len()).collect();
        order.sort_by(|&a, &b| vals[b].cmp(&vals[a]));
        for (pos, &src) in order.iter().enumerate() {
            rep.vals[r.start + pos] = vals[src];
            // rep at r.start+pos is the value that sits at r.start+src in z.
            sigma.img[r.start + pos] = r.start + src;
        }
    }
    (rep, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eta3() -> Refinement {
        Refinement::gt(vec![vec![1], vec![1, 1], vec![3]]).unwrap()
    }

    #[test]
    fn longest_word_lengths() {
        let e = eta3();
        let w = longest_word(&e);
        assert_eq!(w.length(), 3);
        assert_eq!(&w.one_line()[3..6], &[5, 4, 3]);
        assert_eq!(longest_word(&Refinement::generic(3)).length(), 0);
        let e22 = Refinement::gt(vec![vec![1], vec![2], vec![2, 1]]).unwrap();
        assert_eq!(longest_word(&e22).length(), 2);
    }

    #[test]
    fn permutation_parse_roundtrip() {
        let e = eta3();
        for p in e.elements() {
            assert_eq!(e.parse_permutation(&p.to_string()).unwrap(), p);
        }
        assert!(e.parse_permutation("(1 2)").is_err());
        assert!(e.parse_permutation("(4 5").is_err());
    }

    #[test]
    fn reduced_words() {
        let e = eta3();
        assert_eq!(e.simple(3).unwrap().reduced_word(), vec![3]);
        assert_eq!(e.longest().reduced_word(), vec![3, 4, 3]);
        assert!(e.identity().reduced_word().is_empty());
    }

    #[test]
    fn shuffle_counts() {
        let e = eta3();
        let eps = Refinement::gt(vec![vec![1], vec![1, 1], vec![2, 1]]).unwrap();
        assert_eq!(shuffles(&e, &eps).unwrap().len(), 3);
        assert_eq!(shuffles(&e, &e).unwrap(), vec![e.identity()]);
        assert_eq!(shuffles(&e, &Refinement::generic(3)).unwrap().len(), 6);
        assert!(shuffles(&eps, &e).is_err());
    }

    #[test]
    fn stabilizer_refinement_runs() {
        let e = Refinement::gt(vec![vec![1], vec![1, 1], vec![3], vec![1, 1, 1, 1]]).unwrap();
        let z = |r3: Vec<i64>| IntegralPoint::from_rows(4, &[vec![0], vec![0, 0], r3]).unwrap();
        assert_eq!(stabilizer_refinement(&z(vec![2, 2, 1]), &e).unwrap().rows()[2], vec![2, 1]);
        assert_eq!(stabilizer_refinement(&z(vec![0, 0, 0]), &e).unwrap().rows()[2], vec![3]);
        assert_eq!(stabilizer_refinement(&z(vec![3, 1, 0]), &e).unwrap().rows()[2], vec![1, 1, 1]);
        assert_eq!(stabilizer_refinement(&z(vec![0, 1, 0]), &e), Err(GtError::NotInNormalForm));
    }

    #[test]
    fn normal_form_examples() {
        let e = Refinement::gt(vec![vec![1], vec![2], vec![1, 1, 1]]).unwrap();
        let z = IntegralPoint::from_rows(3, &[vec![0], vec![1, 3]]).unwrap();
        let (rep, s) = normal_form(&z, &e);
        assert_eq!(rep.rows()[1], vec![3, 1]);
        assert_eq!(s.length(), 1);
        assert_eq!(rep.permute(&s), z);
        let z = IntegralPoint::from_rows(3, &[vec![0], vec![2, 2]]).unwrap();
        let (rep, s) = normal_form(&z, &e);
        assert_eq!(rep, z);
        assert!(s.is_identity());
    }

    #[test]
    fn window_size() {
        assert_eq!(IntegralPoint::window(3, 1).len(), 27);
        assert!(IntegralPoint::window(2, 2).iter().all(|z| z.norm_inf() <= 2));
    }
}
