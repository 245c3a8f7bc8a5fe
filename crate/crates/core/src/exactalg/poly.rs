//! Sparse multivariate polynomials over the rationals.

use std::fmt;

use super::rational::{mod_mul, mod_pow, MOD_P, Q};
use super::var::{x_name, MAX_VARS};

/// An exponent vector. Ordered graded-lexicographically: total degree first,
/// then exponents compared slot by slot with slot 0 most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u16,
    exps: [u8; MAX_VARS],
}

/// Big-endian words of the exponent bytes, so that comparing words compares
/// the bytes lexicographically.
#[inline]
fn words(e: &[u8; MAX_VARS]) -> (u64, u64, u64) {
    let w = |r: &[u8]| {
        let mut b = [0u8; 8];
        b[..r.len()].copy_from_slice(r);
        u64::from_be_bytes(b)
    };
    (w(&e[0..8]), w(&e[8..16]), w(&e[16..]))
}

impl Ord for Monomial {
    #[inline]
    fn cmp(&self, o: &Monomial) -> std::cmp::Ordering {
        self.deg.cmp(&o.deg).then_with(|| words(&self.exps).cmp(&words(&o.exps)))
    }
}

impl PartialOrd for Monomial {
    #[inline]
    fn partial_cmp(&self, o: &Monomial) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { deg: 0, exps: [0; MAX_VARS] }
    }

    pub fn var(slot: usize) -> Monomial {
        let mut m = Monomial::one();
        m.exps[slot] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (s, &e) in exps.iter().enumerate() {
            m.exps[s] = u8::try_from(e).expect("exponent overflow");
            m.deg += e as u16;
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exp(&self, slot: usize) -> u32 {
        self.exps[slot] as u32
    }

    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for s in 0..MAX_VARS {
            m.exps[s] = m.exps[s].checked_add(other.exps[s]).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    /// Same monomial with the exponent of `slot` replaced.
    pub fn with_exp(&self, slot: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[slot] as u16 + e as u16;
        m.exps[slot] = u8::try_from(e).expect("exponent overflow");
        m
    }

    /// Moves the exponent of slot `s` to slot `perm[s]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut m = Monomial { deg: self.deg, exps: [0; MAX_VARS] };
        for (s, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                m.exps[perm[s]] = e;
            }
        }
        m
    }

    /// Slots with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(s, &e)| (s, e as u32))
    }
}

/// Merges two sorted term lists, adding coefficients of equal monomials.
fn merge_terms(a: Vec<(Monomial, Q)>, b: Vec<(Monomial, Q)>) -> Vec<(Monomial, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            std::cmp::Ordering::Less => out.push(a.next().unwrap()),
            std::cmp::Ordering::Greater => out.push(b.next().unwrap()),
            std::cmp::Ordering::Equal => {
                let (m, c) = a.next().unwrap();
                let (_, d) = b.next().unwrap();
                let s = &c + &d;
                if !s.is_zero() {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// A polynomial as a sorted list of monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Q)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Q::one())
    }

    pub fn constant(c: Q) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(slot: usize) -> Polynomial {
        Polynomial { terms: vec![(Monomial::var(slot), Q::one())] }
    }

    pub fn monomial(m: Monomial, c: Q) -> Polynomial {
        Polynomial::from_terms(vec![(m, c)])
    }

    /// `x_a - x_b - m`.
    pub fn linear(a: usize, b: usize, m: &Q) -> Polynomial {
        Polynomial::from_terms(vec![(Monomial::var(a), Q::one()), (Monomial::var(b), -Q::one()), (Monomial::one(), -m)])
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(mut terms: Vec<(Monomial, Q)>) -> Polynomial {
        terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.deg == 0)
    }

    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.deg == 0 => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Q {
        match self.terms.first() {
            Some((m, c)) if m.deg == 0 => c.clone(),
            _ => Q::zero(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == d)
    }

    /// Highest slot carrying a variable, plus one.
    pub fn var_bound(&self) -> usize {
        self.terms.iter().filter_map(|(m, _)| m.exps.iter().rposition(|&e| e != 0)).max().map_or(0, |p| p + 1)
    }

    pub fn uses_var(&self, slot: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps[slot] != 0)
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, k)| (*m, -k)).collect() }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        // Multiplying by one term preserves the order, so the partial
        // products are already sorted and only need merging.
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut parts: Vec<Vec<(Monomial, Q)>> =
            small.terms.iter().map(|(m, c)| big.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect()).collect();
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                next.push(match it.next() {
                    Some(b) => merge_terms(a, b),
                    None => a,
                });
            }
            parts = next;
        }
        Polynomial { terms: parts.pop().unwrap_or_default() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        // Multiplying by a monomial preserves the term order.
        Polynomial { terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Polynomial>>(it: I) -> Polynomial {
        it.into_iter().fold(Polynomial::one(), |acc, p| acc.mul(p))
    }

    /// Renames variables: slot `s` becomes slot `perm[s]`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect())
    }

    /// Substitutes `images[s]` for `x_s` for every slot `s < images.len()`.
    /// Slots past the end of `images` are kept as they are.
    pub fn compose(&self, images: &[Polynomial]) -> Polynomial {
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut acc: Vec<(Monomial, Q)> = Vec::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut term = Polynomial::constant(c.clone());
            for (s, e) in m.support() {
                if s >= images.len() {
                    kept = kept.with_exp(s, e);
                    continue;
                }
                let powers = &mut cache[s];
                if powers.is_empty() {
                    powers.push(Polynomial::one());
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&images[s]);
                    powers.push(next);
                }
                term = term.mul(&powers[e as usize]);
            }
            let term = term.mul_monomial(&kept, &Q::one());
            acc.extend(term.terms);
        }
        Polynomial::from_terms(acc)
    }

    /// `f(x + z)`: every `x_s` replaced by `x_s + shift[s]`.
    pub fn shift(&self, shift: &[i64]) -> Polynomial {
        if shift.iter().all(|&z| z == 0) {
            return self.clone();
        }
        let images: Vec<Polynomial> = shift
            .iter()
            .enumerate()
            .map(|(s, &z)| Polynomial::var(s).add(&Polynomial::constant(Q::from_int(z))))
            .collect();
        self.compose(&images)
    }

    /// Exact quotient by `x_slot - c`, where `c` must not involve `x_slot`.
    /// Returns `None` when the division leaves a remainder.
    pub fn div_linear(&self, slot: usize, c: &Polynomial) -> Option<Polynomial> {
        debug_assert!(!c.uses_var(slot));
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        // Collect coefficients p_d of x_slot^d.
        let top = self.terms.iter().map(|(m, _)| m.exp(slot)).max().unwrap_or(0) as usize;
        if top == 0 {
            return None;
        }
        let mut parts: Vec<Vec<(Monomial, Q)>> = vec![Vec::new(); top + 1];
        for (m, k) in &self.terms {
            let d = m.exp(slot) as usize;
            parts[d].push((m.with_exp(slot, 0), k.clone()));
        }
        let parts: Vec<Polynomial> = parts.into_iter().map(Polynomial::from_terms).collect();
        // Synthetic division: q_{d-1} = p_d + c q_d, remainder p_0 + c q_0.
        let mut q: Vec<Polynomial> = vec![Polynomial::zero(); top];
        q[top - 1] = parts[top].clone();
        for d in (1..top).rev() {
            q[d - 1] = parts[d].add(&c.mul(&q[d]));
        }
        let rem = parts[0].add(&c.mul(&q[0]));
        if !rem.is_zero() {
            return None;
        }
        let mut acc = Vec::new();
        for (d, qd) in q.into_iter().enumerate() {
            let x = Monomial::one().with_exp(slot, d as u32);
            acc.extend(qd.mul_monomial(&x, &Q::one()).terms);
        }
        Some(Polynomial::from_terms(acc))
    }

    /// Cheap necessary test for divisibility by `x_a - x_b - m`: evaluates
    /// modulo a large prime on a fixed point of that hyperplane. `false`
    /// means the form certainly does not divide.
    pub(crate) fn may_vanish_on(&self, a: usize, b: usize, m: i64) -> bool {
        let mut vals = [0u64; MAX_VARS];
        let mut h: u64 = 0x9e37_79b9_7f4a_7c15;
        for v in vals.iter_mut() {
            h = h.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *v = (h >> 3) % MOD_P;
        }
        vals[a] = (vals[b] + m.rem_euclid(MOD_P as i64) as u64) % MOD_P;
        let mut pows: Vec<Vec<u64>> = vals.iter().map(|&v| vec![1, v]).collect();
        let mut inverses: Vec<(u64, u64)> = vec![(1, 1)];
        let mut acc: u64 = 0;
        for (mono, c) in &self.terms {
            let Some((n, d)) = c.mod_parts() else { return true };
            let inv = match inverses.iter().find(|(k, _)| *k == d) {
                Some(&(_, i)) => i,
                None if d == 0 => return true,
                None => {
                    let i = mod_pow(d, MOD_P - 2);
                    inverses.push((d, i));
                    i
                }
            };
            let mut t = mod_mul(n, inv);
            for (s, e) in mono.support() {
                let row = &mut pows[s];
                while row.len() <= e as usize {
                    let next = mod_mul(*row.last().unwrap(), vals[s]);
                    row.push(next);
                }
                t = mod_mul(t, row[e as usize]);
            }
            acc += t;
            if acc >= MOD_P {
                acc -= MOD_P;
            }
        }
        acc == 0
    }

    /// Evaluates at rational values (missing slots count as zero).
    pub fn eval_q(&self, values: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m.support() {
                let v = values.get(s).cloned().unwrap_or_else(Q::zero);
                t = &t * &v.pow(e);
            }
            acc += &t;
        }
        acc
    }

    /// Splits into homogeneous components, lowest degree first.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Polynomial)> {
        let mut out: Vec<(u32, Vec<(Monomial, Q)>)> = Vec::new();
        for (m, c) in &self.terms {
            match out.last_mut() {
                Some((d, v)) if *d == m.degree() => v.push((*m, c.clone())),
                _ => out.push((m.degree(), vec![(*m, c.clone())])),
            }
        }
        out.into_iter().map(|(d, t)| (d, Polynomial { terms: t })).collect()
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest terms first reads naturally.
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if m.deg == 0 || !abs.is_one() {
                parts.push(abs.to_string());
            }
            for (s, e) in m.support() {
                if e == 1 {
                    parts.push(name(s));
                } else {
                    parts.push(format!("{}^{}", name(s), e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }

    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        struct W<'a>(&'a Polynomial, &'a dyn Fn(usize) -> String);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        W(self, name).to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &x_name)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl From<Q> for Polynomial {
    fn from(c: Q) -> Polynomial {
        Polynomial::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: usize) -> Polynomial {
        Polynomial::var(s)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(Q::from_int(n))
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = x(0).add(&x(1));
        assert!(p.sub(&p).is_zero());
        assert_eq!(x(0).add(&c(1)).mul(&x(0).sub(&c(1))), x(0).mul(&x(0)).sub(&c(1)));
    }

    #[test]
    fn linear_division() {
        // (x0 - x1 - 2)(x0 + x2) / (x0 - (x1 + 2))
        let f = Polynomial::linear(0, 1, &Q::from_int(2));
        let g = x(0).add(&x(2));
        let p = f.mul(&g);
        assert_eq!(p.div_linear(0, &x(1).add(&c(2))), Some(g));
        assert_eq!(x(0).div_linear(0, &x(1)), None);
    }

    #[test]
    fn shift_and_compose() {
        let p = x(0).mul(&x(0)).add(&x(1));
        let s = p.shift(&[1, 0]);
        assert_eq!(s, x(0).mul(&x(0)).add(&x(0).scale(&Q::from_int(2))).add(&c(1)).add(&x(1)));
        assert_eq!(s.shift(&[-1, 0]), p);
    }

    #[test]
    fn display_is_readable() {
        let p = x(1).scale(&Q::new(3, 2)).sub(&c(1)).add(&x(0).mul(&x(0)));
        assert_eq!(p.to_string(), "x1_1^2 + 3/2*x2_1 - 1");
    }
}
