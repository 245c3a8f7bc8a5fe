use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of variable slots a monomial can carry: enough for `n <= 6`.
pub const MAX_VARS: usize = 21;

/// Largest rank supported by the fixed-width monomials.
pub const MAX_RANK: usize = 6;

/// Position `(k, i)` of a tableau entry, `1 <= i <= k`.
///
/// Entries are stored in one flat array row by row, so `(k, i)` lives at
/// `k(k-1)/2 + i - 1`. The flat order coincides with the lexicographic order
/// on `(k, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarIndex {
    pub k: usize,
    pub i: usize,
}

impl VarIndex {
    pub fn new(k: usize, i: usize) -> VarIndex {
        assert!(k >= 1 && i >= 1 && i <= k, "invalid index ({}, {})", k, i);
        VarIndex { k, i }
    }

    pub fn flat(self) -> usize {
        self.k * (self.k - 1) / 2 + self.i - 1
    }

    pub fn from_flat(slot: usize) -> VarIndex {
        let mut k = 1;
        while k * (k + 1) / 2 <= slot {
            k += 1;
        }
        VarIndex { k, i: slot - k * (k - 1) / 2 + 1 }
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.k, self.i)
    }
}

/// Number of entries of a rank-`n` tableau.
pub fn num_vars(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Flat slots of row `k`.
pub fn row_slots(k: usize) -> std::ops::Range<usize> {
    k * (k - 1) / 2..k * (k + 1) / 2
}

pub fn x_name(slot: usize) -> String {
    VarIndex::from_flat(slot).to_string()
}

pub fn t_name(slot: usize) -> String {
    format!("t{}", slot + 1)
}
