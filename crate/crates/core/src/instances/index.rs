//! Multi-indices `I = (i_0, ..., i_n)` for monomials `X^{i_0} σ(X)^{i_1} ... σ^n(X)^{i_n}`.

use std::cmp::Ordering;
use std::fmt;

use super::group::{Direction, GroupElement, OrderedDifferenceGroup};

/// A multi-index with trailing zeros removed, so equal indices compare equal
/// whatever length they were written with.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        MultiIndex(v)
    }

    pub fn zero() -> Self {
        MultiIndex(Vec::new())
    }

    /// The unit vector `E_j`.
    pub fn unit(j: usize) -> Self {
        let mut v = vec![0; j + 1];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// Largest `j` with `i_j > 0`.
    pub fn order(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// `|I| = i_0 + ... + i_n`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let n = self.0.len().max(other.0.len());
        MultiIndex::new((0..n).map(|j| self.get(j) + other.get(j)).collect())
    }

    /// `self - other` when `other ≤ self` pointwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = Vec::with_capacity(self.0.len());
        for j in 0..self.0.len() {
            v.push(self.get(j).checked_sub(other.get(j))?);
        }
        Some(MultiIndex::new(v))
    }

    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.checked_sub(other).is_some()
    }

    /// `I^{+m}`: the index of `σ^m` applied to `X^I`.
    pub fn shift_up(&self, m: usize) -> MultiIndex {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; m];
        v.extend_from_slice(&self.0);
        MultiIndex(v)
    }

    /// `I^{-m}`, defined when the first `m` entries vanish.
    pub fn shift_down(&self, m: usize) -> Option<MultiIndex> {
        if self.0.iter().take(m).any(|&e| e != 0) {
            return None;
        }
        Some(MultiIndex::new(self.0.iter().skip(m).copied().collect()))
    }

    /// `Π_k binomial(i_k, j_k)` for `J ≤ I`.
    pub fn binomial(&self, j: &MultiIndex) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &i)| binomial(i, j.get(k)))
            .product()
    }

    /// Enumerates every `J ≤ I` pointwise, including `0` and `I`.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for &i in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (i as usize + 1));
            for v in &out {
                for e in 0..=i {
                    let mut w: Vec<u32> = v.clone();
                    w.push(e);
                    next.push(w);
                }
            }
            out = next;
        }
        out.into_iter().map(MultiIndex::new).collect()
    }

    /// Order used for printing: larger σ-order, then higher degree in the top
    /// variable, then higher total degree come first.
    pub fn print_cmp(&self, other: &MultiIndex) -> Ordering {
        let key = |m: &MultiIndex| (m.0.len(), m.0.last().copied().unwrap_or(0), m.total());
        key(other)
            .cmp(&key(self))
            .then_with(|| other.0.iter().rev().cmp(self.0.iter().rev()))
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `(I(γ), |I|)` where `I(γ) = Σ_j i_j · Valσ^j(γ)`.
pub fn index_action(
    group: &dyn OrderedDifferenceGroup,
    i: &MultiIndex,
    gamma: &GroupElement,
) -> (GroupElement, u32) {
    let mut acc = GroupElement::zero();
    let mut g = gamma.clone();
    for (j, &e) in i.entries().iter().enumerate() {
        if j > 0 {
            g = group
                .map(&g, 1, Direction::Forward)
                .expect("forward map is total");
        }
        if e > 0 {
            acc = &acc + &g.scale_int(e as i64);
        }
    }
    (acc, i.total())
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        if self.0.is_empty() {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
