//! Exhaustive enumeration of `S_n`, `A_n`, `B_n` and `D_n` in lexicographic
//! order of the one-line window, with rank/unrank so that `[0, |G|)` can be
//! cut into disjoint ranges and consumed on several threads.
//!
//! `A_n` and `D_n` are ranked through a prefix: once all but the last two
//! entries of an even permutation are known, their order is forced by parity,
//! and likewise the sign of the last entry of an element of `D_n`. Lex order on
//! the group therefore agrees with lex order on those prefixes.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Permutation, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// Symmetric group.
    S,
    /// Alternating group (even permutations).
    A,
    /// Hyperoctahedral group of signed permutations.
    B,
    /// Signed permutations with an even number of negative entries.
    D,
}

impl Group {
    pub fn letter(self) -> char {
        match self {
            Group::S => 'S',
            Group::A => 'A',
            Group::B => 'B',
            Group::D => 'D',
        }
    }

    pub fn is_signed(self) -> bool {
        matches!(self, Group::B | Group::D)
    }

    pub fn min_n(self) -> usize {
        match self {
            Group::D => 2,
            _ => 1,
        }
    }

    /// Group order, or an error if it exceeds `u64`.
    pub fn order(self, n: usize) -> Result<u64> {
        let too_large = || Error::GroupTooLarge { group: self.letter(), n };
        let mut f: u64 = 1;
        for k in 2..=n as u64 {
            f = f.checked_mul(k).ok_or_else(too_large)?;
        }
        let pow2 = |e: usize| -> Result<u64> {
            u32::try_from(e)
                .ok()
                .and_then(|e| 1u64.checked_shl(e).filter(|_| e < 64))
                .ok_or_else(too_large)
        };
        Ok(match self {
            Group::S => f,
            Group::A => (f / 2).max(1),
            Group::B => f.checked_mul(pow2(n)?).ok_or_else(too_large)?,
            Group::D => f.checked_mul(pow2(n.saturating_sub(1))?).ok_or_else(too_large)?,
        })
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S" | "s" | "A-type" => Ok(Group::S),
            "A" | "a" => Ok(Group::A),
            "B" | "b" => Ok(Group::B),
            "D" | "d" => Ok(Group::D),
            other => Err(Error::Domain(format!("unknown group {other:?}"))),
        }
    }
}

/// Shared rank machinery for all four groups.
#[derive(Debug, Clone)]
struct Ranker {
    group: Group,
    n: usize,
    len: u64,
    /// `completions[r]`: number of valid ways to fill `r` trailing positions.
    completions: Vec<u64>,
}

impl Ranker {
    fn new(group: Group, n: usize) -> Result<Self> {
        if n < group.min_n() {
            return Err(Error::Domain(format!(
                "{}_{n} is not supported (need n >= {})",
                group.letter(),
                group.min_n()
            )));
        }
        let len = group.order(n)?;
        let mut completions = Vec::with_capacity(n + 1);
        let mut base: u64 = 1;
        for r in 0..=n {
            if r > 0 {
                base *= r as u64;
                if group.is_signed() {
                    base *= 2;
                }
            }
            let c = match group {
                Group::A if r >= 2 => base / 2,
                Group::D if r >= 1 => base / 2,
                _ => base,
            };
            completions.push(c);
        }
        Ok(Ranker { group, n, len, completions })
    }

    /// Number of trailing entries fixed by the parity constraint.
    fn forced_tail(&self) -> usize {
        match self.group {
            Group::A => 2.min(self.n),
            Group::D => 1,
            _ => 0,
        }
    }

    fn unrank(&self, mut rank: u64) -> Vec<i32> {
        assert!(rank < self.len, "rank {rank} out of range for {} elements", self.len);
        let n = self.n;
        let signed = self.group.is_signed();
        let mut remaining: Vec<i32> = (1..=n as i32).collect();
        let mut out = Vec::with_capacity(n);
        while remaining.len() > self.forced_tail() {
            let m = remaining.len();
            let c = self.completions[m - 1];
            let d = (rank / c) as usize;
            rank %= c;
            let v = if signed {
                if d < m {
                    -remaining.remove(m - 1 - d)
                } else {
                    remaining.remove(d - m)
                }
            } else {
                remaining.remove(d)
            };
            out.push(v);
        }
        match self.group {
            Group::A => {
                out.extend(remaining.iter().copied());
                let inv = count_inv(&out);
                if inv % 2 == 1 {
                    out.swap(n - 2, n - 1);
                }
            }
            Group::D => {
                let negs = out.iter().filter(|&&v| v < 0).count();
                let last = remaining[0];
                out.push(if negs % 2 == 1 { -last } else { last });
            }
            _ => {}
        }
        out
    }

    fn rank(&self, window: &[i32]) -> Option<u64> {
        if window.len() != self.n {
            return None;
        }
        let signed = self.group.is_signed();
        let mut remaining: Vec<i32> = (1..=self.n as i32).collect();
        let mut rank = 0u64;
        for &v in &window[..self.n - self.forced_tail()] {
            let m = remaining.len();
            let j = remaining.iter().position(|&r| r == v.abs())?;
            let d = if signed {
                if v < 0 { m - 1 - j } else { m + j }
            } else {
                if v < 0 {
                    return None;
                }
                j
            };
            remaining.remove(j);
            rank += d as u64 * self.completions[m - 1];
        }
        // the unranked element must actually be the one given
        (self.unrank(rank) == window).then_some(rank)
    }
}

fn count_inv(w: &[i32]) -> usize {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                c += 1;
            }
        }
    }
    c
}

/// Splits `0..len` into at most `parts` contiguous, disjoint, covering ranges.
pub fn partition(len: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(len.max(1));
    let step = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for k in 0..parts {
        let size = step + u64::from(k < extra);
        out.push(start..start + size);
        start += size;
    }
    out
}

/// A finite group enumerated in lexicographic order.
pub trait ElementSpace: Sync {
    type Elem: Send;

    fn len(&self) -> u64;
    fn unrank(&self, rank: u64) -> Self::Elem;
    fn rank(&self, elem: &Self::Elem) -> Option<u64>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn iter_range(&self, range: Range<u64>) -> impl Iterator<Item = Self::Elem> + '_ {
        range.map(move |r| self.unrank(r))
    }

    fn iter(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        self.iter_range(0..self.len())
    }

    /// Folds every element into a per-range accumulator on the rayon pool and
    /// merges the accumulators. `merge` must be associative and commutative,
    /// which makes the result independent of the thread count.
    fn par_fold<T, I, F, M>(&self, init: I, fold: F, merge: M) -> T
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, Self::Elem) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let parts = rayon::current_num_threads() * 8;
        partition(self.len(), parts)
            .into_par_iter()
            .map(|range| {
                let mut acc = init();
                for e in self.iter_range(range) {
                    fold(&mut acc, e);
                }
                acc
            })
            .reduce(&init, &merge)
    }

    /// First element (in rank order) satisfying `pred`, searched in parallel.
    fn par_find_first<P>(&self, pred: P) -> Option<Self::Elem>
    where
        P: Fn(&Self::Elem) -> bool + Sync + Send,
    {
        let parts = rayon::current_num_threads() * 8;
        partition(self.len(), parts)
            .into_par_iter()
            .filter_map(|range| self.iter_range(range).find(|e| pred(e)))
            .find_first(|_| true)
    }
}

/// `S_n` or `A_n`.
#[derive(Debug, Clone)]
pub struct PermutationSpace {
    ranker: Ranker,
}

impl PermutationSpace {
    pub fn symmetric(n: usize) -> Result<Self> {
        Ok(PermutationSpace { ranker: Ranker::new(Group::S, n)? })
    }

    pub fn alternating(n: usize) -> Result<Self> {
        Ok(PermutationSpace { ranker: Ranker::new(Group::A, n)? })
    }

    pub fn new(group: Group, n: usize) -> Result<Self> {
        match group {
            Group::S => Self::symmetric(n),
            Group::A => Self::alternating(n),
            g => Err(Error::Domain(format!("{g}_{n} is not a group of unsigned permutations"))),
        }
    }

    pub fn group(&self) -> Group {
        self.ranker.group
    }

    pub fn n(&self) -> usize {
        self.ranker.n
    }
}

impl ElementSpace for PermutationSpace {
    type Elem = Permutation;

    fn len(&self) -> u64 {
        self.ranker.len
    }

    fn unrank(&self, rank: u64) -> Permutation {
        let w = self.ranker.unrank(rank);
        Permutation::from_vec_unchecked(w.into_iter().map(|v| v as u32).collect())
    }

    fn rank(&self, elem: &Permutation) -> Option<u64> {
        let w: Vec<i32> = elem.window().iter().map(|&v| v as i32).collect();
        self.ranker.rank(&w)
    }
}

/// `B_n` or `D_n`.
#[derive(Debug, Clone)]
pub struct SignedSpace {
    ranker: Ranker,
}

impl SignedSpace {
    pub fn type_b(n: usize) -> Result<Self> {
        Ok(SignedSpace { ranker: Ranker::new(Group::B, n)? })
    }

    pub fn type_d(n: usize) -> Result<Self> {
        Ok(SignedSpace { ranker: Ranker::new(Group::D, n)? })
    }

    pub fn new(group: Group, n: usize) -> Result<Self> {
        match group {
            Group::B => Self::type_b(n),
            Group::D => Self::type_d(n),
            g => Err(Error::Domain(format!("{g}_{n} is not a group of signed permutations"))),
        }
    }

    pub fn group(&self) -> Group {
        self.ranker.group
    }

    pub fn n(&self) -> usize {
        self.ranker.n
    }
}

impl ElementSpace for SignedSpace {
    type Elem = SignedPermutation;

    fn len(&self) -> u64 {
        self.ranker.len
    }

    fn unrank(&self, rank: u64) -> SignedPermutation {
        SignedPermutation::from_vec_unchecked(self.ranker.unrank(rank))
    }

    fn rank(&self, elem: &SignedPermutation) -> Option<u64> {
        self.ranker.rank(elem.window())
    }
}
