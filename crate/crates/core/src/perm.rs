//! Elements of the symmetric group `S_n` and the hyperoctahedral group `B_n`
//! (with `D_n` as the even-negatives subgroup) in one-line notation, together
//! with the scalar statistics defined on them.
//!
//! Positions are 1-indexed in every public method that takes a position or a
//! value; the backing vectors are 0-indexed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sum of the gaps `w_i - w_{i+1}` over the descents of `w`.
fn descent_gap_sum(w: impl IntoIterator<Item = i64>) -> u64 {
    let mut it = w.into_iter();
    let Some(mut prev) = it.next() else { return 0 };
    let mut total = 0u64;
    for x in it {
        if prev > x {
            total += (prev - x) as u64;
        }
        prev = x;
    }
    total
}

fn count_inversions(w: &[i64]) -> u64 {
    let mut count = 0;
    for (i, &a) in w.iter().enumerate() {
        count += w[i + 1..].iter().filter(|&&b| a > b).count() as u64;
    }
    count
}

/// Splits `"3,1,-5,2,-4"` into integers, reporting the 1-based position of the
/// first bad token.
fn parse_entries(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::EmptyWindow);
    }
    s.split(',')
        .enumerate()
        .map(|(i, tok)| {
            let tok = tok.trim();
            tok.parse::<i64>().map_err(|_| Error::BadToken {
                position: i + 1,
                token: tok.to_string(),
            })
        })
        .collect()
}

fn check_absolute_bijection(entries: &[i64]) -> Result<()> {
    let n = entries.len();
    if n == 0 {
        return Err(Error::EmptyWindow);
    }
    let mut seen = vec![false; n + 1];
    for (i, &v) in entries.iter().enumerate() {
        let a = v.unsigned_abs() as usize;
        if v == 0 || a > n {
            return Err(Error::EntryOutOfRange { position: i + 1, value: v, n });
        }
        if seen[a] {
            return Err(Error::RepeatedEntry { position: i + 1, value: v });
        }
        seen[a] = true;
    }
    Ok(())
}

fn write_window<T: fmt::Display>(f: &mut fmt::Formatter<'_>, w: &[T]) -> fmt::Result {
    for (i, x) in w.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// The statistics of a permutation that the enumerators work with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatBundle {
    pub inv: u64,
    pub des: u64,
    pub exc: u64,
    pub iexc: u64,
    pub drops: u64,
    pub depth: u64,
    /// Total displacement `sum |p_i - i|`, always twice the depth.
    pub spearman: u64,
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    window: Vec<u32>,
}

impl Permutation {
    pub fn new(window: Vec<u32>) -> Result<Self> {
        let entries: Vec<i64> = window.iter().map(|&x| x as i64).collect();
        check_absolute_bijection(&entries)?;
        Ok(Permutation { window })
    }

    /// Builds a permutation without validation. Callers guarantee the invariant.
    pub(crate) fn from_vec_unchecked(window: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(window.clone()).is_ok());
        Permutation { window }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { window: (1..=n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn window(&self) -> &[u32] {
        &self.window
    }

    /// `p(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.window[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.window.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { window: inv }
    }

    pub fn inv(&self) -> u64 {
        let w: Vec<i64> = self.window.iter().map(|&x| x as i64).collect();
        count_inversions(&w)
    }

    pub fn is_even(&self) -> bool {
        self.inv() % 2 == 0
    }

    /// Positions `i` (1-based) with `p_i > p_{i+1}`.
    pub fn descent_set(&self) -> Vec<usize> {
        self.window
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Positions `i` (1-based) with `p_i > i`.
    pub fn excedance_set(&self) -> Vec<usize> {
        self.window
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize > i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn des(&self) -> u64 {
        self.window.windows(2).filter(|w| w[0] > w[1]).count() as u64
    }

    pub fn exc(&self) -> u64 {
        self.window.iter().enumerate().filter(|(i, &v)| v as usize > i + 1).count() as u64
    }

    /// Excedances of the inverse: values `v` sitting left of position `v`.
    pub fn iexc(&self) -> u64 {
        self.window.iter().enumerate().filter(|(i, &v)| (v as usize) < i + 1).count() as u64
    }

    pub fn drops(&self) -> u64 {
        descent_gap_sum(self.window.iter().map(|&x| x as i64))
    }

    pub fn depth(&self) -> u64 {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &v)| (v as u64).saturating_sub(i as u64 + 1))
            .sum()
    }

    pub fn spearman(&self) -> u64 {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &v)| (v as i64 - (i as i64 + 1)).unsigned_abs())
            .sum()
    }

    pub fn stats(&self) -> StatBundle {
        StatBundle {
            inv: self.inv(),
            des: self.des(),
            exc: self.exc(),
            iexc: self.iexc(),
            drops: self.drops(),
            depth: self.depth(),
            spearman: self.spearman(),
        }
    }

    /// `r_i = n + 1 - p_{n+1-i}`.
    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len() as u32;
        Permutation { window: self.window.iter().rev().map(|&v| n + 1 - v).collect() }
    }

    /// Right multiplication by `s_i`: swaps the entries at positions `i`, `i+1`.
    pub fn apply_generator(&mut self, i: u32) -> Result<()> {
        let n = self.len();
        if i == 0 || i as usize >= n {
            return Err(Error::GeneratorOutOfRange { index: i, kind: 'A', n });
        }
        self.window.swap(i as usize - 1, i as usize);
        Ok(())
    }

    /// Left multiplication by the transposition `(a, b)`: exchanges the values.
    pub fn swap_values(&self, a: u32, b: u32) -> Permutation {
        let window = self
            .window
            .iter()
            .map(|&v| if v == a { b } else if v == b { a } else { v })
            .collect();
        Permutation { window }
    }

    pub fn to_signed(&self) -> SignedPermutation {
        SignedPermutation { window: self.window.iter().map(|&x| x as i32).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_window(f, &self.window)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_entries(s)?;
        if let Some(pos) = entries.iter().position(|&v| v < 0) {
            return Err(Error::UnexpectedSign { position: pos + 1, value: entries[pos] });
        }
        check_absolute_bijection(&entries)?;
        Ok(Permutation { window: entries.into_iter().map(|v| v as u32).collect() })
    }
}

/// An element of `B_n`: a window of `n` nonzero integers whose absolute values
/// form a permutation of `{1..n}`. Negative entries stand for barred letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPermutation {
    window: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let entries: Vec<i64> = window.iter().map(|&x| x as i64).collect();
        check_absolute_bijection(&entries)?;
        Ok(SignedPermutation { window })
    }

    pub(crate) fn from_vec_unchecked(window: Vec<i32>) -> Self {
        debug_assert!(SignedPermutation::new(window.clone()).is_ok());
        SignedPermutation { window }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i32).collect() }
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn at(&self, i: usize) -> i32 {
        self.window[i - 1]
    }

    /// Positions (1-based) holding negative entries.
    pub fn negs(&self) -> Vec<usize> {
        self.window.iter().enumerate().filter(|(_, &v)| v < 0).map(|(i, _)| i + 1).collect()
    }

    pub fn neg_count(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    /// Absolute value of the sum of the negative entries.
    pub fn nsum(&self) -> u64 {
        self.window.iter().filter(|&&v| v < 0).map(|&v| v.unsigned_abs() as u64).sum()
    }

    /// Membership in `D_n`: an even number of negative entries.
    pub fn is_type_d(&self) -> bool {
        self.neg_count() % 2 == 0
    }

    /// Ordinary inversions with respect to the order on the integers.
    pub fn inv_a(&self) -> u64 {
        let w: Vec<i64> = self.window.iter().map(|&x| x as i64).collect();
        count_inversions(&w)
    }

    /// Coxeter length in `B_n`.
    pub fn inv_b(&self) -> u64 {
        self.nsum() + self.inv_a()
    }

    /// Type-D length, extended verbatim to all of `B_n`.
    pub fn inv_d(&self) -> u64 {
        self.inv_b() - self.neg_count() as u64
    }

    /// Descent gaps over the window prefixed by a virtual `0`.
    pub fn drops_b(&self) -> u64 {
        descent_gap_sum(std::iter::once(0).chain(self.window.iter().map(|&x| x as i64)))
    }

    /// Descent gaps over the window prefixed by a virtual `-w_2`.
    ///
    /// Summands are `w_i - w_{i+1}`, so the value is never negative.
    pub fn drops_d(&self) -> Result<u64> {
        if self.len() < 2 {
            return Err(Error::Domain(format!(
                "drops_D needs n >= 2, got n = {}",
                self.len()
            )));
        }
        let prefix = -(self.window[1] as i64);
        Ok(descent_gap_sum(std::iter::once(prefix).chain(self.window.iter().map(|&x| x as i64))))
    }

    /// `drops_B` with the contribution of the virtual position `0` removed
    /// when the first entry is negative, i.e. `drops_B + w_1` for `w_1 < 0`.
    ///
    /// This is the variant for which the signed `zdrops` sums over `D_n` and
    /// `B_n - D_n` vanish.
    pub fn zdrops(&self) -> u64 {
        let db = self.drops_b();
        match self.window.first() {
            Some(&first) if first < 0 => db - first.unsigned_abs() as u64,
            _ => db,
        }
    }

    /// Right multiplication by `s_i`; `s_0` negates the first entry.
    pub fn apply_generator(&mut self, i: u32) -> Result<()> {
        let n = self.len();
        if i as usize >= n {
            return Err(Error::GeneratorOutOfRange { index: i, kind: 'B', n });
        }
        if i == 0 {
            self.window[0] = -self.window[0];
        } else {
            self.window.swap(i as usize - 1, i as usize);
        }
        Ok(())
    }

    /// `None` if some entry is negative.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.window.iter().any(|&v| v < 0) {
            return None;
        }
        Some(Permutation { window: self.window.iter().map(|&v| v as u32).collect() })
    }

    /// The element of `S_{2n}` obtained by acting on `[±n]`, with `-n..-1,1..n`
    /// relabelled `1..2n` in order.
    pub fn to_symmetric_embedding(&self) -> Permutation {
        let n = self.len() as i64;
        let relabel = |v: i64| -> u32 { if v < 0 { (v + n + 1) as u32 } else { (v + n) as u32 } };
        let mut window = Vec::with_capacity(2 * self.len());
        for &v in self.window.iter().rev() {
            window.push(relabel(-(v as i64)));
        }
        for &v in &self.window {
            window.push(relabel(v as i64));
        }
        Permutation { window }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_window(f, &self.window)
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_entries(s)?;
        check_absolute_bijection(&entries)?;
        Ok(SignedPermutation { window: entries.into_iter().map(|v| v as i32).collect() })
    }
}

impl From<&Permutation> for SignedPermutation {
    fn from(p: &Permutation) -> Self {
        p.to_signed()
    }
}
