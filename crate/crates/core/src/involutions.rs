//! Sign-reversing involutions on `S_n` and `B_n` built from canonical words,
//! and the two value swaps used for the type-D sums.
//!
//! Both involutions change exactly one factor length of the canonical word:
//!
//! * `f_A`: let `t` be the smallest index with `l(r_t) >= 2`. Appending
//!   `s_{t-1}` to `r_t` cancels against, or becomes, `r_{t-1}`, so the move
//!   toggles `r_{t-1}` between `1` and `s_{t-1}`.
//! * `g_B`: if some factor is near-maximal (`u_i` or `v_i`), the leftmost
//!   such factor switches between the two; otherwise the `f_A` move is made
//!   with `s_{t-2}`, toggling `r_{t-1}` between `1` and `s_{t-2}`.
//!
//! Elements where every factor has length at most one are fixed.

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Permutation, SignedPermutation};
use crate::words::{
    canonical_word_a, canonical_word_b, classify_factor_len_b, CanonicalWord, CoxeterElement,
    CoxeterType,
};

/// Outcome of applying one of the involutions to an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionReport<E> {
    pub input: E,
    pub output: E,
    pub fixed: bool,
    /// Index `i` of the only factor `r_i` in which the two canonical words differ.
    pub changed_factor_index: Option<usize>,
    /// Values `(a, b)` with `(a, b) * output = input`; type A only.
    pub transposition: Option<(u32, u32)>,
}

impl<E: fmt::Display> Serialize for InvolutionReport<E> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("InvolutionReport", 5)?;
        st.serialize_field("input", &self.input.to_string())?;
        st.serialize_field("output", &self.output.to_string())?;
        st.serialize_field("fixed", &self.fixed)?;
        st.serialize_field("factor_index", &self.changed_factor_index)?;
        st.serialize_field("transposition", &self.transposition.map(|(a, b)| [a, b]))?;
        st.end()
    }
}

fn smallest_long_factor(lengths: &[usize]) -> Option<usize> {
    lengths.iter().position(|&l| l >= 2).map(|k| k + 1)
}

/// Factor lengths of `f_A(p)` and the index of the toggled factor.
fn f_a_lengths(lengths: &[usize]) -> Option<(Vec<usize>, usize)> {
    let t = smallest_long_factor(lengths)?;
    // r_1 has length at most 1, so t >= 2
    let i = t - 1;
    let mut out = lengths.to_vec();
    out[i - 1] ^= 1;
    Some((out, i))
}

pub fn f_a(p: &Permutation) -> InvolutionReport<Permutation> {
    let word = canonical_word_a(p);
    let Some((lengths, i)) = f_a_lengths(&word.factor_lengths()) else {
        return InvolutionReport {
            input: p.clone(),
            output: p.clone(),
            fixed: true,
            changed_factor_index: None,
            transposition: None,
        };
    };
    let image = CanonicalWord::from_factor_lengths(CoxeterType::A, p.len(), &lengths)
        .and_then(|w| w.evaluate::<Permutation>())
        .expect("toggled lengths stay in range");
    let w_next = word.intermediates::<Permutation>().expect("type A word").get(i + 1).clone();
    InvolutionReport {
        input: p.clone(),
        output: image,
        fixed: false,
        changed_factor_index: Some(i),
        transposition: Some((w_next.at(i), w_next.at(i + 1))),
    }
}

/// The pair `(a, b)` with `(a, b) * f_A(p) = p`, read off the intermediate
/// permutation `w_{i+1}` at positions `i`, `i + 1`.
pub fn differing_transposition(p: &Permutation) -> Result<(u32, u32)> {
    f_a(p).transposition.ok_or_else(|| Error::FixedPoint(p.to_string()))
}

/// Factor lengths of `g_B(s)` and the index of the changed factor.
fn g_b_lengths(lengths: &[usize]) -> Option<(Vec<usize>, usize)> {
    let n = lengths.len();
    let nml = (2..=n).rev().find(|&i| classify_factor_len_b(lengths[i - 1], i).is_nml());
    let mut out = lengths.to_vec();
    if let Some(i) = nml {
        // u_i has 2i - 1 letters, v_i has 2i - 2
        out[i - 1] = if lengths[i - 1] == 2 * i - 1 { 2 * i - 2 } else { 2 * i - 1 };
        return Some((out, i));
    }
    let t = smallest_long_factor(lengths)?;
    let i = t - 1;
    out[i - 1] ^= 1;
    Some((out, i))
}

pub fn g_b(s: &SignedPermutation) -> InvolutionReport<SignedPermutation> {
    let word = canonical_word_b(s);
    let Some((lengths, i)) = g_b_lengths(&word.factor_lengths()) else {
        return InvolutionReport {
            input: s.clone(),
            output: s.clone(),
            fixed: true,
            changed_factor_index: None,
            transposition: None,
        };
    };
    let image = CanonicalWord::from_factor_lengths(CoxeterType::B, s.len(), &lengths)
        .and_then(|w| w.evaluate::<SignedPermutation>())
        .expect("toggled lengths stay in range");
    InvolutionReport {
        input: s.clone(),
        output: image,
        fixed: false,
        changed_factor_index: Some(i),
        transposition: None,
    }
}

/// Dispatch to `f_A` or `g_B` by element type.
pub trait SignReversingInvolution: CoxeterElement {
    fn involution(&self) -> InvolutionReport<Self>;
}

impl SignReversingInvolution for Permutation {
    fn involution(&self) -> InvolutionReport<Self> {
        f_a(self)
    }
}

impl SignReversingInvolution for SignedPermutation {
    fn involution(&self) -> InvolutionReport<Self> {
        g_b(self)
    }
}

/// Fixed points of `f_A` (`S_n`) or `g_B` (`B_n`): every factor of length
/// 0 or 1, i.e. words `s_{i_1} s_{i_2} ... s_{i_k}` with strictly decreasing
/// indices. One element per subset of the factor indices.
pub fn fixed_points<E: CoxeterElement>(n: usize) -> impl Iterator<Item = E> {
    let count = E::KIND.factor_count(n);
    (0u64..1 << count).map(move |mask| {
        let lengths: Vec<usize> = (0..count).map(|k| ((mask >> k) & 1) as usize).collect();
        CanonicalWord::from_factor_lengths(E::KIND, n, &lengths)
            .and_then(|w| w.evaluate::<E>())
            .expect("0/1 factor lengths are valid")
    })
}

/// Which of the four sign patterns of the entries `±(n-1)`, `±n` occurs.
///
/// Case 1: `n-1 .. n`; case 2: `-(n-1) .. n`; case 3: `n-1 .. -n`;
/// case 4: `-(n-1) .. -n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeDCase(pub u8);

/// Image of one of the type-D value swaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDImage {
    pub image: SignedPermutation,
    pub case: TypeDCase,
    /// The block after the letter `±n` is empty.
    pub tail_empty: bool,
    /// The input starts with `±(n-1), ±n`.
    pub head_empty: bool,
}

/// Positions (0-based) of `±(n-1)` and `±n`, requiring `±(n-1)` first.
fn top_pair_positions(s: &SignedPermutation) -> Result<(usize, usize)> {
    let n = s.len();
    if n < 2 {
        return Err(Error::Domain(format!("type-D maps need n >= 2, got n = {n}")));
    }
    let w = s.window();
    let pa = w.iter().position(|v| v.unsigned_abs() as usize == n - 1).expect("entry present");
    let pb = w.iter().position(|v| v.unsigned_abs() as usize == n).expect("entry present");
    if pa > pb {
        return Err(Error::Domain(format!("{s}: ±{} does not occur before ±{n}", n - 1)));
    }
    Ok((pa, pb))
}

/// Exchanges the absolute values `n - 1` and `n`, leaving each sign at its
/// position. Maps "`±(n-1)` before `±n`" onto "`±n` before `±(n-1)`".
fn swap_top_pair(s: &SignedPermutation) -> Result<TypeDImage> {
    let (pa, pb) = top_pair_positions(s)?;
    let n = s.len();
    let mut w = s.window().to_vec();
    let (a, b) = (w[pa], w[pb]);
    w[pa] = b.abs() * a.signum();
    w[pb] = a.abs() * b.signum();
    let case = match (a > 0, b > 0) {
        (true, true) => 1,
        (false, true) => 2,
        (true, false) => 3,
        (false, false) => 4,
    };
    Ok(TypeDImage {
        image: SignedPermutation::from_vec_unchecked(w),
        case: TypeDCase(case),
        tail_empty: pb == n - 1,
        head_empty: pa == 0 && pb == 1,
    })
}

/// The bijection `g` from the `±(n-1)`-first half of `B_n - D_n` onto the
/// `±n`-first half.
pub fn typed_g(s: &SignedPermutation) -> Result<TypeDImage> {
    if s.is_type_d() {
        return Err(Error::Domain(format!("{s} lies in D_n; g is defined on B_n - D_n")));
    }
    swap_top_pair(s)
}

/// The bijection `h` from the `±(n-1)`-first half of `D_n` onto the
/// `±n`-first half.
pub fn typed_h(s: &SignedPermutation) -> Result<TypeDImage> {
    if !s.is_type_d() {
        return Err(Error::Domain(format!("{s} is not in D_n")));
    }
    swap_top_pair(s)
}
