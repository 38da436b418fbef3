//! Canonical reduced words for types A and B.
//!
//! The canonical word of `w` is built by reverse sorting from the identity:
//! stage by stage the rightmost not-yet-correct position receives its final
//! entry, and the generators used in one stage form one factor. In type A the
//! factors are `[r_{n-1}] ... [r_1]` with `r_i` in
//! `W<i> = {1, s_i, s_{i-1}s_i, ..., s_1...s_i}`; in type B they are
//! `[r_n] ... [r_1]` with `r_i` in
//! `W<i> = {1, s_{i-1}, ..., s_0...s_{i-1}, s_1s_0s_1...s_{i-1}, ..., s_{i-1}...s_0...s_{i-1}}`.
//!
//! A factor is determined by its index and its length, so most of the
//! involution code only manipulates the vector of factor lengths.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{Permutation, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A,
    B,
}

impl CoxeterType {
    fn letter(self) -> char {
        match self {
            CoxeterType::A => 'A',
            CoxeterType::B => 'B',
        }
    }

    /// Number of factors in a canonical word of an element of rank `n`.
    pub fn factor_count(self, n: usize) -> usize {
        match self {
            CoxeterType::A => n.saturating_sub(1),
            CoxeterType::B => n,
        }
    }

    /// Largest allowed length of the factor `r_i`.
    pub fn max_factor_len(self, i: usize) -> usize {
        match self {
            CoxeterType::A => i,
            CoxeterType::B => 2 * i - 1,
        }
    }

    fn generator_range(self, n: usize) -> std::ops::Range<u32> {
        match self {
            CoxeterType::A => 1..n as u32,
            CoxeterType::B => 0..n as u32,
        }
    }
}

/// A group element that can be addressed by words in the simple generators.
pub trait CoxeterElement: Clone + Eq + Hash + Ord + fmt::Display + fmt::Debug + Send + Sync {
    const KIND: CoxeterType;

    fn identity_of_rank(n: usize) -> Self;
    fn rank_n(&self) -> usize;
    /// Right multiplication by the generator `s_i`.
    fn apply_generator(&mut self, i: u32) -> Result<()>;
    /// Coxeter length.
    fn length(&self) -> u64;
    fn canonical_word(&self) -> CanonicalWord;
}

impl CoxeterElement for Permutation {
    const KIND: CoxeterType = CoxeterType::A;

    fn identity_of_rank(n: usize) -> Self {
        Permutation::identity(n)
    }

    fn rank_n(&self) -> usize {
        self.len()
    }

    fn apply_generator(&mut self, i: u32) -> Result<()> {
        Permutation::apply_generator(self, i)
    }

    fn length(&self) -> u64 {
        self.inv()
    }

    fn canonical_word(&self) -> CanonicalWord {
        canonical_word_a(self)
    }
}

impl CoxeterElement for SignedPermutation {
    const KIND: CoxeterType = CoxeterType::B;

    fn identity_of_rank(n: usize) -> Self {
        SignedPermutation::identity(n)
    }

    fn rank_n(&self) -> usize {
        self.len()
    }

    fn apply_generator(&mut self, i: u32) -> Result<()> {
        SignedPermutation::apply_generator(self, i)
    }

    fn length(&self) -> u64 {
        self.inv_b()
    }

    fn canonical_word(&self) -> CanonicalWord {
        canonical_word_b(self)
    }
}

/// Letters of the factor `r_i` of length `len`.
pub fn factor_letters(kind: CoxeterType, i: usize, len: usize) -> Vec<u32> {
    let i = i as u32;
    let len = len as u32;
    match kind {
        CoxeterType::A => (i + 1 - len..=i).collect(),
        CoxeterType::B if len <= i => (i - len..i).collect(),
        CoxeterType::B => {
            let m = len - i;
            (1..=m).rev().chain(0..i).collect()
        }
    }
}

/// Length of `factor` as a member of `W<i>`, or an error if it is not one.
///
/// Membership is decided from the shape of the letters: an ascending run
/// ending at the top generator, preceded in type B by a descending run down
/// to `s_0`.
pub fn quotient_member_len(kind: CoxeterType, factor: &[u32], i: usize) -> Result<usize> {
    let len = factor.len();
    if i >= 1 && len <= kind.max_factor_len(i) && factor == factor_letters(kind, i, len).as_slice() {
        Ok(len)
    } else {
        Err(Error::NotInQuotient { factor: factor.to_vec(), index: i })
    }
}

/// A canonical reduced word with explicit factor boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalWord {
    kind: CoxeterType,
    n: usize,
    letters: Vec<u32>,
    /// `bounds[k]..bounds[k + 1]` is the k-th factor from the left.
    bounds: Vec<usize>,
}

impl CanonicalWord {
    /// Assembles the word from `lengths[i - 1] = l(r_i)`.
    pub fn from_factor_lengths(kind: CoxeterType, n: usize, lengths: &[usize]) -> Result<Self> {
        let count = kind.factor_count(n);
        if lengths.len() != count {
            return Err(Error::SizeMismatch { left: lengths.len(), right: count });
        }
        let mut letters = Vec::new();
        let mut bounds = vec![0];
        for i in (1..=count).rev() {
            let len = lengths[i - 1];
            if len > kind.max_factor_len(i) {
                return Err(Error::Domain(format!(
                    "factor r_{i} cannot have length {len} in type {}",
                    kind.letter()
                )));
            }
            letters.extend(factor_letters(kind, i, len));
            bounds.push(letters.len());
        }
        Ok(CanonicalWord { kind, n, letters, bounds })
    }

    /// Assembles the word from explicit factors listed left to right, each
    /// checked for membership in its quotient.
    pub fn from_factors(kind: CoxeterType, n: usize, factors: &[Vec<u32>]) -> Result<Self> {
        let count = kind.factor_count(n);
        if factors.len() != count {
            return Err(Error::SizeMismatch { left: factors.len(), right: count });
        }
        let mut lengths = vec![0; count];
        for (k, f) in factors.iter().enumerate() {
            let i = count - k;
            lengths[i - 1] = quotient_member_len(kind, f, i)?;
        }
        Self::from_factor_lengths(kind, n, &lengths)
    }

    pub fn kind(&self) -> CoxeterType {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn factor_count(&self) -> usize {
        self.bounds.len() - 1
    }

    /// The factor `r_i`, for `1 <= i <= factor_count()`.
    pub fn factor(&self, i: usize) -> &[u32] {
        let k = self.factor_count() - i;
        &self.letters[self.bounds[k]..self.bounds[k + 1]]
    }

    /// `lengths[i - 1] = l(r_i)`.
    pub fn factor_lengths(&self) -> Vec<usize> {
        (1..=self.factor_count()).map(|i| self.factor(i).len()).collect()
    }

    /// The index sequence of the word.
    pub fn ird(&self) -> &[u32] {
        &self.letters
    }

    /// Positions `j` (1-based) with `x_j < x_{j+1}` in the index sequence.
    pub fn ascents(&self) -> BTreeSet<usize> {
        self.letters
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(j, _)| j + 1)
            .collect()
    }

    pub fn ird_and_ascents(&self) -> (Vec<u32>, BTreeSet<usize>) {
        (self.letters.clone(), self.ascents())
    }

    /// Index of the factor containing letter position `j` (1-based).
    pub fn factor_of_position(&self, j: usize) -> usize {
        let k = self.bounds.partition_point(|&b| b < j) - 1;
        self.factor_count() - k
    }

    pub fn evaluate<E: CoxeterElement>(&self) -> Result<E> {
        if E::KIND != self.kind {
            return Err(Error::Domain(format!(
                "a type {} word cannot be evaluated in type {}",
                self.kind.letter(),
                E::KIND.letter()
            )));
        }
        evaluate_word(&self.letters, self.n)
    }

    /// `w_{top}, ..., w_1` where `w_top` is the identity and
    /// `w_i = w_{i+1} r_i`.
    pub fn intermediates<E: CoxeterElement>(&self) -> Result<IntermediateSequence<E>> {
        if E::KIND != self.kind {
            return Err(Error::Domain("word and element types differ".into()));
        }
        let mut cur = E::identity_of_rank(self.n);
        let mut elems = vec![cur.clone()];
        for i in (1..=self.factor_count()).rev() {
            for &s in self.factor(i) {
                cur.apply_generator(s)?;
            }
            elems.push(cur.clone());
        }
        Ok(IntermediateSequence { elems })
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.factor_count() {
            f.write_str("[")?;
            for (j, s) in self.letters[self.bounds[k]..self.bounds[k + 1]].iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "s{s}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// The prefix products of a canonical word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediateSequence<E> {
    /// `elems[0] = w_top`, `elems.last() = w_1`.
    elems: Vec<E>,
}

impl<E> IntermediateSequence<E> {
    /// Largest index; `get(top())` is the identity.
    pub fn top(&self) -> usize {
        self.elems.len()
    }

    /// `w_i` for `1 <= i <= top()`.
    pub fn get(&self, i: usize) -> &E {
        &self.elems[self.elems.len() - i]
    }

    /// `w_top, ..., w_1` in order of construction.
    pub fn iter(&self) -> impl Iterator<Item = &E> {
        self.elems.iter()
    }
}

/// Left-to-right product of generators applied to the identity of rank `n`.
/// No reducedness is assumed.
pub fn evaluate_word<E: CoxeterElement>(letters: &[u32], n: usize) -> Result<E> {
    let range = E::KIND.generator_range(n);
    let mut e = E::identity_of_rank(n);
    for &s in letters {
        if !range.contains(&s) {
            return Err(Error::GeneratorOutOfRange { index: s, kind: E::KIND.letter(), n });
        }
        e.apply_generator(s)?;
    }
    Ok(e)
}

pub fn canonical_word_a(p: &Permutation) -> CanonicalWord {
    let n = p.len();
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    let mut lengths = vec![0; n.saturating_sub(1)];
    for i in (1..n).rev() {
        // stage for r_i: position i + 1 receives its final entry
        let target = p.window()[i];
        let j = cur.iter().position(|&v| v == target).expect("value present");
        debug_assert!(j <= i);
        cur[j..=i].rotate_left(1);
        lengths[i - 1] = i - j;
    }
    CanonicalWord::from_factor_lengths(CoxeterType::A, n, &lengths).expect("lengths in range")
}

pub fn canonical_word_b(s: &SignedPermutation) -> CanonicalWord {
    let n = s.len();
    let mut cur: Vec<i32> = (1..=n as i32).collect();
    let mut lengths = vec![0; n];
    for i in (1..=n).rev() {
        // stage for r_i: position i receives its final entry and sign
        let target = s.window()[i - 1];
        let j = cur.iter().position(|&v| v == target.abs()).expect("value present");
        debug_assert!(j < i);
        if target > 0 {
            cur[j..i].rotate_left(1);
            lengths[i - 1] = i - 1 - j;
        } else {
            cur[..=j].rotate_right(1);
            cur[0] = -cur[0];
            cur[..i].rotate_left(1);
            lengths[i - 1] = i + j;
        }
    }
    CanonicalWord::from_factor_lengths(CoxeterType::B, n, &lengths).expect("lengths in range")
}

/// Classification of a type-B factor `r_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorClass {
    Empty,
    /// A single letter.
    Short,
    /// `u_i = s_{i-1}...s_1 s_0 s_1...s_{i-1}`, the longest element of `W<i>`.
    NmlU,
    /// `v_i = s_{i-2}...s_0...s_{i-1}`, one letter shorter than `u_i`.
    NmlV,
    Other,
}

impl FactorClass {
    pub fn is_nml(self) -> bool {
        matches!(self, FactorClass::NmlU | FactorClass::NmlV)
    }
}

/// Class of a factor of length `len` at index `i` in type B.
pub fn classify_factor_len_b(len: usize, i: usize) -> FactorClass {
    match len {
        0 => FactorClass::Empty,
        _ if i > 1 && len == 2 * i - 1 => FactorClass::NmlU,
        _ if i > 1 && len == 2 * i - 2 => FactorClass::NmlV,
        1 => FactorClass::Short,
        _ => FactorClass::Other,
    }
}

pub fn classify_factor_b(factor: &[u32], i: usize) -> Result<FactorClass> {
    let len = quotient_member_len(CoxeterType::B, factor, i)?;
    Ok(classify_factor_len_b(len, i))
}

/// Parsed word text such as `"[s3 s4][s2 s3][][s1]"` or `"s3 s4 s2"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordText {
    pub letters: Vec<u32>,
    /// Present when the text used bracket factor markers.
    pub factors: Option<Vec<Vec<u32>>>,
}

impl FromStr for WordText {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn letter(tok: &str) -> Result<u32> {
            tok.strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::BadWord(format!("bad token {tok:?}")))
        }
        let s = s.trim();
        if !s.contains('[') && !s.contains(']') {
            let letters = s.split_whitespace().map(letter).collect::<Result<Vec<_>>>()?;
            return Ok(WordText { letters, factors: None });
        }
        let mut factors = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::BadWord(format!("expected '[' at {rest:?}")))?;
            let close = inner.find(']').ok_or_else(|| Error::BadWord("unclosed '['".into()))?;
            let body = &inner[..close];
            if body.contains('[') {
                return Err(Error::BadWord("nested '['".into()));
            }
            let f = body.split_whitespace().map(letter).collect::<Result<Vec<_>>>()?;
            factors.push(f);
            rest = inner[close + 1..].trim_start();
        }
        let letters = factors.iter().flatten().copied().collect();
        Ok(WordText { letters, factors: Some(factors) })
    }
}

impl CanonicalWord {
    /// Parses bracketed text and checks every factor against its quotient.
    pub fn parse(kind: CoxeterType, n: usize, text: &str) -> Result<Self> {
        let parsed: WordText = text.parse()?;
        let factors = parsed
            .factors
            .ok_or_else(|| Error::BadWord("canonical words need '[' ']' factor markers".into()))?;
        Self::from_factors(kind, n, &factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn type_a_examples() {
        let id = canonical_word_a(&Permutation::identity(5));
        assert!(id.is_empty());
        assert_eq!(id.to_string(), "[][][][]");
        assert_eq!(canonical_word_a(&p("4,1,5,2,3")).to_string(), "[s3 s4][s2 s3][][s1]");
        assert_eq!(canonical_word_a(&p("5,1,4,2,3")).to_string(), "[s3 s4][s2 s3][s2][s1]");
    }

    #[test]
    fn type_b_examples() {
        assert!(canonical_word_b(&SignedPermutation::identity(2)).is_empty());
        assert_eq!(
            canonical_word_b(&sp("4,1,-5,2,-3")).to_string(),
            "[s2 s1 s0 s1 s2 s3 s4][s2 s3][s2 s1 s0 s1 s2][s1][]"
        );
        assert_eq!(
            canonical_word_b(&sp("3,1,-5,2,-4")).to_string(),
            "[s3 s2 s1 s0 s1 s2 s3 s4][s2 s3][s2 s1 s0 s1 s2][s1][]"
        );
        // evaluates back to -6,1,5,3,4,-2; a leading s2 would put -3 last
        let w = canonical_word_b(&sp("-6,1,5,3,4,-2"));
        assert_eq!(w.to_string(), "[s1 s0 s1 s2 s3 s4 s5][s3 s4][s2 s3][s2][s1][s0]");
    }

    #[test]
    fn evaluation() {
        assert!(evaluate_word::<Permutation>(&[], 4).unwrap().is_identity());
        assert_eq!(evaluate_word::<Permutation>(&[3, 4, 2, 3, 1], 5).unwrap(), p("4,1,5,2,3"));
        assert_eq!(evaluate_word::<SignedPermutation>(&[0], 2).unwrap(), sp("-1,2"));
        assert_eq!(
            evaluate_word::<Permutation>(&[0], 3),
            Err(Error::GeneratorOutOfRange { index: 0, kind: 'A', n: 3 })
        );
        assert!(evaluate_word::<SignedPermutation>(&[2], 2).is_err());
        // not reduced: s1 s1 = 1
        assert!(evaluate_word::<Permutation>(&[1, 1], 2).unwrap().is_identity());
    }

    #[test]
    fn ascent_sets() {
        let empty = canonical_word_a(&Permutation::identity(3));
        assert_eq!(empty.ird_and_ascents(), (vec![], BTreeSet::new()));
        let w = canonical_word_a(&p("4,1,5,2,3"));
        assert_eq!(w.ird_and_ascents(), (vec![3, 4, 2, 3, 1], BTreeSet::from([1, 3])));
        let w = canonical_word_a(&p("5,1,4,2,3"));
        assert_eq!(w.ird_and_ascents(), (vec![3, 4, 2, 3, 2, 1], BTreeSet::from([1, 3])));
        assert_eq!(w.factor_of_position(1), 4);
        assert_eq!(w.factor_of_position(5), 2);
    }

    #[test]
    fn intermediate_elements() {
        let w = canonical_word_b(&sp("3,1,-5,2,-4"));
        let seq = w.intermediates::<SignedPermutation>().unwrap();
        assert_eq!(seq.top(), 6);
        assert_eq!(*seq.get(6), SignedPermutation::identity(5));
        assert_eq!(*seq.get(5), sp("1,2,3,5,-4"));
        assert_eq!(*seq.get(4), sp("1,3,5,2,-4"));
        // position 5 is final from w_5 on, so its entry stays -4
        assert_eq!(*seq.get(3), sp("1,3,-5,2,-4"));
        assert_eq!(*seq.get(2), sp("3,1,-5,2,-4"));
        assert_eq!(*seq.get(1), sp("3,1,-5,2,-4"));

        let w = canonical_word_a(&p("4,1,5,2,3"));
        let seq = w.intermediates::<Permutation>().unwrap();
        assert_eq!(seq.top(), 5);
        assert_eq!(*seq.get(4), p("1,2,4,5,3"));
        assert_eq!(*seq.get(3), p("1,4,5,2,3"));
        assert_eq!(*seq.get(2), p("1,4,5,2,3"));
        assert_eq!(*seq.get(1), p("4,1,5,2,3"));
        assert!(w.intermediates::<SignedPermutation>().is_err());
    }

    #[test]
    fn factor_classes() {
        assert_eq!(classify_factor_b(&[], 3), Ok(FactorClass::Empty));
        assert_eq!(classify_factor_b(&[0], 1), Ok(FactorClass::Short));
        assert_eq!(classify_factor_b(&[2], 3), Ok(FactorClass::Short));
        assert_eq!(classify_factor_b(&[3, 2, 1, 0, 1, 2, 3, 4], 5), Ok(FactorClass::NmlV));
        assert_eq!(classify_factor_b(&[4, 3, 2, 1, 0, 1, 2, 3, 4], 5), Ok(FactorClass::NmlU));
        assert_eq!(classify_factor_b(&[2, 1, 0, 1, 2], 3), Ok(FactorClass::NmlU));
        assert_eq!(classify_factor_b(&[0, 1], 2), Ok(FactorClass::NmlV));
        assert_eq!(classify_factor_b(&[2, 3], 4), Ok(FactorClass::Other));
        assert!(matches!(classify_factor_b(&[3, 2], 4), Err(Error::NotInQuotient { .. })));
        assert!(classify_factor_b(&[1, 0, 1, 2, 3, 4], 4).is_err());
    }

    #[test]
    fn word_text() {
        let t: WordText = "[s3 s4][s2 s3][][s1]".parse().unwrap();
        assert_eq!(t.letters, vec![3, 4, 2, 3, 1]);
        assert_eq!(t.factors.unwrap().len(), 4);
        let t: WordText = "s0 s1".parse().unwrap();
        assert_eq!((t.letters, t.factors), (vec![0, 1], None));
        assert!("[s1".parse::<WordText>().is_err());
        assert!("[t1]".parse::<WordText>().is_err());
        let w = CanonicalWord::parse(CoxeterType::A, 5, "[s3 s4][s2 s3][][s1]").unwrap();
        assert_eq!(w.evaluate::<Permutation>().unwrap(), p("4,1,5,2,3"));
        assert!(CanonicalWord::parse(CoxeterType::A, 5, "[s4 s3][s2 s3][][s1]").is_err());
        assert!(CanonicalWord::parse(CoxeterType::A, 5, "[s3 s4][s2 s3][s1]").is_err());
    }
}
