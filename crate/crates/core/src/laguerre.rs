//! The Foata–Zeilberger encoding of permutations by restricted Laguerre
//! histories, and the Motzkin paths obtained by forgetting labels.
//!
//! Heights are always pre-step: `h_i` counts the `N` steps minus the `S`
//! steps strictly before step `i`.

use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    N,
    S,
    E,
    /// Dotted east step; written `D` in path text.
    DE,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::N => 'N',
            Step::S => 'S',
            Step::E => 'E',
            Step::DE => 'D',
        }
    }

    fn from_letter(c: char) -> Option<Step> {
        match c {
            'N' => Some(Step::N),
            'S' => Some(Step::S),
            'E' => Some(Step::E),
            'D' => Some(Step::DE),
            _ => None,
        }
    }

    fn delta(self) -> i64 {
        match self {
            Step::N => 1,
            Step::S => -1,
            Step::E | Step::DE => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CyclicClass {
    Peak,
    Valley,
    DoubleAscent,
    DoubleDescent,
    Fixed,
}

impl CyclicClass {
    pub fn step(self) -> Step {
        match self {
            CyclicClass::Valley => Step::N,
            CyclicClass::Peak => Step::S,
            CyclicClass::DoubleAscent | CyclicClass::Fixed => Step::E,
            CyclicClass::DoubleDescent => Step::DE,
        }
    }
}

/// Pre-step heights, or `None` if the steps dip below zero or do not return to it.
fn heights_of(steps: &[Step]) -> Option<Vec<u32>> {
    let mut h = 0i64;
    let mut out = Vec::with_capacity(steps.len());
    for s in steps {
        out.push(h as u32);
        h += s.delta();
        if h < 0 {
            return None;
        }
    }
    (h == 0).then_some(out)
}

fn parse_steps(text: &str) -> Result<Vec<Step>> {
    text.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| Step::from_letter(c.to_ascii_uppercase()).ok_or_else(|| Error::BadPath(format!("unknown step {c:?}"))))
        .collect()
}

/// Common queries on nonnegative paths returning to height zero.
pub trait LatticePath {
    fn steps(&self) -> &[Step];

    fn len(&self) -> usize {
        self.steps().len()
    }

    fn is_empty(&self) -> bool {
        self.steps().is_empty()
    }

    /// `h_i` for `i = 1..=n`.
    fn heights(&self) -> Vec<u32> {
        heights_of(self.steps()).expect("path invariant")
    }

    /// Sum of the pre-step heights.
    fn area(&self) -> u64 {
        self.heights().iter().map(|&h| h as u64).sum()
    }

    /// Largest height reached after any step.
    fn max_height(&self) -> u32 {
        let mut h = 0i64;
        let mut best = 0;
        for s in self.steps() {
            h += s.delta();
            best = best.max(h);
        }
        best as u32
    }

    fn count(&self, step: Step) -> usize {
        self.steps().iter().filter(|&&s| s == step).count()
    }
}

/// A 2-Motzkin path over `{N, S, E, dE}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoMotzkinPath {
    steps: Vec<Step>,
}

impl TwoMotzkinPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let h = heights_of(&steps).ok_or_else(|| Error::BadPath(text_of(&steps)))?;
        if let Some(i) = (0..steps.len()).find(|&i| steps[i] == Step::DE && h[i] == 0) {
            return Err(Error::BadPath(format!("dotted east step {} at height 0", i + 1)));
        }
        Ok(TwoMotzkinPath { steps })
    }

    /// Forgets the difference between `E` and `dE`.
    pub fn shape(&self) -> MotzkinPath {
        let steps = self.steps.iter().map(|&s| if s == Step::DE { Step::E } else { s }).collect();
        MotzkinPath { steps }
    }
}

impl LatticePath for TwoMotzkinPath {
    fn steps(&self) -> &[Step] {
        &self.steps
    }
}

/// A Motzkin path over `{N, S, E}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotzkinPath {
    steps: Vec<Step>,
}

impl MotzkinPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.contains(&Step::DE) {
            return Err(Error::BadPath("dotted east step in a Motzkin path".into()));
        }
        heights_of(&steps).ok_or_else(|| Error::BadPath(text_of(&steps)))?;
        Ok(MotzkinPath { steps })
    }

    pub fn flat(n: usize) -> Self {
        MotzkinPath { steps: vec![Step::E; n] }
    }
}

impl LatticePath for MotzkinPath {
    fn steps(&self) -> &[Step] {
        &self.steps
    }
}

fn text_of(steps: &[Step]) -> String {
    steps.iter().map(|s| s.letter()).collect()
}

macro_rules! path_text {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&text_of(&self.steps))
            }
        }

        impl FromStr for $t {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Self::new(parse_steps(s)?)
            }
        }

        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serializer.serialize_str(&self.to_string())
            }
        }
    };
}

path_text!(TwoMotzkinPath);
path_text!(MotzkinPath);

/// A 2-Motzkin path with labels `0 <= p_i <= h_i` on `N`, `E` steps and
/// `0 <= p_i <= h_i - 1` on `S`, `dE` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaguerreHistory {
    path: TwoMotzkinPath,
    labels: Vec<u32>,
}

fn label_bound(step: Step, h: u32) -> u32 {
    match step {
        Step::N | Step::E => h + 1,
        Step::S | Step::DE => h,
    }
}

impl LaguerreHistory {
    pub fn new(path: TwoMotzkinPath, labels: Vec<u32>) -> Result<Self> {
        if labels.len() != path.len() {
            return Err(Error::SizeMismatch { left: labels.len(), right: path.len() });
        }
        let h = path.heights();
        for (i, (&s, &p)) in path.steps.iter().zip(&labels).enumerate() {
            if p >= label_bound(s, h[i]) {
                return Err(Error::BadPath(format!("label {p} too large at step {}", i + 1)));
            }
        }
        Ok(LaguerreHistory { path, labels })
    }

    pub fn path(&self) -> &TwoMotzkinPath {
        &self.path
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn shape(&self) -> &TwoMotzkinPath {
        &self.path
    }
}

impl Serialize for LaguerreHistory {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LaguerreHistory", 2)?;
        st.serialize_field("steps", &self.path.to_string())?;
        st.serialize_field("labels", &self.labels)?;
        st.end()
    }
}

impl fmt::Display for LaguerreHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (", self.path)?;
        for (k, p) in self.labels.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

fn check_index(p: &Permutation, i: usize) -> Result<()> {
    if i == 0 || i > p.len() {
        Err(Error::IndexOutOfRange { index: i, n: p.len() })
    } else {
        Ok(())
    }
}

fn classify_with_inverse(p: &Permutation, inv: &Permutation, i: usize) -> CyclicClass {
    let i = i as u32;
    let (before, after) = (inv.at(i as usize), p.at(i as usize));
    if after == i {
        CyclicClass::Fixed
    } else if before < i && after < i {
        CyclicClass::Peak
    } else if before > i && after > i {
        CyclicClass::Valley
    } else if before < i {
        CyclicClass::DoubleAscent
    } else {
        CyclicClass::DoubleDescent
    }
}

pub fn cyclic_classify(p: &Permutation, i: usize) -> Result<CyclicClass> {
    check_index(p, i)?;
    Ok(classify_with_inverse(p, &p.inverse(), i))
}

fn nest_unchecked(w: &[u32], i: usize) -> u32 {
    // 0-based position k holds sigma(k + 1)
    let k = i - 1;
    let (pos, val) = (i as u32, w[k]);
    let left = w[..k].iter().filter(|&&vj| pos < val && val < vj).count();
    let right = w[k + 1..].iter().filter(|&&vj| vj < val && val <= pos).count();
    (left + right) as u32
}

/// `nest_i(p) = #{j : j < i < p(i) < p(j) or p(j) < p(i) <= i < j}`.
pub fn nest_at(p: &Permutation, i: usize) -> Result<u32> {
    check_index(p, i)?;
    Ok(nest_unchecked(p.window(), i))
}

pub fn nest(p: &Permutation) -> u64 {
    (1..=p.len()).map(|i| nest_unchecked(p.window(), i) as u64).sum()
}

pub fn phi_fz(p: &Permutation) -> LaguerreHistory {
    let inv = p.inverse();
    let steps = (1..=p.len()).map(|i| classify_with_inverse(p, &inv, i).step()).collect();
    let labels = (1..=p.len()).map(|i| nest_unchecked(p.window(), i)).collect();
    LaguerreHistory { path: TwoMotzkinPath { steps }, labels }
}

pub fn phi_pet(p: &Permutation) -> MotzkinPath {
    phi_fz(p).path.shape()
}

/// Number of labelings of the path's steps: `h + 1` for `N`, `h` for `S`
/// and `2h + 1` for `E`, which counts the `E` and `dE` labelings together.
pub fn path_weight(path: &MotzkinPath) -> Result<u64> {
    let mut w = 1u64;
    for (&s, h) in path.steps.iter().zip(path.heights()) {
        let h = h as u64;
        let f = match s {
            Step::N => h + 1,
            Step::S => h,
            _ => 2 * h + 1,
        };
        w = w.checked_mul(f).ok_or_else(|| Error::Domain(format!("weight of {path} overflows")))?;
    }
    Ok(w)
}

/// The height-at-most-one path with `N` at the odd-ranked and `S` at the
/// even-ranked elements of `subset`.
pub fn even_subset_to_path(subset: &[usize], n: usize) -> Result<MotzkinPath> {
    if subset.len() % 2 == 1 {
        return Err(Error::OddSubset(subset.len()));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let mut steps = vec![Step::E; n];
    for (k, &e) in sorted.iter().enumerate() {
        if e == 0 || e > n || (k > 0 && sorted[k - 1] == e) {
            return Err(Error::BadSubset { element: e, n });
        }
        steps[e - 1] = if k % 2 == 0 { Step::N } else { Step::S };
    }
    Ok(MotzkinPath { steps })
}

fn extend_paths(alphabet: &[Step], n: usize, prefix: &mut Vec<Step>, h: usize, out: &mut Vec<Vec<Step>>) {
    let rest = n - prefix.len();
    if rest == 0 {
        out.push(prefix.clone());
        return;
    }
    for &s in alphabet {
        let next = match s {
            Step::N if h < rest - 1 => h + 1,
            Step::S if h > 0 => h - 1,
            Step::E if h < rest => h,
            Step::DE if h > 0 && h < rest => h,
            _ => continue,
        };
        prefix.push(s);
        extend_paths(alphabet, n, prefix, next, out);
        prefix.pop();
    }
}

/// All Motzkin paths of length `n`, in lexicographic order of `N < S < E`.
pub fn motzkin_paths(n: usize) -> Vec<MotzkinPath> {
    let mut out = Vec::new();
    extend_paths(&[Step::N, Step::S, Step::E], n, &mut Vec::new(), 0, &mut out);
    out.into_iter().map(|steps| MotzkinPath { steps }).collect()
}

/// All 2-Motzkin paths of length `n` whose `dE` steps lie above height zero.
pub fn two_motzkin_paths(n: usize) -> Vec<TwoMotzkinPath> {
    let mut out = Vec::new();
    extend_paths(&[Step::N, Step::S, Step::E, Step::DE], n, &mut Vec::new(), 0, &mut out);
    out.into_iter().map(|steps| TwoMotzkinPath { steps }).collect()
}

/// Every restricted Laguerre history of length `n`.
pub fn laguerre_histories(n: usize) -> Vec<LaguerreHistory> {
    let mut out = Vec::new();
    for path in two_motzkin_paths(n) {
        let bounds: Vec<u32> = path.steps.iter().zip(path.heights()).map(|(&s, h)| label_bound(s, h)).collect();
        let mut labels = vec![0u32; n];
        'next: loop {
            out.push(LaguerreHistory { path: path.clone(), labels: labels.clone() });
            // odometer over the label ranges
            for k in (0..n).rev() {
                labels[k] += 1;
                if labels[k] < bounds[k] {
                    continue 'next;
                }
                labels[k] = 0;
            }
            break;
        }
    }
    out
}
