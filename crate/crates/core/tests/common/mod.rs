//! Brute-force reference implementations used by the integration tests.
//! Everything here works on plain vectors and is written straight from the
//! definitions, independently of the library code.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use coxdrops::genpoly::MultiPoly;
use num_traits::ToPrimitive;

/// All permutations of `1..=n` in lexicographic order.
pub fn perms(n: usize) -> Vec<Vec<i64>> {
    fn go(n: usize, used: &mut Vec<bool>, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v as i64);
                go(n, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

/// All signed permutations of rank `n`, every sign pattern of every permutation.
pub fn signed_perms(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for p in perms(n) {
        for mask in 0u32..1 << n {
            out.push(p.iter().enumerate().map(|(k, &v)| if mask >> k & 1 == 1 { -v } else { v }).collect());
        }
    }
    out
}

pub fn inv(w: &[i64]) -> u64 {
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

/// Pairs `i < j` with `w_i + w_j < 0`.
pub fn neg_sum_pairs(w: &[i64]) -> u64 {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] + w[j] < 0 {
                c += 1;
            }
        }
    }
    c
}

pub fn negs(w: &[i64]) -> u64 {
    w.iter().filter(|&&v| v < 0).count() as u64
}

pub fn inv_b(w: &[i64]) -> u64 {
    inv(w) + neg_sum_pairs(w) + negs(w)
}

pub fn inv_d(w: &[i64]) -> u64 {
    inv(w) + neg_sum_pairs(w)
}

pub fn des(w: &[i64]) -> u64 {
    w.windows(2).filter(|p| p[0] > p[1]).count() as u64
}

pub fn gaps(w: &[i64]) -> u64 {
    w.windows(2).map(|p| (p[0] - p[1]).max(0) as u64).sum()
}

pub fn drops(w: &[i64]) -> u64 {
    gaps(w)
}

pub fn drops_b(w: &[i64]) -> u64 {
    let mut v = vec![0];
    v.extend_from_slice(w);
    gaps(&v)
}

pub fn drops_d(w: &[i64]) -> u64 {
    let mut v = vec![-w[1]];
    v.extend_from_slice(w);
    gaps(&v)
}

pub fn zdrops(w: &[i64]) -> u64 {
    gaps(w)
}

pub fn exc(w: &[i64]) -> u64 {
    w.iter().enumerate().filter(|(i, &v)| v > *i as i64 + 1).count() as u64
}

pub fn depth(w: &[i64]) -> u64 {
    w.iter().enumerate().map(|(i, &v)| (v - (i as i64 + 1)).max(0) as u64).sum()
}

pub fn inverse(w: &[i64]) -> Vec<i64> {
    let mut out = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        out[v as usize - 1] = i as i64 + 1;
    }
    out
}

pub fn iexc(w: &[i64]) -> u64 {
    exc(&inverse(w))
}

pub fn nest(w: &[i64]) -> u64 {
    let n = w.len();
    let mut c = 0;
    for i in 1..=n {
        let si = w[i - 1];
        for j in 1..=n {
            let sj = w[j - 1];
            let i = i as i64;
            let j = j as i64;
            if (j < i && i < si && si < sj) || (sj < si && si <= i && i < j) {
                c += 1;
            }
        }
    }
    c
}

/// Maximal decreasing runs and their right embracing numbers.
pub fn mad(w: &[i64]) -> u64 {
    let mut blocks: Vec<Vec<i64>> = Vec::new();
    for &v in w {
        if blocks.last().is_some_and(|b| *b.last().unwrap() > v) {
            blocks.last_mut().unwrap().push(v);
        } else {
            blocks.push(vec![v]);
        }
    }
    let mut res = 0;
    for (k, b) in blocks.iter().enumerate() {
        for &v in b {
            res += blocks[k + 1..]
                .iter()
                .filter(|c| c.len() >= 2 && c[0] > v && v > *c.last().unwrap())
                .count() as u64;
        }
    }
    drops(w) + res
}

pub fn is_even(w: &[i64]) -> bool {
    inv(w) % 2 == 0
}

pub type Poly = BTreeMap<[u32; 4], i64>;

pub fn add(p: &mut Poly, e: [u32; 4], c: i64) {
    let slot = p.entry(e).or_insert(0);
    *slot += c;
    if *slot == 0 {
        p.remove(&e);
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, c) in a {
        for (f, d) in b {
            add(&mut out, [e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]], c * d);
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `(1 - m)^k` expanded by the binomial theorem, `m` a monomial.
pub fn one_minus_pow(m: [u32; 4], k: u64) -> Poly {
    let mut out = Poly::new();
    for j in 0..=k {
        let e = [m[0] * j as u32, m[1] * j as u32, m[2] * j as u32, m[3] * j as u32];
        add(&mut out, e, if j % 2 == 0 { 1 } else { -1 } * binomial(k, j));
    }
    out
}

pub fn poly_of(p: &MultiPoly) -> Poly {
    p.terms().map(|(e, c)| (*e, c.to_i64().expect("small coefficient"))).collect()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Right multiplication by `s_i`: `s_0` negates the first entry, `s_i`
/// swaps positions `i` and `i + 1`.
pub fn apply(w: &mut [i64], i: u32) {
    if i == 0 {
        w[0] = -w[0];
    } else {
        w.swap(i as usize - 1, i as usize);
    }
}

/// Every element below `v` in Bruhat order, by the subword property on a
/// reduced word of `v`.
pub fn subword_ideal(word: &[u32], n: usize) -> HashSet<Vec<i64>> {
    let mut out = HashSet::new();
    for mask in 0u64..1 << word.len() {
        let mut e: Vec<i64> = (1..=n as i64).collect();
        for (k, &g) in word.iter().enumerate() {
            if mask >> k & 1 == 1 {
                apply(&mut e, g);
            }
        }
        out.insert(e);
    }
    out
}

/// A reduced word found by bubble sorting to the identity (type A) or by
/// first clearing signs (type B); independent of the canonical word code.
pub fn some_reduced_word(w: &[i64]) -> Vec<u32> {
    let mut cur = w.to_vec();
    let mut letters = Vec::new();
    // sort by right multiplication; the letters read backwards give w
    loop {
        if let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
            apply(&mut cur, i as u32 + 1);
            letters.push(i as u32 + 1);
        } else if cur.first().is_some_and(|&v| v < 0) {
            apply(&mut cur, 0);
            letters.push(0);
        } else {
            break;
        }
    }
    letters.reverse();
    letters
}
