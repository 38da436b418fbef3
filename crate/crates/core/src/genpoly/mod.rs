//! Exact generating polynomials over the groups, computed by parallel
//! enumeration, and the closed forms they are compared against.

pub mod mad;
pub mod poly;
pub mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

pub use mad::{mad, DescentBlockDecomposition};
pub use poly::{exponents, parse_poly, q_integer, Exponents, MultiPoly, TermCounter, Var};
pub use series::TruncatedSeries;

use crate::enumerate::{ElementSpace, Group, PermutationSpace, SignedSpace};
use crate::error::{Error, Result};
use crate::laguerre::{LatticePath, MotzkinPath, Step};
use crate::perm::Permutation;

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn mono(pairs: &[(Var, u64)]) -> Exponents {
    let mut e = [0u32; 4];
    for &(v, k) in pairs {
        e[v as usize] += k as u32;
    }
    e
}

/// `sum_{S_n} weight(p) * monomial(p)`, accumulated in parallel.
fn enumerate_s<F>(n: usize, term: F) -> Result<MultiPoly>
where
    F: Fn(&Permutation) -> (Exponents, i64) + Sync + Send,
{
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let space = PermutationSpace::symmetric(n)?;
    Ok(space
        .par_fold(
            TermCounter::new,
            |acc, p| {
                let (e, c) = term(&p);
                acc.add(e, c);
            },
            TermCounter::merge,
        )
        .into_poly())
}

/// `1 - monomial(e)`.
pub fn one_minus(e: Exponents) -> MultiPoly {
    &MultiPoly::one() - &MultiPoly::monomial(e, 1)
}

/// `sum_{S_n} (-1)^inv t^exc p^depth q^drops`.
pub fn signed_trivariate(n: usize) -> Result<MultiPoly> {
    enumerate_s(n, |p| {
        let s = p.stats();
        (mono(&[(Var::T, s.exc), (Var::P, s.depth), (Var::Q, s.drops)]), sign(s.inv % 2 == 1))
    })
}

/// Signed drops enumerator of `S_n`, `B_n` or `D_n`, each with its own
/// length function and drops statistic.
pub fn signed_drops(group: Group, n: usize) -> Result<MultiPoly> {
    match group {
        Group::S => enumerate_s(n, |p| (mono(&[(Var::Q, p.drops())]), sign(p.inv() % 2 == 1))),
        Group::B => {
            let space = SignedSpace::type_b(n)?;
            Ok(space
                .par_fold(
                    TermCounter::new,
                    |acc, s| acc.add(mono(&[(Var::Q, s.drops_b())]), sign(s.inv_b() % 2 == 1)),
                    TermCounter::merge,
                )
                .into_poly())
        }
        Group::D => {
            let space = SignedSpace::type_d(n)?;
            Ok(space
                .par_fold(
                    TermCounter::new,
                    |acc, s| {
                        let d = s.drops_d().expect("n >= 2 in D_n");
                        acc.add(mono(&[(Var::Q, d)]), sign(s.inv_d() % 2 == 1));
                    },
                    TermCounter::merge,
                )
                .into_poly())
        }
        Group::A => Err(Error::Domain("signed drops enumerator is defined for S, B and D".into())),
    }
}

/// The two type-D auxiliary sums `sum (-1)^{inv_D} q^zdrops` over `B_n - D_n`
/// and over `D_n`, in that order.
pub fn zdrops_sums(n: usize) -> Result<(MultiPoly, MultiPoly)> {
    let space = SignedSpace::type_b(n)?;
    if n < 2 {
        return Err(Error::Domain("zdrops sums need n >= 2".into()));
    }
    let (odd, even) = space.par_fold(
        || (TermCounter::new(), TermCounter::new()),
        |(odd, even), s| {
            let target = if s.is_type_d() { even } else { odd };
            target.add(mono(&[(Var::Q, s.zdrops())]), sign(s.inv_d() % 2 == 1));
        },
        |(a, b), (c, d)| (a.merge(c), b.merge(d)),
    );
    Ok((odd.into_poly(), even.into_poly()))
}

/// `F_n(x, q) = sum_{S_n} x^depth q^inv`, with `F_0 = 1`.
pub fn dep_inv_poly(n: usize) -> Result<MultiPoly> {
    enumerate_s(n, |p| (mono(&[(Var::X, p.depth()), (Var::Q, p.inv())]), 1))
}

/// `sum_{S_n} x^drops q^mad`.
pub fn drops_mad_poly(n: usize) -> Result<MultiPoly> {
    enumerate_s(n, |p| (mono(&[(Var::X, p.drops()), (Var::Q, mad(p))]), 1))
}

/// `sum_{S_n} q^depth t^exc`.
pub fn depth_exc_poly(n: usize) -> Result<MultiPoly> {
    enumerate_s(n, |p| (mono(&[(Var::Q, p.depth()), (Var::T, p.exc())]), 1))
}

/// `sum_{S_n} q^drops t^des`.
pub fn drops_des_poly(n: usize) -> Result<MultiPoly> {
    enumerate_s(n, |p| (mono(&[(Var::Q, p.drops()), (Var::T, p.des())]), 1))
}

pub fn bivariate_identity_check(n: usize) -> Result<bool> {
    Ok(depth_exc_poly(n)? == drops_des_poly(n)?)
}

fn xq_power(k: u32) -> Exponents {
    [0, 0, k, k]
}

/// Level coefficient `c_k = x^k q^k ([k]_q + [k+1]_q)`.
pub fn jfraction_c(k: u32) -> MultiPoly {
    (&q_integer(k) + &q_integer(k + 1)).shift(xq_power(k))
}

/// Level coefficient `b_{k+1} = x^{2k+1} q^{2k+1} [k+1]_q^2`.
pub fn jfraction_b(k: u32) -> MultiPoly {
    q_integer(k + 1).pow(2).shift(xq_power(2 * k + 1))
}

/// The J-fraction `1 / (1 - c_0 t - b_1 t^2 / (1 - c_1 t - ...))` expanded to
/// `t^order`, evaluated bottom-up from `order + 1` levels with tail `1`.
pub fn jfraction_convergent(order: usize) -> Result<TruncatedSeries> {
    let depth = order as u32 + 1;
    let mut tail = TruncatedSeries::one(order);
    for k in (0..depth).rev() {
        let c = TruncatedSeries::term(order, 1, jfraction_c(k));
        let b = TruncatedSeries::term(order, 2, jfraction_b(k));
        let denom = &(&TruncatedSeries::one(order) - &c) - &(&b * &tail);
        tail = denom.reciprocal()?;
    }
    Ok(tail)
}

/// `sum q^inv x^dep` over the permutations whose Motzkin shape is `path`,
/// by the product formula over its steps.
pub fn per_path_enumerator(path: &MotzkinPath) -> MultiPoly {
    let mut out = MultiPoly::one();
    for (&s, h) in path.steps().iter().zip(path.heights()) {
        let f = match s {
            Step::N => q_integer(h + 1),
            Step::S => q_integer(h),
            _ => &q_integer(h) + &q_integer(h + 1),
        };
        out = &out * &f.shift(xq_power(h));
    }
    out
}

/// Exact mean and variance of a statistic under the uniform distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Moments {
    #[serde(serialize_with = "ser_ratio")]
    pub mean: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub variance: BigRational,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Moments {
    /// From `counts[d] = #{elements with statistic d}`.
    pub fn from_counts(counts: &[u64]) -> Moments {
        let total: BigInt = counts.iter().map(|&c| BigInt::from(c)).sum();
        let mut s1 = BigInt::from(0);
        let mut s2 = BigInt::from(0);
        for (d, &c) in counts.iter().enumerate() {
            let d = BigInt::from(d);
            s1 += &d * c;
            s2 += &d * &d * c;
        }
        let mean = BigRational::new(s1, total.clone());
        let second = BigRational::new(s2, total);
        let variance = second - &mean * &mean;
        Moments { mean, variance }
    }
}

/// `counts[d]` = number of elements of `S_n` or `A_n` with `d` drops.
pub fn drops_distribution(group: Group, n: usize) -> Result<Vec<u64>> {
    let space = match group {
        Group::S | Group::A => PermutationSpace::new(group, n)?,
        _ => return Err(Error::Domain("drops moments are defined over S and A".into())),
    };
    let max = n * n / 2 + 1;
    Ok(space.par_fold(
        || vec![0u64; max],
        |acc, p| acc[p.drops() as usize] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    ))
}

pub fn drops_moments(group: Group, n: usize) -> Result<Moments> {
    Ok(Moments::from_counts(&drops_distribution(group, n)?))
}
