//! Exhaustive checks of the enumerative identities, one claim at a time.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bruhat::{build_matching, validate_matching};
use crate::enumerate::{ElementSpace, Group, PermutationSpace, SignedSpace};
use crate::error::{Error, Result};
use crate::genpoly::{
    bivariate_identity_check, depth_exc_poly, dep_inv_poly, drops_des_poly, drops_mad_poly, drops_moments,
    jfraction_convergent, one_minus, per_path_enumerator, signed_drops, signed_trivariate, zdrops_sums, MultiPoly,
    TermCounter,
};
use crate::involutions::{f_a, fixed_points, g_b};
use crate::laguerre::{even_subset_to_path, motzkin_paths, nest, path_weight, phi_fz, phi_pet, LatticePath, MotzkinPath, Step};
use crate::perm::{Permutation, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    Bivariate,
    SignedTrivariate,
    SignedDrops,
    TypeB,
    TypeD,
    ContinuedFraction,
    Mad,
    Weights,
    Shape,
    Moments,
    ZdropsSums,
    Laguerre,
    Involutions,
    Matching,
}

impl Claim {
    pub const ALL: [Claim; 14] = [
        Claim::Bivariate,
        Claim::SignedTrivariate,
        Claim::SignedDrops,
        Claim::TypeB,
        Claim::TypeD,
        Claim::ContinuedFraction,
        Claim::Mad,
        Claim::Weights,
        Claim::Shape,
        Claim::Moments,
        Claim::ZdropsSums,
        Claim::Laguerre,
        Claim::Involutions,
        Claim::Matching,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Bivariate => "thm1.1",
            Claim::SignedTrivariate => "thm1.3",
            Claim::SignedDrops => "cor1.4",
            Claim::TypeB => "thm-typeB",
            Claim::TypeD => "thm-typeD",
            Claim::ContinuedFraction => "cfrac",
            Claim::Mad => "mad",
            Claim::Weights => "weights",
            Claim::Shape => "shape",
            Claim::Moments => "moments",
            Claim::ZdropsSums => "lemma7.2",
            Claim::Laguerre => "fz",
            Claim::Involutions => "invol",
            Claim::Matching => "match",
        }
    }

    /// Group the claim is checked over when none is given.
    pub fn default_group(self) -> Group {
        match self {
            Claim::TypeB => Group::B,
            Claim::TypeD | Claim::ZdropsSums => Group::D,
            _ => Group::S,
        }
    }

    /// Groups the claim can be checked over.
    pub fn groups(self) -> &'static [Group] {
        match self {
            Claim::Involutions | Claim::Matching => &[Group::S, Group::B],
            Claim::Moments => &[Group::S, Group::A],
            _ => match self.default_group() {
                Group::B => &[Group::B],
                Group::D => &[Group::D],
                _ => &[Group::S],
            },
        }
    }

    fn n_range(self, group: Group) -> (usize, usize) {
        match (self, group) {
            (Claim::Matching, Group::S) => (2, 8),
            (Claim::Matching, _) => (1, 5),
            (Claim::Moments, Group::A) => (2, 10),
            (Claim::ContinuedFraction, _) => (0, 9),
            (_, Group::B) => (1, 7),
            (_, Group::D) => (2, 7),
            _ => (1, 10),
        }
    }

    /// Default scale: `S_8`, `B_6`, `D_6`.
    pub fn default_n(self, group: Group) -> usize {
        match group {
            Group::S | Group::A => 8,
            _ if self == Claim::Matching => 4,
            _ => 6,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "");
        Claim::ALL
            .into_iter()
            .find(|c| c.id().to_ascii_lowercase().replace('-', "") == key)
            .ok_or_else(|| Error::Domain(format!("unknown claim {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub group: char,
    pub n: usize,
    pub status: Status,
    /// First counterexample, present exactly when the check failed.
    pub witness: Option<String>,
    pub elapsed_ms: u64,
    pub elements: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of one check: `Ok(())` or the first witness against it.
type Check = std::result::Result<(), String>;

fn expect_eq(got: &MultiPoly, expected: &MultiPoly, what: &str) -> Check {
    if got == expected {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {expected}"))
    }
}

fn first_failure<S, P>(space: &S, pred: P) -> Check
where
    S: ElementSpace,
    S::Elem: fmt::Display,
    P: Fn(&S::Elem) -> bool + Sync + Send,
{
    match space.par_find_first(|e| !pred(e)) {
        Some(e) => Err(e.to_string()),
        None => Ok(()),
    }
}

pub fn verify(claim: Claim, group: Group, n: usize) -> Result<VerificationReport> {
    if !claim.groups().contains(&group) {
        return Err(Error::Domain(format!("claim {claim} is not stated over {}", group.letter())));
    }
    let (lo, hi) = claim.n_range(group);
    if n < lo || n > hi {
        return Err(Error::Domain(format!("claim {claim} over {} supports {lo} <= n <= {hi}, got {n}", group.letter())));
    }
    let start = Instant::now();
    let (outcome, elements) = run(claim, group, n)?;
    let status = if outcome.is_ok() { Status::Pass } else { Status::Fail };
    Ok(VerificationReport {
        claim: claim.id().to_string(),
        group: group.letter(),
        n,
        status,
        witness: outcome.err(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        elements,
    })
}

fn run(claim: Claim, group: Group, n: usize) -> Result<(Check, u64)> {
    let q = [0, 0, 1, 0];
    let order = group.order(n.max(1))?;
    let outcome = match claim {
        Claim::Bivariate => {
            if bivariate_identity_check(n)? {
                Ok(())
            } else {
                let diff = &depth_exc_poly(n)? - &drops_des_poly(n)?;
                Err(format!("(depth, exc) - (drops, des) = {diff}"))
            }
        }
        Claim::SignedTrivariate => {
            let got = signed_trivariate(n)?;
            expect_eq(&got, &one_minus([1, 1, 1, 0]).pow(n as u32 - 1), "signed trivariate")
        }
        Claim::SignedDrops => check_signed_drops(n),
        Claim::TypeB => expect_eq(&signed_drops(Group::B, n)?, &one_minus(q).pow(n as u32), "type B"),
        Claim::TypeD => {
            let expected = &one_minus([0, 0, 3, 0]) * &one_minus(q).pow(n as u32 - 1);
            expect_eq(&signed_drops(Group::D, n)?, &expected, "type D")
        }
        Claim::ZdropsSums => {
            let (odd, even) = zdrops_sums(n)?;
            expect_eq(&odd, &MultiPoly::zero(), "sum over B_n - D_n")
                .and_then(|_| expect_eq(&even, &MultiPoly::zero(), "sum over D_n"))
        }
        Claim::ContinuedFraction => check_cfrac(n)?,
        Claim::Mad => check_mad(n)?,
        Claim::Weights => check_weights(n)?,
        Claim::Shape => {
            let space = PermutationSpace::symmetric(n)?;
            first_failure(&space, |p| phi_pet(p) == phi_pet(&f_a(p).output))
        }
        Claim::Moments => check_moments(group, n)?,
        Claim::Laguerre => check_laguerre(n)?,
        Claim::Involutions => check_involutions(group, n)?,
        Claim::Matching => check_matching(group, n)?,
    };
    let elements = match claim {
        Claim::ContinuedFraction => (0..=n).map(|k| Group::S.order(k.max(1))).sum::<Result<u64>>()?,
        Claim::ZdropsSums => Group::B.order(n)?,
        Claim::Moments if group == Group::A => order + Group::S.order(n)?,
        _ => order,
    };
    Ok((outcome, elements))
}

fn check_signed_drops(n: usize) -> Check {
    let one_minus_q = one_minus([0, 0, 1, 0]);
    let expected = one_minus_q.pow(n as u32 - 1);
    let got = signed_drops(Group::S, n).map_err(|e| e.to_string())?;
    expect_eq(&got, &expected, "signed drops")?;
    let tri = signed_trivariate(n).map_err(|e| e.to_string())?;
    let at_t = tri.at_one(crate::genpoly::Var::T);
    expect_eq(&at_t.at_one(crate::genpoly::Var::P), &expected, "trivariate at t = p = 1")?;
    // q^depth specialisation: move the p exponent onto q
    let depth_side = at_t.at_one(crate::genpoly::Var::Q);
    let mut relabelled = MultiPoly::zero();
    for (e, c) in depth_side.terms() {
        relabelled.add_term([0, 0, e[1], 0], c.clone());
    }
    expect_eq(&relabelled, &expected, "trivariate at t = q = 1")
}

fn check_cfrac(n: usize) -> Result<Check> {
    let series = jfraction_convergent(n)?;
    for k in 0..=n {
        if let Err(w) = expect_eq(series.coefficient(k), &dep_inv_poly(k)?, &format!("coefficient of t^{k}")) {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

/// Per-shape sums of `x^dep q^inv` over `S_n`.
fn preimage_enumerators(n: usize) -> Result<HashMap<MotzkinPath, MultiPoly>> {
    let space = PermutationSpace::symmetric(n)?;
    let map = space.par_fold(
        HashMap::<MotzkinPath, TermCounter>::new,
        |acc, p| acc.entry(phi_pet(&p)).or_default().add([0, 0, p.inv() as u32, p.depth() as u32], 1),
        |mut a, b| {
            for (k, v) in b {
                let slot = a.remove(&k).unwrap_or_default();
                a.insert(k, slot.merge(v));
            }
            a
        },
    );
    Ok(map.into_iter().map(|(k, v)| (k, v.into_poly())).collect())
}

fn check_mad(n: usize) -> Result<Check> {
    if let Err(w) = expect_eq(&drops_mad_poly(n)?, &dep_inv_poly(n)?, "(drops, mad) enumerator") {
        return Ok(Err(w));
    }
    let sums = preimage_enumerators(n)?;
    for path in motzkin_paths(n) {
        let got = sums.get(&path).cloned().unwrap_or_default();
        if let Err(w) = expect_eq(&got, &per_path_enumerator(&path), &format!("preimage of {path}")) {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

fn check_weights(n: usize) -> Result<Check> {
    let space = PermutationSpace::symmetric(n)?;
    let counts = space.par_fold(
        HashMap::<MotzkinPath, u64>::new,
        |acc, p| *acc.entry(phi_pet(&p)).or_insert(0) += 1,
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let paths = motzkin_paths(n);
    let mut total = 0u64;
    for path in &paths {
        let w = path_weight(path)?;
        let c = counts.get(path).copied().unwrap_or(0);
        if w != c {
            return Ok(Err(format!("{path}: weight {w}, preimages {c}")));
        }
        if (w % 2 == 1) != (path.max_height() <= 1) {
            return Ok(Err(format!("{path}: weight parity")));
        }
        total += w;
    }
    if total != space.len() {
        return Ok(Err(format!("total weight {total} != {}", space.len())));
    }
    let low: Vec<&MotzkinPath> = paths.iter().filter(|p| p.max_height() <= 1).collect();
    if low.len() as u64 != 1 << (n - 1) {
        return Ok(Err(format!("{} paths of height <= 1", low.len())));
    }
    let mut from_subsets = Vec::new();
    for mask in 0u32..1 << n {
        let subset: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect();
        if subset.len() % 2 == 0 {
            from_subsets.push(even_subset_to_path(&subset, n)?);
        }
    }
    from_subsets.sort();
    from_subsets.dedup();
    let mut low_sorted: Vec<MotzkinPath> = low.into_iter().cloned().collect();
    low_sorted.sort();
    if from_subsets != low_sorted {
        return Ok(Err("even subsets do not biject onto height <= 1 paths".into()));
    }
    let mut images: Vec<MotzkinPath> = fixed_points::<Permutation>(n).map(|p| phi_pet(&p)).collect();
    images.sort();
    images.dedup();
    if images != low_sorted {
        return Ok(Err("fixed points do not biject onto height <= 1 paths".into()));
    }
    Ok(Ok(()))
}

fn check_moments(group: Group, n: usize) -> Result<Check> {
    let s = drops_moments(Group::S, n)?;
    let expected_mean = BigRational::new(BigInt::from(n * n) - 1, BigInt::from(6));
    if s.mean != expected_mean {
        return Ok(Err(format!("mean over S_{n} is {}, expected {expected_mean}", s.mean)));
    }
    if group == Group::A && n >= 4 {
        let a = drops_moments(Group::A, n)?;
        if a != s {
            return Ok(Err(format!(
                "A_{n}: mean {} variance {}; S_{n}: mean {} variance {}",
                a.mean, a.variance, s.mean, s.variance
            )));
        }
    }
    Ok(Ok(()))
}

fn check_laguerre(n: usize) -> Result<Check> {
    let space = PermutationSpace::symmetric(n)?;
    let per_element = first_failure(&space, |p| {
        let h = phi_fz(p);
        let area = h.path().area();
        let iexc = (h.path().count(Step::N) + h.path().count(Step::DE)) as u64;
        crate::laguerre::LaguerreHistory::new(h.path().clone(), h.labels().to_vec()).is_ok()
            && p.depth() == area
            && p.inv() == area + nest(p)
            && p.iexc() == iexc
    });
    if per_element.is_err() {
        return Ok(per_element);
    }
    let mut images: Vec<_> = space.iter().map(|p| phi_fz(&p)).collect();
    images.sort();
    images.dedup();
    if images.len() as u64 != space.len() {
        return Ok(Err(format!("only {} distinct histories", images.len())));
    }
    let mut all = crate::laguerre::laguerre_histories(n);
    all.sort();
    if all != images {
        return Ok(Err("image differs from the set of restricted Laguerre histories".into()));
    }
    Ok(Ok(()))
}

fn check_involutions(group: Group, n: usize) -> Result<Check> {
    if group == Group::B {
        let space = SignedSpace::type_b(n)?;
        let bad = first_failure(&space, |s: &SignedPermutation| {
            let r = g_b(s);
            let back = g_b(&r.output);
            back.output == *s
                && r.output.drops_b() == s.drops_b()
                && (r.fixed || r.output.inv_b() % 2 != s.inv_b() % 2)
        });
        let fixed = space.iter().filter(|s| g_b(s).fixed).count() as u64;
        return Ok(bad.and_then(|_| {
            if fixed == 1 << n {
                Ok(())
            } else {
                Err(format!("{fixed} fixed points"))
            }
        }));
    }
    let space = PermutationSpace::symmetric(n)?;
    let bad = first_failure(&space, |p: &Permutation| {
        let r = f_a(p);
        let back = f_a(&r.output);
        let same_stats = r.output.drops() == p.drops() && r.output.depth() == p.depth() && r.output.iexc() == p.iexc();
        let bounds = match (r.changed_factor_index, r.transposition) {
            (Some(i), Some((a, b))) => {
                let (a, b) = (a.min(b), a.max(b));
                a as usize >= i + 1 && b as usize >= i + 2
            }
            _ => r.fixed,
        };
        back.output == *p && same_stats && bounds && (r.fixed || r.output.inv() % 2 != p.inv() % 2)
    });
    let fixed = space.iter().filter(|p| f_a(p).fixed).count() as u64;
    Ok(bad.and_then(|_| {
        if fixed == 1 << (n - 1) {
            Ok(())
        } else {
            Err(format!("{fixed} fixed points"))
        }
    }))
}

fn check_matching(group: Group, n: usize) -> Result<Check> {
    let report = if group == Group::B {
        validate_matching(&build_matching::<SignedPermutation>(n)?, n)?
    } else {
        validate_matching(&build_matching::<Permutation>(n)?, n)?
    };
    if report.is_valid() {
        return Ok(Ok(()));
    }
    let witness = report
        .violations
        .first()
        .map(|v| format!("{} -- {}: {}", v.lower, v.upper, v.reason))
        .or_else(|| report.uncovered.first().map(|e| format!("{e} uncovered")))
        .or_else(|| report.repeated.first().map(|e| format!("{e} covered twice")))
        .unwrap_or_default();
    Ok(Err(witness))
}

/// Every claim at its default group and scale.
pub fn default_suite() -> Vec<(Claim, Group, usize)> {
    let mut out = Vec::new();
    for claim in Claim::ALL {
        for &g in claim.groups() {
            out.push((claim, g, claim.default_n(g)));
        }
    }
    out
}
