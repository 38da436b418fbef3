//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//! Every criterion is checked exactly, against brute-force references from
//! `common` wherever the library is not itself the object under test.

mod common;

use std::collections::{HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use coxdrops::bruhat::{build_matching, validate_matching, BruhatOrder};
use coxdrops::genpoly::{self, Var};
use coxdrops::involutions::{f_a, fixed_points, g_b};
use coxdrops::laguerre::{laguerre_histories, motzkin_paths, path_weight, phi_fz, phi_pet, LatticePath, MotzkinPath, Step};
use coxdrops::{ElementSpace, Group, Permutation, PermutationSpace, SignedPermutation, SignedSpace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn window(p: &Permutation) -> Vec<i64> {
    p.window().iter().map(|&v| v as i64).collect()
}

fn swindow(s: &SignedPermutation) -> Vec<i64> {
    s.window().iter().map(|&v| v as i64).collect()
}

fn to_perm(w: &[i64]) -> Permutation {
    Permutation::new(w.iter().map(|&v| v as u32).collect()).unwrap()
}

fn to_signed(w: &[i64]) -> SignedPermutation {
    SignedPermutation::new(w.iter().map(|&v| v as i32).collect()).unwrap()
}

/// `sum over the oracle's S_n of sign * monomial`.
fn oracle_sum(n: usize, f: impl Fn(&[i64]) -> ([u32; 4], i64)) -> Poly {
    let mut out = Poly::new();
    for w in perms(n) {
        let (e, c) = f(&w);
        add(&mut out, e, c);
    }
    out
}

fn sgn(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn criterion_1() -> Outcome {
    for n in 1..=8 {
        let got = poly_of(&genpoly::signed_trivariate(n).map_err(|e| e.to_string())?);
        let expected = one_minus_pow([1, 1, 1, 0], n as u64 - 1);
        ensure(got == expected, || format!("n = {n}: {got:?}"))?;
        if n <= 7 {
            let oracle = oracle_sum(n, |w| ([exc(w) as u32, depth(w) as u32, drops(w) as u32, 0], sgn(inv(w) % 2 == 1)));
            ensure(oracle == got, || format!("n = {n}: enumeration disagrees with the reference"))?;
        }
    }
    Ok("signed (exc, depth, drops) enumerator = (1-tpq)^(n-1), n <= 8".into())
}

fn criterion_2() -> Outcome {
    for n in 1..=8u64 {
        let tri = genpoly::signed_trivariate(n as usize).map_err(|e| e.to_string())?;
        let drops_side = poly_of(&tri.at_one(Var::T).at_one(Var::P));
        ensure(drops_side == one_minus_pow([0, 0, 1, 0], n - 1), || format!("q^drops at n = {n}"))?;
        let depth_side = poly_of(&tri.at_one(Var::T).at_one(Var::Q));
        ensure(depth_side == one_minus_pow([0, 1, 0, 0], n - 1), || format!("p^depth at n = {n}"))?;
        let exc_side = poly_of(&tri.at_one(Var::P).at_one(Var::Q));
        ensure(exc_side == one_minus_pow([1, 0, 0, 0], n - 1), || format!("t^exc at n = {n}"))?;
    }
    let s9 = poly_of(&genpoly::signed_drops(Group::S, 9).map_err(|e| e.to_string())?);
    ensure(s9 == one_minus_pow([0, 0, 1, 0], 8), || format!("S_9: {s9:?}"))?;
    Ok("specialisations of criterion 1 for n <= 8; signed drops over S_9 = (1-q)^8".into())
}

fn criterion_3() -> Outcome {
    for n in 1..=6 {
        let got = poly_of(&genpoly::signed_drops(Group::B, n).map_err(|e| e.to_string())?);
        ensure(got == one_minus_pow([0, 0, 1, 0], n as u64), || format!("n = {n}: {got:?}"))?;
        if n <= 4 {
            let mut oracle = Poly::new();
            for w in signed_perms(n) {
                add(&mut oracle, [0, 0, drops_b(&w) as u32, 0], sgn(inv_b(&w) % 2 == 1));
            }
            ensure(oracle == got, || format!("n = {n}: enumeration disagrees with the reference"))?;
        }
    }
    Ok("signed drops over B_n = (1-q)^n, n <= 6".into())
}

fn criterion_4() -> Outcome {
    for n in 2..=6u64 {
        let got = poly_of(&genpoly::signed_drops(Group::D, n as usize).map_err(|e| e.to_string())?);
        let expected = mul(&one_minus_pow([0, 0, 3, 0], 1), &one_minus_pow([0, 0, 1, 0], n - 1));
        ensure(got == expected, || format!("D_{n}: {got:?}"))?;
        let (odd, even) = genpoly::zdrops_sums(n as usize).map_err(|e| e.to_string())?;
        ensure(odd.is_zero(), || format!("sum over B_{n} - D_{n} is {odd}"))?;
        ensure(even.is_zero(), || format!("sum over D_{n} is {even}"))?;
        if n <= 4 {
            let (mut d, mut zo, mut ze) = (Poly::new(), Poly::new(), Poly::new());
            for w in signed_perms(n as usize) {
                let s = sgn(inv_d(&w) % 2 == 1);
                if negs(&w) % 2 == 0 {
                    add(&mut d, [0, 0, drops_d(&w) as u32, 0], s);
                    add(&mut ze, [0, 0, zdrops(&w) as u32, 0], s);
                } else {
                    add(&mut zo, [0, 0, zdrops(&w) as u32, 0], s);
                }
            }
            ensure(d == got && zo.is_empty() && ze.is_empty(), || format!("n = {n}: reference disagrees"))?;
        }
    }
    Ok("signed drops over D_n = (1-q^3)(1-q)^(n-1); both zdrops sums vanish, 2 <= n <= 6".into())
}

fn criterion_5() -> Outcome {
    for n in 1..=8 {
        let a = genpoly::depth_exc_poly(n).map_err(|e| e.to_string())?;
        let b = genpoly::drops_des_poly(n).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("n = {n}: {a} vs {b}"))?;
        if n <= 7 {
            let oracle = oracle_sum(n, |w| ([exc(w) as u32, 0, depth(w) as u32, 0], 1));
            ensure(oracle == poly_of(&a), || format!("n = {n}: reference disagrees"))?;
        }
    }
    Ok("(depth, exc) and (drops, des) equidistributed, n <= 8".into())
}

fn criterion_6() -> Outcome {
    let series = genpoly::jfraction_convergent(8).map_err(|e| e.to_string())?;
    for n in 0..=8 {
        let oracle = if n == 0 {
            Poly::from([([0, 0, 0, 0], 1)])
        } else {
            oracle_sum(n, |w| ([0, 0, inv(w) as u32, depth(w) as u32], 1))
        };
        ensure(poly_of(series.coefficient(n)) == oracle, || format!("coefficient of t^{n}: {}", series.coefficient(n)))?;
    }
    let t3 = genpoly::parse_poly("1 + 2*x*q + 2*x^2*q^2 + x^2*q^3").unwrap();
    ensure(*series.coefficient(3) == t3, || format!("t^3 coefficient {}", series.coefficient(3)))?;
    Ok("J-fraction coefficients = sum x^depth q^inv, 0 <= n <= 8".into())
}

fn criterion_7() -> Outcome {
    for n in 1..=8 {
        let space = PermutationSpace::symmetric(n).map_err(|e| e.to_string())?;
        let mut images = HashSet::new();
        for p in space.iter() {
            let w = window(&p);
            let h = phi_fz(&p);
            let area = h.path().area();
            ensure(depth(&w) == area, || format!("{p}: depth {} area {area}", depth(&w)))?;
            ensure(inv(&w) == area + nest(&w), || format!("{p}: inv != area + nest"))?;
            let ne = (h.path().count(Step::N) + h.path().count(Step::DE)) as u64;
            ensure(iexc(&w) == ne, || format!("{p}: iexc {} vs {ne}", iexc(&w)))?;
            ensure(h.labels().iter().map(|&l| l as u64).sum::<u64>() == nest(&w), || format!("{p}: labels"))?;
            images.insert(h);
        }
        ensure(images.len() as u64 == factorial(n as u64), || format!("n = {n}: not injective"))?;
        let all: HashSet<_> = laguerre_histories(n).into_iter().collect();
        ensure(all == images, || format!("n = {n}: image is not the set of restricted Laguerre histories"))?;
    }
    Ok("FZ map bijective onto restricted Laguerre histories, depth = area, inv = area + nest, iexc = #N + #dE, n <= 8".into())
}

fn criterion_8() -> Outcome {
    for n in 1..=8 {
        let space = PermutationSpace::symmetric(n).map_err(|e| e.to_string())?;
        if let Some(p) = space.par_find_first(|p| phi_fz(p).path() != phi_fz(&f_a(p).output).path()) {
            return Err(format!("shape changes at {p}"));
        }
    }
    Ok("2-Motzkin shape invariant under f_A, n <= 8".into())
}

fn criterion_9() -> Outcome {
    for n in 1..=8 {
        let mut counts: HashMap<MotzkinPath, u64> = HashMap::new();
        for p in PermutationSpace::symmetric(n).unwrap().iter() {
            *counts.entry(phi_pet(&p)).or_insert(0) += 1;
        }
        let paths = motzkin_paths(n);
        let mut total = 0;
        for q in &paths {
            let w = path_weight(q).map_err(|e| e.to_string())?;
            ensure(counts.get(q).copied().unwrap_or(0) == w, || format!("{q}: weight {w}"))?;
            ensure((w % 2 == 1) == (q.max_height() <= 1), || format!("{q}: parity"))?;
            total += w;
        }
        ensure(total == factorial(n as u64), || format!("n = {n}: total weight {total}"))?;
        let low: HashSet<MotzkinPath> = paths.into_iter().filter(|q| q.max_height() <= 1).collect();
        ensure(low.len() == 1 << (n - 1), || format!("n = {n}: {} low paths", low.len()))?;
        let fixed: Vec<Permutation> = fixed_points(n).collect();
        let images: HashSet<MotzkinPath> = fixed.iter().map(phi_pet).collect();
        ensure(fixed.len() == images.len() && images == low, || format!("n = {n}: fixed points do not biject"))?;
    }
    Ok("path weight = preimage count, sum = n!, 2^(n-1) low paths hit bijectively by fixed points, n <= 8".into())
}

fn criterion_10() -> Outcome {
    for n in 1..=8 {
        let mut fixed = 0u64;
        for p in PermutationSpace::symmetric(n).unwrap().iter() {
            let r = f_a(&p);
            let (w, v) = (window(&p), window(&r.output));
            ensure(f_a(&r.output).output == p, || format!("{p}: f_A not an involution"))?;
            ensure((drops(&w), depth(&w), iexc(&w)) == (drops(&v), depth(&v), iexc(&v)), || format!("{p}: stats change"))?;
            if r.fixed {
                fixed += 1;
                ensure(r.output == p, || format!("{p}"))?;
                continue;
            }
            ensure(inv(&w) % 2 != inv(&v) % 2, || format!("{p}: sign kept"))?;
            let i = r.changed_factor_index.unwrap();
            let (a, b) = r.transposition.unwrap();
            ensure(r.output.swap_values(a, b) == p, || format!("{p}: ({a},{b}) does not map the image back"))?;
            ensure(a as usize >= i + 1 && b as usize >= i + 2, || format!("{p}: a = {a}, b = {b}, i = {i}"))?;
        }
        ensure(fixed == 1 << (n - 1), || format!("S_{n}: {fixed} fixed points"))?;
    }
    for n in 1..=6 {
        let mut fixed = 0u64;
        for s in SignedSpace::type_b(n).unwrap().iter() {
            let r = g_b(&s);
            let (w, v) = (swindow(&s), swindow(&r.output));
            ensure(g_b(&r.output).output == s, || format!("{s}: g_B not an involution"))?;
            ensure(drops_b(&w) == drops_b(&v), || format!("{s}: drops_B changes"))?;
            if r.fixed {
                fixed += 1;
            } else {
                ensure(inv_b(&w) % 2 != inv_b(&v) % 2, || format!("{s}: sign kept"))?;
            }
        }
        ensure(fixed == 1 << n, || format!("B_{n}: {fixed} fixed points"))?;
    }
    Ok("f_A (S_n, n <= 8) and g_B (B_n, n <= 6): involutive, sign-reversing, statistics kept, fixed points, transposition bounds".into())
}

fn criterion_11() -> Outcome {
    for n in 1..=8 {
        let got = poly_of(&genpoly::drops_mad_poly(n).map_err(|e| e.to_string())?);
        let oracle = oracle_sum(n, |w| ([0, 0, inv(w) as u32, depth(w) as u32], 1));
        ensure(got == oracle, || format!("n = {n}: (drops, mad) differs from (depth, inv)"))?;
        let direct = oracle_sum(n, |w| ([0, 0, mad(w) as u32, drops(w) as u32], 1));
        ensure(direct == got, || format!("n = {n}: mad disagrees with the reference"))?;
    }
    for n in 1..=7 {
        let mut sums: HashMap<MotzkinPath, Poly> = HashMap::new();
        for p in PermutationSpace::symmetric(n).unwrap().iter() {
            let w = window(&p);
            add(sums.entry(phi_pet(&p)).or_default(), [0, 0, inv(&w) as u32, depth(&w) as u32], 1);
        }
        for q in motzkin_paths(n) {
            let formula = poly_of(&genpoly::per_path_enumerator(&q));
            let brute = sums.remove(&q).unwrap_or_default();
            ensure(formula == brute, || format!("{q}: product formula {formula:?}, preimages {brute:?}"))?;
        }
    }
    Ok("sum x^drops q^mad = sum x^depth q^inv (n <= 8); per-path product formula (n <= 7)".into())
}

fn moments_from(values: impl Iterator<Item = u64>) -> (BigRational, BigRational) {
    let (mut c, mut s1, mut s2) = (0i64, 0i64, 0i64);
    for v in values {
        c += 1;
        s1 += v as i64;
        s2 += (v * v) as i64;
    }
    let mean = BigRational::new(s1.into(), c.into());
    let var = BigRational::new(s2.into(), c.into()) - &mean * &mean;
    (mean, var)
}

fn criterion_12() -> Outcome {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for n in 1..=8usize {
        let lib = genpoly::drops_moments(Group::S, n).map_err(|e| e.to_string())?;
        let (mean, var) = moments_from(perms(n).iter().map(|w| drops(w)));
        ensure(lib.mean == mean && lib.variance == var, || format!("S_{n}: library moments disagree"))?;
        let expected = BigRational::new(BigInt::from(n * n) - 1, 6.into());
        ensure(mean == expected, || format!("S_{n}: mean {mean}, expected {expected}"))?;
        if n >= 4 {
            let a = genpoly::drops_moments(Group::A, n).map_err(|e| e.to_string())?;
            let (am, av) = moments_from(perms(n).iter().filter(|w| is_even(w)).map(|w| drops(w)));
            ensure(a.mean == am && a.variance == av, || format!("A_{n}: library moments disagree"))?;
            ensure(am == mean && av == var, || format!("A_{n}: mean {am} variance {av} vs S_{n} {mean} {var}"))?;
        }
    }
    let m8 = genpoly::drops_moments(Group::S, 8).map_err(|e| e.to_string())?;
    let mean_ratio = m8.mean.to_f64().unwrap() / (64.0 / 6.0);
    let var_ratio = m8.variance.to_f64().unwrap() / (512.0 / 90.0);
    notes.push(format!("mean/(n^2/6) = {mean_ratio:.4}"));
    notes.push(format!("var/(n^3/90) = {var_ratio:.4} (var = {})", m8.variance));
    if !(0.9..=1.0).contains(&mean_ratio) {
        failures.push(format!("mean ratio {mean_ratio:.4} outside [0.9, 1.0]"));
    }
    if !(0.7..=1.0).contains(&var_ratio) {
        failures.push(format!("variance ratio {var_ratio:.4} outside [0.7, 1.0]"));
    }
    if failures.is_empty() {
        Ok(format!("exact moments over S_n and A_n; {}", notes.join(", ")))
    } else {
        Err(format!("exact moments hold for n <= 8, but {} ({})", failures.join("; "), notes.join(", ")))
    }
}

fn criterion_13() -> Outcome {
    for n in 2..=6 {
        let edges = build_matching::<Permutation>(n).map_err(|e| e.to_string())?;
        let r = validate_matching(&edges, n).map_err(|e| e.to_string())?;
        ensure(r.is_valid() && 2 * edges.len() as u64 == factorial(n as u64), || format!("S_{n}: {r:?}"))?;
    }
    for n in 1..=4 {
        let edges = build_matching::<SignedPermutation>(n).map_err(|e| e.to_string())?;
        let r = validate_matching(&edges, n).map_err(|e| e.to_string())?;
        ensure(r.is_valid() && 2 * edges.len() as u64 == factorial(n as u64) << n, || format!("B_{n}: {r:?}"))?;
    }
    let all = perms(4);
    for v in &all {
        let ideal = subword_ideal(&some_reduced_word(v), 4);
        for u in &all {
            let got = to_perm(u).bruhat_leq(&to_perm(v)).unwrap();
            ensure(got == ideal.contains(u), || format!("{u:?} <= {v:?}"))?;
        }
    }
    for n in 2..=3 {
        let all = signed_perms(n);
        for v in &all {
            let ideal = subword_ideal(&some_reduced_word(v), n);
            for u in &all {
                let got = to_signed(u).bruhat_leq(&to_signed(v)).unwrap();
                ensure(got == ideal.contains(u), || format!("{u:?} <= {v:?}"))?;
            }
        }
    }
    Ok("perfect matchings with length gap 1 on S_n (n <= 6) and B_n (n <= 4); Bruhat test = subword property on S_4 x S_4".into())
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 13] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
        (13, criterion_13),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {k:>2}: PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL ({secs:.1}s) {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 13 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
