//! Bruhat order on `S_n` and `B_n`, and the perfect matching of each group
//! built from its sign-reversing involution.
//!
//! Comparison uses the rank-matrix criterion: `u <= v` iff
//! `#{a <= i : u(a) >= k} <= #{a <= i : v(a) >= k}` for all `i, k`. Signed
//! permutations are compared through their embedding as permutations of
//! `[±n]`, where Bruhat order restricts to the type-B order.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::enumerate::{ElementSpace, PermutationSpace, SignedSpace};
use crate::error::{Error, Result};
use crate::involutions::SignReversingInvolution;
use crate::perm::{Permutation, SignedPermutation};
use crate::words::{CanonicalWord, CoxeterElement};

fn rank_matrix_leq(u: &[u32], v: &[u32]) -> bool {
    let n = u.len();
    // cu[k] = #{a <= i : u(a) >= k}, updated as i grows
    let mut cu = vec![0u32; n + 2];
    let mut cv = vec![0u32; n + 2];
    for i in 0..n {
        for k in 1..=u[i] as usize {
            cu[k] += 1;
        }
        for k in 1..=v[i] as usize {
            cv[k] += 1;
        }
        if (1..=n).any(|k| cu[k] > cv[k]) {
            return false;
        }
    }
    true
}

pub trait BruhatOrder: CoxeterElement {
    fn bruhat_leq(&self, other: &Self) -> Result<bool>;
}

impl BruhatOrder for Permutation {
    fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch { left: self.len(), right: other.len() });
        }
        Ok(rank_matrix_leq(self.window(), other.window()))
    }
}

impl BruhatOrder for SignedPermutation {
    fn bruhat_leq(&self, other: &Self) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch { left: self.len(), right: other.len() });
        }
        let (u, v) = (self.to_symmetric_embedding(), other.to_symmetric_embedding());
        Ok(rank_matrix_leq(u.window(), v.window()))
    }
}

pub fn bruhat_leq<E: BruhatOrder>(u: &E, v: &E) -> Result<bool> {
    u.bruhat_leq(v)
}

/// Elements whose whole group can be matched: `S_n` or `B_n`.
pub trait Matchable: SignReversingInvolution + BruhatOrder {
    type Space: ElementSpace<Elem = Self>;

    fn group_space(n: usize) -> Result<Self::Space>;
}

impl Matchable for Permutation {
    type Space = PermutationSpace;

    fn group_space(n: usize) -> Result<PermutationSpace> {
        PermutationSpace::symmetric(n)
    }
}

impl Matchable for SignedPermutation {
    type Space = SignedSpace;

    fn group_space(n: usize) -> Result<SignedSpace> {
        SignedSpace::type_b(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Involution,
    FixedToggle,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Involution => "involution",
            EdgeKind::FixedToggle => "fixed_toggle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchingEdge<E> {
    pub lower: E,
    pub upper: E,
    pub kind: EdgeKind,
}

impl<E: fmt::Display> Serialize for MatchingEdge<E> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("MatchingEdge", 3)?;
        st.serialize_field("lower", &self.lower.to_string())?;
        st.serialize_field("upper", &self.upper.to_string())?;
        st.serialize_field("kind", &self.kind)?;
        st.end()
    }
}

/// Toggles the presence of the last letter (`s_1` in type A, `s_0` in type B)
/// of a fixed point's word.
fn toggle_lowest<E: CoxeterElement>(e: &E) -> E {
    let word = e.canonical_word();
    let mut lengths = word.factor_lengths();
    lengths[0] ^= 1;
    CanonicalWord::from_factor_lengths(E::KIND, e.rank_n(), &lengths)
        .and_then(|w| w.evaluate::<E>())
        .expect("r_1 has length 0 or 1")
}

/// The edge containing `e` if `e` is its lower end.
fn edge_from_lower<E: SignReversingInvolution>(e: E) -> Option<MatchingEdge<E>> {
    let report = e.involution();
    let (partner, kind) = if report.fixed {
        (toggle_lowest(&e), EdgeKind::FixedToggle)
    } else {
        (report.output, EdgeKind::Involution)
    };
    (partner.length() > e.length()).then_some(MatchingEdge { lower: e, upper: partner, kind })
}

/// The matching on `S_n` (`E = Permutation`) or `B_n` (`E = SignedPermutation`),
/// ordered by the rank of the lower element.
pub fn build_matching<E: Matchable>(n: usize) -> Result<Vec<MatchingEdge<E>>> {
    if n < 1 || E::KIND.factor_count(n) == 0 {
        return Err(Error::Domain(format!("matching needs a nontrivial group, got n = {n}")));
    }
    let space = E::group_space(n)?;
    Ok(space.par_fold(
        Vec::new,
        |acc, e| acc.extend(edge_from_lower(e)),
        |mut a, b| {
            a.extend(b);
            a
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeViolation {
    pub lower: String,
    pub upper: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    pub n: usize,
    pub group_order: u64,
    pub edges: usize,
    pub uncovered: Vec<String>,
    pub repeated: Vec<String>,
    pub violations: Vec<EdgeViolation>,
}

impl MatchingReport {
    pub fn is_valid(&self) -> bool {
        self.uncovered.is_empty() && self.repeated.is_empty() && self.violations.is_empty()
    }
}

/// Checks that `edges` cover every element of the group exactly once and that
/// every edge is a Bruhat relation with length gap exactly one.
pub fn validate_matching<E: Matchable>(edges: &[MatchingEdge<E>], n: usize) -> Result<MatchingReport> {
    let space = E::group_space(n)?;
    let mut seen: HashMap<&E, u32> = HashMap::new();
    let mut violations = Vec::new();
    for edge in edges {
        for v in [&edge.lower, &edge.upper] {
            *seen.entry(v).or_insert(0) += 1;
        }
        let violation = |reason: String| EdgeViolation {
            lower: edge.lower.to_string(),
            upper: edge.upper.to_string(),
            reason,
        };
        if edge.lower.rank_n() != n || edge.upper.rank_n() != n {
            violations.push(violation("endpoint of the wrong rank".into()));
            continue;
        }
        let gap = edge.upper.length() as i64 - edge.lower.length() as i64;
        if gap != 1 {
            violations.push(violation(format!("length gap {gap} != 1")));
        }
        if !edge.lower.bruhat_leq(&edge.upper)? {
            violations.push(violation("lower is not below upper".into()));
        }
    }
    let mut repeated: Vec<String> = seen.iter().filter(|(_, &c)| c > 1).map(|(e, _)| e.to_string()).collect();
    repeated.sort();
    let uncovered = space.iter().filter(|e| !seen.contains_key(e)).map(|e| e.to_string()).collect();
    Ok(MatchingReport { n, group_order: space.len(), edges: edges.len(), uncovered, repeated, violations })
}

/// Plain edge list, one `lower upper kind` line per edge.
pub fn edge_list<E: fmt::Display>(edges: &[MatchingEdge<E>]) -> String {
    let mut out = String::new();
    for e in edges {
        writeln!(out, "{} {} {}", e.lower, e.upper, e.kind).unwrap();
    }
    out
}

pub fn hasse_covers<E: Matchable>(n: usize) -> Result<Vec<(E, E)>> {
    let space = E::group_space(n)?;
    let mut levels: Vec<Vec<E>> = Vec::new();
    for e in space.iter() {
        let l = e.length() as usize;
        if levels.len() <= l {
            levels.resize_with(l + 1, Vec::new);
        }
        levels[l].push(e);
    }
    let mut covers = Vec::new();
    for pair in levels.windows(2) {
        for u in &pair[0] {
            for v in &pair[1] {
                if u.bruhat_leq(v)? {
                    covers.push((u.clone(), v.clone()));
                }
            }
        }
    }
    Ok(covers)
}

/// Graphviz rendering of the matching; with `hasse` the cover relations of
/// the whole order are drawn underneath (only for `n <= 5`).
pub fn to_dot<E: Matchable>(edges: &[MatchingEdge<E>], n: usize, hasse: bool) -> Result<String> {
    if hasse && n > 5 {
        return Err(Error::Domain(format!("Hasse underlay is limited to n <= 5, got {n}")));
    }
    let mut out = String::from("graph matching {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    let space = E::group_space(n)?;
    for e in space.iter() {
        writeln!(out, "  \"{e}\";").unwrap();
    }
    if hasse {
        for (u, v) in hasse_covers::<E>(n)? {
            writeln!(out, "  \"{u}\" -- \"{v}\" [color=gray80];").unwrap();
        }
    }
    for e in edges {
        let style = match e.kind {
            EdgeKind::Involution => "color=blue, penwidth=2",
            EdgeKind::FixedToggle => "color=red, penwidth=2, style=dashed",
        };
        writeln!(out, "  \"{}\" -- \"{}\" [{style}];", e.lower, e.upper).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
