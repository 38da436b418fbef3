mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use coxdrops::bruhat::{build_matching, edge_list, to_dot, validate_matching, Matchable, MatchingEdge};
use coxdrops::genpoly::{self, mad, MultiPoly};
use coxdrops::involutions::{g_b, typed_g, typed_h, SignReversingInvolution};
use coxdrops::laguerre::{even_subset_to_path, nest, path_weight, phi_fz, LatticePath, MotzkinPath, TwoMotzkinPath};
use coxdrops::verify::{default_suite, verify, Claim, VerificationReport};
use coxdrops::words::{CanonicalWord, CoxeterElement, CoxeterType};
use coxdrops::{ElementSpace, Group, Permutation, PermutationSpace, SignedPermutation, SignedSpace};

use table::Table;

#[derive(Parser, Debug)]
#[command(name = "coxdrops", version, about = "Exact enumeration of drops, depth and related statistics over Coxeter groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Write the main output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(clap::Args, Debug, Clone)]
struct Scope {
    /// Group: S, A, B or D.
    #[arg(long, short = 'g', visible_alias = "type", default_value = "S")]
    group: Group,
    /// Rank of the group.
    #[arg(long)]
    n: Option<usize>,
    /// Sweep all ranks from the smallest supported one up to this rank.
    #[arg(long)]
    max_n: Option<usize>,
}

impl Scope {
    /// Explicit ranks, in increasing order.
    fn ranks(&self, default: usize) -> Vec<usize> {
        match (self.n, self.max_n) {
            (_, Some(m)) => (self.group.min_n()..=m).collect(),
            (Some(n), None) => vec![n],
            (None, None) => vec![default],
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-element statistics of one element or of a whole group.
    Stats {
        #[command(flatten)]
        scope: Scope,
        /// Element in one-line notation, e.g. 4,1,5,2,3.
        #[arg(long, allow_hyphen_values = true)]
        elem: Option<String>,
    },
    /// Canonical reduced words.
    Word {
        #[command(flatten)]
        scope: Scope,
        #[arg(long, allow_hyphen_values = true)]
        elem: Option<String>,
        /// Evaluate a bracketed word such as "[s2 s3][s2][s1]" instead (needs --n).
        #[arg(long)]
        word: Option<String>,
    },
    /// Apply f_A (S), g_B (B) or the type-D swaps (D) to an element.
    Invol {
        #[command(flatten)]
        scope: Scope,
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
    },
    /// Foata–Zeilberger Laguerre history of a permutation.
    Fz {
        #[arg(long)]
        elem: String,
    },
    /// Heights, area, weight and preimage enumerator of a Motzkin path.
    Path {
        /// Path text over N, S, E (and D for a dotted east step).
        #[arg(long)]
        path: Option<String>,
        /// Even subset of [n], e.g. 1,3, mapped to its height-at-most-one path.
        #[arg(long)]
        subset: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Generating polynomials by enumeration.
    Poly {
        #[command(flatten)]
        scope: Scope,
        #[arg(long, value_enum, default_value_t = PolyKind::SignedDrops)]
        which: PolyKind,
    },
    /// Coefficients of the J-fraction for (depth, inv).
    Cfrac {
        /// Series order.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Check claims exhaustively; exit status 0 iff every check passes.
    Verify {
        /// Claims to check (all by default): thm1.1 thm1.3 cor1.4 thm-typeB
        /// thm-typeD cfrac mad weights shape moments lemma7.2 fz invol match.
        claims: Vec<String>,
        /// Group; defaults to the claim's own group.
        #[arg(long, short = 'g', visible_alias = "type")]
        group: Option<Group>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Bruhat matching of S_n or B_n.
    Match {
        #[command(flatten)]
        scope: Scope,
        /// Write a Graphviz rendering to FILE.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Draw the Hasse diagram under the matching (n <= 5).
        #[arg(long)]
        hasse: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    /// sum (-1)^inv t^exc p^depth q^drops over S_n.
    Trivariate,
    /// Signed drops enumerator of the group.
    SignedDrops,
    /// sum x^depth q^inv over S_n.
    DepInv,
    /// sum x^drops q^mad over S_n.
    DropsMad,
    /// sum q^depth t^exc over S_n.
    DepthExc,
    /// sum q^drops t^des over S_n.
    DropsDes,
    /// The two signed zdrops sums over B_n - D_n and D_n.
    Zdrops,
}

struct Output {
    format: Format,
    sink: Box<dyn Write>,
}

impl Output {
    fn json_line<T: Serialize>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer(&mut self.sink, value)?;
        writeln!(self.sink)?;
        Ok(())
    }

    fn text(&mut self, s: &str) -> Result<()> {
        self.sink.write_all(s.as_bytes())?;
        Ok(())
    }

    fn table(&mut self, t: &Table) -> Result<()> {
        match self.format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut self.sink);
                w.write_record(&t.headers)?;
                for row in &t.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
                Ok(())
            }
            _ => self.text(&t.render()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global().context("building the thread pool")?;
    }
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let mut out = Output { format: cli.format, sink };
    let ok = match cli.command {
        Command::Stats { scope, elem } => stats(&mut out, &scope, elem.as_deref()).map(|_| true),
        Command::Word { scope, elem, word } => words(&mut out, &scope, elem.as_deref(), word.as_deref()).map(|_| true),
        Command::Invol { scope, elem } => invol(&mut out, scope.group, &elem).map(|_| true),
        Command::Fz { elem } => fz(&mut out, &elem).map(|_| true),
        Command::Path { path, subset, n } => paths(&mut out, path.as_deref(), subset.as_deref(), n).map(|_| true),
        Command::Poly { scope, which } => poly(&mut out, &scope, which).map(|_| true),
        Command::Cfrac { n } => cfrac(&mut out, n).map(|_| true),
        Command::Verify { claims, group, n, max_n } => verify_cmd(&mut out, &claims, group, n, max_n),
        Command::Match { scope, dot, hasse } => matching(&mut out, &scope, dot, hasse),
    }?;
    out.sink.flush()?;
    Ok(ok)
}

const PERM_COLUMNS: [&str; 9] = ["element", "inv", "des", "exc", "iexc", "drops", "depth", "mad", "nest"];
const SIGNED_COLUMNS: [&str; 8] = ["element", "inv_b", "inv_d", "neg", "nsum", "drops_b", "drops_d", "zdrops"];

fn perm_row(p: &Permutation) -> Vec<String> {
    let s = p.stats();
    let vals = [s.inv, s.des, s.exc, s.iexc, s.drops, s.depth, mad(p), nest(p)];
    std::iter::once(p.to_string()).chain(vals.iter().map(u64::to_string)).collect()
}

fn signed_row(s: &SignedPermutation) -> Vec<String> {
    let drops_d = s.drops_d().map(|d| d.to_string()).unwrap_or_else(|_| "-".into());
    vec![
        s.to_string(),
        s.inv_b().to_string(),
        s.inv_d().to_string(),
        s.neg_count().to_string(),
        s.nsum().to_string(),
        s.drops_b().to_string(),
        drops_d,
        s.zdrops().to_string(),
    ]
}

fn rows_json(out: &mut Output, t: &Table) -> Result<()> {
    for row in &t.rows {
        let obj: serde_json::Map<String, serde_json::Value> = t
            .headers
            .iter()
            .zip(row)
            .map(|(h, v)| {
                let value = v.parse::<u64>().map(serde_json::Value::from).unwrap_or_else(|_| v.clone().into());
                (h.clone(), value)
            })
            .collect();
        out.json_line(&obj)?;
    }
    Ok(())
}

fn emit(out: &mut Output, t: &Table) -> Result<()> {
    match out.format {
        Format::Json => rows_json(out, t),
        _ => out.table(t),
    }
}

fn stats(out: &mut Output, scope: &Scope, elem: Option<&str>) -> Result<()> {
    let signed = scope.group.is_signed();
    let mut t = Table::new(if signed { &SIGNED_COLUMNS[..] } else { &PERM_COLUMNS[..] });
    if let Some(text) = elem {
        if signed {
            let s: SignedPermutation = text.parse()?;
            if scope.group == Group::D && !s.is_type_d() {
                bail!("{s} has an odd number of negative entries, so it is not in D_{}", s.len());
            }
            t.push(signed_row(&s));
        } else {
            let p: Permutation = text.parse()?;
            if scope.group == Group::A && !p.is_even() {
                bail!("{p} is odd, so it is not in A_{}", p.len());
            }
            t.push(perm_row(&p));
        }
        return emit(out, &t);
    }
    for n in scope.ranks(4) {
        if signed {
            let space = SignedSpace::new(scope.group, n)?;
            space.iter().for_each(|s| t.push(signed_row(&s)));
        } else {
            let space = PermutationSpace::new(scope.group, n)?;
            space.iter().for_each(|p| t.push(perm_row(&p)));
        }
    }
    emit(out, &t)
}

fn kind_of(group: Group) -> Result<CoxeterType> {
    match group {
        Group::S | Group::A => Ok(CoxeterType::A),
        Group::B => Ok(CoxeterType::B),
        Group::D => bail!("canonical words are defined for types A and B"),
    }
}

fn word_row<E: CoxeterElement>(e: &E) -> Vec<String> {
    let w = e.canonical_word();
    let ird: Vec<String> = w.ird().iter().map(u32::to_string).collect();
    let asc: Vec<String> = w.ascents().iter().map(usize::to_string).collect();
    let lengths: Vec<String> = w.factor_lengths().iter().map(usize::to_string).collect();
    vec![e.to_string(), w.to_string(), w.len().to_string(), ird.join(" "), asc.join(" "), lengths.join(" ")]
}

fn words(out: &mut Output, scope: &Scope, elem: Option<&str>, word: Option<&str>) -> Result<()> {
    let kind = kind_of(scope.group)?;
    let mut t = Table::new(&["element", "word", "length", "ird", "ascents", "factor_lengths"]);
    match (elem, word) {
        (_, Some(text)) => {
            let n = scope.n.context("--word needs --n")?;
            let w = CanonicalWord::parse(kind, n, text)?;
            match kind {
                CoxeterType::A => t.push(word_row(&w.evaluate::<Permutation>()?)),
                CoxeterType::B => t.push(word_row(&w.evaluate::<SignedPermutation>()?)),
            }
        }
        (Some(text), None) => match kind {
            CoxeterType::A => t.push(word_row(&text.parse::<Permutation>()?)),
            CoxeterType::B => t.push(word_row(&text.parse::<SignedPermutation>()?)),
        },
        (None, None) => {
            for n in scope.ranks(3) {
                match kind {
                    CoxeterType::A => PermutationSpace::new(scope.group, n)?.iter().for_each(|p| t.push(word_row(&p))),
                    CoxeterType::B => SignedSpace::type_b(n)?.iter().for_each(|s| t.push(word_row(&s))),
                }
            }
        }
    }
    emit(out, &t)
}

fn invol(out: &mut Output, group: Group, elem: &str) -> Result<()> {
    let value = match group {
        Group::S | Group::A => serde_json::to_value(text_perm(elem)?.involution())?,
        Group::B => serde_json::to_value(g_b(&elem.parse()?))?,
        Group::D => {
            let s: SignedPermutation = elem.parse()?;
            let (map, img) = if s.is_type_d() { ("h", typed_h(&s)?) } else { ("g", typed_g(&s)?) };
            json!({
                "input": s.to_string(),
                "output": img.image.to_string(),
                "map": map,
                "case": img.case.0,
                "inv_d_change": img.image.inv_d() as i64 - s.inv_d() as i64,
            })
        }
    };
    if out.format == Format::Json {
        return out.json_line(&value);
    }
    let mut t = Table::new(&["field", "value"]);
    for (k, v) in value.as_object().expect("object") {
        let shown = match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        t.push(vec![k.clone(), shown]);
    }
    out.table(&t)
}

fn text_perm(elem: &str) -> Result<Permutation> {
    Ok(elem.parse()?)
}

fn fz(out: &mut Output, elem: &str) -> Result<()> {
    let p = text_perm(elem)?;
    let h = phi_fz(&p);
    if out.format == Format::Json {
        return out.json_line(&json!({ "element": p.to_string(), "history": h }));
    }
    let mut t = Table::new(&["i", "step", "height", "label"]);
    for (i, ((s, height), label)) in h.path().steps().iter().zip(h.path().heights()).zip(h.labels()).enumerate() {
        t.push(vec![(i + 1).to_string(), s.letter().to_string(), height.to_string(), label.to_string()]);
    }
    out.table(&t)
}

fn parse_subset(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad subset element {s:?}")))
        .collect()
}

fn paths(out: &mut Output, path: Option<&str>, subset: Option<&str>, n: Option<usize>) -> Result<()> {
    let path: MotzkinPath = match (path, subset) {
        (Some(text), None) => {
            let two: TwoMotzkinPath = text.parse()?;
            two.shape()
        }
        (None, Some(text)) => even_subset_to_path(&parse_subset(text)?, n.context("--subset needs --n")?)?,
        _ => bail!("give exactly one of --path and --subset"),
    };
    let heights: Vec<String> = path.heights().iter().map(u32::to_string).collect();
    let weight = path_weight(&path)?;
    let enumerator = genpoly::per_path_enumerator(&path);
    if out.format == Format::Json {
        return out.json_line(&json!({
            "path": path,
            "heights": path.heights(),
            "area": path.area(),
            "max_height": path.max_height(),
            "weight": weight,
            "enumerator": enumerator,
        }));
    }
    let mut t = Table::new(&["field", "value"]);
    t.push(vec!["path".into(), path.to_string()]);
    t.push(vec!["heights".into(), heights.join(" ")]);
    t.push(vec!["area".into(), path.area().to_string()]);
    t.push(vec!["max_height".into(), path.max_height().to_string()]);
    t.push(vec!["weight".into(), weight.to_string()]);
    t.push(vec!["enumerator".into(), enumerator.to_string()]);
    out.table(&t)
}

fn poly_row(out: &mut Output, t: &mut Table, label: &str, n: usize, p: &MultiPoly) -> Result<()> {
    if out.format == Format::Json {
        out.json_line(&json!({ "poly": label, "n": n, "terms": p, "pretty": p.to_string() }))
    } else {
        t.push(vec![label.to_string(), n.to_string(), p.to_string()]);
        Ok(())
    }
}

fn poly(out: &mut Output, scope: &Scope, which: PolyKind) -> Result<()> {
    let mut t = Table::new(&["poly", "n", "value"]);
    for n in scope.ranks(4) {
        match which {
            PolyKind::Trivariate => poly_row(out, &mut t, "trivariate", n, &genpoly::signed_trivariate(n)?)?,
            PolyKind::SignedDrops => {
                let label = format!("signed_drops_{}", scope.group.letter());
                poly_row(out, &mut t, &label, n, &genpoly::signed_drops(scope.group, n)?)?
            }
            PolyKind::DepInv => poly_row(out, &mut t, "dep_inv", n, &genpoly::dep_inv_poly(n)?)?,
            PolyKind::DropsMad => poly_row(out, &mut t, "drops_mad", n, &genpoly::drops_mad_poly(n)?)?,
            PolyKind::DepthExc => poly_row(out, &mut t, "depth_exc", n, &genpoly::depth_exc_poly(n)?)?,
            PolyKind::DropsDes => poly_row(out, &mut t, "drops_des", n, &genpoly::drops_des_poly(n)?)?,
            PolyKind::Zdrops => {
                let (odd, even) = genpoly::zdrops_sums(n)?;
                poly_row(out, &mut t, "zdrops_odd", n, &odd)?;
                poly_row(out, &mut t, "zdrops_even", n, &even)?;
            }
        }
    }
    if out.format == Format::Json {
        Ok(())
    } else {
        out.table(&t)
    }
}

fn cfrac(out: &mut Output, order: usize) -> Result<()> {
    let series = genpoly::jfraction_convergent(order)?;
    let mut t = Table::new(&["k", "coefficient"]);
    for (k, c) in series.coefficients().iter().enumerate() {
        if out.format == Format::Json {
            out.json_line(&json!({ "k": k, "terms": c, "pretty": c.to_string() }))?;
        } else {
            t.push(vec![k.to_string(), c.to_string()]);
        }
    }
    if out.format == Format::Json {
        Ok(())
    } else {
        out.table(&t)
    }
}

fn verify_cmd(out: &mut Output, claims: &[String], group: Option<Group>, n: Option<usize>, max_n: Option<usize>) -> Result<bool> {
    let mut jobs = Vec::new();
    if claims.is_empty() && group.is_none() && n.is_none() && max_n.is_none() {
        jobs = default_suite();
    } else {
        let selected: Vec<Claim> = if claims.is_empty() {
            Claim::ALL.to_vec()
        } else {
            claims.iter().map(|c| c.parse()).collect::<coxdrops::Result<_>>()?
        };
        for claim in selected {
            let groups: Vec<Group> = match group {
                Some(g) => vec![g],
                None => claim.groups().to_vec(),
            };
            for g in groups {
                let ranks: Vec<usize> = match (n, max_n) {
                    (_, Some(m)) => (g.min_n().max(1)..=m).collect(),
                    (Some(k), None) => vec![k],
                    (None, None) => vec![claim.default_n(g)],
                };
                jobs.extend(ranks.into_iter().map(|k| (claim, g, k)));
            }
        }
    }
    let mut reports: Vec<VerificationReport> = Vec::new();
    for (claim, g, k) in jobs {
        reports.push(verify(claim, g, k)?);
    }
    let ok = reports.iter().all(VerificationReport::passed);
    if out.format == Format::Json {
        for r in &reports {
            out.json_line(r)?;
        }
        return Ok(ok);
    }
    let mut t = Table::new(&["claim", "group", "n", "status", "elements", "ms", "witness"]);
    for r in &reports {
        t.push(vec![
            r.claim.clone(),
            r.group.to_string(),
            r.n.to_string(),
            if r.passed() { "pass".into() } else { "FAIL".into() },
            r.elements.to_string(),
            r.elapsed_ms.to_string(),
            r.witness.clone().unwrap_or_default(),
        ]);
    }
    out.table(&t)?;
    Ok(ok)
}

fn match_group<E: Matchable + std::fmt::Display>(
    out: &mut Output,
    n: usize,
    dot: Option<&PathBuf>,
    hasse: bool,
) -> Result<bool> {
    let edges: Vec<MatchingEdge<E>> = build_matching(n)?;
    let report = validate_matching(&edges, n)?;
    if let Some(path) = dot {
        std::fs::write(path, to_dot(&edges, n, hasse)?).with_context(|| format!("writing {}", path.display()))?;
    }
    if out.format == Format::Json {
        out.json_line(&json!({ "report": report, "valid": report.is_valid(), "edges": edges }))?;
    } else {
        out.text(&edge_list(&edges))?;
        out.text(&format!(
            "# {} edges on {} elements: {}\n",
            report.edges,
            report.group_order,
            if report.is_valid() { "valid" } else { "INVALID" }
        ))?;
        for v in &report.violations {
            out.text(&format!("# {} -- {}: {}\n", v.lower, v.upper, v.reason))?;
        }
    }
    Ok(report.is_valid())
}

fn matching(out: &mut Output, scope: &Scope, dot: Option<PathBuf>, hasse: bool) -> Result<bool> {
    let mut ok = true;
    for n in scope.ranks(3) {
        ok &= match scope.group {
            Group::S => match_group::<Permutation>(out, n, dot.as_ref(), hasse)?,
            Group::B => match_group::<SignedPermutation>(out, n, dot.as_ref(), hasse)?,
            g => bail!("matchings are built on S_n and B_n, not {}", g.letter()),
        };
    }
    Ok(ok)
}
