use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hessgkm::gkm::{induced_subgraph, is_regular, DotOptions};
use hessgkm::hessenberg::{
    corresponding_generator, ell_h, enumerate_hessenberg, generators, incomparability_graph,
    is_generator,
};
use hessgkm::order::{bruhat_interval, bruhat_leq, h_bruhat_leq, h_interval};
use hessgkm::patterns::{avoids_all, find_pattern, AssociatedPatternId, PatternSet};
use hessgkm::verify::{
    find_counterexample, sweep_rows, verify_theorem, Counterexample, PredicateId, Status, SweepRow,
    TheoremId, VerificationReport, VerifyOptions,
};
use hessgkm::wellorg::{profile, WellOrgProfile};
use hessgkm::{HessenbergFunction, Permutation};

/// Hessenberg Schubert fixed-point graphs, Bruhat orders and associated patterns.
#[derive(Parser, Debug)]
#[command(name = "hessgkm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// permutation in one-line notation, e.g. 2134 (comma separated for n >= 10)
    #[arg(long, global = true)]
    perm: Option<Permutation>,

    /// second permutation for order queries
    #[arg(long, global = true)]
    other: Option<Permutation>,

    /// Hessenberg function, e.g. 3,3,4,4
    #[arg(long, global = true)]
    hess: Option<HessenbergFunction>,

    /// size, or an inclusive range such as 4-6
    #[arg(long, global = true)]
    n: Option<SizeRange>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// worker threads for verification; 0 picks one per core, 1 is serial
    #[arg(long, global = true, env = "HESSGKM_JOBS", default_value_t = 0)]
    jobs: usize,

    /// multiplies the number of random samples used beyond exhaustive sizes
    #[arg(long, global = true, default_value_t = 1)]
    seed_scale: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// length, rank, generator data and order comparisons
    Query,
    /// the fixed-point graph of --perm for --hess
    Graph {
        /// also draw the vertices outside the graph, grayed out
        #[arg(long)]
        show_excluded: bool,
    },
    /// occurrences of all eleven associated patterns
    Patterns,
    /// well-organized profile of --perm
    Profile,
    /// exhaustive check of one statement, or all of them
    Verify {
        /// statement id such as T-main, or "all"
        #[arg(long, default_value = "all")]
        theorem: String,
        /// search for a counterexample to a predicate instead
        #[arg(long, conflicts_with = "theorem")]
        predicate: Option<PredicateId>,
        /// report wall-clock time on stderr
        #[arg(long)]
        timing: bool,
    },
    /// Hessenberg functions of size --n, or generators of each
    Enumerate {
        #[arg(value_enum, default_value = "hessenberg")]
        what: Listing,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Listing {
    Hessenberg,
    Generators,
    Incomparability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct SizeRange {
    lo: usize,
    hi: usize,
}

impl std::str::FromStr for SizeRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid size {s:?}"))
        };
        let (lo, hi) = match s.split_once('-') {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(s)?, num(s)?),
        };
        if lo == 0 || lo > hi {
            return Err(format!("invalid size range {s:?}"));
        }
        Ok(SizeRange { lo, hi })
    }
}

/// Bad input detected after parsing; exits like a clap usage error.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

impl Cli {
    fn perm(&self) -> Result<&Permutation> {
        match &self.perm {
            Some(p) => Ok(p),
            None => usage("--perm is required"),
        }
    }

    fn hess(&self) -> Result<&HessenbergFunction> {
        match &self.hess {
            Some(h) => Ok(h),
            None => usage("--hess is required"),
        }
    }

    fn sizes(&self) -> Result<SizeRange> {
        if let Some(r) = self.n {
            return Ok(r);
        }
        match (&self.perm, &self.hess) {
            (Some(p), _) => Ok(SizeRange {
                lo: p.n(),
                hi: p.n(),
            }),
            (None, Some(h)) => Ok(SizeRange {
                lo: h.n(),
                hi: h.n(),
            }),
            _ => usage("--n is required"),
        }
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if !allowed.contains(&f) {
            return usage(format!(
                "--format {} is not available here",
                f.to_possible_value().unwrap().get_name()
            ));
        }
        Ok(f)
    }

    fn check_sizes(&self) -> Result<()> {
        let mut sizes: Vec<(&str, usize)> = Vec::new();
        if let Some(p) = &self.perm {
            sizes.push(("--perm", p.n()));
        }
        if let Some(p) = &self.other {
            sizes.push(("--other", p.n()));
        }
        if let Some(h) = &self.hess {
            sizes.push(("--hess", h.n()));
        }
        if let Some(r) = self.n {
            if !sizes.is_empty() && (r.lo != r.hi || r.lo != sizes[0].1) {
                return usage(format!(
                    "--n does not match {} of size {}",
                    sizes[0].0, sizes[0].1
                ));
            }
        }
        for pair in sizes.windows(2) {
            if pair[0].1 != pair[1].1 {
                return usage(format!(
                    "size mismatch: {} has size {}, {} has size {}",
                    pair[0].0, pair[0].1, pair[1].0, pair[1].1
                ));
            }
        }
        Ok(())
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            jobs: self.jobs,
            hess: self.hess.clone(),
            perm: self.perm.clone(),
            samples: VerifyOptions::default()
                .samples
                .saturating_mul(self.seed_scale.max(1)),
            ..VerifyOptions::default()
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct Comparison {
    other: Permutation,
    bruhat_leq: bool,
    bruhat_geq: bool,
    h_bruhat_leq: Option<bool>,
    h_bruhat_geq: Option<bool>,
    /// [perm, other] in Bruhat order, when comparable that way
    interval: Option<Vec<Permutation>>,
    h_interval: Option<Vec<Permutation>>,
}

#[derive(Serialize)]
struct QueryOutput {
    perm: Permutation,
    n: usize,
    rank: u64,
    length: usize,
    inverse: Permutation,
    descents: Vec<usize>,
    hess: Option<HessenbergFunction>,
    h_length: Option<usize>,
    is_generator: Option<bool>,
    corresponding_generator: Option<Permutation>,
    fixed_points: Option<usize>,
    comparison: Option<Comparison>,
}

fn query(cli: &Cli) -> Result<String> {
    let fmt = cli.format(Format::Text, &[Format::Text, Format::Json])?;
    let u = cli.perm()?;
    let h = cli.hess.as_ref();
    let comparison = match &cli.other {
        None => None,
        Some(v) => {
            let leq = bruhat_leq(u, v)?;
            let (hl, hg, hi) = match h {
                Some(h) => {
                    let l = h_bruhat_leq(u, v, h)?;
                    let iv = if l {
                        Some(h_interval(u, v, h)?.members())
                    } else {
                        None
                    };
                    (Some(l), Some(h_bruhat_leq(v, u, h)?), iv)
                }
                None => (None, None, None),
            };
            Some(Comparison {
                other: v.clone(),
                bruhat_leq: leq,
                bruhat_geq: bruhat_leq(v, u)?,
                h_bruhat_leq: hl,
                h_bruhat_geq: hg,
                interval: if leq {
                    Some(bruhat_interval(u, v)?.members())
                } else {
                    None
                },
                h_interval: hi,
            })
        }
    };
    let out = QueryOutput {
        perm: u.clone(),
        n: u.n(),
        rank: u.rank(),
        length: u.length(),
        inverse: u.inverse(),
        descents: u.descent_set(),
        hess: h.cloned(),
        h_length: h.map(|h| ell_h(u, h)).transpose()?,
        is_generator: h.map(|h| is_generator(u, h)).transpose()?,
        corresponding_generator: h.map(|h| corresponding_generator(u, h)).transpose()?,
        fixed_points: h
            .map(|h| induced_subgraph(u, h).map(|g| g.len()))
            .transpose()?,
        comparison,
    };
    if fmt == Format::Json {
        return to_json(&out);
    }
    let mut s = String::new();
    writeln!(s, "perm            {}", out.perm)?;
    writeln!(s, "rank            {}", out.rank)?;
    writeln!(s, "length          {}", out.length)?;
    writeln!(s, "inverse         {}", out.inverse)?;
    writeln!(s, "descents        {:?}", out.descents)?;
    if let Some(h) = &out.hess {
        writeln!(s, "hess            {h}")?;
        writeln!(s, "h-length        {}", out.h_length.unwrap())?;
        writeln!(s, "generator       {}", out.is_generator.unwrap())?;
        writeln!(
            s,
            "w~              {}",
            out.corresponding_generator.as_ref().unwrap()
        )?;
        writeln!(s, "fixed points    {}", out.fixed_points.unwrap())?;
    }
    if let Some(c) = &out.comparison {
        writeln!(s, "other           {}", c.other)?;
        writeln!(s, "perm <= other   {}", c.bruhat_leq)?;
        writeln!(s, "other <= perm   {}", c.bruhat_geq)?;
        if let (Some(l), Some(g)) = (c.h_bruhat_leq, c.h_bruhat_geq) {
            writeln!(s, "perm <=_h other {l}")?;
            writeln!(s, "other <=_h perm {g}")?;
        }
        if let Some(iv) = &c.interval {
            writeln!(s, "interval        {} elements", iv.len())?;
        }
        if let Some(iv) = &c.h_interval {
            writeln!(s, "h-interval      {} elements", iv.len())?;
        }
    }
    Ok(s)
}

#[derive(Serialize)]
struct VertexOut {
    vertex: Permutation,
    rank: u64,
    length: usize,
    degree: usize,
    edges: Vec<hessgkm::Transposition>,
}

#[derive(Serialize)]
struct EdgeOut {
    u: Permutation,
    v: Permutation,
    transposition: hessgkm::Transposition,
}

#[derive(Serialize)]
struct GraphOutput {
    w: Permutation,
    hess: HessenbergFunction,
    is_generator: bool,
    vertex_count: usize,
    regular: bool,
    min_degree: usize,
    max_degree: usize,
    degree_histogram: Vec<(usize, usize)>,
    vertices: Vec<VertexOut>,
    edges: Vec<EdgeOut>,
}

fn graph(cli: &Cli, show_excluded: bool) -> Result<String> {
    let fmt = cli.format(
        Format::Dot,
        &[Format::Dot, Format::Csv, Format::Json, Format::Text],
    )?;
    let (w, h) = (cli.perm()?, cli.hess()?);
    let g = induced_subgraph(w, h)?;
    match fmt {
        Format::Dot => return Ok(g.to_dot(&DotOptions { show_excluded })),
        Format::Csv => return Ok(g.to_csv()),
        _ => {}
    }
    let reg = is_regular(&g)?;
    let vertices = g
        .vertices()
        .map(|u| {
            let e = g.edge_set(&u)?;
            Ok(VertexOut {
                rank: u.rank(),
                length: u.length(),
                degree: e.len(),
                edges: e.transpositions,
                vertex: u,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let out = GraphOutput {
        w: w.clone(),
        hess: h.clone(),
        is_generator: is_generator(w, h)?,
        vertex_count: g.len(),
        regular: reg.regular,
        min_degree: reg.min_degree,
        max_degree: reg.max_degree,
        degree_histogram: g.degree_histogram().into_iter().collect(),
        vertices,
        edges: g
            .edges()
            .into_iter()
            .map(|(u, v, t)| EdgeOut {
                u,
                v,
                transposition: t,
            })
            .collect(),
    };
    if fmt == Format::Json {
        return to_json(&out);
    }
    let mut s = String::new();
    writeln!(
        s,
        "w {} h {}: {} vertices, {} edges",
        out.w,
        out.hess,
        out.vertex_count,
        out.edges.len()
    )?;
    writeln!(
        s,
        "regular {} (degrees {}..{})",
        out.regular, out.min_degree, out.max_degree
    )?;
    for (d, c) in &out.degree_histogram {
        writeln!(s, "  degree {d}: {c}")?;
    }
    for v in &out.vertices {
        let e: Vec<String> = v.edges.iter().map(|t| t.to_string()).collect();
        writeln!(s, "{} {} {}", v.vertex, v.degree, e.join(" "))?;
    }
    Ok(s)
}

#[derive(Serialize)]
struct PatternRow {
    pattern: AssociatedPatternId,
    occurs: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct SetRow {
    set: &'static str,
    avoids: bool,
}

#[derive(Serialize)]
struct PatternsOutput {
    w: Permutation,
    hess: HessenbergFunction,
    patterns: Vec<PatternRow>,
    sets: Vec<SetRow>,
}

const PATTERN_SETS: [PatternSet; 5] = [
    PatternSet::Six,
    PatternSet::Generator7,
    PatternSet::Generator7Alt,
    PatternSet::Five,
    PatternSet::General10,
];

fn patterns(cli: &Cli) -> Result<String> {
    let fmt = cli.format(Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
    let (w, h) = (cli.perm()?, cli.hess()?);
    let rows = AssociatedPatternId::ALL
        .iter()
        .map(|&id| {
            let found = find_pattern(w, h, id)?;
            Ok(PatternRow {
                pattern: id,
                occurs: found.is_some(),
                witness: found.map(|x| x.to_string()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sets = PATTERN_SETS
        .iter()
        .map(|&set| {
            Ok(SetRow {
                set: set.name(),
                avoids: avoids_all(w, h, set)?.0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let out = PatternsOutput {
        w: w.clone(),
        hess: h.clone(),
        patterns: rows,
        sets,
    };
    let mut s = String::new();
    match fmt {
        Format::Json => return to_json(&out),
        Format::Csv => {
            s.push_str("pattern,occurs,witness\n");
            for r in &out.patterns {
                writeln!(
                    s,
                    "{},{},\"{}\"",
                    r.pattern,
                    r.occurs,
                    r.witness.as_deref().unwrap_or("")
                )?;
            }
        }
        _ => {
            writeln!(s, "w {} h {}", out.w, out.hess)?;
            writeln!(s, "{:<8} {:<6} witness", "pattern", "occurs")?;
            for r in &out.patterns {
                writeln!(
                    s,
                    "{:<8} {:<6} {}",
                    r.pattern.name(),
                    if r.occurs { "yes" } else { "no" },
                    r.witness.as_deref().unwrap_or("-")
                )?;
            }
            for r in &out.sets {
                writeln!(s, "avoids {:<15} {}", r.set, r.avoids)?;
            }
        }
    }
    Ok(s)
}

fn profile_cmd(cli: &Cli) -> Result<String> {
    let fmt = cli.format(Format::Json, &[Format::Json, Format::Text])?;
    let w = cli.perm()?;
    let h = match &cli.hess {
        Some(h) => h.clone(),
        None => HessenbergFunction::full(w.n()),
    };
    let p: WellOrgProfile = profile(w, &h)?;
    if fmt == Format::Json {
        return to_json(&p);
    }
    let mut s = String::new();
    writeln!(s, "w               {}", p.w)?;
    writeln!(s, "Y(w)            {:?}", p.y_values)?;
    writeln!(s, "well-organized  {}", p.is_well_organized)?;
    writeln!(s, "kind            {:?}", p.kind)?;
    if let Some(chain) = &p.wbar_chain {
        let c: Vec<String> = chain.iter().map(|x| x.to_string()).collect();
        writeln!(s, "wbar chain      {}", c.join(" "))?;
    }
    Ok(s)
}

#[derive(Serialize)]
struct VerifyOutput {
    all_passed: bool,
    reports: Vec<VerificationReport>,
}

#[derive(Serialize)]
struct SearchRow {
    n: usize,
    counterexample: Option<Counterexample>,
}

#[derive(Serialize)]
struct SearchOutput {
    predicate: PredicateId,
    about: &'static str,
    results: Vec<SearchRow>,
}

fn theorems(arg: &str) -> Result<Vec<TheoremId>> {
    if arg.eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    arg.split(',')
        .map(|t| match t.parse::<TheoremId>() {
            Ok(id) => Ok(id),
            Err(_) => usage(format!("unknown theorem id {t:?}")),
        })
        .collect()
}

/// Returns the rendered output and whether everything passed.
fn verify(
    cli: &Cli,
    theorem: &str,
    predicate: Option<PredicateId>,
    timing: bool,
) -> Result<(String, bool)> {
    let sizes = cli.sizes()?;
    let opts = cli.verify_options();
    let start = Instant::now();
    if let Some(pred) = predicate {
        let fmt = cli.format(Format::Text, &[Format::Text, Format::Json])?;
        let mut results = Vec::new();
        for n in sizes.lo..=sizes.hi {
            let found = find_counterexample(pred, n, &opts)?;
            if timing {
                eprintln!("{pred} n={n}: {:.3?}", start.elapsed());
            }
            results.push(SearchRow {
                n,
                counterexample: found,
            });
        }
        let out = SearchOutput {
            predicate: pred,
            about: pred.about(),
            results,
        };
        if fmt == Format::Json {
            return Ok((to_json(&out)?, true));
        }
        let mut s = String::new();
        for r in &out.results {
            match &r.counterexample {
                None => writeln!(s, "{pred} n={}: no counterexample", r.n)?,
                Some(c) => writeln!(s, "{pred} n={}: w={} h={} {}", r.n, c.w, c.h, c.detail)?,
            }
        }
        return Ok((s, true));
    }

    let fmt = cli.format(Format::Text, &[Format::Text, Format::Json, Format::Csv])?;
    if fmt == Format::Csv {
        let mut s = String::from(SweepRow::CSV_HEADER);
        s.push('\n');
        for n in sizes.lo..=sizes.hi {
            for row in sweep_rows(n, &opts)? {
                s.push_str(&row.to_csv());
                s.push('\n');
            }
        }
        return Ok((s, true));
    }

    let ids = theorems(theorem)?;
    let mut reports = Vec::new();
    for &id in &ids {
        for n in sizes.lo..=sizes.hi {
            let r = verify_theorem(id, n, &opts)?;
            if timing {
                eprintln!("{id} n={n}: {:.3?}", r.wall_time);
            }
            reports.push(r);
        }
    }
    let all_passed = reports.iter().all(|r| r.passed());
    if fmt == Format::Json {
        let out = VerifyOutput {
            all_passed,
            reports,
        };
        return Ok((to_json(&out)?, all_passed));
    }
    let mut s = String::new();
    for r in &reports {
        write!(
            s,
            "{} {} n={} pairs={}/{} checked={} checks={} failures={}",
            status_word(r.status),
            r.theorem_id,
            r.n,
            r.pairs_swept,
            r.expected_pairs(),
            r.pairs_checked,
            r.checks,
            r.failure_count
        )?;
        for (reason, count) in &r.skips {
            write!(s, " skipped[{reason}]={count}")?;
        }
        s.push('\n');
        for f in &r.failures {
            match &f.h {
                Some(h) => writeln!(s, "  w={} h={} {}", f.w, h, f.detail)?,
                None => writeln!(s, "  w={} {}", f.w, f.detail)?,
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(s, "{} of {} passed", reports.len() - failed, reports.len())?;
    Ok((s, all_passed))
}

fn status_word(status: Status) -> &'static str {
    match status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Incomplete => "INCOMPLETE",
    }
}

#[derive(Serialize)]
struct HessRow {
    hess: HessenbergFunction,
    dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Permutation>>,
}

fn enumerate(cli: &Cli, what: Listing) -> Result<String> {
    if what == Listing::Incomparability {
        cli.format(Format::Dot, &[Format::Dot])?;
        return Ok(incomparability_graph(cli.hess()?).to_dot());
    }
    let fmt = cli.format(Format::Text, &[Format::Text, Format::Json])?;
    let hs = match &cli.hess {
        Some(h) => vec![h.clone()],
        None => {
            let r = cli.sizes()?;
            if r.hi > 12 {
                return usage(format!("--n {} is too large to enumerate", r.hi));
            }
            (r.lo..=r.hi).flat_map(enumerate_hessenberg).collect()
        }
    };
    if what == Listing::Generators && hs.iter().any(|h| h.n() > 9) {
        return usage("generators are listed for n <= 9 only");
    }
    let rows: Vec<HessRow> = hs
        .into_iter()
        .map(|h| HessRow {
            dimension: h.dimension(),
            generators: (what == Listing::Generators).then(|| generators(&h)),
            hess: h,
        })
        .collect();
    if fmt == Format::Json {
        return to_json(&rows);
    }
    let mut s = String::new();
    for r in &rows {
        match &r.generators {
            None => writeln!(s, "{} {}", r.hess, r.dimension)?,
            Some(gs) => {
                let g: Vec<String> = gs.iter().map(|x| x.to_string()).collect();
                writeln!(s, "{} {}: {}", r.hess, gs.len(), g.join(" "))?
            }
        }
    }
    Ok(s)
}

fn run(cli: &Cli) -> Result<bool> {
    cli.check_sizes()?;
    let (out, ok) = match &cli.command {
        Command::Query => (query(cli)?, true),
        Command::Graph { show_excluded } => (graph(cli, *show_excluded)?, true),
        Command::Patterns => (patterns(cli)?, true),
        Command::Profile => (profile_cmd(cli)?, true),
        Command::Verify {
            theorem,
            predicate,
            timing,
        } => verify(cli, theorem, *predicate, *timing)?,
        Command::Enumerate { what } => (enumerate(cli, *what)?, true),
    };
    print!("{out}");
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
