use std::io::{self, Write};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use gf2trace::bijection::{certify, check_lemma, transition_census, Direction, LEMMA_TABLE};
use gf2trace::counting::{analytic_row_from, predicted_row_from, CountingTables};
use gf2trace::enumerate::{reference_row, DEFAULT_MAX_DEGREE, LONG_RUN_MAX_DEGREE};
use gf2trace::sri::{enumerate_sri1, parity_verdict, sri_pairing};
use gf2trace::transforms::{gl2_apply, psi, psi_inv, q_root, q_transform};
use gf2trace::{classify_all, format, parse, reciprocal, Bucket, Gl2Matrix, Poly, ScanConfig, Style};

use crate::report::{write_count_rows, write_csv, write_json, CountRow, OutputFormat};
use crate::{Cli, Command, DegreeRange, Method, PolyStyle, TransformOp};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] gf2trace::Error),
    #[error("output failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Lib(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn scan_config(cli: &Cli, long_run: bool) -> ScanConfig {
    let base = ScanConfig::with_parallelism(cli.threads.unwrap_or(0));
    if long_run {
        base.long_run()
    } else {
        base
    }
}

fn check_range(min: u32, max: u32, lowest: u32, highest: u32, what: &str) -> CliResult<()> {
    if min < lowest || max < min || max > highest {
        let hint = if max > DEFAULT_MAX_DEGREE && highest == DEFAULT_MAX_DEGREE {
            " (pass --long-run for degrees up to 32)"
        } else {
            ""
        };
        return Err(usage(format!("{what} degree range {min}..={max} must lie within {lowest}..={highest}{hint}")));
    }
    Ok(())
}

fn parse_poly(text: &str) -> CliResult<Poly> {
    parse::<u64>(text).map_err(|e| usage(e.to_string()))
}

/// Runs the selected subcommand; `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> CliResult<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Counts { range, method, field_budget, long_run } => {
            counts(cli, &mut out, range, *method, *field_budget, *long_run)
        }
        Command::Table { range, long_run } => table(cli, &mut out, range, *long_run),
        Command::Verify { n_min, n_max, long_run } => verify(cli, &mut out, *n_min, *n_max, *long_run),
        Command::Classify { poly } => classify(cli, &mut out, poly),
        Command::Transform { op, matrix, style, poly } => {
            transform(cli, &mut out, *op, matrix.as_deref(), *style, poly)
        }
        Command::Bijection { min, max, samples, seed } => bijection(cli, &mut out, *min, *max, *samples, *seed),
        Command::Sri { n } => sri(cli, &mut out, *n),
        Command::Bench { n, threshold_ms } => bench(cli, &mut out, *n, *threshold_ms),
    }
}

fn counts(
    cli: &Cli,
    out: &mut impl Write,
    range: &DegreeRange,
    method: Method,
    field_budget: u32,
    long_run: bool,
) -> CliResult<bool> {
    let config = scan_config(cli, long_run);
    let needs_enum = matches!(method, Method::Enumerate | Method::All);
    let needs_field = !matches!(method, Method::Enumerate);
    if needs_enum {
        check_range(range.min, range.max, 2, config.max_degree, "enumeration")?;
    }
    if needs_field {
        let cap = field_budget.min(32);
        check_range(range.min, range.max, 2, cap, "field")?;
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for n in range.min..=range.max {
        let mut per_method = Vec::new();
        if needs_enum {
            let c = classify_all(n, &config)?;
            per_method.push(CountRow::new(n, c.counts, "enumerate", c.elapsed_ms));
        }
        if needs_field {
            let start = Instant::now();
            let tables = config.install(|| CountingTables::build(n, field_budget))?;
            let field_ms = start.elapsed().as_millis() as u64;
            if matches!(method, Method::Field | Method::All) {
                per_method.push(CountRow::new(n, predicted_row_from(&tables)?.counts(), "field", field_ms));
            }
            if matches!(method, Method::Analytic | Method::All) {
                per_method.push(CountRow::new(n, analytic_row_from(&tables)?.counts(), "analytic", field_ms));
            }
        }
        if method == Method::All {
            let agree = per_method.windows(2).all(|w| w[0].counts() == w[1].counts());
            if agree {
                let elapsed = per_method.iter().map(|r| r.elapsed_ms).sum();
                rows.push(CountRow::new(n, per_method[0].counts(), "all", elapsed));
            } else {
                eprintln!("n = {n}: counting routes disagree");
                ok = false;
                rows.extend(per_method);
            }
        } else {
            rows.extend(per_method);
        }
    }
    write_count_rows(out, cli.format, &rows)?;
    Ok(ok)
}

fn table(cli: &Cli, out: &mut impl Write, range: &DegreeRange, long_run: bool) -> CliResult<bool> {
    let config = scan_config(cli, long_run);
    check_range(range.min, range.max, 2, config.max_degree, "enumeration")?;
    let mut rows = Vec::new();
    for n in range.min..=range.max {
        let c = classify_all(n, &config)?;
        rows.push(CountRow::new(n, c.counts, &c.method, c.elapsed_ms));
    }
    write_count_rows(out, cli.format, &rows)?;
    Ok(true)
}

fn verify(cli: &Cli, out: &mut impl Write, n_min: u32, n_max: u32, long_run: bool) -> CliResult<bool> {
    let config = scan_config(cli, long_run);
    check_range(n_min, n_max, 2, config.max_degree.min(LONG_RUN_MAX_DEGREE), "verify")?;
    let mut rows = Vec::new();
    let mut failed = Vec::new();
    for n in n_min..=n_max {
        let c = classify_all(n, &config)?;
        let expected = reference_row(n).expect("reference covers 2..=32");
        let pass = c.counts == expected;
        if cli.format == OutputFormat::Text {
            let status = if pass { "PASS" } else { "FAIL" };
            writeln!(out, "n={n:<2} {status} expected {expected:?} got {:?} ({} ms)", c.counts, c.elapsed_ms)?;
            out.flush()?;
        }
        if !pass {
            let cells: Vec<String> = Bucket::ALL
                .into_iter()
                .filter(|b| c.get(*b) != expected[b.index()])
                .map(|b| format!("{b}: expected {} got {}", expected[b.index()], c.get(b)))
                .collect();
            eprintln!("n = {n}: mismatch in {}", cells.join(", "));
            failed.push(n);
        }
        rows.push(CountRow::new(n, c.counts, &c.method, c.elapsed_ms));
    }
    match cli.format {
        OutputFormat::Text => {
            let total = rows.len();
            writeln!(out, "{} of {total} rows match", total - failed.len())?;
        }
        other => write_count_rows(out, other, &rows)?,
    }
    Ok(failed.is_empty())
}

#[derive(Serialize)]
struct Classification {
    poly: String,
    degree: u32,
    irreducible: bool,
    bucket: Option<String>,
    trace: Option<u8>,
    cotrace: Option<u8>,
    signature: Option<u8>,
}

fn classify(cli: &Cli, out: &mut impl Write, text: &str) -> CliResult<bool> {
    let f = parse_poly(text)?;
    let degree = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(usage("constant polynomials are not classified")),
    };
    let irreducible = f.is_irreducible()?;
    let mut c = Classification {
        poly: format(f, Style::Hex),
        degree,
        irreducible,
        bucket: None,
        trace: None,
        cotrace: None,
        signature: None,
    };
    if irreducible && degree >= 2 {
        let b = gf2trace::bucket(f)?;
        c.bucket = Some(b.to_string());
        c.trace = Some(b.trace as u8);
        c.cotrace = Some(b.cotrace as u8);
        c.signature = Some(gf2trace::signature(f)? as u8);
    }
    match cli.format {
        OutputFormat::Json => write_json(out, &c)?,
        OutputFormat::Csv => write_csv(out, &[c])?,
        OutputFormat::Text => match (&c.bucket, c.signature) {
            (Some(b), Some(s)) => writeln!(out, "irreducible, bucket {b}, signature {s}")?,
            _ if irreducible => writeln!(out, "irreducible, degree 1 (buckets start at degree 2)")?,
            _ => writeln!(out, "reducible")?,
        },
    }
    Ok(true)
}

fn parse_matrix(text: &str) -> CliResult<Gl2Matrix> {
    let entries: Vec<bool> = text
        .split(',')
        .map(|e| match e.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(usage(format!("matrix entry {other:?} must be 0 or 1"))),
        })
        .collect::<CliResult<_>>()?;
    let [a, b, c, d] = entries[..] else {
        return Err(usage("matrix needs four entries a,b,c,d"));
    };
    Gl2Matrix::new(a, b, c, d).map_err(|e| usage(e.to_string()))
}

#[derive(Serialize)]
struct TransformResult {
    op: String,
    input: String,
    output: String,
}

fn transform(
    cli: &Cli,
    out: &mut impl Write,
    op: TransformOp,
    matrix: Option<&str>,
    style: PolyStyle,
    text: &str,
) -> CliResult<bool> {
    let f = parse_poly(text)?;
    if matrix.is_some() && op != TransformOp::Gl2 {
        return Err(usage("--matrix only applies to --op gl2"));
    }
    let g = match op {
        TransformOp::Psi => psi(f)?,
        TransformOp::PsiInv => psi_inv(f)?,
        TransformOp::Reciprocal => reciprocal(f)?,
        TransformOp::Q => q_transform(f)?,
        TransformOp::QRoot => q_root(f)?,
        TransformOp::Gl2 => {
            let m = parse_matrix(matrix.ok_or_else(|| usage("--op gl2 needs --matrix a,b,c,d"))?)?;
            gl2_apply(m, f)?
        }
    };
    let style = match style {
        PolyStyle::Hex => Style::Hex,
        PolyStyle::Symbolic => Style::Symbolic,
    };
    let result =
        TransformResult { op: format!("{op:?}").to_lowercase(), input: format(f, style), output: format(g, style) };
    match cli.format {
        OutputFormat::Json => write_json(out, &result)?,
        OutputFormat::Csv => write_csv(out, &[result])?,
        OutputFormat::Text => writeln!(out, "{}", result.output)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct BijectionSummary {
    n: u32,
    s11: usize,
    s00: usize,
    injective: bool,
    image_is_s00: bool,
    rho_phi_identity: bool,
    phi_rho_identity: bool,
    signature_flips: bool,
    lemma_clause_hits: [usize; 8],
    lemma_counterexamples: usize,
    sample: Vec<(String, String)>,
    verdict: String,
}

#[derive(Serialize)]
struct CensusRow {
    n: u32,
    source: String,
    signature: u8,
    direction: Direction,
    target: String,
    count: usize,
}

fn bijection(cli: &Cli, out: &mut impl Write, min: u32, max: u32, samples: usize, seed: u64) -> CliResult<bool> {
    let config = scan_config(cli, false);
    check_range(min, max, 3, config.max_degree, "bijection")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summaries = Vec::new();
    let mut census = Vec::new();
    for n in min..=max {
        if n % 2 == 0 {
            for ((source, sigma, direction), targets) in transition_census(n, &config)? {
                if source != Bucket::S00 && source != Bucket::S11 {
                    continue;
                }
                for (target, count) in targets {
                    census.push(CensusRow {
                        n,
                        source: source.to_string(),
                        signature: sigma as u8,
                        direction,
                        target: target.to_string(),
                        count,
                    });
                }
            }
            continue;
        }
        let cert = certify(n, &config)?;
        let lemma = check_lemma(n, &config)?;
        let k = samples.min(cert.pairs.len());
        let mut picks = rand::seq::index::sample(&mut rng, cert.pairs.len(), k).into_vec();
        picks.sort_unstable();
        let sample = picks
            .into_iter()
            .map(|i| {
                let (f, g) = cert.pairs[i];
                (format(f, Style::Hex), format(g, Style::Hex))
            })
            .collect();
        let pass = cert.passed() && lemma.passed();
        summaries.push(BijectionSummary {
            n,
            s11: cert.s11,
            s00: cert.s00,
            injective: cert.injective,
            image_is_s00: cert.image_is_s00,
            rho_phi_identity: cert.rho_phi_identity,
            phi_rho_identity: cert.phi_rho_identity,
            signature_flips: cert.signature_flips,
            lemma_clause_hits: lemma.hits,
            lemma_counterexamples: lemma.counterexamples.len(),
            sample,
            verdict: if pass { "PASS" } else { "FAIL" }.to_owned(),
        });
    }
    let ok = summaries.iter().all(|s| s.verdict == "PASS");
    match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                certificates: &'a [BijectionSummary],
                even_degree_census: &'a [CensusRow],
            }
            write_json(out, &Doc { certificates: &summaries, even_degree_census: &census })?;
        }
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Flat {
                n: u32,
                s11: usize,
                s00: usize,
                injective: bool,
                image_is_s00: bool,
                rho_phi_identity: bool,
                phi_rho_identity: bool,
                signature_flips: bool,
                lemma_counterexamples: usize,
                verdict: String,
            }
            let flat: Vec<Flat> = summaries
                .iter()
                .map(|s| Flat {
                    n: s.n,
                    s11: s.s11,
                    s00: s.s00,
                    injective: s.injective,
                    image_is_s00: s.image_is_s00,
                    rho_phi_identity: s.rho_phi_identity,
                    phi_rho_identity: s.phi_rho_identity,
                    signature_flips: s.signature_flips,
                    lemma_counterexamples: s.lemma_counterexamples,
                    verdict: s.verdict.clone(),
                })
                .collect();
            write_csv(out, &flat)?;
        }
        OutputFormat::Text => {
            let yes = |b: bool| if b { "yes" } else { "NO" };
            for s in &summaries {
                writeln!(
                    out,
                    "n={}: |S_{{1,1}}|={} |S_{{0,0}}|={} injective={} image=S_{{0,0}}:{} rho.phi=id:{} phi.rho=id:{} \
                     signature-flip:{} lemma clauses {}/8 exercised, {} counterexamples => {}",
                    s.n,
                    s.s11,
                    s.s00,
                    yes(s.injective),
                    yes(s.image_is_s00),
                    yes(s.rho_phi_identity),
                    yes(s.phi_rho_identity),
                    yes(s.signature_flips),
                    s.lemma_clause_hits.iter().filter(|&&h| h > 0).count(),
                    s.lemma_counterexamples,
                    s.verdict
                )?;
                for (f, g) in &s.sample {
                    writeln!(out, "    phi({f}) = {g}")?;
                }
            }
            if !summaries.is_empty() {
                writeln!(out, "transition table:")?;
                for c in &LEMMA_TABLE {
                    writeln!(out, "    {} sigma={} {:?} -> {}", c.source, c.signature as u8, c.direction, c.target)?;
                }
            }
            for r in &census {
                writeln!(
                    out,
                    "n={} (even, observed only): {} sigma={} {:?} -> {} x{}",
                    r.n, r.source, r.signature, r.direction, r.target, r.count
                )?;
            }
        }
    }
    Ok(ok)
}

#[derive(Serialize)]
struct SriReport {
    n: u32,
    members: Vec<String>,
    pairs: Vec<(String, String)>,
    fixed: Vec<String>,
    half_degree_members: Option<usize>,
    predicted_s11_parity_odd: bool,
    verdict: String,
}

fn sri(cli: &Cli, out: &mut impl Write, n: u32) -> CliResult<bool> {
    let config = scan_config(cli, false);
    if n == 0 || n > 2 * config.max_degree {
        return Err(usage(format!("sri degree must lie within 1..={}", 2 * config.max_degree)));
    }
    let hex = |f: &Poly| format(*f, Style::Hex);
    let members = enumerate_sri1(n, &config)?;
    let mut report = SriReport {
        n,
        members: members.iter().map(hex).collect(),
        pairs: Vec::new(),
        fixed: Vec::new(),
        half_degree_members: None,
        predicted_s11_parity_odd: parity_verdict(n),
        verdict: String::new(),
    };
    let mut ok = if n == 1 { members.len() == 1 } else { (members.len() % 2 == 1) == parity_verdict(n) };
    if n.is_multiple_of(2) {
        let part = sri_pairing(n, &config)?;
        let half = enumerate_sri1(n / 2, &config)?;
        ok &= part.fixed.len() == half.len() && part.size() == members.len();
        report.pairs = part.pairs.iter().map(|(f, g)| (hex(f), hex(g))).collect();
        report.fixed = part.fixed.iter().map(hex).collect();
        report.half_degree_members = Some(half.len());
    } else {
        ok &= n == 1 || members.is_empty();
    }
    report.verdict = if ok { "PASS" } else { "FAIL" }.to_owned();
    match cli.format {
        OutputFormat::Json => write_json(out, &report)?,
        OutputFormat::Csv => {
            #[derive(Serialize)]
            struct Line<'a> {
                role: &'a str,
                poly: &'a str,
                partner: &'a str,
            }
            let mut lines = Vec::new();
            for (f, g) in &report.pairs {
                lines.push(Line { role: "pair", poly: f, partner: g });
            }
            for f in &report.fixed {
                lines.push(Line { role: "fixed", poly: f, partner: f });
            }
            if n % 2 == 1 {
                for f in &report.members {
                    lines.push(Line { role: "member", poly: f, partner: "" });
                }
            }
            write_csv(out, &lines)?;
        }
        OutputFormat::Text => {
            writeln!(out, "SRI_1({n}): {} members", report.members.len())?;
            for m in &report.members {
                writeln!(out, "    {m}")?;
            }
            if let Some(half) = report.half_degree_members {
                writeln!(
                    out,
                    "pairs: {}, fixed points: {}, |SRI_1({})| = {half}",
                    report.pairs.len(),
                    report.fixed.len(),
                    n / 2
                )?;
                for (f, g) in &report.pairs {
                    writeln!(out, "    {f} <-> {g}")?;
                }
            }
            let parity = if report.predicted_s11_parity_odd { "odd" } else { "even" };
            writeln!(out, "predicted parity of |S_{{1,1}}({n})|: {parity}")?;
            writeln!(out, "{}", report.verdict)?;
        }
    }
    Ok(ok)
}

#[derive(Serialize)]
struct BenchReport {
    n: u32,
    threads: usize,
    elapsed_ms: u64,
    threshold_ms: u64,
    counts_match_reference: Option<bool>,
    verdict: String,
}

fn bench(cli: &Cli, out: &mut impl Write, n: u32, threshold_ms: u64) -> CliResult<bool> {
    let config = scan_config(cli, false);
    check_range(n, n, 2, config.max_degree, "bench")?;
    let c = classify_all(n, &config)?;
    let matches = reference_row(n).map(|r| r == c.counts);
    let ok = c.elapsed_ms < threshold_ms && matches != Some(false);
    let report = BenchReport {
        n,
        threads: config.threads(),
        elapsed_ms: c.elapsed_ms,
        threshold_ms,
        counts_match_reference: matches,
        verdict: if ok { "PASS" } else { "FAIL" }.to_owned(),
    };
    match cli.format {
        OutputFormat::Json => write_json(out, &report)?,
        OutputFormat::Csv => write_csv(out, &[report])?,
        OutputFormat::Text => writeln!(
            out,
            "classify_all({n}) on {} threads: {} ms (threshold {} ms) => {}",
            report.threads, report.elapsed_ms, report.threshold_ms, report.verdict
        )?,
    }
    Ok(ok)
}
