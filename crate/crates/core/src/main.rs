//! Command-line surface for the apolarity toolkit.
//!
//! Invariant commands (`hf`, `decomp`, `ntable`, `jordan`, …) take a dual
//! generator via `--dual` and print a human-readable report, or one JSON
//! document with `--json`.  `search` runs the seeded Monte Carlo search and
//! emits newline-delimited records; `corpus` runs the regression corpus.
//!
//! Exit status: 0 on success, 1 on computation error (or failing corpus
//! entries), 2 on usage error.

use apolar::apolar::ApolarAlgebra;
use apolar::dpoly::{Poly, RPoly, VariableSet};
use apolar::field::{check_prime, Field, Fp, Rat, DEFAULT_PRIME};
use apolar::jordan::{
    generic_jordan_type, jordan_strings, jordan_type, jordan_type_graded, jordan_type_q,
    sl_check, SampleMode, SlVerdict,
};
use apolar::parse::{parse_acting, parse_dual, Convention};
use apolar::partitions::{conjugate_of_sequence, contiguous, Partition};
use apolar::report::{
    cmp_label, compare_partitions, ntable_entries, InputEcho,
    InvariantReport, JordanEntry, NTableEntry,
};
use apolar::sdecomp::{
    decomposition_order, enumerate_candidates, ntable_direct, q_dimensions, q0_obstruction,
    specialization_blockers, SymmetricDecomposition,
};
use apolar::search::{run_search, summarize, SearchConfig};
use clap::{Parser, Subcommand};
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "apolar", version, about = "Invariants of Artinian Gorenstein algebras from Macaulay dual generators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Acting variables, comma separated; dual variables are the uppercase
    /// counterparts.
    #[arg(long, global = true, default_value = "x,y,z")]
    vars: String,
    /// Coefficient field: `q` (rationals) or `fp:P` (prime field).
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Meaning of unbracketed powers on dual variables.
    #[arg(long = "power-convention", global = true, default_value = "divided")]
    power_convention: Convention,
    /// Emit one JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Master seed for anything randomized.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for search.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert function of R/Ann F.
    Hf {
        #[arg(long)]
        dual: String,
    },
    /// Symmetric decomposition D(A).
    Decomp {
        #[arg(long)]
        dual: String,
    },
    /// The N_{i,b} obstruction table (direct subspace computation).
    Ntable {
        #[arg(long)]
        dual: String,
    },
    /// Jordan types of multiplication maps.
    Jordan {
        #[arg(long)]
        dual: String,
        /// Element of the maximal ideal; repeatable.
        #[arg(long)]
        ell: Vec<String>,
        /// Also sample a generic element.
        #[arg(long)]
        generic: bool,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value = "linear")]
        mode: SampleMode,
        /// Also report the Jordan type on the associated graded algebra.
        #[arg(long)]
        also_graded: bool,
        /// Also report the Jordan type on each nonzero Q(a).
        #[arg(long)]
        also_q: bool,
    },
    /// Strong Lefschetz verdict at an element (or a sampled generic one).
    SlCheck {
        #[arg(long)]
        dual: String,
        #[arg(long)]
        ell: Option<String>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Jordan strings (a string basis) for multiplication by an element.
    Strings {
        #[arg(long)]
        dual: String,
        #[arg(long)]
        ell: String,
    },
    /// Enumerate admissible symmetric-decomposition candidates for H.
    Enumerate {
        /// Hilbert function, comma separated.
        #[arg(long)]
        hf: String,
    },
    /// Pairwise specialization obstructions among decompositions.
    Obstructions {
        /// Enumerate candidates for this Hilbert function.
        #[arg(long)]
        hf: Option<String>,
        /// JSON file: array of row systems, or of {rows, jordan_type}.
        #[arg(long = "from-file")]
        from_file: Option<std::path::PathBuf>,
    },
    /// Closed-form dimension counts for codimension-two strata.
    Dims {
        /// Which formula: `zt` or `gt`.
        which: String,
        #[arg(long)]
        hf: String,
    },
    /// Exotic-summand parameter count for a decomposition.
    ExoticCount {
        /// Decomposition rows as JSON (array of arrays).
        #[arg(long)]
        decomp: String,
        #[arg(long)]
        a: usize,
    },
    /// Modification bound M and H+M.
    ModBound {
        #[arg(long)]
        hf: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: usize,
    },
    /// Hilbert functions of R/I² and of the conormal module I/I².
    Isq {
        #[arg(long)]
        dual: String,
    },
    /// Order of the partial g∘F.
    Order {
        #[arg(long)]
        dual: String,
        #[arg(long)]
        g: String,
    },
    /// Seeded Monte Carlo search over a prime field.
    Search {
        /// Dual-generator shape with rand(d) / rand(d;VARS) markers.
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Append records to this JSONL file instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run the regression corpus.
    Corpus,
}

enum AppError {
    Usage(String),
    Compute(String),
}

impl AppError {
    fn compute<E: std::fmt::Display>(e: E) -> Self {
        AppError::Compute(e.to_string())
    }
}

type AppResult = Result<(), AppError>;

#[derive(Clone, Copy)]
enum FieldSpec {
    Q,
    Prime(u64),
}

struct Globals {
    vars: VariableSet,
    field: FieldSpec,
    field_text: String,
    conv: Convention,
    json: bool,
    seed: Option<u64>,
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let globals = match make_globals(&cli) {
        Ok(g) => g,
        Err(AppError::Usage(m)) => {
            eprintln!("usage error: {m}");
            return ExitCode::from(2);
        }
        Err(AppError::Compute(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.cmd, &globals) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(AppError::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn make_globals(cli: &Cli) -> Result<Globals, AppError> {
    let vars = VariableSet::parse(&cli.vars)
        .map_err(|e| AppError::Usage(format!("--vars: {e}")))?;
    let field = match cli.field.as_str() {
        "q" => FieldSpec::Q,
        "fp" => FieldSpec::Prime(DEFAULT_PRIME),
        other => match other.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| AppError::Usage(format!("--field: bad prime `{p}`")))?;
                check_prime(p).map_err(|e| AppError::Usage(format!("--field: {e}")))?;
                FieldSpec::Prime(p)
            }
            None => {
                return Err(AppError::Usage(format!(
                    "--field must be `q` or `fp:P`, got `{other}`"
                )))
            }
        },
    };
    Ok(Globals {
        vars,
        field,
        field_text: cli.field.clone(),
        conv: cli.power_convention,
        json: cli.json,
        seed: cli.seed,
        jobs: cli.jobs,
    })
}

/// Runs `$body` with `F` bound to the concrete field and `$ctx` to its
/// context value.
macro_rules! with_field {
    ($g:expr, $f:ident, $ctx:ident, $body:block) => {
        match $g.field {
            FieldSpec::Q => {
                type $f = Rat;
                let $ctx: <$f as Field>::Ctx = ();
                $body
            }
            FieldSpec::Prime(p) => {
                type $f = Fp;
                let $ctx: <$f as Field>::Ctx = p;
                $body
            }
        }
    };
}

fn run(cmd: &Cmd, g: &Globals) -> AppResult {
    match cmd {
        Cmd::Hf { dual } => with_field!(g, F, ctx, {
            let a = build::<F>(g, dual, ctx)?;
            report(g, dual, &a, Report::default())
        }),
        Cmd::Decomp { dual } => with_field!(g, F, ctx, {
            let a = build::<F>(g, dual, ctx)?;
            let d = q_dimensions(&a);
            report(g, dual, &a, Report { decomposition: Some(d), ..Report::default() })
        }),
        Cmd::Ntable { dual } => with_field!(g, F, ctx, {
            let a = build::<F>(g, dual, ctx)?;
            let t = ntable_entries(&ntable_direct(&a));
            report(g, dual, &a, Report { n_table: Some(t), ..Report::default() })
        }),
        Cmd::Jordan { dual, ell, generic, samples, mode, also_graded, also_q } => {
            with_field!(g, F, ctx, {
                cmd_jordan::<F>(g, dual, ctx, ell, *generic, *samples, *mode, *also_graded, *also_q)
            })
        }
        Cmd::SlCheck { dual, ell, samples } => with_field!(g, F, ctx, {
            cmd_sl_check::<F>(g, dual, ctx, ell.as_deref(), *samples)
        }),
        Cmd::Strings { dual, ell } => with_field!(g, F, ctx, {
            cmd_strings::<F>(g, dual, ctx, ell)
        }),
        Cmd::Enumerate { hf } => cmd_enumerate(g, hf),
        Cmd::Obstructions { hf, from_file } => cmd_obstructions(g, hf.as_deref(), from_file),
        Cmd::Dims { which, hf } => cmd_dims(g, which, hf),
        Cmd::ExoticCount { decomp, a } => cmd_exotic(g, decomp, *a),
        Cmd::ModBound { hf, r, a } => cmd_mod_bound(g, hf, *r, *a),
        Cmd::Isq { dual } => with_field!(g, F, ctx, {
            let a = build::<F>(g, dual, ctx)?;
            let sq = a.hf_ideal_square();
            let conormal = a.hf_conormal();
            emit(g, json!({
                "hilbert_function": a.hilbert_function(),
                "hf_ideal_square": sq,
                "hf_conormal": conormal,
                "conormal_length": conormal.iter().sum::<usize>(),
            }), |out| {
                writeln!(out, "H(R/I)  = {}", seq(a.hilbert_function())).unwrap();
                writeln!(out, "H(R/I²) = {}", seq(&sq)).unwrap();
                writeln!(out, "H(I/I²) = {}", seq(&conormal)).unwrap();
                writeln!(out, "|H(I/I²)| = {}", conormal.iter().sum::<usize>()).unwrap();
            })
        }),
        Cmd::Order { dual, g: gexpr } => with_field!(g, F, ctx, {
            let a = build::<F>(g, dual, ctx)?;
            let h = parse_acting::<F>(gexpr, a.vars(), a.ctx(), g.conv)
                .map_err(AppError::compute)?;
            let o = a.order_of_partial(&h).map_err(AppError::compute)?;
            emit(g, json!({ "order": o }), |out| {
                writeln!(out, "order(g∘F) = {o}").unwrap();
            })
        }),
        Cmd::Search { shape, trials, samples, out } => cmd_search(g, shape, *trials, *samples, out),
        Cmd::Corpus => cmd_corpus(g),
    }
}

fn build<F: Field>(g: &Globals, dual: &str, ctx: F::Ctx) -> Result<ApolarAlgebra<F>, AppError> {
    let f = parse_dual::<F>(dual, &g.vars, &ctx, g.conv).map_err(AppError::compute)?;
    ApolarAlgebra::build(g.vars.clone(), f, ctx).map_err(AppError::compute)
}

fn seq(v: &[usize]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

fn emit<B>(g: &Globals, doc: serde_json::Value, human: B) -> AppResult
where
    B: FnOnce(&mut dyn Write),
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if g.json {
        serde_json::to_writer_pretty(&mut out, &doc).map_err(AppError::compute)?;
        writeln!(out).map_err(AppError::compute)?;
    } else {
        human(&mut out);
    }
    Ok(())
}

#[derive(Default)]
struct Report {
    decomposition: Option<SymmetricDecomposition>,
    n_table: Option<Vec<NTableEntry>>,
    jordan: Option<Vec<JordanEntry>>,
    started: Option<Instant>,
}

fn report<F: Field>(g: &Globals, dual: &str, a: &ApolarAlgebra<F>, parts: Report) -> AppResult {
    let timing_ms = parts.started.map(|t| t.elapsed().as_millis() as u64).unwrap_or(0);
    let rep = InvariantReport {
        input: InputEcho {
            expression: dual.to_string(),
            variables: (0..g.vars.count())
                .map(|i| g.vars.name(i).to_string())
                .collect::<Vec<_>>()
                .join(","),
            field: g.field_text.clone(),
            convention: g.conv.to_string(),
        },
        socle_degree: a.socle_degree(),
        hilbert_function: a.hilbert_function().to_vec(),
        decomposition: parts.decomposition.as_ref().map(|d| d.rows.clone()),
        n_table: parts.n_table.clone(),
        jordan: parts.jordan.clone(),
        timing_ms,
    };
    if g.json {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        serde_json::to_writer_pretty(&mut out, &rep).map_err(AppError::compute)?;
        writeln!(out).map_err(AppError::compute)?;
        return Ok(());
    }
    println!("j = {}", a.socle_degree());
    println!("H = {}", seq(a.hilbert_function()));
    println!("dim A = {}", a.dim());
    if let Some(d) = &parts.decomposition {
        print!("{d}");
    }
    if let Some(t) = &parts.n_table {
        for e in t {
            println!("N_{{{},{}}} = {}", e.i, e.b, e.value);
        }
    }
    if let Some(js) = &parts.jordan {
        for e in js {
            let sl = if e.sl { " (strong Lefschetz)" } else { "" };
            println!("P_{{A,{}}} = {}{}", e.element, seq(&e.partition), sl);
            for (k, v) in &e.comparisons {
                println!("  {k}: {v}");
            }
            if let Some(p) = &e.graded_partition {
                println!("  P_{{A*,{}}} = {}", e.element, seq(p));
            }
            if let Some(qs) = &e.q_partitions {
                for (qa, p) in qs {
                    println!("  P_{{Q({qa}),{}}} = {}", e.element, seq(p));
                }
            }
        }
    }
    Ok(())
}

fn jordan_entry<F: Field>(
    a: &ApolarAlgebra<F>,
    label: &str,
    pt: Partition,
    graded: Option<Partition>,
    qs: Option<Vec<(usize, Partition)>>,
) -> JordanEntry {
    let hconj = conjugate_of_sequence(a.hilbert_function()).unwrap();
    let pch = contiguous(a.hilbert_function()).unwrap();
    let mut comparisons = std::collections::BTreeMap::new();
    comparisons.insert("vs H^v".to_string(), compare_partitions(&pt, &hconj));
    comparisons.insert("vs Pc(H)".to_string(), compare_partitions(&pt, &pch));
    JordanEntry {
        element: label.to_string(),
        sl: pt == hconj,
        partition: pt.parts().to_vec(),
        comparisons,
        graded_partition: graded.map(|p| p.parts().to_vec()),
        q_partitions: qs.map(|v| v.into_iter().map(|(a, p)| (a, p.parts().to_vec())).collect()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_jordan<F: Field>(
    g: &Globals,
    dual: &str,
    ctx: F::Ctx,
    ells: &[String],
    generic: bool,
    samples: usize,
    mode: SampleMode,
    also_graded: bool,
    also_q: bool,
) -> AppResult {
    if ells.is_empty() && !generic {
        return Err(AppError::Usage("jordan needs --ell or --generic".into()));
    }
    let started = Instant::now();
    let a = build::<F>(g, dual, ctx)?;
    let d = q_dimensions(&a);
    let mut entries = Vec::new();
    let mut add = |l: &RPoly<F>, label: &str| -> Result<(), AppError> {
        let pt = jordan_type(&a, l).map_err(AppError::compute)?;
        let graded = if also_graded {
            Some(jordan_type_graded(&a, l).map_err(AppError::compute)?)
        } else {
            None
        };
        let qs = if also_q {
            let mut v = Vec::new();
            for (qa, row) in d.rows.iter().enumerate() {
                if row.iter().any(|&x| x > 0) {
                    v.push((qa, jordan_type_q(&a, qa, l).map_err(AppError::compute)?));
                }
            }
            Some(v)
        } else {
            None
        };
        entries.push(jordan_entry(&a, label, pt, graded, qs));
        Ok(())
    };
    for text in ells {
        let l = parse_acting::<F>(text, a.vars(), a.ctx(), g.conv).map_err(AppError::compute)?;
        add(&l, text)?;
    }
    if generic {
        let seed = g.seed.unwrap_or(0);
        let (pt, disagreed) =
            generic_jordan_type(&a, samples, seed, mode).map_err(AppError::compute)?;
        let label = format!("generic(seed={seed},samples={samples})");
        if !g.json {
            println!("generic sampling seed = {seed}");
            if disagreed {
                println!("warning: samples gave incomparable Jordan types");
            }
        }
        entries.push(jordan_entry(&a, &label, pt, None, None));
    }
    report(g, dual, &a, Report { jordan: Some(entries), started: Some(started), ..Report::default() })
}

fn cmd_sl_check<F: Field>(
    g: &Globals,
    dual: &str,
    ctx: F::Ctx,
    ell: Option<&str>,
    samples: usize,
) -> AppResult {
    let a = build::<F>(g, dual, ctx)?;
    let (verdict, label) = match ell {
        Some(text) => {
            let l = parse_acting::<F>(text, a.vars(), a.ctx(), g.conv)
                .map_err(AppError::compute)?;
            (sl_check(&a, &l).map_err(AppError::compute)?, text.to_string())
        }
        None => {
            let seed = g.seed.unwrap_or(0);
            let (pt, _) = generic_jordan_type(&a, samples, seed, SampleMode::Linear)
                .map_err(AppError::compute)?;
            let benchmark = conjugate_of_sequence(a.hilbert_function()).unwrap();
            let v = if pt == benchmark {
                SlVerdict::StrongLefschetz { partition: pt }
            } else {
                SlVerdict::Not { partition: pt, benchmark }
            };
            (v, format!("generic(seed={seed})"))
        }
    };
    emit(g, json!({
        "element": label,
        "sl": verdict.is_strong_lefschetz(),
        "partition": verdict.partition().parts(),
        "benchmark": conjugate_of_sequence(a.hilbert_function()).unwrap().parts(),
    }), |out| {
        let word = if verdict.is_strong_lefschetz() { "strong Lefschetz" } else { "not strong Lefschetz" };
        writeln!(out, "{label}: {word}, P = {}", seq(verdict.partition().parts())).unwrap();
    })
}

fn cmd_strings<F: Field>(g: &Globals, dual: &str, ctx: F::Ctx, ell: &str) -> AppResult {
    let a = build::<F>(g, dual, ctx)?;
    let l = parse_acting::<F>(ell, a.vars(), a.ctx(), g.conv).map_err(AppError::compute)?;
    let m = a.element_matrix(&l).map_err(AppError::compute)?;
    let strings = jordan_strings(&m);
    let fmt = |coords: &[F]| {
        Poly::from_vec(coords, a.basis_monomials()).format(a.vars(), false)
    };
    let rendered: Vec<Vec<String>> = strings
        .iter()
        .map(|s| s.beads.iter().map(|b| fmt(b)).collect())
        .collect();
    emit(g, json!({
        "element": ell,
        "partition": strings.iter().map(|s| s.len()).collect::<Vec<_>>(),
        "strings": rendered,
    }), |out| {
        for (i, beads) in rendered.iter().enumerate() {
            writeln!(out, "string {} (length {}):", i + 1, beads.len()).unwrap();
            for b in beads {
                writeln!(out, "  {b}").unwrap();
            }
        }
    })
}

fn parse_csv(text: &str) -> Result<Vec<usize>, AppError> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| AppError::Usage(format!("bad integer sequence `{text}`")))
}

fn cmd_enumerate(g: &Globals, hf: &str) -> AppResult {
    let h = parse_csv(hf)?;
    let (found, exact) = enumerate_candidates(&h);
    emit(g, json!({
        "hilbert_function": h,
        "exact": exact,
        "candidates": found.iter().map(|d| d.rows.clone()).collect::<Vec<_>>(),
    }), |out| {
        writeln!(out, "{} candidate decomposition(s) for H = {}", found.len(), seq(&h)).unwrap();
        if !exact {
            writeln!(out, "(necessary conditions only in this codimension; list may overcount)")
                .unwrap();
        }
        for (i, d) in found.iter().enumerate() {
            writeln!(out, "candidate {}:", i + 1).unwrap();
            write!(out, "{d}").unwrap();
        }
    })
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum DecompInput {
    Tagged { rows: Vec<Vec<usize>>, jordan_type: Option<Vec<usize>> },
    Plain(Vec<Vec<usize>>),
}

fn cmd_obstructions(
    g: &Globals,
    hf: Option<&str>,
    from_file: &Option<std::path::PathBuf>,
) -> AppResult {
    let mut ds: Vec<(SymmetricDecomposition, Option<Partition>)> = Vec::new();
    if let Some(hf) = hf {
        let h = parse_csv(hf)?;
        let (found, _) = enumerate_candidates(&h);
        ds.extend(found.into_iter().map(|d| (d, None)));
    }
    if let Some(path) = from_file {
        let text = std::fs::read_to_string(path).map_err(AppError::compute)?;
        let items: Vec<DecompInput> = serde_json::from_str(&text).map_err(AppError::compute)?;
        for item in items {
            let (rows, jt) = match item {
                DecompInput::Tagged { rows, jordan_type } => {
                    (rows, jordan_type.map(Partition::new))
                }
                DecompInput::Plain(rows) => (rows, None),
            };
            ds.push((SymmetricDecomposition::from_rows(rows).map_err(AppError::compute)?, jt));
        }
    }
    if ds.len() < 2 {
        return Err(AppError::Usage(
            "obstructions needs at least two decompositions (--hf and/or --from-file)".into(),
        ));
    }
    let mut pairs = Vec::new();
    for (si, (s, s_jt)) in ds.iter().enumerate() {
        for (ti, (t, t_jt)) in ds.iter().enumerate() {
            if si == ti {
                continue;
            }
            let order = decomposition_order(s, t).map_err(AppError::compute)?;
            let blockers = match (s_jt, t_jt) {
                (Some(ps), Some(pt)) => {
                    specialization_blockers(s, t, ps, pt).map_err(AppError::compute)?
                }
                _ => {
                    let mut v = Vec::new();
                    if let Some(i) = q0_obstruction(s, t).map_err(AppError::compute)? {
                        v.push(format!("Q(0) dimension drops at degree i = {i}"));
                    }
                    let ns = apolar::sdecomp::ntable_formula(s);
                    let nt = apolar::sdecomp::ntable_formula(t);
                    for (&(i, b), &tv) in &nt.values {
                        if let Some(sv) = ns.get(i, b) {
                            if tv > sv {
                                v.push(format!(
                                    "N_{{{i},{b}}} rises from {sv} to {tv} under specialization"
                                ));
                            }
                        }
                    }
                    v
                }
            };
            pairs.push(json!({
                "from": si + 1,
                "to": ti + 1,
                "order": cmp_label(order),
                "blocked": !blockers.is_empty(),
                "blockers": blockers,
            }));
        }
    }
    let doc = json!({
        "decompositions": ds.iter().map(|(d, _)| d.rows.clone()).collect::<Vec<_>>(),
        "pairs": pairs,
    });
    emit(g, doc.clone(), |out| {
        for (i, (d, jt)) in ds.iter().enumerate() {
            writeln!(out, "decomposition {}:", i + 1).unwrap();
            write!(out, "{d}").unwrap();
            if let Some(p) = jt {
                writeln!(out, "  Jordan type {p}").unwrap();
            }
        }
        for p in doc["pairs"].as_array().unwrap() {
            let verdict = if p["blocked"].as_bool().unwrap() { "blocked" } else { "no obstruction found" };
            writeln!(
                out,
                "{} → {} (order {}): {}",
                p["from"], p["to"], p["order"].as_str().unwrap(), verdict
            )
            .unwrap();
            for b in p["blockers"].as_array().unwrap() {
                writeln!(out, "  - {}", b.as_str().unwrap()).unwrap();
            }
        }
    })
}

fn cmd_dims(g: &Globals, which: &str, hf: &str) -> AppResult {
    let h = parse_csv(hf)?;
    let value = match which {
        "zt" => apolar::formulas::dim_zt(&h).map_err(AppError::compute)?,
        "gt" => apolar::formulas::dim_gt(&h).map_err(AppError::compute)?,
        other => return Err(AppError::Usage(format!("dims takes `zt` or `gt`, got `{other}`"))),
    };
    emit(g, json!({ "formula": which, "hilbert_function": h, "dimension": value }), |out| {
        writeln!(out, "dim = {value}").unwrap();
    })
}

fn cmd_exotic(g: &Globals, decomp: &str, a: usize) -> AppResult {
    let rows: Vec<Vec<usize>> = serde_json::from_str(decomp)
        .map_err(|e| AppError::Usage(format!("--decomp: {e}")))?;
    let d = SymmetricDecomposition::from_rows(rows).map_err(AppError::compute)?;
    let (count, hypotheses_met) = apolar::formulas::exotic_dimension(&d, a);
    emit(g, json!({ "a": a, "dimension": count, "hypotheses_met": hypotheses_met }), |out| {
        writeln!(out, "exotic parameter count = {count}").unwrap();
        if !hypotheses_met {
            writeln!(out, "(hypotheses n_{{a-1}} = 2, n_a = 3 not met; count is formal)").unwrap();
        }
    })
}

fn cmd_mod_bound(g: &Globals, hf: &str, r: usize, a: usize) -> AppResult {
    let h = parse_csv(hf)?;
    let m = apolar::formulas::modification_bound(&h, r, a).map_err(AppError::compute)?;
    let sum: Vec<usize> = h.iter().zip(&m).map(|(x, y)| x + y).collect();
    emit(g, json!({ "hilbert_function": h, "m": m, "h_plus_m": sum }), |out| {
        writeln!(out, "M     = {}", seq(&m)).unwrap();
        writeln!(out, "H + M = {}", seq(&sum)).unwrap();
    })
}

fn cmd_search(
    g: &Globals,
    shape: &str,
    trials: usize,
    samples: usize,
    out_path: &Option<std::path::PathBuf>,
) -> AppResult {
    let seed = g
        .seed
        .ok_or_else(|| AppError::Usage("search requires an explicit --seed".into()))?;
    let prime = match g.field {
        FieldSpec::Prime(p) => p,
        FieldSpec::Q => DEFAULT_PRIME,
    };
    let cfg = SearchConfig {
        shape: shape.to_string(),
        trials,
        seed,
        vars: g.vars.clone(),
        prime,
        convention: g.conv,
        jobs: g.jobs,
        samples,
    };
    let records = run_search(&cfg).map_err(AppError::compute)?;
    let mut lines = String::new();
    for r in &records {
        lines.push_str(&serde_json::to_string(r).map_err(AppError::compute)?);
        lines.push('\n');
    }
    match out_path {
        Some(path) => {
            let mut file = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(AppError::compute)?;
            file.write_all(lines.as_bytes()).map_err(AppError::compute)?;
            let counts = summarize(&records);
            emit(g, json!({ "trials": trials, "seed": seed, "classes": counts }), |out| {
                writeln!(out, "{} trial(s), seed {seed}", records.len()).unwrap();
                for (key, n) in &counts {
                    writeln!(out, "{n:6}  {key}").unwrap();
                }
            })
        }
        None => {
            print!("{lines}");
            let counts = summarize(&records);
            for (key, n) in &counts {
                eprintln!("{n:6}  {key}");
            }
            Ok(())
        }
    }
}

fn cmd_corpus(g: &Globals) -> AppResult {
    let results = apolar::corpus::run_all();
    let failed = results.iter().filter(|r| !r.passed).count();
    if g.json {
        let doc: Vec<_> = results
            .iter()
            .map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail }))
            .collect();
        println!("{}", serde_json::to_string_pretty(&doc).map_err(AppError::compute)?);
    } else {
        for r in &results {
            println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
            if !r.passed {
                for line in r.detail.lines() {
                    println!("    {line}");
                }
            }
        }
        println!("{} passed, {failed} failed", results.len() - failed);
    }
    if failed > 0 {
        return Err(AppError::Compute(format!("{failed} corpus entr(y/ies) failed")));
    }
    Ok(())
}
