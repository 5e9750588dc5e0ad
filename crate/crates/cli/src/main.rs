//! `pairmult`: Schur multipliers of pairs of finite p-groups.
//!
//! Exit status: 0 on success, 1 when a check fails or a theorem verdict is
//! false, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pairmult_core::group::{group_class, powerful_embedding_check, FiniteGroup};
use pairmult_core::groupfile::{load_group, GroupFile, LoadedGroup};
use pairmult_core::multiplier::{schur_multiplier, BackendChoice};
use pairmult_core::verify::{
    analyze_pair, builtin_corpus, counterexample_2048, properties, run_corpus, sylow_corpus,
    PairReport, Verdict,
};
use pairmult_core::zlinalg::{smith_normal_form, SparseIntMatrix};
use pairmult_core::{Caps, Error};

#[derive(Parser)]
#[command(
    name = "pairmult",
    version,
    about = "Schur multipliers of pairs of finite p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Bar,
    Pc,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Consistency check of a pc presentation
    Check { file: PathBuf },
    /// Order, exponent, class, center and power structure
    Analyze { file: PathBuf },
    /// Schur multiplier M(G)
    Multiplier {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        backend: BackendArg,
    },
    /// Multiplier of a pair and the exponent bound verdicts
    Pair {
        file: PathBuf,
        /// label of N in "subgroups"
        #[arg(long)]
        n: String,
        /// label of a complement of N
        #[arg(long)]
        k: Option<String>,
        /// write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify the built-in corpus
    Corpus {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        max_order: Option<u128>,
        /// write every corpus group as a group file into this directory and exit
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Reproduce the order 2^11 counterexample
    #[command(name = "example21")]
    Counterexample {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Smith normal form invariants of a matrix file
    Snf { file: PathBuf },
    /// Run the property suites
    Props {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        instances: usize,
    },
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// exit 1
    Check(String),
    /// exit 2
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_file(path: &Path) -> std::result::Result<GroupFile, Failure> {
    GroupFile::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path, caps: &Caps) -> std::result::Result<LoadedGroup, Failure> {
    let f = parse_file(path)?;
    load_group(&f, caps).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check(path: &Path) -> Outcome {
    let f = parse_file(path)?;
    let Some(pc) = &f.pc else {
        println!("{}: permutation group, no presentation to check", f.name);
        return Ok(());
    };
    let pres = pc.presentation()?;
    let report = pres.consistency_check()?;
    println!(
        "{}: {} generators, {} overlaps checked",
        f.name,
        pres.len(),
        report.checked
    );
    if report.is_consistent() {
        println!("consistent, order {}", pres.nominal_order());
        return Ok(());
    }
    for o in &report.failures {
        println!(
            "  {}: {} != {}",
            o.overlap,
            pres.format_word(&o.left),
            pres.format_word(&o.right)
        );
    }
    Err(Failure::Check(format!(
        "inconsistent: {} failing overlaps",
        report.failures.len()
    )))
}

fn describe(g: &FiniteGroup) -> Vec<(String, String)> {
    let mut rows = vec![
        ("order".into(), g.order().to_string()),
        ("exponent".into(), g.exponent().to_string()),
        ("abelian".into(), g.is_abelian().to_string()),
        (
            "class".into(),
            group_class(g).map_or("not nilpotent".into(), |c| c.to_string()),
        ),
        ("center order".into(), g.center().order().to_string()),
    ];
    if let Some(p) = g.prime() {
        if let Ok(f) = powerful_embedding_check(&g.whole(), p) {
            rows.push(("prime".into(), p.to_string()));
            rows.push(("powerful".into(), f.powerful.to_string()));
        }
    }
    rows
}

fn analyze(path: &Path, caps: &Caps) -> Outcome {
    let l = load(path, caps)?;
    let g = &l.group;
    println!("{}", l.name);
    for (k, v) in describe(g) {
        println!("  {k:<14} {v}");
    }
    for (label, s) in l.subgroups.iter().chain(&l.complements) {
        let mut extra = String::new();
        if s.is_normal() {
            extra.push_str(", normal");
            if let Some(p) = g.prime() {
                if let Ok(f) = powerful_embedding_check(s, p) {
                    extra.push_str(&format!(", powerfully embedded: {}", f.powerfully_embedded));
                }
            }
        }
        println!(
            "  subgroup {label}: order {}, exponent {}{extra}",
            s.order(),
            s.exponent()
        );
    }
    Ok(())
}

fn multiplier(path: &Path, backend: BackendArg, caps: &Caps) -> Outcome {
    let l = load(path, caps)?;
    let choice = match backend {
        BackendArg::Bar => BackendChoice::Bar,
        BackendArg::Pc => BackendChoice::Pc,
        BackendArg::Auto => BackendChoice::Auto,
    };
    let (m, b) = schur_multiplier(&l.group, choice, caps)?;
    let note = if m.is_trivial() { " (trivial)" } else { "" };
    println!("M({}) = {m}{note}  [backend {b}]", l.name);
    Ok(())
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "FAILS",
        Verdict::NotApplicable => "n/a",
        Verdict::Untested => "untested",
    }
}

fn print_report(r: &PairReport) {
    println!("{}", r.group_name);
    println!(
        "  |G| = {}, |N| = {}, p = {}, exp N = {} (e = {})",
        r.order_g, r.order_n, r.p, r.exp_n, r.e
    );
    println!("  pair class k = {}, m = {}", r.pair_class, r.m);
    match (&r.exp_m, r.backend) {
        (Some(x), Some(b)) => println!(
            "  M(G,N) = {}, exponent {x}  [backend {b}]",
            display_mult(r)
        ),
        _ => println!(
            "  M(G,N) unavailable{}",
            r.note.as_ref().map_or(String::new(), |n| format!(": {n}"))
        ),
    }
    println!(
        "  bounds: p^(e+m(k-1)) = {}, p^(e*ceil(k/2)) = {}, p^(2e*floor(log2 k)) = {}, p^(e(c-1)) = {}",
        r.bounds.thm27,
        r.bounds.ellis,
        r.bounds.moravec,
        r.bounds.jones.as_ref().map_or("n/a".into(), |j| j.to_string())
    );
    let v = &r.verdicts;
    println!("  exp M | p^(e+m(k-1)): {}", verdict(v.thm27_holds));
    println!(
        "  class <= p-1 => exp M | exp N: {}",
        verdict(v.cor28_holds)
    );
    println!(
        "  powerfully embedded => exp M | exp N: {}",
        verdict(v.thm311_holds)
    );
    println!("  exp M | |N|: {}", verdict(v.divides_order_n));
    if r.known_counterexample {
        println!("  known counterexample to exp M | exp N");
    }
}

fn display_mult(r: &PairReport) -> String {
    match &r.multiplier {
        pairmult_core::verify::MultiplierField::Known(a) => a.to_string(),
        pairmult_core::verify::MultiplierField::Unavailable => "unavailable".into(),
    }
}

fn pair(path: &Path, n: &str, k: Option<&str>, json: Option<&Path>, caps: &Caps) -> Outcome {
    let l = load(path, caps)?;
    let lookup = |label: &str| {
        l.lookup(label).ok_or_else(|| {
            Failure::Input(format!(
                "{}: no subgroup labelled '{label}'",
                path.display()
            ))
        })
    };
    let ns = lookup(n)?;
    let ks = match k {
        Some(k) => Some(lookup(k)?),
        None => None,
    };
    let name = format!("{} / {n}", l.name);
    let r = analyze_pair(&name, ns, ks, None, caps, None)?;
    print_report(&r);
    if let Some(out) = json {
        write(
            out,
            &serde_json::to_string_pretty(&r).expect("report serializes"),
        )?;
    }
    if r.violations() > 0 {
        return Err(Failure::Check(format!(
            "{} theorem verdicts are false",
            r.violations()
        )));
    }
    Ok(())
}

fn corpus(
    out: Option<&Path>,
    max_order: Option<u128>,
    export: Option<&Path>,
    caps: &Caps,
) -> Outcome {
    let entries = builtin_corpus();
    let sylow = sylow_corpus();
    if let Some(dir) = export {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        let mut written = Vec::new();
        for e in entries.iter().chain(&sylow) {
            if written.contains(&e.recipe.name) {
                continue;
            }
            let file = slug(&e.recipe.name);
            write(&dir.join(format!("{file}.json")), &e.recipe.to_json())?;
            written.push(e.recipe.name.clone());
        }
        println!("wrote {} group files to {}", written.len(), dir.display());
        return Ok(());
    }
    let report = run_corpus(&entries, &sylow, caps, max_order);
    for r in &report.entries {
        let v = &r.verdicts;
        println!(
            "{:<24} |G|={:<5} k={} exp N={:<3} M={:<16} bound={} small-class={} powerful={} |N|={}{}",
            r.group_name,
            r.order_g,
            r.pair_class,
            r.exp_n,
            display_mult(r),
            verdict(v.thm27_holds),
            verdict(v.cor28_holds),
            verdict(v.thm311_holds),
            verdict(v.divides_order_n),
            if r.known_counterexample { "  (known counterexample)" } else { "" }
        );
    }
    for c in &report.sylow_checks {
        println!(
            "{:<24} M(G,N)={} Sylow product={} {}",
            c.group_name,
            c.multiplier,
            c.sylow_product,
            if c.matches { "match" } else { "MISMATCH" }
        );
    }
    for f in &report.failures {
        let tag = if f.known_counterexample {
            " (known counterexample)"
        } else {
            ""
        };
        println!("{:<24} not built: {}{tag}", f.name, f.error);
    }
    let s = &report.summary;
    println!(
        "checked {}, violations {}, untested {}",
        s.checked, s.violations, s.untested
    );
    if let Some(out) = out {
        write(out, &report.to_json())?;
    }
    if report.has_violations() {
        return Err(Failure::Check(format!("{} violations", s.violations)));
    }
    Ok(())
}

fn slug(name: &str) -> String {
    let mut out = String::new();
    for c in name.chars() {
        match c {
            '+' => out.push_str("plus"),
            '-' => out.push_str("minus"),
            c if c.is_ascii_alphanumeric() => out.push(c.to_ascii_lowercase()),
            _ if out.ends_with('_') || out.is_empty() => {}
            _ => out.push('_'),
        }
    }
    out.trim_end_matches('_').to_string()
}

fn example(json: Option<&Path>, caps: &Caps) -> Outcome {
    let r = counterexample_2048(caps)?;
    println!(
        "order 2^11 counterexample (nominal order {})",
        r.nominal_order
    );
    for c in r.claims() {
        println!(
            "  [{}] {:<44} {}",
            if c.holds { "ok" } else { "--" },
            c.claim,
            c.found
        );
    }
    if !r.failing_overlaps.is_empty() {
        println!("  failing overlaps: {}", r.failing_overlaps.join(", "));
        if let Some(n) = &r.normal_subgroup {
            println!(
                "  <a,x1,...,x5> alone: order {}, exponent {}, class {}",
                n.order,
                n.exponent,
                n.class.map_or("-".into(), |c| c.to_string())
            );
        }
    }
    if let Some(out) = json {
        write(out, &serde_json::to_string_pretty(&r).expect("serializes"))?;
    }
    if r.reproduced() {
        println!("exp M(G,N) = 8 does not divide exp(N) = 4: confirmed");
        Ok(())
    } else {
        Err(Failure::Check(
            "the stated facts were not reproduced".into(),
        ))
    }
}

fn snf(path: &Path) -> Outcome {
    let m = SparseIntMatrix::parse(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let s = smith_normal_form(&m, false);
    let inv: Vec<String> = s.invariants().iter().map(|d| d.to_string()).collect();
    println!("invariants: {}", inv.join(" "));
    println!("rank: {}", s.rank);
    Ok(())
}

fn props(seed: u64, instances: usize) -> Outcome {
    let mut failed = 0;
    for o in properties::run_all(seed, instances) {
        let tag = if o.informational {
            "info"
        } else if o.passed() {
            "ok"
        } else {
            failed += 1;
            "FAIL"
        };
        println!(
            "[{tag:>4}] {}: {} checked, {} failures",
            o.name, o.checked, o.failures
        );
        if let (false, Some(ex)) = (o.informational, &o.example) {
            println!("       first failure: {ex}");
        }
    }
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} property suites failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let caps = Caps::from_env();
    let res = match &cli.command {
        Command::Check { file } => check(file),
        Command::Analyze { file } => analyze(file, &caps),
        Command::Multiplier { file, backend } => multiplier(file, *backend, &caps),
        Command::Pair { file, n, k, json } => pair(file, n, k.as_deref(), json.as_deref(), &caps),
        Command::Corpus {
            out,
            max_order,
            export,
        } => corpus(out.as_deref(), *max_order, export.as_deref(), &caps),
        Command::Counterexample { json } => example(json.as_deref(), &caps),
        Command::Snf { file } => snf(file),
        Command::Props { seed, instances } => props(*seed, *instances),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
