//! Command-line front end: operator application, eigen searches, spaces,
//! classification, zeta values, table verification and the unimodality scan.

pub mod appendix;
pub mod canonical;
pub mod conjecture;
mod invariants;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hecke_core::eigen::{
    classify_multiplicative, eigen_data, eigen_search, simultaneous_classify, space_basis, Certificate,
    DirichletChar, EigenData, MultiplicativeReport,
};
use hecke_core::{hecke, zeta, Error, RatFun};

pub use appendix::{verify_appendix, AppendixReport, CheckItem};
pub use canonical::{canonical_form, unimodality_check, CanonicalForm};
pub use conjecture::{conjecture_scan, ConjectureReport};
pub use invariants::seed_check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hecke", version, about = "Hecke operators U_p on rational functions")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Run the fixed invariant suite before any subcommand.
    #[arg(long)]
    seed_check: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply U_p to a rational function.
    Apply {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
    },
    /// Eigen data of one function, or an eigen search over admissible denominators.
    Eig {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Basis of S_{kappa,L} (or V_{kappa,L} with --with-constant) for one or more operators.
    Spaces {
        #[arg(long)]
        kappa: usize,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        with_constant: bool,
    },
    /// Simultaneous eigen classification and multiplicativity test.
    Classify {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 60)]
        bound: u64,
    },
    /// Truncated spectral zeta function of U_S, or of U over all primes without --primes.
    Zeta {
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Recompute the worked U_2 tables.
    Appendix,
    /// Unimodality scan of canonical eigenfunction numerators.
    Conjecture {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

/// Rendered command output and whether every check in it passed.
struct Outcome {
    json: serde_json::Value,
    table: String,
    ok: bool,
}

impl Outcome {
    fn new(value: impl Serialize, table: String, ok: bool) -> Outcome {
        Outcome { json: serde_json::to_value(value).expect("serialisable report"), table, ok }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalMismatch(_) | Error::StructureViolated => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn parse_f(s: &str) -> Result<RatFun, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(format!("cannot read --f: {e}")))
}

fn parse_primes(s: &str) -> Result<Vec<u64>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad prime list entry '{t}'"))))
        .collect()
}

fn eigen_line(d: &EigenData) -> String {
    format!(
        "p={} lambda={} kappa={} L={} chi={} A={} B={}",
        d.p,
        d.lambda,
        d.kappa,
        d.level,
        d.chi_p,
        d.f.num(),
        d.f.den()
    )
}

fn cmd_apply(p: u64, f: &str) -> Result<Outcome, Failure> {
    let f = parse_f(f)?;
    let g = hecke::apply(&f, p)?;
    let lambda = hecke::eigenvalue(&f, p)?;
    let mut table = format!("U_{p} f = {g}\n");
    match &lambda {
        Some(l) => table += &format!("eigenvalue = {l}\n"),
        None => table += "not an eigenfunction\n",
    }
    let value = json!({ "p": p, "f": f, "image": g, "eigenvalue": lambda });
    Ok(Outcome { json: value, table, ok: true })
}

fn cmd_eig(p: u64, f: Option<&str>, max_degree: usize) -> Result<Outcome, Failure> {
    if let Some(f) = f {
        let d = eigen_data(&parse_f(f)?, p)?;
        let table = eigen_line(&d) + "\n";
        return Ok(Outcome::new(&d, table, true));
    }
    if max_degree > conjecture::MAX_SCAN_DEGREE {
        return Err(Failure::Usage(format!("--max-degree is capped at {}", conjecture::MAX_SCAN_DEGREE)));
    }
    let reports = eigen_search(p, max_degree)?;
    let mut records = Vec::new();
    let mut table = String::new();
    let mut ok = true;
    for r in &reports {
        ok &= r.spectrum.only_allowed_real_values();
        table += &format!(
            "B = {}  L = {}  nonzero roots {:?}  other real roots {}\n",
            r.den,
            r.level,
            r.spectrum.roots.iter().map(|(l, m)| format!("{l}^{m}")).collect::<Vec<_>>(),
            r.spectrum.residual_real_roots
        );
        for pair in &r.pairs {
            let d = eigen_data(&pair.f, p)?;
            table += &format!("  {}\n", eigen_line(&d));
            records.push(d);
        }
    }
    table += &format!("{} denominators, {} eigenfunctions\n", reports.len(), records.len());
    Ok(Outcome::new(json!({ "p": p, "max_degree": max_degree, "denominators": reports.len(), "eigenpairs": records }), table, ok))
}

fn cmd_spaces(kappa: usize, level: u64, p: Option<u64>, primes: Option<&str>, with_constant: bool) -> Result<Outcome, Failure> {
    let mut ps = match primes {
        Some(s) => parse_primes(s)?,
        None => Vec::new(),
    };
    ps.extend(p);
    if ps.is_empty() {
        return Err(Failure::Usage("spaces needs --p or --primes".into()));
    }
    let s = space_basis(kappa, level, &ps, !with_constant)?;
    let name = if with_constant { "V" } else { "S" };
    let mut table = format!("dim {name}_{{{kappa},{level}}}(U_{ps:?}) = {}\n", s.dim());
    for f in &s.basis {
        table += &format!("  {f}\n");
    }
    Ok(Outcome::new(&s, table, true))
}

fn char_text(chi: &DirichletChar) -> String {
    let values: Vec<String> = chi.values().iter().map(|v| v.to_string()).collect();
    format!("chi mod {} = [{}]", chi.modulus(), values.join(", "))
}

fn certificate_text(c: Option<&Certificate>) -> String {
    match c {
        None => "none".into(),
        Some(Certificate::Phi { k, scale }) => format!("{scale} * phi_{k}"),
        Some(Certificate::Character { chi, kappa, a1 }) => {
            format!("{a1} * sum chi(n) n^{} x^n, {}", kappa - 1, char_text(chi))
        }
    }
}

fn multiplicative_text(m: &MultiplicativeReport) -> String {
    match m {
        MultiplicativeReport::Violation { m, n } => format!("fails at a_{{{m}*{n}}}"),
        MultiplicativeReport::CharacterForm { kappa, level, chi, a1 } => {
            format!("character form, kappa = {kappa}, L = {level}, a_1 = {a1}, {}", char_text(chi))
        }
        MultiplicativeReport::Geometric { a0 } => format!("{a0}/(1-x)"),
        MultiplicativeReport::Unmatched => "multiplicative but of no known shape".into(),
    }
}

fn cmd_classify(f: &str, bound: u64) -> Result<Outcome, Failure> {
    let f = parse_f(f)?;
    let sim = simultaneous_classify(&f, 11)?;
    let mult = classify_multiplicative(&f, bound)?;
    let mut table = format!("level {}\n", sim.level);
    for (p, l) in &sim.eigenvalues {
        match l {
            Some(l) => table += &format!("  U_{p}: eigenvalue {l}\n"),
            None => table += &format!("  U_{p}: not an eigenfunction\n"),
        }
    }
    table += &format!("certificate: {}\n", certificate_text(sim.certificate.as_ref()));
    table += &format!("multiplicativity up to {bound}: {}\n", multiplicative_text(&mult));
    Ok(Outcome::new(json!({ "simultaneous": sim, "multiplicative": mult }), table, true))
}

fn cmd_zeta(primes: Option<&str>, s: f64, bound: u64) -> Result<Outcome, Failure> {
    match primes {
        Some(list) => {
            let ps = parse_primes(list)?;
            let z = zeta::zeta_us(&ps, s, bound)?;
            let table = format!(
                "S = {ps:?}  s = {s}  bound = {bound}\npartial sum = {:.15}\nclosed form = {:.15}\n",
                z.partial_sum, z.closed_form
            );
            Ok(Outcome::new(json!({ "primes": ps, "zeta": z }), table, true))
        }
        None => {
            let t = zeta::zeta_u_truncated(s, bound)?;
            let table = format!(
                "all primes up to {bound}  s = {s}\nenumeration equals 1..{bound}: {}\npartial sum = {:.15}\ndirect sum  = {:.15}\nzeta(s)     = {:.15}\n",
                t.enumeration_complete, t.value.partial_sum, t.direct_sum, t.value.closed_form
            );
            let ok = t.enumeration_complete;
            Ok(Outcome::new(&t, table, ok))
        }
    }
}

fn checks_table(items: &[CheckItem]) -> String {
    let mut table = String::new();
    for i in items {
        table += &format!("{} {}: {}\n", if i.pass { "PASS" } else { "FAIL" }, i.name, i.detail);
    }
    let failed = items.iter().filter(|i| !i.pass).count();
    table += &format!("{} checks, {failed} failed\n", items.len());
    table
}

fn cmd_appendix() -> Result<Outcome, Failure> {
    let r = verify_appendix()?;
    Ok(Outcome::new(&r, checks_table(&r.items), r.all_pass()))
}

fn cmd_conjecture(p: u64, max_degree: usize) -> Result<Outcome, Failure> {
    let r = conjecture_scan(p, max_degree)?;
    let mut table = format!(
        "canonical rule: {}\np = {p}, degree <= {max_degree}: {} denominators, {} eigenfunctions, {} counterexamples\n",
        r.rule,
        r.denominators,
        r.eigenfunctions,
        r.counterexamples.len()
    );
    for e in &r.counterexamples {
        table += &format!(
            "  f = {}  lambda = {}  eigenspace dim = {}  canonical A = {}  m_j = {:?}\n",
            e.f, e.lambda, e.eigenspace_dim, e.canonical_num, e.den_exponents
        );
    }
    let ok = r.passed();
    Ok(Outcome::new(&r, table, ok))
}

fn dispatch(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Apply { p, f } => cmd_apply(*p, f),
        Command::Eig { p, f, max_degree } => cmd_eig(*p, f.as_deref(), *max_degree),
        Command::Spaces { kappa, level, p, primes, with_constant } => {
            cmd_spaces(*kappa, *level, *p, primes.as_deref(), *with_constant)
        }
        Command::Classify { f, bound } => cmd_classify(f, *bound),
        Command::Zeta { primes, s, bound } => cmd_zeta(primes.as_deref(), *s, *bound),
        Command::Appendix => cmd_appendix(),
        Command::Conjecture { p, max_degree } => cmd_conjecture(*p, *max_degree),
    }
}

fn emit(out: &mut dyn Write, format: Format, o: &Outcome) -> std::io::Result<()> {
    match format {
        Format::Table => write!(out, "{}", o.table),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json")),
    }
}

/// Parse `argv` (including the program name), run the command and return the exit code:
/// 0 on success, 1 when a check fails or a counterexample is found, 2 on usage errors.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if cli.command.is_none() && !cli.seed_check {
        let _ = writeln!(err, "error: a subcommand or --seed-check is required");
        return EXIT_USAGE;
    }
    let mut code = EXIT_OK;
    if cli.seed_check {
        let items = seed_check();
        let ok = items.iter().all(|i| i.pass);
        let o = Outcome::new(&items, checks_table(&items), ok);
        let _ = emit(out, cli.format, &o);
        if !ok {
            code = EXIT_FAILED;
        }
    }
    if let Some(command) = &cli.command {
        match dispatch(command) {
            Ok(o) => {
                let _ = emit(out, cli.format, &o);
                if !o.ok {
                    code = EXIT_FAILED;
                }
            }
            Err(Failure::Usage(m)) => {
                let _ = writeln!(err, "error: {m}");
                return EXIT_USAGE;
            }
            Err(Failure::Check(m)) => {
                let _ = writeln!(err, "verification failed: {m}");
                return EXIT_FAILED;
            }
        }
    }
    code
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
