use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drackn::constructions::{cover_to_gh, dcff, gh_to_cover, thas_somma, ConstructionError};
use drackn::covers::{drackn_verify, quotient, verify_graph, CoverCertificate, CoverError};
use drackn::feasibility::{
    family_enumerate, feasibility_battery, select_rows, tsv_header, FamilyCase, ParameterSet, Verdict,
};
use drackn::formats::{self, FormatError};
use drackn::groups::characters_of;
use drackn::lines::{
    absolute_bound, conference_search, cover_to_lines, double_real, lines_to_cover, relative_bound, seidel_spectrum,
    LineField, LineSet, LinesError, SeidelKind, SeidelMatrix,
};
use drackn::Error;

#[derive(Parser)]
#[command(name = "drackn", version, about = "Exact tools for antipodal distance-regular covers of complete graphs")]
struct Cli {
    /// Worker threads for verification and enumeration.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Seed for the randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a cover (or a test Seidel matrix) and print it.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Verify a cover file or an adjacency file.
    Verify { file: Option<PathBuf> },
    /// Seidel matrix of a character and its two line systems.
    CoverToLines(CoverToLines),
    /// Cyclic cover from a two-eigenvalue Seidel matrix.
    LinesToCover {
        file: Option<PathBuf>,
        #[arg(long)]
        r: u32,
    },
    /// Two-fold cover from a real Seidel matrix, as an adjacency file.
    DoubleReal { file: Option<PathBuf> },
    /// Generalized Hadamard matrix of a cover with delta = -2.
    CoverToGh { file: Option<PathBuf> },
    /// Cover from a self-adjoint generalized Hadamard matrix with constant diagonal.
    GhToCover { file: Option<PathBuf> },
    /// Quotient by the subgroup generated by `g1;g2;...`.
    Quotient {
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
    },
    /// Run the feasibility conditions on (n, r, c).
    Feasible { n: u64, r: u64, c: u64 },
    /// List the members of an extremal family.
    Enumerate(Enumerate),
}

#[derive(Subcommand)]
enum Construct {
    /// Cover from an alternating form on GF(p)^m with values in GF(p)^s.
    ThasSomma {
        #[arg(short)]
        p: u32,
        #[arg(short)]
        m: usize,
        #[arg(short, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// (2^{t(d+1)}, 2^{td}, 2^t)-cover from a skew product and a latin square.
    Dcff {
        #[arg(short)]
        t: u32,
        #[arg(short)]
        d: u32,
        #[arg(long)]
        skew: Option<PathBuf>,
        #[arg(long)]
        latin: Option<PathBuf>,
    },
    /// Seeded search for a symmetric ±1 Seidel matrix with S² = (n-1)I.
    ConferenceSeidel {
        #[arg(short)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Tau,
    Theta,
    Both,
}

#[derive(Args)]
struct CoverToLines {
    file: Option<PathBuf>,
    /// Index of a nontrivial character, in element order.
    #[arg(long = "char")]
    character: usize,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    which: Which,
    /// Also print the Gram matrices.
    #[arg(long)]
    full_gram: bool,
}

#[derive(Args)]
struct Enumerate {
    #[arg(long = "case")]
    case: FamilyCase,
    #[arg(long)]
    t_max: u64,
    #[arg(long)]
    tsv: bool,
    #[arg(long)]
    include_unpublished: bool,
    #[arg(long)]
    include_two_graph: bool,
}

/// What a subcommand produced: text for stdout and the exit status.
struct Output {
    stdout: String,
    failed: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, failed: false }
    }

    fn fail(stdout: String) -> Self {
        Output { stdout, failed: true }
    }
}

/// Input problems (exit 2) versus checks that ran and failed (exit 1).
enum Failure {
    Input(String),
    Check { line: String, message: String },
}

fn token(s: impl ToString) -> String {
    s.to_string().split_whitespace().collect::<Vec<_>>().join("_")
}

fn check(name: &str, witness: String, message: impl ToString) -> Failure {
    Failure::Check { line: format!("FAIL {name} {}", token(witness)), message: message.to_string() }
}

fn cover_failure(e: CoverError) -> Failure {
    let message = e.to_string();
    match e {
        CoverError::Malformed(what) => check("structure", what, message),
        CoverError::InversePair { u, v } => check("inverse-pair", format!("u={u},v={v}"), message),
        CoverError::FibreEdge { fibre, a, b } => check("fibre-edge", format!("fibre={fibre},edge={a}-{b}"), message),
        CoverError::NotMatching { u, v } => check("matching", format!("fibres={u},{v}"), message),
        CoverError::NotConnected { components } => check("connectivity", format!("components={components}"), message),
        CoverError::NotDistanceRegular { x, y, what, found, expected } => check(
            "distance-regular",
            format!("x={x},y={y},{what}={found},expected={expected}"),
            message,
        ),
        CoverError::CharacterPolynomial { character } => {
            check("character-polynomial", format!("character={character}"), message)
        }
        CoverError::RoutesDisagree { combinatorial, algebraic } => {
            check("routes", format!("combinatorial={combinatorial},algebraic={algebraic}"), message)
        }
        CoverError::TrivialGroup => check("group", "trivial".into(), message),
        CoverError::NotRegularAbelian => check("regular-abelian", "recovery".into(), message),
        CoverError::UnsupportedQuotient(_) | CoverError::Group(_) | CoverError::Algebra(_) => Failure::Input(message),
    }
}

fn lines_failure(e: LinesError) -> Failure {
    let message = e.to_string();
    match e {
        LinesError::MoreThanTwoEigenvalues => check("eigenvalues", "more-than-two".into(), message),
        LinesError::IrrationalEigenvalues => check("eigenvalues", "irrational".into(), message),
        LinesError::EntryNotRoot { u, v } => check("root-of-unity", format!("u={u},v={v}"), message),
        LinesError::CNotPositiveInteger(c) => check("c-integral", format!("c={c}"), message),
        LinesError::NonRealEntry { u, v } => check("real-entry", format!("u={u},v={v}"), message),
        LinesError::SearchExhausted(n) => check("search", format!("n={n},exhausted"), message),
        LinesError::Cover(e) => cover_failure(e),
        _ => Failure::Input(message),
    }
}

fn construction_failure(e: ConstructionError) -> Failure {
    let message = e.to_string();
    match e {
        ConstructionError::DeltaNotMinusTwo(d) => check("delta", format!("delta={d}"), message),
        ConstructionError::DiagonalNotConstant => check("diagonal", "not-constant".into(), message),
        ConstructionError::NotSelfAdjoint { u, v } => check("self-adjoint", format!("u={u},v={v}"), message),
        ConstructionError::GhIdentity { u, v } => check("gh-identity", format!("u={u},v={v}"), message),
        ConstructionError::Cover(e) => cover_failure(e),
        _ => Failure::Input(message),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Cover(e) => cover_failure(e),
            Error::Lines(e) => lines_failure(e),
            Error::Construction(e) => construction_failure(e),
            other => Failure::Input(other.to_string()),
        }
    }
}

macro_rules! impl_failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::from(Error::from(e))
            }
        }
    )*};
}

impl_failure_from!(CoverError, LinesError, ConstructionError, FormatError);

fn read_input(file: &Option<PathBuf>) -> Result<String, Failure> {
    match file {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    read_input(&Some(path.clone()))
}

fn header(text: &str) -> Option<&str> {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'))
}

fn params_line(p: &ParameterSet) -> String {
    format!("n={} r={} c={} delta={} theta={} tau={}", p.n(), p.r(), p.c(), p.delta(), p.theta(), p.tau())
}

fn certificate_report(cert: &CoverCertificate) -> String {
    let mut out = format!("DRACKN {}\n", params_line(cert.params()));
    out.push_str(&format!("spectrum {}\n", cert.spectrum_string()));
    out.push_str(&format!("checks {}\n", cert.checks_passed().join(",")));
    out.push_str("routes combinatorial=pass algebraic=pass agree=yes\n");
    out
}

fn verify(file: &Option<PathBuf>) -> Result<Output, Failure> {
    let text = read_input(file)?;
    let cert = match header(&text) {
        Some("ADJACENCY v1") => verify_graph(&formats::parse_adjacency(&text)?)?,
        _ => drackn_verify(&formats::parse_cover(&text)?)?,
    };
    Ok(Output::ok(certificate_report(&cert)))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn line_summary(which: &str, lines: &LineSet, field: LineField) -> Result<String, Failure> {
    let bound = relative_bound(lines.n(), lines.d())?;
    let tight = drackn::lines::tight_frame_check(lines);
    let absolute = absolute_bound(lines.d(), field);
    let field_name = match field {
        LineField::Real => "real",
        LineField::Complex => "complex",
    };
    Ok(format!(
        "# lines which={which} n={} d={} alpha_sq={} relative_bound={bound} tight={} field={field_name} absolute_bound={absolute} attains_absolute={}\n",
        lines.n(),
        lines.d(),
        lines.alpha_sq(),
        yes_no(tight),
        yes_no(absolute == lines.n().into()),
    ))
}

fn is_real(s: &SeidelMatrix) -> bool {
    s.kind() == SeidelKind::Generic || s.order().get() == 2
}

fn cover_to_lines_cmd(args: &CoverToLines) -> Result<Output, Failure> {
    let f = formats::parse_cover(&read_input(&args.file)?)?;
    let (s, tau_set, theta_set) = cover_to_lines(&f, args.character)?;
    let spectrum = seidel_spectrum(&s)?;
    let field = if is_real(&s) { LineField::Real } else { LineField::Complex };
    let mut out = formats::emit_seidel(&s)?;
    let chars = characters_of(f.group());
    out.push_str(&format!(
        "# character {} exponents={:?} group={}\n",
        args.character,
        chars[args.character].exponents(),
        f.group()
    ));
    out.push_str(&format!(
        "# eigenvalues theta={} tau={} m_theta={} m_tau={}\n",
        spectrum.theta, spectrum.tau, spectrum.m_theta, spectrum.m_tau
    ));
    let chosen: Vec<(&str, &LineSet)> = match args.which {
        Which::Tau => vec![("tau", &tau_set)],
        Which::Theta => vec![("theta", &theta_set)],
        Which::Both => vec![("tau", &tau_set), ("theta", &theta_set)],
    };
    for (which, lines) in &chosen {
        out.push_str(&line_summary(which, lines, field)?);
    }
    if args.full_gram {
        for (which, lines) in &chosen {
            out.push_str(&format!("# gram which={which}\n"));
            for line in formats::emit_gram(lines).lines() {
                out.push_str(&format!("# {line}\n"));
            }
        }
    }
    Ok(Output::ok(out))
}

fn lines_to_cover_cmd(file: &Option<PathBuf>, r: u32) -> Result<Output, Failure> {
    let s = formats::parse_seidel(&read_input(file)?)?;
    let result = lines_to_cover(&s, r)?;
    let mut out = formats::emit_cover(&result.cover);
    out.push_str(&format!("# c={} d={} from (1/r)((n-2)+(2d-n)/(alpha*d))\n", result.c, result.d));
    out.push_str(&format!("# DRACKN {}\n", params_line(result.certificate.params())));
    out.push_str(&format!("# spectrum {}\n", result.certificate.spectrum_string()));
    Ok(Output::ok(out))
}

fn quotient_cmd(file: &Option<PathBuf>, subgroup: &str) -> Result<Output, Failure> {
    let f = formats::parse_cover(&read_input(file)?)?;
    let mut generators = Vec::new();
    for g in subgroup.split(';').map(str::trim).filter(|g| !g.is_empty()) {
        let element = g
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Input(format!("invalid generator {g:?}")))?;
        if !f.group().contains(&element) {
            return Err(Failure::Input(format!("generator {g:?} is not an element of {}", f.group())));
        }
        generators.push(element);
    }
    Ok(Output::ok(formats::emit_cover(&quotient(&f, &generators)?)))
}

fn feasible_cmd(n: u64, r: u64, c: u64) -> Result<Output, Failure> {
    if n < 2 || r < 2 || c < 1 {
        return Err(Failure::Input("need n >= 2, r >= 2, c >= 1".into()));
    }
    let report = feasibility_battery(n, r, c);
    let p = report.params();
    let mut out = format!("PARAMS {} m_theta={} m_tau={}\n", params_line(p), p.m_theta(), p.m_tau());
    let verdict_line = |name: String, v: &Verdict| match v {
        Verdict::Pass => format!("PASS {name}\n"),
        Verdict::NotApplicable => format!("SKIP {name}\n"),
        Verdict::Fail(w) => format!("FAIL {name} {}\n", token(w)),
    };
    for (condition, verdict) in report.conditions() {
        out.push_str(&verdict_line(condition.to_string(), verdict));
    }
    out.push_str(&verdict_line("odd-primes".into(), report.corollary()));
    let status = if report.passes() { "FEASIBLE" } else { "INFEASIBLE" };
    out.push_str(&format!("{status} n={n} r={r} c={c}\n"));
    Ok(if report.passes() { Output::ok(out) } else { Output::fail(out) })
}

fn enumerate_cmd(args: &Enumerate) -> Result<Output, Failure> {
    if args.t_max < 2 {
        return Err(Failure::Input("--t-max must be at least 2".into()));
    }
    let entries = family_enumerate(args.case, args.t_max);
    let rows = select_rows(&entries, args.include_unpublished, args.include_two_graph);
    let with_flags = args.include_unpublished || args.include_two_graph;
    let mut out = String::new();
    if args.tsv {
        out.push_str(&tsv_header(with_flags));
        out.push('\n');
        for e in rows {
            out.push_str(&e.tsv_line(with_flags));
            out.push('\n');
        }
    } else {
        for e in rows {
            let p = e.params();
            out.push_str(&format!(
                "case {} t={} ({},{},{}) delta={} theta={} tau={} m_theta={} m_tau={}",
                e.row.case,
                e.row.t,
                p.n(),
                p.r(),
                p.c(),
                p.delta(),
                p.theta(),
                p.tau(),
                p.m_theta(),
                p.m_tau()
            ));
            if with_flags && !e.flags.is_empty() {
                out.push_str(&format!(" [{}]", e.flags));
            }
            out.push('\n');
        }
    }
    Ok(Output::ok(out))
}

fn construct(kind: &Construct, seed: u64) -> Result<Output, Failure> {
    match kind {
        Construct::ThasSomma { p, m, s, form } => {
            let form = match form {
                Some(path) => Some(formats::parse_form(&read_file(path)?)?),
                None => None,
            };
            Ok(Output::ok(formats::emit_cover(&thas_somma(*p, *m, *s, form.as_ref())?)))
        }
        Construct::Dcff { t, d, skew, latin } => {
            let skew = match skew {
                Some(path) => Some(formats::parse_skew(&read_file(path)?)?),
                None => None,
            };
            let latin = match latin {
                Some(path) => Some(formats::parse_latin(&read_file(path)?)?),
                None => None,
            };
            Ok(Output::ok(formats::emit_cover(&dcff(*t, *d, skew.as_ref(), latin.as_ref())?)))
        }
        Construct::ConferenceSeidel { n } => Ok(Output::ok(formats::emit_seidel(&conference_search(*n, seed)?)?)),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Construct { kind } => construct(kind, cli.seed),
        Command::Verify { file } => verify(file),
        Command::CoverToLines(args) => cover_to_lines_cmd(args),
        Command::LinesToCover { file, r } => lines_to_cover_cmd(file, *r),
        Command::DoubleReal { file } => {
            let s = formats::parse_seidel(&read_input(file)?)?;
            Ok(Output::ok(formats::emit_adjacency(&double_real(&s)?)))
        }
        Command::CoverToGh { file } => {
            let f = formats::parse_cover(&read_input(file)?)?;
            Ok(Output::ok(formats::emit_gh(&cover_to_gh(&f)?)))
        }
        Command::GhToCover { file } => {
            let h = formats::parse_gh(&read_input(file)?)?;
            Ok(Output::ok(formats::emit_cover(&gh_to_cover(&h)?)))
        }
        Command::Quotient { file, subgroup } => quotient_cmd(file, subgroup),
        Command::Feasible { n, r, c } => feasible_cmd(*n, *r, *c),
        Command::Enumerate(args) => enumerate_cmd(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build_global() {
        eprintln!("drackn: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let mut stdout = io::stdout().lock();
    match run(&cli) {
        Ok(output) => {
            let _ = stdout.write_all(output.stdout.as_bytes());
            ExitCode::from(if output.failed { 1 } else { 0 })
        }
        Err(Failure::Check { line, message }) => {
            let _ = writeln!(stdout, "{line}");
            eprintln!("drackn: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("drackn: {message}");
            ExitCode::from(2)
        }
    }
}
