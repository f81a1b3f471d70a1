use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ramsey_words::binary::{
    carry_region, check_fragment_pair, common_fragment_count, digit_bounds, first_three_digits,
    fragments, intervals, jumps, label_positions, support, Side,
};
use ramsey_words::phi::phi_with;
use ramsey_words::search::{
    altsum_search, hindman_search, plus_pair_search, q5_search, supermono_search, AltsumParams,
    ColouringSpec, Form, FormOptions, Format, HindmanParams, Limits, PlusParams, Q5Params,
    Q5Variant, SearchReport, SupermonoParams,
};
use ramsey_words::theta::{colour_pair, Stage};
use ramsey_words::verify::{run_suite, Suite};
use ramsey_words::word::{Scan, WordSource};
use ramsey_words::{Binary, Nat};

/// Default directory for search reports when `--out` is not given.
const OUT_DIR_VAR: &str = "RAMSEY_WORDS_OUT";

const EXIT_USAGE: u8 = 1;
const EXIT_PROPERTY: u8 = 2;
const EXIT_UNEXPECTED_WITNESS: u8 = 3;

#[derive(Parser)]
#[command(name = "ramsey-words", version, about = "Pair colourings of binary expansions, word colourings and bounded Ramsey searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Digit diagnostics of one natural (decimal or 0b-prefixed binary).
    Inspect {
        n: String,
        #[arg(long, value_enum, default_value_t = Plain::Text)]
        format: Plain,
    },
    /// Joint diagnostics and colour of a pair a < b.
    InspectPair {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = Plain::Text)]
        format: Plain,
    },
    /// Occurrence colour of a finite word inside an infinite one.
    Phi {
        u: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "full")]
        stage: String,
        #[arg(long, default_value_t = 100_000)]
        scan_bound: usize,
    },
    /// Run an exhaustive property suite; exit code 2 on failure.
    Verify {
        /// firstdigit, lastdigit, jumpdelta, fiveterm, fragments, stage3 or oracles
        suite: String,
        /// Suite-specific bound; see `verify --help`.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value_t = Plain::Text)]
        format: Plain,
    },
    /// Bounded search for a monochromatic structure; writes a report.
    Search(SearchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Plain {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Altsum,
    Supermono,
    Hindman,
    Plus,
    Q5,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Altsum => "altsum",
            Kind::Supermono => "supermono",
            Kind::Hindman => "hindman",
            Kind::Plus => "plus",
            Kind::Q5 => "q5",
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Colouring spec, e.g. const, mod:3, base-lsnz:3, theta:full, phi:stage2, lenmod:2.
    #[arg(long, default_value = "const")]
    colouring: String,
    /// Word spec (supermono): periodic:ab, evper:a|ab, morphic:a->ab,b->a|a, prefix:abc.
    /// For hindman, the finite word whose powers are coloured.
    #[arg(long)]
    word: Option<String>,
    /// Largest term (altsum, plus, q5) or largest exponent (hindman).
    #[arg(long = "bound", visible_alias = "B")]
    bound: Option<u64>,
    /// Sequence length (altsum, q5).
    #[arg(long = "len", visible_aliases = ["L", "max-len"])]
    len: Option<usize>,
    /// Number of terms or factors (supermono, hindman, plus).
    #[arg(long)]
    n: Option<usize>,
    /// q5 coefficient variant: q5, a1free, akfree, gaps.
    #[arg(long, default_value = "q5")]
    variant: String,
    /// altsum constraint form: x_alternating, y_subset, y_block.
    #[arg(long, default_value = "x_alternating")]
    form: String,
    /// y_subset: also allow the first index to be 1.
    #[arg(long)]
    allow_k1_one: bool,
    #[arg(long, default_value_t = 20)]
    suffix_bound: usize,
    #[arg(long, default_value_t = 40)]
    len_bound: usize,
    #[arg(long, default_value_t = 0)]
    gap: usize,
    #[arg(long)]
    scan_bound: Option<usize>,
    /// Stop after this many witnesses; 0 collects all.
    #[arg(long, default_value_t = 1)]
    witness_limit: usize,
    /// Node budget per first term.
    #[arg(long)]
    node_limit: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Report path; defaults to $RAMSEY_WORDS_OUT/<kind>.<ext>, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with code 3 if any witness is found.
    #[arg(long)]
    expect_none: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Inspect { n, format } => inspect(&n, format),
        Command::InspectPair { a, b, format } => inspect_pair(&a, &b, format),
        Command::Phi { u, word, stage, scan_bound } => phi(&u, &word, &stage, scan_bound),
        Command::Verify { suite, bound, format } => verify(&suite, bound, format),
        Command::Search(args) => search(&args),
    }
}

fn parse_nat(s: &str, what: &str) -> Result<Nat> {
    let n: Nat = s.parse().with_context(|| format!("cannot parse {what} {s:?}"))?;
    if n.is_zero() {
        bail!("{what} must be positive (naturals start at 1)");
    }
    Ok(n)
}

fn set(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn inspect(s: &str, format: Plain) -> Result<u8> {
    let n = parse_nat(s, "number")?;
    let (first, last) = digit_bounds(&n)?;
    let sup = support(&n)?;
    let window = first_three_digits(&n)?;
    let runs = intervals(&n)?;
    match format {
        Plain::Json => {
            let v = json!({
                "n": n.to_string(),
                "binary": n.to_binary_string(),
                "support": sup,
                "first_digit": first,
                "last_digit": last,
                "first_three_digits": window.to_string(),
                "intervals": runs,
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Plain::Text => {
            println!("n                  {n} (0b{})", n.to_binary_string());
            println!("support            {}", set(&sup));
            println!("digit bounds       ({first}, {last})");
            println!("first three digits {window}");
            println!("intervals          {runs}");
        }
    }
    Ok(0)
}

fn inspect_pair(a: &str, b: &str, format: Plain) -> Result<u8> {
    let a = parse_nat(a, "a")?;
    let b = parse_nat(b, "b")?;
    if a >= b {
        bail!("inspect-pair needs a < b (got a = {a}, b = {b})");
    }
    let d = b.minus(&a);
    let labels: String = label_positions(&a, &b)
        .iter()
        .rev()
        .map(|(_, l)| l.to_string())
        .collect();
    let j = jumps(&a, &b);
    let i = intervals(&d)?;
    let f = common_fragment_count(&a, &b);
    let carry = carry_region(&a, &b);
    let colour = colour_pair(&a, &b, Stage::Full)?;
    let frag_pair = [(&a, &b), (&b, &a)]
        .into_iter()
        .find(|(lo, up)| check_fragment_pair(*lo, *up).is_ok());
    let frags = match frag_pair {
        Some((lo, up)) => Some((fragments(lo, up, Side::Right)?, fragments(lo, up, Side::Left)?)),
        None => None,
    };
    match format {
        Plain::Json => {
            let v = json!({
                "a": a.to_string(),
                "b": b.to_string(),
                "labels": labels,
                "jumps": j,
                "intervals_of_difference": i,
                "common_fragments": f,
                "carry_region": carry,
                "colour": colour.to_string(),
                "colour_index": colour.dense_index(),
                "fragments": frags.as_ref().map(|(r, l)| json!({"right": r, "left": l})),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Plain::Text => {
            println!("a                  {a} (0b{})", a.to_binary_string());
            println!("b                  {b} (0b{})", b.to_binary_string());
            println!("labels (high..low) {labels}");
            println!("J(a, b)            {j}");
            println!("I(b - a)           {i}");
            println!("F(a, b)            {f}");
            match carry {
                Some(c) => println!("carry region       ({}, {})", c.start, c.stop),
                None => println!("carry region       none (disjoint supports)"),
            }
            println!("colour             {colour} (index {})", colour.dense_index());
            if let Some((right, left)) = &frags {
                let show = |fs: &[ramsey_words::binary::Fragment]| {
                    fs.iter().map(|f| format!("{}@[{},{}]", f.bits, f.lo, f.hi)).collect::<Vec<_>>().join(" ")
                };
                println!("right fragments    {}", show(right));
                println!("left fragments     {}", show(left));
            }
        }
    }
    Ok(0)
}

fn phi(u: &str, word: &str, stage: &str, scan_bound: usize) -> Result<u8> {
    let x: WordSource = word.parse().with_context(|| format!("cannot parse word spec {word:?}"))?;
    let stage: Stage = stage.parse().with_context(|| format!("unknown stage {stage:?}"))?;
    if u.is_empty() {
        bail!("the factor must be nonempty");
    }
    match phi_with(&Scan { source: &x, scan_bound }, u.as_bytes(), stage)? {
        Some(c) => println!("{c}"),
        None => println!("unknown within scan bound {scan_bound}"),
    }
    Ok(0)
}

fn verify(suite: &str, bound: Option<u64>, format: Plain) -> Result<u8> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, bound.unwrap_or_else(|| suite.default_bound()))?;
    match format {
        Plain::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Plain::Text => println!("{report}"),
    }
    Ok(if report.passed { 0 } else { EXIT_PROPERTY })
}

fn required<T>(v: Option<T>, flag: &str, kind: Kind) -> Result<T> {
    v.with_context(|| format!("search {} needs --{flag}", kind.name()))
}

/// Warns when the largest sum a search may form does not fit in a u64.
fn warn_overflow(bound: u64, factor: u64, what: &str) {
    if bound.checked_mul(factor).is_none() {
        eprintln!("warning: {what} can exceed 2^64 at bound {bound}; such branches fail with an overflow error");
    }
}

fn search(args: &SearchArgs) -> Result<u8> {
    let format: Format = args.format.parse()?;
    let spec: ColouringSpec = args
        .colouring
        .parse()
        .with_context(|| format!("cannot parse colouring spec {:?}", args.colouring))?;
    let limits = Limits {
        witnesses: (args.witness_limit > 0).then_some(args.witness_limit),
        nodes_per_branch: args.node_limit,
        threads: args.threads,
    };
    if args.threads == Some(0) {
        bail!("--threads must be positive");
    }
    let kind = args.kind;
    let report: SearchReport = match kind {
        Kind::Altsum => {
            let bound = args.bound.unwrap_or(16);
            let max_len = args.len.unwrap_or(6);
            warn_overflow(bound, max_len as u64, "alternating sums");
            let p = AltsumParams {
                bound,
                max_len,
                form: args.form.parse::<Form>()?,
                options: FormOptions { allow_k1_one: args.allow_k1_one },
            };
            altsum_search(spec.on_pairs()?, &p, &limits)?
        }
        Kind::Supermono => {
            let word = required(args.word.as_deref(), "word", kind)?;
            let x: WordSource = word.parse().with_context(|| format!("cannot parse word spec {word:?}"))?;
            let n = args.n.unwrap_or(3);
            let scan_bound = args.scan_bound.unwrap_or_else(|| {
                SupermonoParams::default_scan_bound(args.suffix_bound, args.len_bound, args.gap, n)
            });
            let p = SupermonoParams {
                suffix_bound: args.suffix_bound,
                n,
                len_bound: args.len_bound,
                gap: args.gap,
                scan_bound,
            };
            supermono_search(&x, spec.on_words()?, &p, &limits)?
        }
        Kind::Hindman => {
            let word = required(args.word.clone(), "word", kind)?;
            let p = HindmanParams { word, n: args.n.unwrap_or(3), bound: args.bound.unwrap_or(10) };
            hindman_search(spec.on_words()?, &p, &limits)?
        }
        Kind::Plus => {
            let n = args.n.unwrap_or(3);
            let bound = args.bound.unwrap_or(64);
            warn_overflow(bound, n as u64, "subset sums");
            plus_pair_search(spec.on_pairs()?, &PlusParams { n, bound }, &limits)?
        }
        Kind::Q5 => {
            let len = args.len.unwrap_or(3);
            let bound = args.bound.unwrap_or(243);
            warn_overflow(bound, 2 * len as u64, "coefficient sums");
            let variant: Q5Variant = args.variant.parse()?;
            q5_search(spec.on_numbers()?, &Q5Params { variant, len, bound }, &limits)?
        }
    };

    let body = report.render(format);
    let ext = match format {
        Format::Json => "json",
        Format::Text => "txt",
        Format::Csv => "csv",
    };
    let path = args.out.clone().or_else(|| {
        std::env::var_os(OUT_DIR_VAR).map(|dir| PathBuf::from(dir).join(format!("{}.{ext}", kind.name())))
    });
    match path {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).with_context(|| format!("cannot create {}", parent.display()))?;
            }
            std::fs::write(&path, &body).with_context(|| format!("cannot write {}", path.display()))?;
            eprintln!(
                "{}: {} witness(es), exhausted = {}, report written to {}",
                kind.name(),
                report.witnesses.len(),
                report.exhausted,
                path.display()
            );
        }
        None => print!("{body}"),
    }
    if args.expect_none && !report.witnesses.is_empty() {
        return Ok(EXIT_UNEXPECTED_WITNESS);
    }
    Ok(0)
}
