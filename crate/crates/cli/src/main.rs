use std::fs;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use symtrace_core::albert::{classify_odd_totally_real, Classification};
use symtrace_core::decode::io::{read_samples, write_samples, DecodeReport};
use symtrace_core::decode::{decode, simulate_family};
use symtrace_core::finitegrp::{self, golden, GroupError, CLASS_CAP};
use symtrace_core::symrep::RepSpec;

mod selftest;

const DEFAULT_SEED: u64 = 0x5EED;
const DEFAULT_FIXTURES: &str = "crates/core/tests/fixtures/golden_groups.json";

#[derive(Parser)]
#[command(name = "symtrace", version, about = "Exact trace decoding and finite group experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write seeded trace samples for a representation spec.
    Simulate(SimulateArgs),
    /// Recover the spec behind a sample file.
    Decode(DecodeArgs),
    /// Endomorphism types for an odd-dimensional abelian variety over a totally real field.
    Classify(ClassifyArgs),
    /// Finite matrix group computations.
    Grouplab(GrouplabArgs),
    /// Run the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Comma-separated symmetric-power degrees, e.g. `2` or `1,3`.
    #[arg(long, value_parser = parse_factors)]
    factors: Factors,
    #[arg(long, default_value_t = 0)]
    weight: u32,
    /// Number of determinant-one samples (default: degree sum + 2).
    #[arg(long)]
    det1: Option<usize>,
    #[arg(long, default_value_t = 3)]
    twists: usize,
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample file; samples go to stdout (summary to stderr) when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    /// Sample file, or `-` for stdin.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = parse_factors)]
    expect_factors: Option<Factors>,
    #[arg(long)]
    expect_weight: Option<u32>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    dim: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lab {
    Closure,
    Kernel,
    Normal,
    Degrees,
    Dichotomy,
    Dual,
}

#[derive(Args)]
struct GrouplabArgs {
    #[arg(value_enum)]
    what: Option<Lab>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    l: Option<u64>,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Largest group to build.
    #[arg(long, default_value_t = CLASS_CAP)]
    cap: usize,
    /// Regenerate the golden fixture file.
    #[arg(long)]
    bless: bool,
    #[arg(long, default_value = DEFAULT_FIXTURES)]
    fixtures: PathBuf,
}

#[derive(Args)]
struct SelftestArgs {
    /// Deliberately break one building block to check that the suite notices.
    #[arg(long, value_enum)]
    inject_fault: Option<selftest::Fault>,
}

/// A comma-separated degree list such as `1,3`.
#[derive(Clone, Debug)]
struct Factors(Vec<u32>);

fn parse_factors(s: &str) -> Result<Factors, String> {
    if s.trim().is_empty() {
        return Err("at least one factor is required".into());
    }
    s.split(',')
        .map(|p| {
            let n: u32 = p.trim().parse().map_err(|_| format!("`{p}` is not a degree"))?;
            if n == 0 {
                return Err("factors must be positive".into());
            }
            Ok(n)
        })
        .collect::<Result<_, _>>()
        .map(Factors)
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed `{s}`: {e}"))
}

/// A failed command: exit code plus a JSON error report for stdout.
struct Failure {
    code: u8,
    report: Value,
}

impl Failure {
    fn new(code: u8, name: &str, message: impl ToString) -> Self {
        Self {
            code,
            report: json!({ "error": name, "message": message.to_string() }),
        }
    }

    fn validation(message: impl ToString) -> Self {
        Self::new(2, "Validation", message)
    }

    fn group(e: GroupError) -> Self {
        let code = if matches!(e, GroupError::CapExceeded { .. }) { 5 } else { 2 };
        Self::new(code, e.name(), e)
    }
}

type CmdResult = Result<(), Failure>;

fn emit<T: Serialize>(value: &T) {
    let line = serde_json::to_string(value).expect("reports serialise");
    println!("{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Decode(a) => decode_cmd(a),
        Command::Classify(a) => classify(a),
        Command::Grouplab(a) => grouplab(a),
        Command::Selftest(a) => return selftest::run(a.inject_fault),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            emit(&f.report);
            if let Some(msg) = f.report.get("message").and_then(Value::as_str) {
                eprintln!("symtrace: {msg}");
            }
            ExitCode::from(f.code)
        }
    }
}

fn simulate(a: SimulateArgs) -> CmdResult {
    let spec = RepSpec::new(a.factors.0, a.weight).map_err(Failure::validation)?;
    let det1 = a.det1.unwrap_or(spec.degree_sum() as usize + 2);
    let samples = simulate_family(&spec, det1, a.twists, a.seed);
    let summary = json!({
        "spec": spec.to_string(),
        "factors": spec.factors(),
        "det_weight": spec.det_weight(),
        "det1": det1,
        "twists": a.twists,
        "seed": a.seed,
        "lines": samples.len(),
        "out": a.out.as_ref().map(|p| p.display().to_string()),
    });
    let io_err = |e: io::Error| Failure::new(2, "Io", e);
    match a.out {
        Some(path) => {
            let file = fs::File::create(&path).map_err(io_err)?;
            let mut w = io::BufWriter::new(file);
            write_samples(&mut w, &samples).map_err(io_err)?;
            w.flush().map_err(io_err)?;
            emit(&summary);
        }
        None => {
            let stdout = io::stdout();
            write_samples(stdout.lock(), &samples).map_err(io_err)?;
            eprintln!("{}", serde_json::to_string(&summary).expect("summary serialises"));
        }
    }
    Ok(())
}

fn decode_cmd(a: DecodeArgs) -> CmdResult {
    let samples = if a.input.as_os_str() == "-" {
        read_samples(io::stdin().lock())
    } else {
        let file = fs::File::open(&a.input)
            .map_err(|e| Failure::new(2, "Io", format!("{}: {e}", a.input.display())))?;
        read_samples(BufReader::new(file))
    }
    .map_err(|e| Failure::new(2, "Parse", e))?;

    let result = decode(&samples).map_err(|e| Failure::new(3, e.name(), e))?;
    emit(&DecodeReport::from(&result));

    let mut mismatches = Vec::new();
    if let Some(Factors(mut want)) = a.expect_factors {
        want.sort_unstable();
        if want != result.factors {
            mismatches.push(format!("factors {:?} != expected {want:?}", result.factors));
        }
    }
    if let Some(w) = a.expect_weight {
        if w != result.det_weight {
            mismatches.push(format!("det_weight {} != expected {w}", result.det_weight));
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(4, "ExpectationMismatch", mismatches.join("; ")))
    }
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    degrees: Vec<u64>,
    #[serde(flatten)]
    classification: &'a Classification,
}

fn classify(a: ClassifyArgs) -> CmdResult {
    let dim = u64::try_from(a.dim)
        .map_err(|_| Failure::validation(format!("dimension must be positive, got {}", a.dim)))?;
    let c = classify_odd_totally_real(dim).map_err(Failure::validation)?;
    emit(&ClassifyReport { degrees: c.degrees(), classification: &c });
    Ok(())
}

fn group_name(n: usize, l: u64, m: u32) -> String {
    if m == 1 {
        format!("SL_{n}(Z/{l})")
    } else {
        format!("SL_{n}(Z/{l}^{m})")
    }
}

fn grouplab(a: GrouplabArgs) -> CmdResult {
    if a.bless {
        let records = golden::golden_records().map_err(Failure::group)?;
        if let Some(dir) = a.fixtures.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Failure::new(2, "Io", e))?;
        }
        fs::write(&a.fixtures, golden::to_json(&records)).map_err(|e| Failure::new(2, "Io", e))?;
        emit(&json!({ "blessed": a.fixtures.display().to_string(), "records": records.len() }));
        return Ok(());
    }
    let what = a
        .what
        .ok_or_else(|| Failure::validation("a computation or --bless is required"))?;
    let l = a.l.ok_or_else(|| Failure::validation("--l is required"))?;
    let (n, m, cap) = (a.n, a.m, a.cap);
    if n == 0 {
        return Err(Failure::validation("--n must be positive"));
    }
    let name = group_name(n, l, m);

    let report = match what {
        Lab::Closure => {
            let g = finitegrp::special_linear(n, l, m, cap).map_err(Failure::group)?;
            let formula = finitegrp::group_order(n as u32, l, m);
            json!({
                "group": name,
                "order": g.order(),
                "formula_order": formula.to_string(),
                "matches_formula": formula == g.order().into(),
                "generators": g.generators().len(),
            })
        }
        Lab::Kernel => {
            let k = finitegrp::congruence_kernel(n, l, m, cap).map_err(Failure::group)?;
            json!({
                "order": k.kernel.order(),
                "abelian": k.abelian,
                "exponent": k.exponent,
                "group": name,
                "n": n,
                "l": l,
                "m": m,
                "non_commuting_pair": k.non_commuting_pair.as_ref().map(|(x, y)| [x.entries(), y.entries()]),
            })
        }
        Lab::Normal => {
            let g = finitegrp::special_linear(n, l, m, cap).map_err(Failure::group)?;
            let normals = finitegrp::normal_subgroups(&g).map_err(Failure::group)?;
            json!({
                "group": name,
                "order": g.order(),
                "orders": normals.iter().map(|s| s.order()).collect::<Vec<_>>(),
            })
        }
        Lab::Degrees => {
            let g = finitegrp::special_linear(n, l, m, cap).map_err(Failure::group)?;
            let d = finitegrp::character_degrees(&g).map_err(Failure::group)?;
            json!({
                "group": name,
                "order": g.order(),
                "degrees": d.degrees,
                "min_nonlinear": d.min_nonlinear(),
                "sum_of_squares": d.degrees.iter().map(|x| x * x).sum::<u64>(),
                "class_count": d.class_sizes.len(),
                "linear_count": d.linear_count,
                "derived_order": d.derived_order,
                "exponent": d.exponent,
                "aux_prime": d.aux_prime,
            })
        }
        Lab::Dichotomy => {
            if m != 1 {
                return Err(Failure::validation("dichotomy works over the prime field (m = 1)"));
            }
            let r = finitegrp::order_dichotomy(n, l, cap).map_err(Failure::group)?;
            serde_json::to_value(r).expect("report serialises")
        }
        Lab::Dual => {
            let g = finitegrp::special_linear(n, l, m, cap).map_err(Failure::group)?;
            let k = finitegrp::congruence_kernel(n, l, m, cap).map_err(Failure::group)?;
            let r = finitegrp::dual_action(&g, &k.kernel).map_err(Failure::group)?;
            json!({
                "group": name,
                "subgroup": "congruence kernel",
                "orbit_sizes": r.orbit_sizes(),
                "report": r,
            })
        }
    };
    emit(&report);
    Ok(())
}
