//! Command-line surface and the run configuration it resolves to.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use vstar_core::field::FieldSpec;
use vstar_core::group::GroupSpec;
use vstar_core::involution::{
    enumerate_involutive_automorphisms, parse_involution, InvolutionSpec,
};

/// Environment variable selecting the worker count for unit sweeps.
pub const WORKERS_ENV: &str = "VSTAR_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "vstar",
    about = "Unitary subgroups of group algebras of finite abelian 2-groups over GF(2^k): \
             exhaustive orders, closed-form predictions, and verification suites",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate unitary subgroups: one row per involution with predicted
    /// and observed orders, exponent, and abelian invariants.
    Orders(OrdersArgs),
    /// Evaluate the closed-form order predictors without enumerating.
    Predict(PredictArgs),
    /// Run a named verification suite; exits nonzero if any check fails.
    Verify(VerifyArgs),
    /// Write the full verification matrix as a machine-readable report.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Enumeration,
    ImageCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Enumeration budget: the largest unit sweep the run may attempt.
    #[arg(long, default_value_t = 1 << 24)]
    pub budget: u64,

    /// Seed for the randomized property bundles.
    #[arg(long, default_value_t = 2)]
    pub seed: u64,

    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,

    /// Emit measured wall-clock times. Off by default so identical
    /// configurations produce byte-identical output.
    #[arg(long, default_value_t = false)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct OrdersArgs {
    /// Group, e.g. c8, c16, or c8xc2.
    #[arg(long)]
    pub group: String,

    /// Field order q = 2^k, k <= 8.
    #[arg(long)]
    pub field: u64,

    /// Reduction modulus as a bit string, e.g. 0b111 for x^2+x+1.
    #[arg(long)]
    pub modulus: Option<String>,

    /// Involution selectors (repeatable): sigma1..sigma4 for cyclic groups,
    /// sigma1..sigma6 for c8xc2, canonical, or an image list a->a^3,b->b.
    /// Defaults to every involutive automorphism.
    #[arg(long = "involution")]
    pub involutions: Vec<String>,

    /// enumeration collects the subgroup; image-count only counts it.
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub group: String,

    #[arg(long)]
    pub field: u64,

    #[arg(long)]
    pub modulus: Option<String>,

    /// Involution selectors (repeatable). Defaults to every involution a
    /// formula covers.
    #[arg(long = "involution")]
    pub involutions: Vec<String>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite: lemma3, lemma5, lemma6, theorem1, example-c8xc2, or properties.
    pub suite: String,

    /// Cyclic exponent n for the lemma and theorem suites (group C_2^n).
    #[arg(long, default_value_t = 3)]
    pub n: u32,

    /// Field order q = 2^k.
    #[arg(long, default_value_t = 2)]
    pub field: u64,

    #[arg(long)]
    pub modulus: Option<String>,

    /// Randomized cases per property bundle.
    #[arg(long, default_value_t = 10_000)]
    pub cases: u64,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Resolves the field from `--field` and the optional `--modulus` bits.
pub fn resolve_field(q: u64, modulus: Option<&str>) -> Result<FieldSpec> {
    match modulus {
        None => FieldSpec::from_order(q).map_err(Into::into),
        Some(text) => {
            let digits = text.trim().trim_start_matches("0b");
            let bits = u16::from_str_radix(digits, 2)
                .with_context(|| format!("modulus {text:?} is not a binary bit string"))?;
            FieldSpec::from_order_with_modulus(q, bits).map_err(Into::into)
        }
    }
}

pub fn resolve_group(text: &str) -> Result<GroupSpec> {
    GroupSpec::parse(text).map_err(Into::into)
}

/// Expands the involution selectors: all involutive automorphisms when no
/// selector is given, the named/explicit ones otherwise. `none` yields the
/// empty selection.
pub fn resolve_involutions(spec: &GroupSpec, selectors: &[String]) -> Result<Vec<InvolutionSpec>> {
    if selectors.is_empty() {
        return enumerate_involutive_automorphisms(spec).map_err(Into::into);
    }
    let mut out = Vec::new();
    for selector in selectors {
        let trimmed = selector.trim();
        if trimmed.is_empty() || trimmed.eq_ignore_ascii_case("none") {
            continue;
        }
        let sigma = parse_involution(spec, trimmed)
            .with_context(|| format!("cannot resolve involution {trimmed:?} on {spec}"))?;
        out.push(sigma);
    }
    Ok(out)
}

/// Worker count from the environment, defaulting to the machine parallelism.
pub fn worker_count() -> usize {
    if let Ok(text) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = text.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

pub fn validate_suite_name(name: &str) -> Result<()> {
    const SUITES: [&str; 6] = [
        "lemma3",
        "lemma5",
        "lemma6",
        "theorem1",
        "example-c8xc2",
        "properties",
    ];
    if SUITES.contains(&name) {
        Ok(())
    } else {
        bail!(
            "unknown suite {name:?}; expected one of {}",
            SUITES.join(", ")
        )
    }
}
