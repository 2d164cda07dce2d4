use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use duplab::canon::{DEFAULT_SAMPLES, DEFAULT_SEED};
use duplab::serring::Window;

#[derive(Debug, Parser)]
#[command(name = "duplab", version, about = "Exact checks for amalgamated duplications")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Coefficient field: a supported prime, or 0 for the rationals.
    #[arg(long, global = true, default_value_t = 101)]
    pub prime: u64,
    /// Model cap window `lo,hi` (default [−2c, 4c + largest generator of I)).
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<Window>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Sampled ideals of R⋈I in the duplication pipeline.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Whether the claims are expected to hold.
    #[arg(long, global = true, value_enum, default_value_t = Expect::Pass)]
    pub expect: Expect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerical semigroups.
    Sgp {
        #[command(subcommand)]
        action: SgpAction,
    },
    /// Relative ideals of a numerical semigroup.
    Ideal {
        #[command(subcommand)]
        action: IdealAction,
    },
    /// Finite rings Zmod(n) and their duplications.
    Finring {
        #[command(subcommand)]
        action: FinringAction,
    },
    /// Series models of k[[t^S]]⋈I.
    Dup {
        #[command(subcommand)]
        action: DupAction,
    },
    /// Runs a registered claim and reports each stage.
    Verify(VerifyArgs),
    /// Runs a manifest of commands, one per line.
    Batch { manifest: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum SgpAction {
    /// Frobenius number, gaps, symmetry and canonical ideal.
    Info {
        sgp: String,
    },
    /// Relative ideals with minimum 0.
    Ideals {
        sgp: String,
    },
    Oversemigroups {
        sgp: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealAction {
    Show {
        #[arg(long)]
        sgp: String,
        ideal: String,
    },
    /// `E − F`.
    Colon {
        #[arg(long)]
        sgp: String,
        e: String,
        f: String,
    },
    /// `W − (W − E)`, with `W = S` unless `--over` is given.
    Closure {
        #[arg(long)]
        sgp: String,
        #[arg(long)]
        over: Option<String>,
        ideal: String,
    },
    /// Whether `E − (E − J) = J` for every relative ideal `J`.
    Mcanonical {
        #[arg(long)]
        sgp: String,
        ideal: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FinringAction {
    /// Prime spectrum, nilradical, reducedness and locality.
    Spec {
        ring: String,
    },
    Ideals {
        ring: String,
    },
    /// Size and spectrum of R⋈I.
    Dup {
        ring: String,
        ideal: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum DupAction {
    /// Windows and dimensions of the model and the map sigma.
    Info(DupArgs),
    /// The map sigma and the projection pi.
    Sigma(DupArgs),
    /// Compares Hom over R⋈I into Hom_R(R⋈I, I) with Hom_R(-, I).
    Adjoint {
        #[command(flatten)]
        dup: DupArgs,
        #[arg(long, value_enum, default_value_t = NamedIdeal::Maximal)]
        module: NamedIdeal,
    },
}

#[derive(Debug, Clone, Args)]
pub struct DupArgs {
    #[arg(long)]
    pub sgp: String,
    /// `K` (shifted canonical ideal), `M` (maximal ideal) or `{..} + S`.
    #[arg(long, default_value = "K")]
    pub ideal: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedIdeal {
    Unit,
    O1,
    O2,
    Maximal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClaimId {
    /// Prime spectrum of R⋈I over Zmod(n).
    Spectrum,
    /// R⋈I agrees with the idealization when I² = 0.
    Idealization,
    /// K − (K − J) = J over all relative ideals.
    Duality,
    /// Unique m-canonical ideal.
    Canonical,
    /// Closure formula, intersections, closures and colon of unions.
    Claims,
    /// Symmetric iff principal m-canonical iff all divisorial.
    Gorenstein,
    /// End-to-end duplication pipeline.
    #[value(alias = "cor45")]
    Pipeline,
    /// K − S' is m-canonical over every oversemigroup S'.
    Oversemigroup,
    /// sigma linear, coordinate form, factorization through pi.
    Sigma,
    /// pi generates Hom_R(R⋈I, I) iff sigma is onto.
    PiBasis,
    /// Adjunction between Hom over R⋈I and Hom over R.
    Adjointness,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub claim: ClaimId,
    /// Semigroup; omitted means the configured suite where that makes sense.
    #[arg(long)]
    pub sgp: Option<String>,
    /// `Zmod(n)` for ring claims.
    #[arg(long)]
    pub ring: Option<String>,
    /// `(a)` for ring claims; `K`, `M` or `{..} + S` for series claims.
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long, value_enum, default_value_t = NamedIdeal::Maximal)]
    pub module: NamedIdeal,
}

pub fn parse_window(text: &str) -> Result<Window, String> {
    let t = text
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(')')
        .trim_end_matches(']');
    let (lo, hi) = t
        .split_once(',')
        .ok_or_else(|| format!("expected lo,hi, got {text:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in {text:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in {text:?}"))?;
    if lo >= hi {
        return Err(format!("empty window {text:?}"));
    }
    Ok(Window::new(lo, hi))
}
