use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triplekit::FactorKind;

#[derive(Debug, Parser)]
#[command(
    name = "triplekit",
    version,
    about = "Cartan factor computations with JSON in and out"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input JSON file, `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    pub input: String,
    /// Output file, `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    pub output: String,
    #[arg(long, global = true, env = "TRIPLEKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    /// Residual tolerance for identities and isometry checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Snapping radius for Peirce eigenvalues.
    #[arg(long, global = true)]
    pub eig_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transition pseudo-probabilities of a pair `{"e": .., "v": ..}` of minimal tripotents.
    Ttp,
    /// Peirce decomposition of a tripotent.
    Peirce {
        /// Include the projector matrices.
        #[arg(long)]
        projectors: bool,
    },
    /// Numerical audit of the triple axioms on a factor.
    Audit {
        /// Factor such as `type1:2x3`, `type2:4`, `type3:3`, `spin:5`; otherwise read from input.
        #[arg(long)]
        factor: Option<FactorArg>,
    },
    /// Extend a map on minimal tripotents (table or generator spec) and certify it.
    Extend,
    /// Factor a rank-one preserving operator on a matrix factor.
    Factorize,
    /// Decompose an element into orthogonal minimal tripotents.
    Decompose,
    /// Generate preserver specs, tabulated maps or random minimal pairs.
    Generate {
        #[arg(long, value_enum, default_value_t = What::Spec)]
        what: What,
        #[arg(long)]
        factor: FactorArg,
        #[arg(long, value_enum, default_value_t = CaseArg::A)]
        case: CaseArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    /// Preserver generator spec (type1 or spin).
    Spec,
    /// Map table on the minimal basis plus `--samples` extra points.
    Map,
    /// Two random minimal tripotents, ready for `ttp`.
    MinimalPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorArg(pub FactorKind);

impl FromStr for FactorArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, dims) = s
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:DIMS, got `{s}`"))?;
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad dimension `{t}`: {e}"))
        };
        let k = match kind.trim().to_ascii_lowercase().as_str() {
            "type1" => {
                let (m, n) = dims.split_once('x').ok_or("type1 needs MxN")?;
                FactorKind::Type1 {
                    m: num(m)?,
                    n: num(n)?,
                }
            }
            "type2" => FactorKind::Type2 { n: num(dims)? },
            "type3" => FactorKind::Type3 { n: num(dims)? },
            "spin" => FactorKind::Spin { n: num(dims)? },
            other => return Err(format!("unknown factor kind `{other}`")),
        };
        Ok(FactorArg(k))
    }
}
