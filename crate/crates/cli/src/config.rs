use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vsa_core::affine::RealizationFamily;
use vsa_core::fockspan::Caps;
use vsa_core::{Error, Result, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    S1,
    S2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CharTarget {
    /// Subalgebra generated by the coset currents.
    Coset,
    /// Subalgebra generated by the inner currents.
    Inner,
    /// The whole Fock space.
    Fock,
}

#[derive(Debug, Parser)]
#[command(name = "vsa", version, about = "Exact free-field vertex superalgebra computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalOpts {
    /// Worker threads (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed recorded in the report for reproducible randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest number of basis vectors per weight block.
    #[arg(long, global = true, env = "VSA_MAX_PER_WEIGHT", default_value_t = 2_000_000)]
    pub max_per_weight: usize,
    /// Largest truncation weight accepted.
    #[arg(long, global = true, env = "VSA_MAX_WEIGHT_CAP", default_value = "8")]
    pub max_weight_cap: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Triple {
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub r: i64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Realization {
    #[arg(long, value_enum, default_value_t = Family::S2)]
    pub family: Family,
    #[command(flatten)]
    pub params: Triple,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Truncation {
    /// Truncation weight N (`3`, `5/2`, `2.5`).
    #[arg(long, default_value = "2")]
    pub max_weight: String,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Singular part of the OPE of two field expressions.
    Ope {
        a: String,
        b: String,
        /// Number of beta-gamma pairs (default: smallest that fits).
        #[arg(long)]
        bg: Option<u32>,
        /// Number of b-c pairs (default: smallest that fits).
        #[arg(long)]
        bc: Option<u32>,
    },
    /// Affine OPEs of the inner and coset currents.
    VerifyOpe {
        #[command(flatten)]
        real: Realization,
    },
    /// Mutual locality of inner and coset currents.
    CosetCheck {
        #[command(flatten)]
        real: Realization,
    },
    /// Sugawara vectors of inner and coset add up to the free-field Virasoro vector.
    EmbedCheck {
        #[command(flatten)]
        real: Realization,
    },
    /// Sugawara vectors and their central charges.
    Sugawara {
        #[command(flatten)]
        real: Realization,
    },
    /// Graded dimensions of a Fock space or current subalgebra.
    Char {
        #[command(flatten)]
        real: Realization,
        #[command(flatten)]
        trunc: Truncation,
        #[arg(long, value_enum, default_value_t = CharTarget::Coset)]
        of: CharTarget,
    },
    /// Presentation of Zhu's C2 algebra of the coset algebra.
    Zhu {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        trunc: Truncation,
        /// Largest relation degree searched (default: N).
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// Hilbert series of the arc space of the C2 algebra.
    ArcHilbert {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        trunc: Truncation,
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// Graded dimensions of jet invariants.
    Invariants {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        trunc: Truncation,
    },
    /// Classical freeness certificate through weight N.
    Certify {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        trunc: Truncation,
        #[arg(long)]
        dmax: Option<usize>,
        /// Truncation of the vertex algebra computation (default: N).
        #[arg(long)]
        delta_max: Option<String>,
        /// Largest relation degree tried on retries (default: Dmax).
        #[arg(long)]
        dmax_cap: Option<usize>,
    },
}

/// Parsed and validated configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub threads: usize,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub seed: u64,
    #[serde(skip)]
    pub caps: Caps,
    pub max_per_weight: usize,
    pub max_weight_cap: Weight,
}

pub fn parse_weight(s: &str) -> Result<Weight> {
    let w = Weight::parse(s).ok_or_else(|| Error::InvalidParameter(format!("cannot read weight `{s}`")))?;
    if w.0 < 0 {
        return Err(Error::InvalidParameter(format!("negative weight {w}")));
    }
    Ok(w)
}

impl Family {
    pub fn core(self) -> RealizationFamily {
        match self {
            Family::S1 => RealizationFamily::S1,
            Family::S2 => RealizationFamily::S2,
        }
    }
}

impl Triple {
    pub fn validate(&self) -> Result<()> {
        let Triple { n, m, r } = *self;
        if n < 1 || r < 1 || m < 0 {
            return Err(Error::InvalidParameter(format!("need n >= 1, r >= 1, m >= 0 (got n={n}, m={m}, r={r})")));
        }
        Ok(())
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let g = cli.global;
        if g.max_per_weight == 0 {
            return Err(Error::InvalidParameter("caps must be positive".into()));
        }
        let cap = parse_weight(&g.max_weight_cap)?;
        if cap.0 == 0 {
            return Err(Error::InvalidParameter("caps must be positive".into()));
        }
        let caps = Caps { max_per_weight: g.max_per_weight, max_weight: cap };
        let cfg = Self {
            command: cli.command,
            threads: g.threads,
            format: g.format,
            output: g.output,
            seed: g.seed,
            caps,
            max_per_weight: g.max_per_weight,
            max_weight_cap: cap,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let check_trunc = |t: &Truncation| -> Result<Weight> {
            let w = parse_weight(&t.max_weight)?;
            self.caps.check_weight(w)?;
            Ok(w)
        };
        match &self.command {
            Command::Ope { .. } => {}
            Command::VerifyOpe { real } | Command::CosetCheck { real } | Command::EmbedCheck { real } | Command::Sugawara { real } => real.params.validate()?,
            Command::Char { real, trunc, of } => {
                if *of != CharTarget::Fock {
                    real.params.validate()?;
                }
                check_trunc(trunc)?;
            }
            Command::Zhu { params, trunc, .. } | Command::ArcHilbert { params, trunc, .. } | Command::Invariants { params, trunc } => {
                params.validate()?;
                check_trunc(trunc)?;
            }
            Command::Certify { params, trunc, delta_max, .. } => {
                params.validate()?;
                let n = check_trunc(trunc)?;
                if !n.is_integral() {
                    return Err(Error::InvalidParameter(format!("certificate weight must be an integer, got {n}")));
                }
                if let Some(d) = delta_max {
                    let d = parse_weight(d)?;
                    self.caps.check_weight(d)?;
                    if d < n {
                        return Err(Error::InvalidParameter(format!("Delta_max {d} below N {n}")));
                    }
                }
            }
        }
        Ok(())
    }
}
