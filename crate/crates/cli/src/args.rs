use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dunklpoly::exactnum::parse_rational;
use dunklpoly::families::{BigM1JacobiParams, BigQJacobiParams, CbiParams, ChiharaParams, YParams};
use dunklpoly::quad::WeightSpec;
use dunklpoly::{Family, FamilyId, Rational};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "dunklpoly", version, about = "Exact construction and verification of Chihara-type polynomial families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence coefficients (diag, sub) at degree n.
    Coeffs {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        /// Print every degree from 0 to n.
        #[arg(long)]
        table: bool,
    },
    /// Monic polynomial of degree n.
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        /// Build from the hypergeometric closed form instead of the recurrence.
        #[arg(long)]
        explicit: bool,
    },
    /// Sweep an operator eigen-equation over degrees 0..=cap.
    Eigencheck {
        /// chihara_D, cbi_K, gegenbauer_W, gegenbauer_Q, y_Z, gh_Omega, gh_OmegaTilde, reflection_component
        #[arg(long)]
        operator: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        /// Spectral shift of cbi_K.
        #[arg(long = "op-alpha", allow_hyphen_values = true)]
        op_alpha: Option<String>,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quadratic algebra relations on monomials up to a degree.
    Algebra {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gram matrix of P_0..P_n by Gauss quadrature.
    Gram {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Print the normalized matrix.
        #[arg(long)]
        matrix: bool,
        /// Also compare the folded integral with direct adaptive integration.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Norm ratios by quadrature against exact rationals.
    Norms {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Degree cap for the exact norm recurrence.
        #[arg(long = "exact-n", default_value_t = 30)]
        exact_n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pearson-type equations of the Chihara weight.
    Pearson {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Christoffel/Geronimus transforms of the big -1 Jacobi family and the kernel map.
    Transform {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convergence of a limit process along a step sequence.
    Limits {
        /// cbi_h_to_0, bigq_q_to_minus1, chihara_beta_to_inf
        #[arg(long = "case")]
        case: String,
        /// Comma-separated, strictly decreasing.
        #[arg(long, value_delimiter = ',', default_value = "1e-3,1e-4,1e-5")]
        steps: Vec<f64>,
        #[arg(long = "degree-cap", default_value_t = 6)]
        degree_cap: usize,
        /// Compare against the target with the sign of gamma flipped.
        #[arg(long = "flip-gamma")]
        flip_gamma: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// CSV samples (x, weight) over the support.
    WeightSample {
        #[command(flatten)]
        family: FamilyArgs,
        /// Points per support component.
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Truncation of unbounded supports.
        #[arg(long, default_value_t = 4.0)]
        extent: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Acceptance criteria with pinned parameter sets.
    Suite {
        #[arg(long, conflicts_with = "criterion")]
        all: bool,
        /// Criterion name or number; repeatable.
        #[arg(long)]
        criterion: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write records as JSON ("-" for stdout).
    #[arg(long, conflicts_with = "csv")]
    pub json: Option<PathBuf>,
    /// Write records as CSV ("-" for stdout).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// chihara, cbi, big-1-jacobi, big-q-jacobi, gegenbauer, y, gen-hermite, jacobi
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub params: ParamArgs,
}

/// Rational parameters as `p/q` or integers.
#[derive(Debug, Args, Default)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long = "b", allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long = "c", allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
}

impl ParamArgs {
    fn all(&self) -> [(&'static str, &Option<String>); 12] {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("mu", &self.mu),
            ("rho1", &self.rho1),
            ("rho2", &self.rho2),
            ("r1", &self.r1),
            ("r2", &self.r2),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("q", &self.q),
        ]
    }

    /// Rejects flags outside `allowed`, so a typo never silently falls back to a default.
    pub fn only(&self, allowed: &[&str], context: &str) -> Result<(), CliError> {
        for (name, v) in self.all() {
            if v.is_some() && !allowed.contains(&name) {
                return Err(CliError::Usage(format!("--{name} does not apply to {context}")));
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<Rational, CliError> {
        let v = self
            .all()
            .into_iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, v)| v.clone())
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{name}")))?;
        parse_flag(name, &v)
    }

    pub fn chihara(&self, context: &str) -> Result<ChiharaParams, CliError> {
        self.only(&["alpha", "beta", "gamma"], context)?;
        Ok(ChiharaParams::new(self.get("alpha")?, self.get("beta")?, self.get("gamma")?))
    }

    pub fn y(&self, context: &str) -> Result<YParams, CliError> {
        self.only(&["mu", "gamma"], context)?;
        Ok(YParams::new(self.get("mu")?, self.get("gamma")?))
    }

    pub fn cbi(&self, context: &str) -> Result<CbiParams, CliError> {
        self.only(&["rho1", "rho2", "r1", "r2"], context)?;
        Ok(CbiParams::new(self.get("rho1")?, self.get("rho2")?, self.get("r1")?, self.get("r2")?))
    }

    pub fn big_minus_one(&self, context: &str) -> Result<BigM1JacobiParams, CliError> {
        self.only(&["a", "b", "c"], context)?;
        Ok(BigM1JacobiParams::new(self.get("a")?, self.get("b")?, self.get("c")?))
    }

    pub fn family(&self, id: FamilyId) -> Result<Family, CliError> {
        let ctx = id.name();
        Ok(match id {
            FamilyId::Chihara => Family::Chihara(self.chihara(ctx)?),
            FamilyId::Cbi => Family::Cbi(self.cbi(ctx)?),
            FamilyId::BigMinusOneJacobi => Family::BigMinusOneJacobi(self.big_minus_one(ctx)?),
            FamilyId::BigQJacobi => {
                self.only(&["alpha", "beta", "gamma", "q"], ctx)?;
                Family::BigQJacobi(BigQJacobiParams::new(
                    self.get("alpha")?,
                    self.get("beta")?,
                    self.get("gamma")?,
                    self.get("q")?,
                ))
            }
            FamilyId::Gegenbauer => {
                self.only(&["alpha", "beta"], ctx)?;
                Family::Gegenbauer { alpha: self.get("alpha")?, beta: self.get("beta")? }
            }
            FamilyId::Y => Family::Y(self.y(ctx)?),
            FamilyId::GeneralizedHermite => {
                self.only(&["mu"], ctx)?;
                Family::GeneralizedHermite { mu: self.get("mu")? }
            }
            FamilyId::ClassicalJacobi => {
                self.only(&["alpha", "beta"], ctx)?;
                Family::ClassicalJacobi { alpha: self.get("alpha")?, beta: self.get("beta")? }
            }
        })
    }
}

pub fn parse_flag(name: &str, v: &str) -> Result<Rational, CliError> {
    parse_rational(v).map_err(|_| CliError::Usage(format!("--{name}: expected an integer or p/q, got {v:?}")))
}

impl FamilyArgs {
    pub fn id(&self) -> Result<FamilyId, CliError> {
        self.family
            .parse()
            .map_err(|e: String| CliError::Usage(format!("--family: {e}")))
    }

    pub fn family(&self) -> Result<Family, CliError> {
        self.params.family(self.id()?)
    }

    pub fn weight(&self) -> Result<WeightSpec, CliError> {
        Ok(match self.family()? {
            Family::Chihara(p) => WeightSpec::Chihara(p),
            Family::Gegenbauer { alpha, beta } => WeightSpec::Gegenbauer { alpha, beta },
            Family::Y(p) => WeightSpec::Y(p),
            Family::GeneralizedHermite { mu } => WeightSpec::GeneralizedHermite { mu },
            other => {
                return Err(CliError::Usage(format!(
                    "--family: {} has no continuous weight here (use chihara, gegenbauer, y or gen-hermite)",
                    other.name()
                )))
            }
        })
    }
}
