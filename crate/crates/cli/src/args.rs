use clap::{Args, Parser, Subcommand, ValueEnum};
use riemann_poisson::SampleSpec;

#[derive(Debug, Parser)]
#[command(name = "rpcheck", version, about = "Compatibility checks for curl-form Poisson structures on R³")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the residual suite on a potential and report a verdict.
    Verify {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Also cross-check symbolic derivatives against central differences with this step.
        #[arg(long = "h", value_name = "H")]
        h: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the 27 Christoffel symbols of the potential's connection.
    Christoffel {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the degree-2 family member for parameters a, b, c and check it exactly.
    #[command(allow_negative_numbers = true)]
    Family {
        a: f64,
        b: f64,
        c: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Reconstruct the potential of a curl-form bivector (p12, p13, p23).
    #[command(allow_negative_numbers = true)]
    Potential {
        /// p12, p13, p23 as positional expressions.
        #[arg(value_name = "P12", allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(value_name = "P13", allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(value_name = "P23", allow_hyphen_values = true)]
        c: Option<String>,
        #[command(flatten)]
        bivector: BivectorArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the components of d|df|² − Δf·df.
    Residual {
        #[arg(long = "f", value_name = "EXPR")]
        f: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the coefficient of [π, π] for a bivector, or for the curl form of --f.
    Jacobi {
        #[arg(long = "f", value_name = "EXPR", conflicts_with_all = ["p12", "p13", "p23"])]
        f: Option<String>,
        #[command(flatten)]
        bivector: BivectorArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct BivectorArgs {
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub p12: Option<String>,
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub p13: Option<String>,
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub p23: Option<String>,
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    /// Sample box [LO, HI]³.
    #[arg(long = "box", num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub bounds: Option<Vec<f64>>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Radius of the ball around the origin left out of the sample.
    #[arg(long)]
    pub exclude: Option<f64>,
    #[arg(long = "abs-tol")]
    pub abs_tol: Option<f64>,
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
}

impl SamplingArgs {
    pub fn to_spec(&self) -> Result<SampleSpec, String> {
        let mut spec = SampleSpec::default();
        if let Some(b) = &self.bounds {
            spec.lo = [b[0]; 3];
            spec.hi = [b[1]; 3];
        }
        if let Some(n) = self.count {
            spec.count = n;
        }
        if let Some(s) = self.seed {
            spec.seed = s;
        }
        if let Some(r) = self.exclude {
            spec.excluded_radius = r;
        }
        if let Some(t) = self.abs_tol {
            spec.abs_tol = t;
        }
        if let Some(t) = self.rel_tol {
            spec.rel_tol = t;
        }
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("rpcheck").chain(args.iter().copied()))
    }

    fn sampling(args: &[&str]) -> Result<SampleSpec, String> {
        match parse(args).map_err(|e| e.to_string())?.command {
            Command::Verify { sampling, .. } => sampling.to_spec(),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn defaults_match_the_library() {
        assert_eq!(sampling(&["verify", "--f", "x"]).unwrap(), SampleSpec::default());
    }

    #[test]
    fn overrides_accept_decimals_and_negative_bounds() {
        let spec = sampling(&[
            "verify",
            "--f",
            "x",
            "--box",
            "-1.5",
            "2e0",
            "--count",
            "7",
            "--seed",
            "3",
            "--exclude",
            "0",
            "--abs-tol",
            "1e-12",
            "--rel-tol",
            "0.000001",
        ])
        .unwrap();
        assert_eq!((spec.lo, spec.hi), ([-1.5; 3], [2.0; 3]));
        assert_eq!((spec.count, spec.seed, spec.excluded_radius), (7, 3, 0.0));
        assert_eq!((spec.abs_tol, spec.rel_tol), (1e-12, 1e-6));
    }

    #[test]
    fn invalid_overrides_are_rejected() {
        assert!(sampling(&["verify", "--f", "x", "--count", "0"]).is_err());
        assert!(sampling(&["verify", "--f", "x", "--box", "2", "-2"]).is_err());
        assert!(sampling(&["verify", "--f", "x", "--abs-tol", "-1"]).is_err());
        assert!(parse(&["verify"]).is_err());
    }

    #[test]
    fn family_takes_negative_parameters() {
        match parse(&["family", "-1", "-2.5", "0"]).unwrap().command {
            Command::Family { a, b, c, .. } => assert_eq!((a, b, c), (-1.0, -2.5, 0.0)),
            other => panic!("{other:?}"),
        }
    }
}
