use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "riccati", version, about = "Riccati foliations and monodromy on compact complex surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Surface descriptor: a JSON file, inline JSON, or a bare family key.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    /// Parameter override `name=value`; repeatable.
    #[arg(long = "param", global = true, value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Integration tolerance, in (0, 1e-4].
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Word length bound for group classification, at most 12.
    #[arg(long = "word-bound", global = true, default_value_t = 8)]
    pub word_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Seed for random parameter draws.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List the surface families, their parameters and tables.
    Catalog {
        /// Case-insensitive substring of the family key or title.
        filter: Option<String>,
    },
    /// Structure equations and descent of the connection family.
    Check,
    /// Monodromy of every deck generator and the group they generate.
    Monodromy,
    /// Recompute every monodromy table row on default and random parameters.
    VerifyTables {
        /// Random draws per table row.
        #[arg(long, default_value_t = 5)]
        draws: usize,
    },
    /// Formal Chern identity for generic n x n matrices.
    Chern {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Highest degree checked (defaults to n).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Curvature and induced foliation of the pencil [dx + t u dy = 0].
    Pencil {
        /// The function `u` as an expression in x, y.
        #[arg(allow_hyphen_values = true)]
        u: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    #[value(alias = "markdown")]
    Md,
}

/// Validated run settings shared by the subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub surface: Option<String>,
    pub params: Vec<String>,
    pub tol: f64,
    pub word_bound: usize,
    pub seed: u64,
}

pub const MAX_TOL: f64 = 1e-4;

impl Cli {
    pub fn config(&self) -> Result<RunConfig, CliError> {
        if !(self.tol > 0.0 && self.tol <= MAX_TOL) {
            return Err(CliError::Usage(format!("--tol must lie in (0, {:e}], got {}", MAX_TOL, self.tol)));
        }
        if self.word_bound > riccati_core::monodromy::MAX_WORD_BOUND {
            return Err(CliError::Usage(format!(
                "--word-bound must be at most {}, got {}",
                riccati_core::monodromy::MAX_WORD_BOUND,
                self.word_bound
            )));
        }
        Ok(RunConfig {
            surface: self.surface.clone(),
            params: self.params.clone(),
            tol: self.tol,
            word_bound: self.word_bound,
            seed: self.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("riccati").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults_and_bounds() {
        let c = parse(&["check", "--surface", "torus"]);
        let cfg = c.config().unwrap();
        assert_eq!((cfg.tol, cfg.word_bound, cfg.seed), (1e-10, 8, 0));
        assert_eq!(c.format, Format::Md);
        assert!(parse(&["check", "--tol", "1e-4"]).config().is_ok());
        assert!(parse(&["check", "--tol", "2e-4"]).config().is_err());
        assert!(parse(&["check", "--word-bound", "12"]).config().is_ok());
        assert!(parse(&["check", "--word-bound", "13"]).config().is_err());
        assert_eq!(parse(&["catalog", "--format", "markdown"]).format, Format::Md);
    }

    #[test]
    fn repeated_params_and_negative_pencil_input() {
        let c = parse(&["monodromy", "--param", "a=1", "--param", "b=-2"]);
        assert_eq!(c.params, ["a=1", "b=-2"]);
        assert!(matches!(parse(&["pencil", "-x*y"]).command, Command::Pencil { u } if u == "-x*y"));
    }
}
