use std::ffi::OsString;
use std::path::PathBuf;

use bmy_core::plane::DEFAULT_VERIFY_CAP;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Section counts and F-set as given on the command line, not yet checked
/// against a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choices {
    pub r_default: u32,
    pub r_overrides: Vec<(Vec<u32>, u32)>,
    pub f_set: Option<PathBuf>,
}

impl Default for Choices {
    fn default() -> Self {
        Choices {
            r_default: 1,
            r_overrides: Vec::new(),
            f_set: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Invariants {
        q: u64,
        n: u64,
        p: u64,
        choices: Choices,
    },
    Symbolic {
        q: u64,
        n: u64,
        choices: Choices,
    },
    Limit {
        q: u64,
        n: u64,
        choices: Choices,
    },
    Search {
        q: u64,
        n: u64,
        p_min: u64,
        p_max: u64,
        choices: Choices,
    },
    Plane {
        p: u64,
        verify_incidence: bool,
        verify_cap: u64,
    },
    Verify {
        q: u64,
        n: u64,
        p: Option<u64>,
        choices: Choices,
        verify_cap: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    /// `None` uses rayon's default pool.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            format: Format::default(),
            threads: None,
        }
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    /// Parses `bmy <command> [flags]`; the first item is the program name.
    pub fn try_parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        Cli::try_parse_from(args).map(Into::into)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bmy",
    version,
    about = "Exact invariants of abelian covers of the blown-up plane over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads for parallel work; 0 or unset means one per core.
    #[arg(long, global = true, env = "BMY_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Odd prime q.
    #[arg(long)]
    q: u64,
    /// Rank n ≥ 3 of G = (Z/q)^n.
    #[arg(long)]
    n: u64,
}

#[derive(Debug, Args)]
struct ChoiceArgs {
    /// Section count r_σ for every σ without an override.
    #[arg(long = "r", default_value_t = 1)]
    r: u32,
    /// Section count for one element, as comma-separated residues, e.g. `1,1,0=2`.
    #[arg(long = "r-at", value_name = "ELEM=COUNT", value_parser = parse_override)]
    r_at: Vec<(Vec<u32>, u32)>,
    /// F-set file: one element per line as comma-separated residues.
    #[arg(long = "f-set", value_name = "FILE")]
    f_set: Option<PathBuf>,
}

impl From<ChoiceArgs> for Choices {
    fn from(a: ChoiceArgs) -> Self {
        Choices {
            r_default: a.r,
            r_overrides: a.r_at,
            f_set: a.f_set,
        }
    }
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Every invariant and certificate at one admissible prime.
    Invariants {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        choices: ChoiceArgs,
    },
    /// K̃², χ and their ratio as exact functions of p.
    Symbolic {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        choices: ChoiceArgs,
    },
    /// Limit of K̃²/χ as p → ∞.
    Limit {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        choices: ChoiceArgs,
    },
    /// Sweep the admissible primes in [p-min, p-max].
    Search {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 2)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[command(flatten)]
        choices: ChoiceArgs,
    },
    /// Point and line counts of the projective plane over F_p.
    Plane {
        #[arg(long)]
        p: u64,
        /// Count incidences exhaustively instead of using the closed form.
        #[arg(long)]
        verify_incidence: bool,
        #[arg(long, default_value_t = DEFAULT_VERIFY_CAP)]
        verify_cap: u64,
    },
    /// Run every certificate and cross-check; exits 1 on any failure.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        choices: ChoiceArgs,
        #[arg(long, default_value_t = DEFAULT_VERIFY_CAP)]
        verify_cap: u64,
    },
}

fn parse_override(s: &str) -> Result<(Vec<u32>, u32), String> {
    let (elem, count) = s
        .split_once('=')
        .ok_or_else(|| format!("expected ELEM=COUNT, got `{s}`"))?;
    let coords = elem
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad residue `{c}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let count = count
        .trim()
        .parse::<u32>()
        .map_err(|e| format!("bad count `{count}`: {e}"))?;
    Ok((coords, count))
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let command = match cli.command {
            CliCommand::Invariants { group, p, choices } => Command::Invariants {
                q: group.q,
                n: group.n,
                p,
                choices: choices.into(),
            },
            CliCommand::Symbolic { group, choices } => Command::Symbolic {
                q: group.q,
                n: group.n,
                choices: choices.into(),
            },
            CliCommand::Limit { group, choices } => Command::Limit {
                q: group.q,
                n: group.n,
                choices: choices.into(),
            },
            CliCommand::Search {
                group,
                p_min,
                p_max,
                choices,
            } => Command::Search {
                q: group.q,
                n: group.n,
                p_min,
                p_max,
                choices: choices.into(),
            },
            CliCommand::Plane {
                p,
                verify_incidence,
                verify_cap,
            } => Command::Plane {
                p,
                verify_incidence,
                verify_cap,
            },
            CliCommand::Verify {
                group,
                p,
                choices,
                verify_cap,
            } => Command::Verify {
                q: group.q,
                n: group.n,
                p,
                choices: choices.into(),
                verify_cap,
            },
        };
        RunConfig {
            command,
            format: cli.format,
            threads: cli.threads.filter(|&t| t > 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides_and_globals() {
        let cfg = RunConfig::try_parse_from([
            "bmy",
            "invariants",
            "--q",
            "3",
            "--n",
            "3",
            "--p",
            "5",
            "--r-at",
            "1,1,0=2",
            "--r-at",
            "0,0,1=0",
            "--format",
            "json",
            "--threads",
            "2",
        ])
        .unwrap();
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.threads, Some(2));
        let Command::Invariants { p, choices, .. } = cfg.command else {
            panic!("wrong command");
        };
        assert_eq!(p, 5);
        assert_eq!(
            choices.r_overrides,
            vec![(vec![1, 1, 0], 2), (vec![0, 0, 1], 0)]
        );
    }

    #[test]
    fn malformed_override_rejected() {
        for bad in ["1,1,0", "1,x,0=2", "1,1,0=-1"] {
            assert!(RunConfig::try_parse_from([
                "bmy", "limit", "--q", "3", "--n", "3", "--r-at", bad
            ])
            .is_err());
        }
    }

    #[test]
    fn defaults() {
        let cfg =
            RunConfig::try_parse_from(["bmy", "search", "--q", "3", "--n", "3", "--p-max", "50"])
                .unwrap();
        assert_eq!(cfg.format, Format::Table);
        assert_eq!(
            cfg.command,
            Command::Search {
                q: 3,
                n: 3,
                p_min: 2,
                p_max: 50,
                choices: Choices::default()
            }
        );
    }
}
