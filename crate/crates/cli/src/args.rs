use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclomds::field::DEFAULT_CAP;
use cyclomds::grs::{CodeKind, MdsBudget};
use cyclomds::theorem::DEFAULT_E_CAP;

#[derive(Debug, Parser)]
#[command(
    name = "cyclomds",
    version,
    about = "MDS self-dual codes from cyclotomic classes"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand. Each cap can also come from the
/// environment; an explicit flag takes precedence.
#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Largest field size to build log tables for.
    #[arg(long, global = true, env = "CYCLOMDS_Q_CAP", default_value_t = DEFAULT_CAP, value_parser = positive_u64)]
    pub q_cap: u64,
    /// Largest e accepted by `search`.
    #[arg(long, global = true, env = "CYCLOMDS_E_CAP", default_value_t = DEFAULT_E_CAP, value_parser = positive_usize)]
    pub e_cap: usize,
    /// Run all minors only when there are at most this many.
    #[arg(
        long,
        global = true,
        env = "CYCLOMDS_MAX_MINORS",
        default_value_t = 1_000_000
    )]
    pub max_minors: u128,
    /// Codeword cap for exhaustive minimum distance.
    #[arg(
        long,
        global = true,
        env = "CYCLOMDS_MAX_CODEWORDS",
        default_value_t = 10_000_000
    )]
    pub max_codewords: u128,
    /// Number of minors drawn when all minors are too many.
    #[arg(
        long,
        global = true,
        env = "CYCLOMDS_SAMPLES",
        default_value_t = 10_000
    )]
    pub samples: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for sampled minors.
    #[arg(long, global = true, env = "CYCLOMDS_SEED", default_value_t = 0)]
    pub seed: u64,
}

impl CliConfig {
    pub fn budget(&self) -> MdsBudget {
        MdsBudget {
            max_minors: self.max_minors,
            max_codewords: self.max_codewords,
            samples: self.samples,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Brute,
    Closed,
    Semiprimitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Grs,
    Egrs,
}

impl From<Kind> for CodeKind {
    fn from(k: Kind) -> CodeKind {
        match k {
            Kind::Grs => CodeKind::Grs,
            Kind::Egrs => CodeKind::Egrs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print q, the modulus, the primitive element and phi(-1).
    Field { p: u64, m: u32 },
    /// Dump the cyclotomic numbers of order e.
    Cyclo {
        p: u64,
        m: u32,
        e: usize,
        #[arg(long, value_enum, default_value_t = Source::Brute)]
        source: Source,
    },
    /// List the self-dual MDS lengths reachable from class unions.
    Search {
        p: u64,
        m: u32,
        /// Largest e to try; defaults to the e cap.
        #[arg(long)]
        e_max: Option<usize>,
    },
    /// Build and check a certificate for the union of classes `I`.
    Construct {
        p: u64,
        m: u32,
        e: usize,
        /// Comma-separated class indices, e.g. `0,1`.
        #[arg(value_parser = parse_class_set)]
        classes: ClassSet,
        /// Adjoin 0 to the evaluation set.
        #[arg(long)]
        zero: bool,
        /// Defaults to grs for an even number of points, egrs otherwise.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Replay a certificate file.
    Verify { certificate: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet(pub Vec<usize>);

pub fn parse_class_set(s: &str) -> Result<ClassSet, String> {
    let classes: Result<Vec<usize>, _> = s.split(',').map(|c| c.trim().parse::<usize>()).collect();
    match classes {
        Ok(c) if !c.is_empty() => Ok(ClassSet(c)),
        _ => Err(format!("expected comma-separated class indices, got {s:?}")),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    positive_u64(s).map(|v| v as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sets() {
        assert_eq!(parse_class_set("0, 1,3"), Ok(ClassSet(vec![0, 1, 3])));
        assert!(parse_class_set("").is_err());
        assert!(parse_class_set("0,x").is_err());
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "cyclomds",
            "construct",
            "13",
            "1",
            "2",
            "0,1",
            "--zero",
            "--kind=egrs",
        ])
        .unwrap();
        match cli.command {
            Command::Construct {
                classes,
                zero,
                kind,
                ..
            } => {
                assert_eq!(classes.0, vec![0, 1]);
                assert!(zero);
                assert_eq!(kind, Some(Kind::Egrs));
            }
            other => panic!("{other:?}"),
        }
        let cli =
            Cli::try_parse_from(["cyclomds", "cyclo", "13", "1", "2", "--source=closed"]).unwrap();
        assert!(matches!(
            cli.command,
            Command::Cyclo {
                source: Source::Closed,
                ..
            }
        ));
        assert!(Cli::try_parse_from(["cyclomds", "--q-cap", "0", "field", "3", "1"]).is_err());
    }
}
