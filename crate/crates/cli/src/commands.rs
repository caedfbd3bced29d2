use std::fs;
use std::path::Path;

use cyclomds::cyclotomy::{Cyclotomy, SemiprimitiveParams};
use cyclomds::grs::{CodeKind, EvaluationSet, SelfDualCertificate};
use cyclomds::theorem::enumerate_sigma;
use cyclomds::{Error, Field};
use serde::Serialize;

use crate::args::{CliConfig, Command, Format, Source};
use crate::certificate::{replay, CertificateFile};
use crate::tables;
use crate::{CliError, ExitStatus};

/// Rendered output of one command and the status to exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: ExitStatus,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            status: ExitStatus::Success,
        }
    }
}

pub fn run(config: &CliConfig, command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Field { p, m } => cmd_field(config, *p, *m),
        Command::Cyclo { p, m, e, source } => cmd_cyclo(config, *p, *m, *e, *source),
        Command::Search { p, m, e_max } => {
            cmd_search(config, *p, *m, e_max.unwrap_or(config.e_cap))
        }
        Command::Construct {
            p,
            m,
            e,
            classes,
            zero,
            kind,
        } => cmd_construct(
            config,
            *p,
            *m,
            *e,
            &classes.0,
            *zero,
            kind.map(CodeKind::from),
        ),
        Command::Verify { certificate } => cmd_verify(config, certificate),
    }
}

#[derive(Serialize)]
struct FieldSummary {
    q: u64,
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    theta: String,
    phi_minus_one: u8,
}

pub fn cmd_field(config: &CliConfig, p: u64, m: u32) -> Result<Outcome, CliError> {
    let field = Field::with_cap(p, m, config.q_cap)?;
    let s = FieldSummary {
        q: field.q(),
        p: field.p(),
        m: field.m(),
        modulus: field.spec().modulus.clone(),
        theta: field.format(field.theta()),
        phi_minus_one: field.phi(field.neg(cyclomds::Elem::ONE))?,
    };
    let text = match config.format.unwrap_or(Format::Text) {
        Format::Json => json(&s),
        Format::Csv => format!(
            "q,p,m,modulus,theta,phi_minus_one\n{},{},{},\"{}\",\"{}\",{}\n",
            s.q,
            s.p,
            s.m,
            s.modulus
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(","),
            s.theta,
            s.phi_minus_one
        ),
        Format::Text => format!(
            "q = {}\np = {}\nm = {}\nmodulus = {:?} (low degree first)\ntheta = {}\nphi(-1) = {}\n",
            s.q, s.p, s.m, s.modulus, s.theta, s.phi_minus_one
        ),
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_cyclo(
    config: &CliConfig,
    p: u64,
    m: u32,
    e: usize,
    source: Source,
) -> Result<Outcome, CliError> {
    let field = Field::with_cap(p, m, config.q_cap)?;
    let cyc = Cyclotomy::new(&field, e)?;
    let table = match source {
        Source::Brute => cyc.table(),
        Source::Closed => match e {
            2 => cyc.table_e2()?,
            4 => cyc.table_e4()?,
            _ => {
                return Err(CliError::Usage(format!(
                    "closed forms exist for e = 2 and e = 4, not e = {e}"
                )))
            }
        },
        Source::Semiprimitive => SemiprimitiveParams::for_field(p, m, e)
            .ok_or(Error::NotSemiprimitive)?
            .table(),
    };
    let text = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => tables::cyclo_csv(&table)?,
        Format::Json => tables::cyclo_json(&table),
        Format::Text => tables::cyclo_text(&table),
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_search(config: &CliConfig, p: u64, m: u32, e_max: usize) -> Result<Outcome, CliError> {
    let field = Field::with_cap(p, m, config.q_cap)?;
    let rows = enumerate_sigma(&field, e_max, config.e_cap)?;
    let text = match config.format.unwrap_or(Format::Csv) {
        Format::Csv => tables::claims_csv(&rows)?,
        Format::Json => tables::claims_json(&rows),
        Format::Text => tables::claims_text(&rows),
    };
    Ok(Outcome::ok(text))
}

pub fn cmd_construct(
    config: &CliConfig,
    p: u64,
    m: u32,
    e: usize,
    classes: &[usize],
    zero: bool,
    kind: Option<CodeKind>,
) -> Result<Outcome, CliError> {
    let field = Field::with_cap(p, m, config.q_cap)?;
    let cyc = Cyclotomy::new(&field, e)?;
    let set = EvaluationSet::from_classes(&cyc, classes, zero)?;
    let kind = kind.unwrap_or(if set.len() % 2 == 0 {
        CodeKind::Grs
    } else {
        CodeKind::Egrs
    });
    let cert = SelfDualCertificate::construct(&field, set, kind, &config.budget(), config.seed)?;
    let file = CertificateFile::from_certificate(&field, &cert)?;
    if matches!(config.format, Some(Format::Csv)) {
        return Err(CliError::Usage("certificates are written as JSON".into()));
    }
    let status = if cert.verified() {
        ExitStatus::Success
    } else {
        ExitStatus::Internal
    };
    Ok(Outcome {
        text: file.to_json(),
        status,
    })
}

pub fn cmd_verify(config: &CliConfig, path: &Path) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file = CertificateFile::from_json(&text)?;
    let report = replay(&file, config.q_cap, &config.budget());
    let status = if report.pass {
        ExitStatus::Success
    } else {
        ExitStatus::Negative
    };
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Text => report.to_text(),
        Format::Json => json(&report),
        Format::Csv => return Err(CliError::Usage("verify reports are JSON or text".into())),
    };
    Ok(Outcome { text, status })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
