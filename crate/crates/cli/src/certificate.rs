//! Certificate files and their replay.
//!
//! A certificate records the field it was built over (modulus and
//! primitive element), the class union, the scaling vector and the
//! generator matrix. Replay rebuilds the field from `p` and `m`, refuses to
//! go on if the recorded context differs, recomputes the generator from `v`
//! and reruns both checks.

use cyclomds::cyclotomy::Cyclotomy;
use cyclomds::grs::{
    check_mds, check_self_dual, generator_matrix, CodeInstance, CodeKind, EvaluationSet, MdsBudget,
    MdsMethod, SelfDualCertificate,
};
use cyclomds::oracle::{self, OracleReport};
use cyclomds::{Elem, Field};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub q: u64,
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub theta: String,
    pub e: usize,
    #[serde(rename = "I")]
    pub classes: Vec<usize>,
    pub include_zero: bool,
    pub kind: String,
    pub k: usize,
    pub v: Vec<String>,
    /// Rows of the generator matrix.
    pub generator: Vec<Vec<String>>,
    pub checks: Checks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub self_dual: bool,
    pub mds: MdsRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsRecord {
    pub method: String,
    pub result: bool,
    /// False for sampled minors, which cannot prove the property.
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl MdsRecord {
    pub fn new(method: MdsMethod, result: bool) -> Self {
        let (name, samples, seed) = match method {
            MdsMethod::Exhaustive => ("exhaustive", None, None),
            MdsMethod::AllMinors => ("all_minors", None, None),
            MdsMethod::SampledMinors { count, seed } => ("sampled_minors", Some(count), Some(seed)),
        };
        MdsRecord {
            method: name.into(),
            result,
            exhaustive: method.is_proof(),
            samples,
            seed,
        }
    }

    pub fn method(&self) -> Option<MdsMethod> {
        match self.method.as_str() {
            "exhaustive" => Some(MdsMethod::Exhaustive),
            "all_minors" => Some(MdsMethod::AllMinors),
            "sampled_minors" => Some(MdsMethod::SampledMinors {
                count: self.samples?,
                seed: self.seed.unwrap_or(0),
            }),
            _ => None,
        }
    }
}

impl CertificateFile {
    pub fn from_certificate(field: &Field, cert: &SelfDualCertificate) -> Result<Self, CliError> {
        let set = &cert.code.set;
        let e = set.e().ok_or_else(|| {
            CliError::Usage("certificate needs a class-union evaluation set".into())
        })?;
        let spec = field.spec();
        let g = &cert.generator;
        Ok(CertificateFile {
            q: field.q(),
            p: spec.p,
            m: spec.m,
            modulus: spec.modulus.clone(),
            theta: field.format(field.theta()),
            e,
            classes: set.classes().to_vec(),
            include_zero: set.include_zero(),
            kind: cert.code.kind.name().into(),
            k: cert.code.k,
            v: cert.code.v.iter().map(|&x| field.format(x)).collect(),
            generator: (0..g.rows())
                .map(|r| g.row(r).iter().map(|&x| field.format(x)).collect())
                .collect(),
            checks: Checks {
                self_dual: cert.self_dual,
                mds: MdsRecord::new(cert.mds.method, cert.mds.result),
            },
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Outcome of replaying a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub q: u64,
    pub n: Option<usize>,
    pub k: usize,
    pub self_dual: Option<bool>,
    pub mds: Option<MdsRecord>,
    /// Independent minimum-distance count, run when within the codeword cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<ReportJson>,
    pub problems: Vec<String>,
}

/// Serialized form of an [`OracleReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub subject: String,
    pub checked: u64,
    pub agreement: bool,
    pub mismatches: Vec<MismatchJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchJson {
    pub input: String,
    pub expected: String,
    pub got: String,
}

impl From<&OracleReport> for ReportJson {
    fn from(r: &OracleReport) -> Self {
        ReportJson {
            subject: r.subject.clone(),
            checked: r.checked,
            agreement: r.agreement(),
            mismatches: r
                .mismatches
                .iter()
                .map(|m| MismatchJson {
                    input: m.input.clone(),
                    expected: m.expected.clone(),
                    got: m.got.clone(),
                })
                .collect(),
        }
    }
}

impl VerifyReport {
    fn failed(file: &CertificateFile, problem: String) -> Self {
        VerifyReport {
            pass: false,
            q: file.q,
            n: None,
            k: file.k,
            self_dual: None,
            mds: None,
            oracle: None,
            problems: vec![problem],
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", if self.pass { "PASS" } else { "FAIL" });
        if let Some(n) = self.n {
            out += &format!("code: [{n},{}] over F_{}\n", self.k, self.q);
        }
        if let Some(sd) = self.self_dual {
            out += &format!("self_dual: {sd}\n");
        }
        if let Some(mds) = &self.mds {
            out += &format!("mds: {} ({})\n", mds.result, mds.method);
        }
        if let Some(o) = &self.oracle {
            out += &format!(
                "oracle: {} ({} checked)\n",
                if o.agreement { "agrees" } else { "disagrees" },
                o.checked
            );
        }
        for p in &self.problems {
            out += &format!("problem: {p}\n");
        }
        out
    }
}

/// Replays `file` against freshly built field tables.
pub fn replay(file: &CertificateFile, q_cap: u64, budget: &MdsBudget) -> VerifyReport {
    let field = match Field::with_cap(file.p as u64, file.m, q_cap) {
        Ok(f) => f,
        Err(e) => return VerifyReport::failed(file, format!("cannot build the field: {e}")),
    };
    if field.q() != file.q {
        return VerifyReport::failed(
            file,
            format!("context mismatch: q = {} but p^m = {}", file.q, field.q()),
        );
    }
    if field.spec().modulus != file.modulus {
        return VerifyReport::failed(
            file,
            format!(
                "context mismatch: modulus {:?}, expected {:?}",
                file.modulus,
                field.spec().modulus
            ),
        );
    }
    let theta = field.format(field.theta());
    if file.theta != theta {
        return VerifyReport::failed(
            file,
            format!("context mismatch: theta {}, expected {theta}", file.theta),
        );
    }

    let code = match rebuild_code(&field, file) {
        Ok(c) => c,
        Err(problem) => return VerifyReport::failed(file, problem),
    };
    let mut problems = Vec::new();
    let n = code.length();
    if 2 * code.k != n {
        problems.push(format!("dimension {} is not half the length {n}", code.k));
    }

    let g = generator_matrix(&field, &code);
    if file.generator.len() != g.rows() || file.generator.iter().any(|row| row.len() != g.cols()) {
        problems.push(format!(
            "generator shape differs from {}x{}",
            g.rows(),
            g.cols()
        ));
    } else {
        for (r, row) in file.generator.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                let want = field.format(g.get(r, c));
                if field.parse(entry).map(|x| field.format(x)) != Some(want.clone()) {
                    problems.push(format!("generator mismatch at row {r}, column {c}: recorded {entry}, recomputed {want}"));
                }
            }
        }
    }

    let self_dual = check_self_dual(&field, &g).ok();
    if self_dual != Some(true) {
        problems.push("G * G^T is not zero".into());
    }
    if self_dual != Some(file.checks.self_dual) {
        problems.push("recorded self_dual flag disagrees with the replay".into());
    }

    let mds = match file.checks.mds.method() {
        None => {
            problems.push(format!("unknown MDS method {:?}", file.checks.mds.method));
            None
        }
        Some(method) => match check_mds(&field, &g, method, budget) {
            Ok(result) => {
                if !result {
                    problems.push("a k-column minor is singular".into());
                }
                if result != file.checks.mds.result {
                    problems.push("recorded MDS result disagrees with the replay".into());
                }
                Some(MdsRecord::new(method, result))
            }
            Err(e) => {
                problems.push(format!("MDS check: {e}"));
                None
            }
        },
    };

    let oracle = distance_oracle(&field, &g, n, code.k, budget);
    if let Some(o) = &oracle {
        if !o.agreement {
            problems.push("minimum distance differs from n - k + 1".into());
        }
    }

    VerifyReport {
        pass: problems.is_empty(),
        q: field.q(),
        n: Some(n),
        k: code.k,
        self_dual,
        mds,
        oracle,
        problems,
    }
}

fn rebuild_code(field: &Field, file: &CertificateFile) -> Result<CodeInstance, String> {
    let kind = match file.kind.as_str() {
        "grs" => CodeKind::Grs,
        "egrs" => CodeKind::Egrs,
        other => return Err(format!("unknown code kind {other:?}")),
    };
    let cyc = Cyclotomy::new(field, file.e).map_err(|e| e.to_string())?;
    let set = EvaluationSet::from_classes(&cyc, &file.classes, file.include_zero)
        .map_err(|e| e.to_string())?;
    let v: Vec<Elem> = file
        .v
        .iter()
        .enumerate()
        .map(|(i, s)| {
            field
                .parse(s)
                .ok_or_else(|| format!("v[{i}] = {s:?} is not a field element"))
        })
        .collect::<Result<_, _>>()?;
    CodeInstance::new(set, v, file.k, kind).map_err(|e| e.to_string())
}

fn distance_oracle(
    field: &Field,
    g: &cyclomds::matrix::Matrix,
    n: usize,
    k: usize,
    budget: &MdsBudget,
) -> Option<ReportJson> {
    let words = (field.q() as u128).checked_pow(k as u32)?;
    if words > budget.max_codewords {
        return None;
    }
    let mut report = OracleReport::new("minimum distance");
    let d = oracle::min_distance(field, g, budget.max_codewords).ok()?;
    report.expect(|| format!("[{n},{k}] over F_{}", field.q()), n - k + 1, d);
    Some(ReportJson::from(&report))
}
