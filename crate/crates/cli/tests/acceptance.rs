//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdicts are always printed.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use cyclomds::arith::{binomial, odd_prime_powers};
use cyclomds::cyclotomy::{decompose_quartic, Cyclotomy, QuarticParams, SemiprimitiveParams};
use cyclomds::grs::{check_mds, CodeKind, EvaluationSet, MdsBudget, MdsMethod};
use cyclomds::oracle::{self, ClassProducts, OracleReport};
use cyclomds::theorem::{
    enumerate_sigma, parity_profile, recipes_for, recipes_quadratic, recipes_quartic,
    recipes_small_sets, Recipe, DEFAULT_E_CAP,
};
use cyclomds::{Elem, Field};
use cyclomds_io::certificate::{replay, CertificateFile};

type Verdict = Result<String, String>;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "cyclotomic tables agree with counting and identities",
            10,
            tables,
        ),
        ("parity formula matches direct products", 60, parities),
        (
            "odd/even and semiprimitive parity identities",
            60,
            parity_identities,
        ),
        (
            "every recipe materializes to an MDS self-dual code",
            120,
            end_to_end,
        ),
        ("quartic decompositions", 1, decompositions),
        (
            "phi-criterion agrees with exhaustive search",
            120,
            necessity,
        ),
        ("no length 2 mod 4 for q = 3 mod 4", 60, exclusion),
        (
            "search and construct are byte-reproducible",
            60,
            determinism,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut verdict = check();
        let took = start.elapsed();
        if verdict.is_ok() && took > Duration::from_secs(*limit) {
            verdict = Err(format!("took {took:.1?}, limit {limit}s"));
        }
        match verdict {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn check(report: OracleReport) -> Verdict {
    if report.agreement() {
        Ok(format!("{} comparisons", report.checked))
    } else {
        let first = &report.mismatches[0];
        Err(format!(
            "{} mismatches in {}, first at {}: expected {}, got {}",
            report.mismatches.len(),
            report.subject,
            first.input,
            first.expected,
            first.got
        ))
    }
}

fn subsets(e: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..1 << e).map(move |mask| (0..e).filter(|&i| mask >> i & 1 == 1).collect())
}

fn tables() -> Verdict {
    check(oracle::sweep_tables(200, 8).map_err(|e| e.to_string())?)
}

fn parities() -> Verdict {
    let mut report = OracleReport::new("parity profiles q<=200 e<=8");
    for (p, m, e) in oracle::sweep_pairs(200, 8) {
        let field = Field::new(p, m).map_err(|e| e.to_string())?;
        let table = Cyclotomy::new(&field, e)
            .map_err(|e| e.to_string())?
            .table();
        let products = ClassProducts::new(&field, e);
        for set in subsets(e) {
            let profile = parity_profile(&table, &set).map_err(|e| e.to_string())?;
            report.merge(oracle::compare_parities(
                &format!("q={} e={e} I={set:?}", field.q()),
                &profile,
                &products.parities(&set),
            ));
        }
    }
    check(report)
}

fn parity_identities() -> Verdict {
    let mut report = OracleReport::new("odd/even relations q<=200 e<=8");
    for (p, m, e) in oracle::sweep_pairs(200, 8) {
        let field = Field::new(p, m).map_err(|e| e.to_string())?;
        report.merge(oracle::check_odd_even_relations(
            &Cyclotomy::new(&field, e)
                .map_err(|e| e.to_string())?
                .table(),
        ));
    }
    let mut semiprimitive = 0;
    for (p, m) in odd_prime_powers(1000) {
        let q = p.pow(m);
        let mut field = None;
        for e in (2..q as usize).step_by(2) {
            if (q - 1) % e as u64 != 0 {
                continue;
            }
            let Some(params) = SemiprimitiveParams::for_field(p, m, e) else {
                continue;
            };
            let field = match &field {
                Some(f) => f,
                None => field.insert(Field::new(p, m).map_err(|e| e.to_string())?),
            };
            let counted = Cyclotomy::new(field, e).map_err(|e| e.to_string())?.table();
            report.expect(
                || format!("semiprimitive table q={q} e={e}"),
                &counted.values,
                &params.table().values,
            );
            report.merge(oracle::check_semiprimitive_parities(&counted, &params));
            semiprimitive += 1;
        }
    }
    check(report).map(|s| format!("{s}, {semiprimitive} semiprimitive instances"))
}

fn end_to_end() -> Verdict {
    let budget = MdsBudget::default();
    // above the all-minors cutoff only G * G^T = 0 is required
    let sweep_budget = MdsBudget {
        samples: 32,
        ..budget
    };
    let mut seen: BTreeSet<(u64, CodeKind, Vec<u32>)> = BTreeSet::new();
    let (mut certified, mut proofs) = (0, 0);
    for (p, m) in odd_prime_powers(61) {
        let field = Field::new(p, m).map_err(|e| e.to_string())?;
        let q = field.q();
        for e in (2..=DEFAULT_E_CAP).step_by(2) {
            if (q - 1) % e as u64 != 0 {
                continue;
            }
            let cyc = Cyclotomy::new(&field, e).map_err(|e| e.to_string())?;
            let table = cyc.table();
            let mut recipes = recipes_for(&cyc, &table).map_err(|e| e.to_string())?;
            recipes.extend(recipes_small_sets(&table));
            if e == 2 {
                recipes.extend(recipes_quadratic(&table).map_err(|e| e.to_string())?);
            }
            if e == 4 {
                recipes.extend(recipes_quartic(&table, p, m).map_err(|e| e.to_string())?);
            }
            for r in recipes {
                let set = r.evaluation_set(&cyc).map_err(|e| e.to_string())?;
                let mut key: Vec<u32> = set.elements().iter().map(|x| x.index()).collect();
                key.sort_unstable();
                if !seen.insert((q, r.claim.kind(), key)) {
                    continue;
                }
                let cert = r
                    .materialize(&field, &sweep_budget, 0)
                    .map_err(|err| format!("{} on {r:?}: {err}", r.provenance))?;
                if !cert.self_dual {
                    return Err(format!("G*G^T != 0 for {r:?}"));
                }
                let n = cert.code.length() as u64;
                if binomial(n, n / 2) <= budget.max_minors {
                    if cert.mds.method != MdsMethod::AllMinors || !cert.mds.result {
                        return Err(format!("MDS check failed for {r:?}"));
                    }
                    proofs += 1;
                }
                certified += 1;
            }
        }
    }

    let fixtures: [(u64, u32, usize, &str, usize); 4] = [
        (13, 1, 6, "Thm8(1)", 3),
        (7, 1, 4, "Thm8(3)", 2),
        (13, 1, 14, "Thm11(1)", 7),
        (17, 1, 10, "Thm11(1)", 5),
    ];
    for (p, m, n, label, k) in fixtures {
        let field = Field::new(p, m).map_err(|e| e.to_string())?;
        let recipe = find_recipe(&field, n, label)
            .ok_or_else(|| format!("no {label} recipe of length {n} over F_{p}"))?;
        let cert = recipe
            .materialize(&field, &budget, 0)
            .map_err(|e| e.to_string())?;
        if cert.code.k != k || !cert.verified() {
            return Err(format!("[{n},{k}] over F_{p} does not verify"));
        }
        let file = CertificateFile::from_certificate(&field, &cert).map_err(|e| e.to_string())?;
        let report = replay(&file, 1 << 20, &budget);
        if !report.pass {
            return Err(format!(
                "[{n},{k}] over F_{p} fails replay: {:?}",
                report.problems
            ));
        }
        if (p as u128).pow(k as u32) <= budget.max_codewords
            && check_mds(&field, &cert.generator, MdsMethod::Exhaustive, &budget) != Ok(true)
        {
            return Err(format!(
                "[{n},{k}] over F_{p} has the wrong minimum distance"
            ));
        }
    }
    Ok(format!(
        "{certified} distinct codes, {proofs} with all minors checked, 4 fixtures"
    ))
}

fn find_recipe(field: &Field, n: usize, label: &str) -> Option<Recipe> {
    let q = field.q();
    (2..=DEFAULT_E_CAP)
        .step_by(2)
        .filter(|&e| (q - 1) % e as u64 == 0)
        .find_map(|e| {
            let cyc = Cyclotomy::new(field, e).ok()?;
            let table = cyc.table();
            recipes_for(&cyc, &table)
                .ok()?
                .into_iter()
                .find(|r| r.length == n && r.provenance.starts_with(label))
        })
}

fn decompositions() -> Verdict {
    let expected = [(113, -7, 4), (25, -3, 2), (41, 5, 2)];
    for (q, s, t) in expected {
        let got = decompose_quartic(q).map_err(|e| e.to_string())?;
        if got != (QuarticParams { s, t }) || s.rem_euclid(4) != 1 || s * s + 4 * t * t != q as i64
        {
            return Err(format!("{q}: got s={}, t={}", got.s, got.t));
        }
    }
    Ok("113, 25, 41 reproduced".into())
}

fn necessity() -> Verdict {
    let mut report = OracleReport::new("self-dual existence q<=13 |S|<=4");
    for (p, m) in odd_prime_powers(13) {
        let field = Field::new(p, m).map_err(|e| e.to_string())?;
        let all: Vec<Elem> = field.elements().collect();
        for mask in 1u32..1 << all.len() {
            if mask.count_ones() > 4 {
                continue;
            }
            let points: Vec<Elem> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let deltas = EvaluationSet::from_elements(points.clone())
                .map_err(|e| e.to_string())?
                .deltas(&field);
            let phi = |x| field.phi(x).expect("nonzero");
            let (kind, criterion) = if points.len() % 2 == 0 {
                (
                    CodeKind::Grs,
                    deltas.iter().all(|&d| phi(d) == phi(deltas[0])),
                )
            } else {
                (
                    CodeKind::Egrs,
                    deltas.iter().all(|&d| phi(field.neg(d)) == 0),
                )
            };
            let exists = oracle::selfdual_exists(&field, &points, kind, 1 << 24)
                .map_err(|e| e.to_string())?;
            report.expect(
                || format!("q={} S={points:?}", field.q()),
                criterion,
                exists,
            );
        }
    }
    check(report)
}

fn exclusion() -> Verdict {
    let mut rows = 0;
    for (p, m) in odd_prime_powers(200) {
        let q = p.pow(m);
        if q % 4 != 3 {
            continue;
        }
        let field = Field::new(p, m).map_err(|e| e.to_string())?;
        for row in
            enumerate_sigma(&field, DEFAULT_E_CAP, DEFAULT_E_CAP).map_err(|e| e.to_string())?
        {
            if row.n % 4 == 2 {
                return Err(format!(
                    "n = {} claimed for q = {q} by {:?}",
                    row.n, row.provenance
                ));
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} claims checked"))
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 4] = [
        &["search", "13", "1"],
        &["search", "7", "2", "--format", "json"],
        &["construct", "13", "1", "2", "0,1", "--zero", "--kind=egrs"],
        &["construct", "29", "1", "2", "0,1", "--zero"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let path = dir.path().join(format!("out-{i}-{attempt}"));
            let status = Command::new(env!("CARGO_BIN_EXE_cyclomds"))
                .args(*args)
                .arg("-o")
                .arg(&path)
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err(format!("{args:?} exited with {status}"));
            }
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            return Err(format!("{args:?} differs between runs"));
        }
    }
    Ok(format!("{} commands run twice", runs.len()))
}
