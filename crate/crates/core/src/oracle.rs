//! Brute-force oracles, written straight from the definitions and sharing
//! nothing with the fast paths except field arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{self, modulo};
use crate::cyclotomy::{CyclotomicTable, Cyclotomy, SemiprimitiveParams};
use crate::field::{Elem, Field};
use crate::grs::CodeKind;
use crate::matrix::Matrix;
use crate::theorem::ParityProfile;
use crate::{Error, Result};

/// One disagreement found by an oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub input: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of comparing an implementation against an oracle or an identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub subject: String,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn new(subject: impl Into<String>) -> Self {
        OracleReport {
            subject: subject.into(),
            checked: 0,
            mismatches: Vec::new(),
        }
    }

    pub fn agreement(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Records one comparison.
    pub fn expect<T: PartialEq + core::fmt::Debug>(
        &mut self,
        input: impl FnOnce() -> String,
        expected: T,
        got: T,
    ) {
        self.checked += 1;
        if expected != got {
            self.mismatches.push(Mismatch {
                input: input(),
                expected: format!("{expected:?}"),
                got: format!("{got:?}"),
            });
        }
    }

    pub fn merge(&mut self, other: OracleReport) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
    }
}

/// True minimum distance of the row space of `g`, by enumerating all
/// `q^k` codewords.
pub fn min_distance(field: &Field, g: &Matrix, budget: u128) -> Result<usize> {
    let (k, n) = (g.rows(), g.cols());
    let q = field.q() as u128;
    let work = (0..k)
        .try_fold(1u128, |acc, _| acc.checked_mul(q))
        .unwrap_or(u128::MAX);
    if work > budget {
        return Err(Error::BudgetExceeded { work, budget });
    }
    let elems: Vec<Elem> = field.elements().collect();
    let mut coeff = vec![0usize; k];
    let mut word = vec![Elem::ZERO; n];
    let mut best = n;
    loop {
        // odometer step: bump the lowest digit that does not wrap
        let mut r = 0;
        while r < k && coeff[r] + 1 == elems.len() {
            let old = elems[coeff[r]];
            for (c, w) in word.iter_mut().enumerate() {
                *w = field.sub(*w, field.mul(old, g.get(r, c)));
            }
            coeff[r] = 0;
            r += 1;
        }
        if r == k {
            break;
        }
        let (old, new) = (elems[coeff[r]], elems[coeff[r] + 1]);
        let step = field.sub(new, old);
        for (c, w) in word.iter_mut().enumerate() {
            *w = field.add(*w, field.mul(step, g.get(r, c)));
        }
        coeff[r] += 1;
        let weight = word.iter().filter(|x| !x.is_zero()).count();
        best = best.min(weight);
    }
    Ok(best)
}

/// Whether any `v ∈ (F_q^*)^n` makes the GRS (`n` even, `k = n/2`) or
/// extended GRS (`n` odd, `k = (n+1)/2`) code on `points` self-dual.
pub fn selfdual_exists(
    field: &Field,
    points: &[Elem],
    kind: CodeKind,
    budget: u128,
) -> Result<bool> {
    let n = points.len();
    let (k, extended) = match kind {
        CodeKind::Grs if n % 2 == 0 && n > 0 => (n / 2, false),
        CodeKind::Grs => return Err(Error::OddLength(n)),
        CodeKind::Egrs if n % 2 == 1 => (n.div_ceil(2), true),
        CodeKind::Egrs => return Err(Error::EvenLength(n)),
    };
    let units = field.q() as u128 - 1;
    let work = (0..n)
        .try_fold(1u128, |acc, _| acc.checked_mul(units))
        .unwrap_or(u128::MAX);
    if work > budget {
        return Err(Error::BudgetExceeded { work, budget });
    }
    let nonzero: Vec<Elem> = field.elements().skip(1).collect();
    let mut digits = vec![0usize; n];
    let width = n + extended as usize;
    let mut rows = vec![vec![Elem::ZERO; width]; k];
    loop {
        // generator rows: (v_1 a_1^r, ..., v_n a_n^r [, coefficient of x^{k-1}])
        for (r, row) in rows.iter_mut().enumerate() {
            for i in 0..n {
                row[i] = field.mul(nonzero[digits[i]], field.pow(points[i], r as u64));
            }
            if extended {
                row[n] = if r == k - 1 { Elem::ONE } else { Elem::ZERO };
            }
        }
        let orthogonal = (0..k).all(|a| {
            (a..k).all(|b| {
                rows[a]
                    .iter()
                    .zip(&rows[b])
                    .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
                    .is_zero()
            })
        });
        if orthogonal {
            return Ok(true);
        }
        let mut i = 0;
        while i < n && digits[i] + 1 == nonzero.len() {
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(false);
        }
        digits[i] += 1;
    }
}

/// Cyclotomic numbers straight from the definition: the classes are listed
/// as explicit power sets `{θ^{i + eλ}}` and `(i, j)` counts `x ∈ D_i` with
/// `x + 1 ∈ D_j`.
pub fn count_cyclotomic(field: &Field, e: usize) -> Vec<u64> {
    let q = field.q() as usize;
    let f = (q - 1) / e;
    let theta = field.theta();
    let step = field.pow(theta, e as u64);
    let mut member = vec![usize::MAX; q];
    let mut classes = vec![Vec::with_capacity(f); e];
    let mut start = Elem::ONE;
    for (i, class) in classes.iter_mut().enumerate() {
        let mut x = start;
        for _ in 0..f {
            member[x.index() as usize] = i;
            class.push(x);
            x = field.mul(x, step);
        }
        start = field.mul(start, theta);
    }
    let mut table = vec![0u64; e * e];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            let j = member[field.add(x, Elem::ONE).index() as usize];
            if j != usize::MAX {
                table[i * e + j] += 1;
            }
        }
    }
    table
}

/// Parities of `Δ` computed by multiplying out the products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectParities {
    /// `(a, class of a, φ(Δ_S(a)), φ(Δ_S̃(a)))` for every `a ∈ S`.
    pub points: Vec<(Elem, usize, u8, u8)>,
    /// `φ(Δ_S̃(0))`.
    pub zero: u8,
}

/// Per-class partial products `Π_{b ∈ D_λ, b ≠ a} (a - b)` for every
/// `a ∈ F_q`, so the products over any union of classes are a few
/// multiplications away.
pub struct ClassProducts<'a> {
    field: &'a Field,
    e: usize,
    classes: Vec<Vec<Elem>>,
    class_of: Vec<usize>,
    partial: Vec<Elem>,
}

impl<'a> ClassProducts<'a> {
    pub fn new(field: &'a Field, e: usize) -> Self {
        let q = field.q() as usize;
        let f = (q - 1) / e;
        let mut classes = vec![Vec::with_capacity(f); e];
        let mut class_of = vec![usize::MAX; q];
        let mut x = Elem::ONE;
        for l in 0..q - 1 {
            classes[l % e].push(x);
            class_of[x.index() as usize] = l % e;
            x = field.mul(x, field.theta());
        }
        let mut partial = vec![Elem::ONE; q * e];
        for a in field.elements() {
            for (lambda, class) in classes.iter().enumerate() {
                let prod = class
                    .iter()
                    .filter(|&&b| b != a)
                    .fold(Elem::ONE, |acc, &b| field.mul(acc, field.sub(a, b)));
                partial[a.index() as usize * e + lambda] = prod;
            }
        }
        ClassProducts {
            field,
            e,
            classes,
            class_of,
            partial,
        }
    }

    pub fn parities(&self, set: &[usize]) -> DirectParities {
        let field = self.field;
        let mut points = Vec::new();
        for &i in set {
            for &a in &self.classes[i] {
                let delta = set.iter().fold(Elem::ONE, |acc, &l| {
                    field.mul(acc, self.partial[a.index() as usize * self.e + l])
                });
                let phi_s = field.phi(delta).expect("distinct points");
                let phi_t = field.phi(field.mul(delta, a)).expect("nonzero point");
                points.push((a, self.class_of[a.index() as usize], phi_s, phi_t));
            }
        }
        let at_zero = set
            .iter()
            .fold(Elem::ONE, |acc, &l| field.mul(acc, self.partial[l]));
        DirectParities {
            points,
            zero: field.phi(at_zero).expect("zero not in S"),
        }
    }
}

/// `φ(Δ)` for an arbitrary set of nonzero points, and for the set with `0`
/// adjoined, by direct products. Each point's class is `log mod e`.
pub fn direct_parities(field: &Field, points: &[Elem], e: usize) -> Result<DirectParities> {
    let mut out = Vec::with_capacity(points.len());
    for &a in points {
        let log = field.log(a).ok_or(Error::ZeroArgument)?;
        let mut delta = Elem::ONE;
        for &b in points {
            if b != a {
                delta = field.mul(delta, field.sub(a, b));
            }
        }
        let phi_s = field.phi(delta).map_err(|_| Error::DuplicateElement)?;
        let phi_t = field.phi(field.mul(delta, a))?;
        out.push((a, log as usize % e, phi_s, phi_t));
    }
    let at_zero = points
        .iter()
        .fold(Elem::ONE, |acc, &b| field.mul(acc, field.neg(b)));
    Ok(DirectParities {
        points: out,
        zero: field.phi(at_zero)?,
    })
}

pub fn compare_tables(
    subject: &str,
    expected: &CyclotomicTable,
    got: &CyclotomicTable,
) -> OracleReport {
    let mut report = OracleReport::new(subject);
    report.expect(
        || format!("q={} shape", expected.q),
        (expected.e, expected.q),
        (got.e, got.q),
    );
    if expected.e != got.e {
        return report;
    }
    let e = expected.e as i64;
    for i in 0..e {
        for j in 0..e {
            report.expect(
                || format!("q={} e={e} ({i},{j})", expected.q),
                expected.get(i, j),
                got.get(i, j),
            );
        }
    }
    report
}

/// Compares the table-derived profile with directly computed parities at
/// every point of `S` and at `0 ∈ S̃`.
pub fn compare_parities(
    subject: &str,
    profile: &ParityProfile,
    direct: &DirectParities,
) -> OracleReport {
    let mut report = OracleReport::new(subject);
    for &(a, class, phi_s, phi_t) in &direct.points {
        match profile.class(class) {
            Some(c) => {
                report.expect(
                    || format!("Δ_S at {} (class {class})", a.index()),
                    c.phi_s,
                    phi_s,
                );
                report.expect(
                    || format!("Δ_S~ at {} (class {class})", a.index()),
                    c.phi_s_tilde,
                    phi_t,
                );
            }
            None => report.expect(|| format!("class {class} of {}", a.index()), true, false),
        }
    }
    report.expect(
        || String::from("Δ_S~ at 0"),
        profile.phi_s_tilde_zero,
        direct.zero,
    );
    report
}

/// The three classical identities: `(i,j) = (-i, j-i) = (pi, pj)`, the
/// `f`-parity dependent symmetry, and both row and column sums.
pub fn check_cyclotomic_identities(table: &CyclotomicTable, p: u64) -> OracleReport {
    let mut r = OracleReport::new(format!("cyclotomic identities q={} e={}", table.q, table.e));
    let e = table.e as i64;
    let h = e / 2;
    let f = table.f;
    let p = (p % e as u64) as i64;
    for i in 0..e {
        for j in 0..e {
            let v = table.get(i, j);
            let at = || format!("({i},{j})");
            r.expect(at, v, table.get(-i, j - i));
            r.expect(at, v, table.get(p * i, p * j));
            let mirror = if f % 2 == 0 {
                table.get(j, i)
            } else {
                table.get(j + h, i + h)
            };
            r.expect(at, v, mirror);
        }
        let row: u64 = (0..e).map(|j| table.get(i, j)).sum();
        r.expect(|| format!("row {i}"), f - table.row_defect(i as usize), row);
        let col: u64 = (0..e).map(|j| table.get(j, i)).sum();
        r.expect(|| format!("column {i}"), f - (i == 0) as u64, col);
    }
    r
}

/// Parity relations between the aggregates `(odd, i)` and `(even, i)`.
pub fn check_odd_even_relations(table: &CyclotomicTable) -> OracleReport {
    let mut r = OracleReport::new(format!("odd/even relations q={} e={}", table.q, table.e));
    let e = table.e;
    let f = table.f;
    let odd = |i: i64| table.odd_sum(modulo(i, e)).expect("index in range");
    let even = |i: i64| table.even_sum(modulo(i, e)).expect("index in range");
    let h = (e / 2) as i64;
    for i in 0..e as i64 {
        r.expect(
            || format!("(odd,{i})+(even,{i})"),
            f - (i == 0) as u64,
            odd(i) + even(i),
        );
        let same_parity_class = if f % 2 == 0 {
            i % 2 == 0
        } else {
            (i + h) % 2 == 0
        };
        if same_parity_class {
            r.expect(|| format!("(odd,{i}) = (odd,-{i})"), odd(i), odd(-i));
            r.expect(|| format!("(even,{i}) = (even,-{i})"), even(i), even(-i));
        } else {
            r.expect(|| format!("(odd,{i}) = (even,-{i})"), odd(i), even(-i));
            if f % 2 == 0 {
                r.expect(|| format!("(even,{i}) = (odd,-{i})"), even(i), odd(-i));
            }
        }
    }
    if e % 4 == 2 {
        if f % 2 == 0 {
            r.expect(
                || format!("(odd,{h}) = (even,{h}) = f/2"),
                (f / 2, f / 2),
                (odd(h), even(h)),
            );
        } else {
            r.expect(
                || String::from("(odd,0) = (even,0) = (f-1)/2"),
                ((f - 1) / 2, (f - 1) / 2),
                (odd(0), even(0)),
            );
        }
    }
    r
}

/// Parity of `(odd, i)` in the semiprimitive case, plus `2 | f`.
pub fn check_semiprimitive_parities(
    table: &CyclotomicTable,
    params: &SemiprimitiveParams,
) -> OracleReport {
    let mut r = OracleReport::new(format!(
        "semiprimitive parities q={} e={}",
        params.q, params.e
    ));
    r.expect(|| String::from("f even"), 0, table.f % 2);
    r.expect(
        || String::from("(odd,0) even"),
        0,
        table.odd_sum(0).expect("in range") % 2,
    );
    let half = (params.big_r - 1) / 2;
    for i in 1..params.e {
        let want = if i % 2 == 0 {
            half
        } else {
            half + params.eta_sp
        };
        let got = table.odd_sum(i).expect("in range") as i64;
        r.expect(
            || format!("(odd,{i}) mod 2"),
            want.rem_euclid(2),
            got.rem_euclid(2),
        );
    }
    r
}

/// Every `(q, e)` pair of a sweep: odd prime powers `q <= q_max` and even
/// `e | q - 1` with `e <= e_max`.
pub fn sweep_pairs(q_max: u64, e_max: usize) -> Vec<(u64, u32, usize)> {
    let mut out = Vec::new();
    for (p, m) in arith::odd_prime_powers(q_max) {
        let q = p.pow(m);
        for e in (2..=e_max.min((q - 1) as usize)).step_by(2) {
            if (q - 1) % e as u64 == 0 {
                out.push((p, m, e));
            }
        }
    }
    out
}

/// Counting vs definition, classical identities, and the `e = 2, 4` closed
/// forms over a sweep.
pub fn sweep_tables(q_max: u64, e_max: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new(format!("cyclotomic tables q<={q_max} e<={e_max}"));
    let mut last: Option<Field> = None;
    for (p, m, e) in sweep_pairs(q_max, e_max) {
        let field = match last.take() {
            Some(f) if f.p() as u64 == p && f.m() == m => f,
            _ => Field::new(p, m)?,
        };
        let cyc = Cyclotomy::new(&field, e)?;
        let counted = cyc.table();
        let mut definition = counted.clone();
        definition.values = count_cyclotomic(&field, e);
        report.merge(compare_tables("definition", &definition, &counted));
        report.merge(check_cyclotomic_identities(&counted, p));
        match e {
            2 => report.merge(compare_tables(
                "e=2 closed form",
                &counted,
                &cyc.table_e2()?,
            )),
            4 => report.merge(compare_tables(
                "e=4 closed form",
                &counted,
                &cyc.table_e4()?,
            )),
            _ => {}
        }
        last = Some(field);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definition_counting_matches_table() {
        for (p, m, e) in [
            (13, 1, 2),
            (13, 1, 4),
            (13, 1, 6),
            (5, 2, 8),
            (3, 3, 2),
            (31, 1, 10),
        ] {
            let field = Field::new(p, m).unwrap();
            let cyc = Cyclotomy::new(&field, e).unwrap();
            assert_eq!(count_cyclotomic(&field, e), cyc.table().values);
        }
    }

    #[test]
    fn min_distance_of_small_codes() {
        let field = Field::new(5, 1).unwrap();
        // [3,1] repetition code
        let g = Matrix::from_rows(1, 3, vec![Elem::ONE; 3]).unwrap();
        assert_eq!(min_distance(&field, &g, 100), Ok(3));
        assert!(matches!(
            min_distance(&field, &g, 4),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn selfdual_search_on_pairs() {
        let field = Field::new(13, 1).unwrap();
        let s = [Elem::ONE, field.from_int(2)];
        assert_eq!(
            selfdual_exists(&field, &s, CodeKind::Grs, 1 << 20),
            Ok(true)
        );
        let s = [field.from_int(1), field.from_int(2), field.from_int(4)];
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(selfdual_exists(&f7, &s, CodeKind::Egrs, 1 << 20), Ok(true));
        assert_eq!(
            selfdual_exists(&field, &s, CodeKind::Grs, 1 << 20),
            Err(Error::OddLength(3))
        );
    }

    #[test]
    fn sweep_small() {
        let r = sweep_tables(30, 8).unwrap();
        assert!(r.agreement(), "{:?}", r.mismatches);
        assert!(r.checked > 100);
    }
}
