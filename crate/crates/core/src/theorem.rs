//! Parity criteria for unions of cyclotomic classes and the named
//! constructions built on them.
//!
//! For `S = ∪_{λ ∈ I} D_λ` and `a ∈ D_i`,
//!
//! ```text
//! φ(Δ_S(a))  ≡ (fl - 1)(i + ef/2) + (odd, I - i)
//! φ(Δ_S̃(a)) ≡ φ(Δ_S(a)) + i
//! φ(Δ_S̃(0)) ≡ fl·e/2 + f·|I_odd|                    (mod 2)
//! ```
//!
//! so feasibility of a self-dual GRS or extended GRS code on `S` or
//! `S̃ = S ∪ {0}` is decided from the cyclotomic table alone.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::modulo;
use crate::cyclotomy::{decompose_quartic, CyclotomicTable, Cyclotomy, SemiprimitiveParams};
use crate::field::{Elem, Field};
use crate::grs::{CodeKind, EvaluationSet, MdsBudget, SelfDualCertificate};
use crate::oracle::{self, DirectParities};
use crate::{Error, Result};

/// Default bound on `e` for exhaustive subset sweeps (`2^e` subsets).
pub const DEFAULT_E_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassParity {
    pub class: usize,
    /// `φ(Δ_S(a))` for `a` in this class.
    pub phi_s: u8,
    /// `φ(Δ_S̃(a))` for `a` in this class.
    pub phi_s_tilde: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityProfile {
    pub classes: Vec<usize>,
    pub per_class: Vec<ClassParity>,
    pub phi_s_tilde_zero: u8,
    pub odd_count: usize,
}

impl ParityProfile {
    pub fn class(&self, c: usize) -> Option<&ClassParity> {
        self.per_class.iter().find(|p| p.class == c)
    }
}

fn normalize(classes: &[usize], e: usize) -> Result<Vec<usize>> {
    if classes.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let mut set = classes.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|&&c| c >= e) {
        return Err(Error::IndexOutOfRange { index: bad, e });
    }
    Ok(set)
}

/// The three parities from the table only; no field arithmetic.
pub fn parity_profile(table: &CyclotomicTable, classes: &[usize]) -> Result<ParityProfile> {
    let e = table.e;
    let set = normalize(classes, e)?;
    let f = table.f;
    let l = set.len() as u64;
    let fl = f * l;
    let half_ef = e as u64 / 2 * f;
    let mut per_class = Vec::with_capacity(set.len());
    for &i in &set {
        let odd = table.odd_shift_sum(&set, i)?;
        let phi_s = (((fl + 1) % 2) * ((i as u64 + half_ef) % 2) + odd) % 2;
        let phi_s = phi_s as u8;
        per_class.push(ClassParity {
            class: i,
            phi_s,
            phi_s_tilde: phi_s ^ (i % 2) as u8,
        });
    }
    let odd_count = set.iter().filter(|&&i| i % 2 == 1).count();
    let zero = ((fl * (e as u64 / 2)) + f * odd_count as u64) % 2;
    Ok(ParityProfile {
        classes: set,
        per_class,
        phi_s_tilde_zero: zero as u8,
        odd_count,
    })
}

/// Parities of `Δ` on a class-built set by multiplying out the products.
pub fn oracle_parity(field: &Field, set: &EvaluationSet) -> Result<DirectParities> {
    let e = set
        .e()
        .ok_or(Error::Invariant("set was not built from classes"))?;
    let points: Vec<Elem> = set
        .elements()
        .iter()
        .copied()
        .filter(|x| !x.is_zero())
        .collect();
    oracle::direct_parities(field, &points, e)
}

/// Which self-dual family a length belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// Realized by a GRS code.
    SigmaG,
    /// Realized by an extended GRS code.
    SigmaEg,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::SigmaG => "g",
            Claim::SigmaEg => "eg",
        }
    }

    pub fn kind(self) -> CodeKind {
        match self {
            Claim::SigmaG => CodeKind::Grs,
            Claim::SigmaEg => CodeKind::Egrs,
        }
    }
}

/// A claim that an MDS self-dual code of length `length` exists over
/// `F_q`, with the class set that realizes it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Recipe {
    pub q: u64,
    pub e: usize,
    pub f: u64,
    pub classes: Vec<usize>,
    pub include_zero: bool,
    pub claim: Claim,
    pub length: usize,
    pub provenance: String,
}

impl Recipe {
    pub fn evaluation_set(&self, cyc: &Cyclotomy<'_>) -> Result<EvaluationSet> {
        if cyc.e() != self.e || cyc.q() != self.q {
            return Err(Error::WrongE {
                expected: self.e,
                got: cyc.e(),
            });
        }
        EvaluationSet::from_classes(cyc, &self.classes, self.include_zero)
    }

    /// Builds the code and its certificate.
    pub fn materialize(
        &self,
        field: &Field,
        budget: &MdsBudget,
        seed: u64,
    ) -> Result<SelfDualCertificate> {
        let cyc = Cyclotomy::new(field, self.e)?;
        let set = self.evaluation_set(&cyc)?;
        let cert = SelfDualCertificate::construct(field, set, self.claim.kind(), budget, seed)?;
        if cert.code.length() != self.length {
            return Err(Error::Invariant("materialized length differs from recipe"));
        }
        Ok(cert)
    }

    fn relabel(mut self, label: &str) -> Self {
        self.provenance = String::from(label);
        self
    }
}

/// Evaluates the three-way case split on the parities of `f` and `l = |I|`
/// and returns every construction whose condition holds.
pub fn theorem6_check(table: &CyclotomicTable, classes: &[usize]) -> Vec<Recipe> {
    let Ok(set) = normalize(classes, table.e) else {
        return Vec::new();
    };
    let e = table.e;
    let f = table.f;
    let l = set.len() as u64;
    let fl = (f * l) as usize;
    let half_e = (e / 2) as u64 % 2;
    let odd_count = set.iter().filter(|&&i| i % 2 == 1).count() as u64;
    let odd: Vec<u64> = set
        .iter()
        .map(|&i| table.odd_shift_sum(&set, i).expect("normalized") % 2)
        .collect();
    let with_i: Vec<u64> = set
        .iter()
        .zip(&odd)
        .map(|(&i, &o)| (i as u64 + o) % 2)
        .collect();
    let all_same = |v: &[u64]| v.windows(2).all(|w| w[0] == w[1]);
    let all_eq = |v: &[u64], x: u64| v.iter().all(|&y| y == x);

    let make = |include_zero, claim, length, case: &str| Recipe {
        q: table.q,
        e,
        f,
        classes: set.clone(),
        include_zero,
        claim,
        length,
        provenance: format!("Thm6 case {case}"),
    };
    let mut out = Vec::new();
    if f % 2 == 0 {
        if all_same(&with_i) {
            out.push(make(false, Claim::SigmaG, fl, "1.1"));
        }
        if all_eq(&odd, 0) {
            out.push(make(true, Claim::SigmaEg, fl + 2, "1.2"));
        }
    } else if l % 2 == 0 {
        if all_same(&with_i) {
            out.push(make(false, Claim::SigmaG, fl, "2.1"));
        }
        if odd_count % 2 == half_e && all_eq(&odd, 0) {
            out.push(make(true, Claim::SigmaEg, fl + 2, "2.2"));
        }
    } else {
        if all_eq(&odd, half_e) {
            out.push(make(false, Claim::SigmaEg, fl + 1, "3.1"));
        }
        if all_eq(&with_i, (half_e + odd_count) % 2) {
            out.push(make(true, Claim::SigmaG, fl + 1, "3.2"));
        }
    }
    out
}

/// The recipe for `(claim, length)` on `classes` if the case split
/// confirms it.
fn confirm(
    table: &CyclotomicTable,
    classes: &[usize],
    claim: Claim,
    length: u64,
    label: &str,
) -> Option<Recipe> {
    theorem6_check(table, classes)
        .into_iter()
        .find(|r| r.claim == claim && r.length as u64 == length)
        .map(|r| r.relabel(label))
}

/// First class set of size `l` realizing `(claim, length)`: the even
/// classes `{0, 2, ..}` when they suffice, else the lexicographically
/// first subset.
fn find_witness(
    table: &CyclotomicTable,
    l: usize,
    claim: Claim,
    length: u64,
    label: &str,
) -> Option<Recipe> {
    let e = table.e;
    if l == 0 || l > e {
        return None;
    }
    if l <= e / 2 {
        let evens: Vec<usize> = (0..l).map(|j| 2 * j).collect();
        if let Some(r) = confirm(table, &evens, claim, length, label) {
            return Some(r);
        }
    }
    let mut subset: Vec<usize> = (0..l).collect();
    loop {
        if let Some(r) = confirm(table, &subset, claim, length, label) {
            return Some(r);
        }
        // next l-combination of 0..e in lexicographic order
        let mut k = l;
        while k > 0 && subset[k - 1] == e - l + k - 1 {
            k -= 1;
        }
        if k == 0 {
            return None;
        }
        subset[k - 1] += 1;
        for j in k..l {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Constructions from one class or a pair of classes, for any even `e`.
pub fn recipes_small_sets(table: &CyclotomicTable) -> Vec<Recipe> {
    let e = table.e;
    let f = table.f;
    let h = e / 2;
    let odd0 = table.odd_sum(0).expect("e >= 2");
    let mut out = Vec::new();
    if f % 2 == 0 {
        out.extend(confirm(table, &[0], Claim::SigmaG, f, "Thm8(1)"));
        if odd0 % 2 == 0 {
            out.extend(confirm(table, &[0], Claim::SigmaEg, f + 2, "Thm8(1)"));
        }
        out.extend(confirm(
            table,
            &[0, h],
            Claim::SigmaEg,
            2 * f + 2,
            "Thm8(2)",
        ));
        if e % 4 == 0 {
            // realized on the same two classes by a GRS code
            out.extend(confirm(table, &[0, h], Claim::SigmaG, 2 * f, "Thm8(2)"));
        }
    } else {
        if odd0 % 2 == (h % 2) as u64 {
            out.extend(confirm(table, &[0], Claim::SigmaG, f + 1, "Thm8(3)"));
            out.extend(confirm(table, &[0], Claim::SigmaEg, f + 1, "Thm8(3)"));
        }
        if h % 2 == 1 {
            let witness = (1..e)
                .step_by(2)
                .find(|&i| table.odd_sum(i).expect("in range") % 2 == odd0 % 2);
            if let Some(i) = witness {
                out.extend(confirm(
                    table,
                    &[0, i],
                    Claim::SigmaEg,
                    2 * f + 2,
                    "Thm8(4)",
                ));
            }
        }
    }
    out
}

/// Constructions for the quadratic classes (`e = 2`).
pub fn recipes_quadratic(table: &CyclotomicTable) -> Result<Vec<Recipe>> {
    if table.e != 2 {
        return Err(Error::WrongE {
            expected: 2,
            got: table.e,
        });
    }
    let (q, f) = (table.q, table.f);
    let mut out = Vec::new();
    if q % 4 == 1 {
        out.extend(confirm(
            table,
            &[0, 1],
            Claim::SigmaEg,
            2 * f + 2,
            "Thm11(1)",
        ));
        if q % 8 == 1 {
            out.extend(confirm(table, &[0], Claim::SigmaEg, f + 2, "Thm11(1)"));
        }
    } else {
        out.extend(confirm(
            table,
            &[0, 1],
            Claim::SigmaEg,
            2 * f + 2,
            "Thm11(2)",
        ));
        if q % 8 == 7 {
            out.extend(confirm(table, &[0], Claim::SigmaEg, f + 1, "Thm11(2)"));
            out.extend(confirm(table, &[1], Claim::SigmaG, f + 1, "Thm11(2)"));
        }
    }
    Ok(out)
}

/// Constructions for the quartic classes (`e = 4`) of `GF(p^n)`.
pub fn recipes_quartic(table: &CyclotomicTable, p: u64, n: u32) -> Result<Vec<Recipe>> {
    if table.e != 4 {
        return Err(Error::WrongE {
            expected: 4,
            got: table.e,
        });
    }
    let (q, f) = (table.q, table.f);
    let mut out = Vec::new();
    if p % 4 == 1 {
        if f % 2 == 0 {
            let l = "Thm12(1.1)";
            out.extend(confirm(table, &[0], Claim::SigmaG, f, l));
            out.extend(confirm(table, &[0, 2], Claim::SigmaG, 2 * f, l));
            out.extend(confirm(table, &[0], Claim::SigmaEg, f + 2, l));
            out.extend(confirm(table, &[0, 2], Claim::SigmaEg, 2 * f + 2, l));
            out.extend(confirm(table, &[0, 1, 2, 3], Claim::SigmaEg, 4 * f + 2, l));
            let t = decompose_quartic(q)?.t;
            let (q16, t4) = (q % 16, t.rem_euclid(4));
            if (q16 == 1 && t4 == 2) || (q16 == 9 && t4 == 0) {
                out.extend(confirm(table, &[0, 1, 2], Claim::SigmaG, 3 * f, l));
            }
            if (q16 == 1 && t4 == 0) || (q16 == 9 && t4 == 2) {
                out.extend(confirm(table, &[0, 1, 2], Claim::SigmaEg, 3 * f + 2, l));
            }
        } else {
            let l = "Thm12(1.2)";
            let pair = confirm(table, &[0, 1], Claim::SigmaG, 2 * f, l)
                .or_else(|| confirm(table, &[0, 3], Claim::SigmaG, 2 * f, l));
            out.extend(pair);
            out.extend(confirm(table, &[0], Claim::SigmaEg, f + 1, l));
            out.extend(confirm(table, &[0, 1, 2, 3], Claim::SigmaEg, 4 * f + 2, l));
        }
    } else if n % 2 == 0 {
        let half = n / 2;
        let (label, g_sizes, eg_sizes): (&str, &[usize], &[usize]) = if p % 8 == 7 || half % 2 == 0
        {
            ("Thm12(2.1)", &[1, 2], &[1, 2, 3, 4])
        } else {
            ("Thm12(2.2)", &[1, 2, 3], &[1, 2, 4])
        };
        for &l in g_sizes {
            out.extend(find_witness(table, l, Claim::SigmaG, l as u64 * f, label));
        }
        for &l in eg_sizes {
            out.extend(find_witness(
                table,
                l,
                Claim::SigmaEg,
                l as u64 * f + 2,
                label,
            ));
        }
    }
    Ok(out)
}

/// Constructions in the semiprimitive case, over every class-set size
/// the case analysis names.
pub fn recipes_semiprimitive(
    table: &CyclotomicTable,
    params: &SemiprimitiveParams,
) -> Result<Vec<Recipe>> {
    if table.e != params.e || table.q != params.q {
        return Err(Error::NotSemiprimitive);
    }
    let e = params.e;
    let f = table.f;
    let (label, g_sizes, eg_sizes): (&str, Vec<usize>, Vec<usize>) =
        if params.eta_sp.rem_euclid(2) == 0 {
            ("Thm10(1)", (1..=e / 2).collect(), (1..=e).collect())
        } else if e % 4 == 0 {
            let g = (1..=e)
                .filter(|l| l % 2 == 1)
                .chain((2..=e / 2).step_by(2))
                .collect();
            let eg = (2..=e).step_by(2).chain((1..e / 2).step_by(2)).collect();
            ("Thm10(2)", g, eg)
        } else {
            let g = (1..e).step_by(2).chain((2..e / 2).step_by(2)).collect();
            ("Thm10(3)", g, (2..=e).step_by(2).collect())
        };
    let mut out = Vec::new();
    for l in g_sizes {
        out.extend(find_witness(table, l, Claim::SigmaG, l as u64 * f, label));
    }
    for l in eg_sizes {
        out.extend(find_witness(
            table,
            l,
            Claim::SigmaEg,
            l as u64 * f + 2,
            label,
        ));
    }
    Ok(out)
}

/// Every recipe for one `(q, e)`: the full subset sweep plus the named
/// constructions.
pub fn recipes_for(cyc: &Cyclotomy<'_>, table: &CyclotomicTable) -> Result<Vec<Recipe>> {
    let e = cyc.e();
    let field = cyc.field();
    let mut out = Vec::new();
    for mask in 1u64..(1 << e) {
        let set: Vec<usize> = (0..e).filter(|&i| mask >> i & 1 == 1).collect();
        out.extend(theorem6_check(table, &set));
    }
    out.extend(recipes_small_sets(table));
    if e == 2 {
        out.extend(recipes_quadratic(table)?);
    }
    if e == 4 {
        out.extend(recipes_quartic(table, field.p() as u64, field.m())?);
    }
    if let Some(params) = SemiprimitiveParams::for_field(field.p() as u64, field.m(), e) {
        out.extend(recipes_semiprimitive(table, &params)?);
    }
    Ok(out)
}

/// One row of the claim table: a length, its family, every source that
/// produced it, and a representative recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaRow {
    pub q: u64,
    pub n: usize,
    pub claim: Claim,
    /// Distinct `label[e=..]` entries, sorted.
    pub provenance: Vec<String>,
    pub witness: Recipe,
}

/// Aggregates recipes for every even `e | q - 1` with `e <= e_max` into a
/// deduplicated claim table sorted by length, GRS before extended.
pub fn enumerate_sigma(field: &Field, e_max: usize, e_cap: usize) -> Result<Vec<SigmaRow>> {
    if e_max > e_cap || e_max >= 64 {
        return Err(Error::CapExceeded {
            size: e_max as u64,
            cap: e_cap as u64,
        });
    }
    let q = field.q();
    let mut recipes = Vec::new();
    for e in (2..=e_max).step_by(2) {
        if (q - 1) % e as u64 != 0 {
            continue;
        }
        let cyc = Cyclotomy::new(field, e)?;
        let table = cyc.table();
        recipes.extend(recipes_for(&cyc, &table)?);
    }
    recipes.sort_by(|a, b| {
        (
            a.length,
            a.claim,
            a.e,
            &a.classes,
            a.include_zero,
            &a.provenance,
        )
            .cmp(&(
                b.length,
                b.claim,
                b.e,
                &b.classes,
                b.include_zero,
                &b.provenance,
            ))
    });
    let mut rows: BTreeMap<(usize, Claim), SigmaRow> = BTreeMap::new();
    for r in recipes {
        let label = format!("{}[e={}]", r.provenance, r.e);
        let row = rows.entry((r.length, r.claim)).or_insert_with(|| SigmaRow {
            q,
            n: r.length,
            claim: r.claim,
            provenance: Vec::new(),
            witness: r.clone(),
        });
        if !row.provenance.contains(&label) {
            row.provenance.push(label);
        }
    }
    Ok(rows
        .into_values()
        .map(|mut row| {
            row.provenance.sort();
            row
        })
        .collect())
}

/// `(odd, I - i)` for every `i ∈ I`, with indices reduced mod `e`.
pub fn odd_shift_sums(table: &CyclotomicTable, classes: &[usize]) -> Result<Vec<u64>> {
    let set = normalize(classes, table.e)?;
    set.iter()
        .map(|&i| {
            set.iter()
                .map(|&l| table.odd_sum(modulo(l as i64 - i as i64, table.e)))
                .sum()
        })
        .collect()
}
