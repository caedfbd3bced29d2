//! Cyclotomic classes `D_λ = θ^λ <θ^e>` and the cyclotomic numbers
//! `(i, j)_e = #{x ∈ D_i : x + 1 ∈ D_j}`.
//!
//! Counting is the source of truth. The closed forms for `e = 2`, `e = 4`
//! and the semiprimitive case are checked against it cell for cell.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{self, modulo};
use crate::field::{Elem, Field};
use crate::{Error, Result};

/// The `e`-th cyclotomic classes of a field.
#[derive(Clone, Copy, Debug)]
pub struct Cyclotomy<'a> {
    field: &'a Field,
    e: usize,
    f: usize,
}

impl<'a> Cyclotomy<'a> {
    /// Requires `e` even, `e >= 2` and `e | q - 1`.
    pub fn new(field: &'a Field, e: usize) -> Result<Self> {
        let q = field.q();
        let order = (q - 1) as usize;
        if e < 2 || e % 2 != 0 || order % e != 0 {
            return Err(Error::BadE { e, q });
        }
        Ok(Cyclotomy {
            field,
            e,
            f: order / e,
        })
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// Class size `(q - 1) / e`.
    pub fn f(&self) -> usize {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// Class index `λ ≡ log(x) (mod e)`; `None` for zero.
    pub fn class_of(&self, x: Elem) -> Option<usize> {
        self.field.log(x).map(|l| l as usize % self.e)
    }

    /// Elements of `D_λ` in ascending discrete log.
    pub fn class(&self, lambda: usize) -> impl Iterator<Item = Elem> + 'a {
        let (field, e) = (self.field, self.e);
        (0..self.f).map(move |j| field.exp((lambda + e * j) as u64))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.e {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                e: self.e,
            })
        }
    }

    /// `(i, j)` by walking the `f` elements of `D_i`.
    pub fn count(&self, i: usize, j: usize) -> Result<u64> {
        self.check_index(i)?;
        self.check_index(j)?;
        let n = self
            .class(i)
            .filter(|&x| self.class_of(self.field.add(x, Elem::ONE)) == Some(j))
            .count();
        Ok(n as u64)
    }

    /// The full table by one pass over `F_q^*`.
    pub fn table(&self) -> CyclotomicTable {
        let e = self.e;
        let mut values = vec![0u64; e * e];
        for x in self.field.elements().skip(1) {
            let y = self.field.add(x, Elem::ONE);
            if let (Some(i), Some(j)) = (self.class_of(x), self.class_of(y)) {
                values[i * e + j] += 1;
            }
        }
        CyclotomicTable {
            e,
            f: self.f as u64,
            q: self.q(),
            values,
            source: TableSource::BruteForce,
            t_sign: None,
        }
    }

    /// Closed form for `e = 2`.
    pub fn table_e2(&self) -> Result<CyclotomicTable> {
        if self.e != 2 {
            return Err(Error::WrongE {
                expected: 2,
                got: self.e,
            });
        }
        let f = self.f as u64;
        let values = if f % 2 == 0 {
            let h = f / 2;
            vec![h - 1, h, h, h]
        } else {
            let h = (f - 1) / 2;
            vec![h, h + 1, h, h]
        };
        Ok(CyclotomicTable {
            e: 2,
            f,
            q: self.q(),
            values,
            source: TableSource::ClosedFormE2,
            t_sign: None,
        })
    }

    /// Closed form for `e = 4`.
    ///
    /// `t` is only determined up to sign; the sign matching the counted
    /// value of `(0, 1)` for this field's `θ` is chosen and recorded in
    /// `t_sign`.
    pub fn table_e4(&self) -> Result<CyclotomicTable> {
        if self.e != 4 {
            return Err(Error::WrongE {
                expected: 4,
                got: self.e,
            });
        }
        let qp = decompose_quartic(self.q())?;
        let target = self.count(0, 1)?;
        for sign in [1i8, -1] {
            if let Some(values) = quartic_values(self.q(), self.f, qp.s, sign as i64 * qp.t) {
                if values[1] == target {
                    return Ok(CyclotomicTable {
                        e: 4,
                        f: self.f as u64,
                        q: self.q(),
                        values,
                        source: TableSource::ClosedFormE4,
                        t_sign: Some(sign),
                    });
                }
            }
        }
        Err(Error::SignResolutionFailure)
    }
}

/// The 4x4 table from `q = s^2 + 4t^2`, or `None` if an entry is not a
/// non-negative integer.
fn quartic_values(q: u64, f: usize, s: i64, t: i64) -> Option<Vec<u64>> {
    let q = q as i64;
    let sixteenths = if f % 2 == 0 {
        [
            q - 11 - 6 * s,
            q - 3 + 2 * s + 8 * t,
            q - 3 + 2 * s,
            q - 3 + 2 * s - 8 * t,
            q + 1 - 2 * s,
        ]
    } else {
        [
            q - 7 + 2 * s,
            q + 1 + 2 * s - 8 * t,
            q + 1 - 6 * s,
            q + 1 + 2 * s + 8 * t,
            q - 3 - 2 * s,
        ]
    };
    let mut abcde = [0u64; 5];
    for (slot, v) in abcde.iter_mut().zip(sixteenths) {
        if v < 0 || v % 16 != 0 {
            return None;
        }
        *slot = (v / 16) as u64;
    }
    let [a, b, c, d, e] = abcde;
    Some(if f % 2 == 0 {
        vec![a, b, c, d, b, d, e, e, c, e, c, e, d, e, e, b]
    } else {
        vec![a, b, c, d, e, e, d, b, a, e, a, e, e, d, b, e]
    })
}

/// Where a table's values came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableSource {
    BruteForce,
    ClosedFormE2,
    ClosedFormE4,
    Semiprimitive,
}

impl TableSource {
    pub fn name(self) -> &'static str {
        match self {
            TableSource::BruteForce => "brute_force",
            TableSource::ClosedFormE2 => "closed_form_e2",
            TableSource::ClosedFormE4 => "closed_form_e4",
            TableSource::Semiprimitive => "semiprimitive",
        }
    }
}

/// An `e x e` table of cyclotomic numbers, row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicTable {
    pub e: usize,
    pub f: u64,
    pub q: u64,
    pub values: Vec<u64>,
    pub source: TableSource,
    /// Sign applied to the canonical `t >= 0`, for `e = 4` closed forms.
    pub t_sign: Option<i8>,
}

impl CyclotomicTable {
    /// `(i, j)` with indices taken mod `e`.
    pub fn get(&self, i: i64, j: i64) -> u64 {
        self.values[modulo(i, self.e) * self.e + modulo(j, self.e)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.values.chunks(self.e)
    }

    /// Same numbers, regardless of source.
    pub fn same_values(&self, other: &CyclotomicTable) -> bool {
        self.e == other.e && self.q == other.q && self.values == other.values
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.e {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                e: self.e,
            })
        }
    }

    /// `(odd, i) = Σ_{j odd} (j, i)`.
    pub fn odd_sum(&self, i: usize) -> Result<u64> {
        self.check_index(i)?;
        Ok((1..self.e)
            .step_by(2)
            .map(|j| self.values[j * self.e + i])
            .sum())
    }

    /// `(even, i) = Σ_{j even} (j, i)`.
    pub fn even_sum(&self, i: usize) -> Result<u64> {
        self.check_index(i)?;
        Ok((0..self.e)
            .step_by(2)
            .map(|j| self.values[j * self.e + i])
            .sum())
    }

    /// `(I, J) = Σ_{i ∈ I, j ∈ J} (i, j)`.
    pub fn set_sum(&self, rows: &[usize], cols: &[usize]) -> Result<u64> {
        let mut acc = 0;
        for &i in rows {
            self.check_index(i)?;
            for &j in cols {
                self.check_index(j)?;
                acc += self.values[i * self.e + j];
            }
        }
        Ok(acc)
    }

    /// `(odd, I - i) = Σ_{λ ∈ I} (odd, λ - i)`.
    pub fn odd_shift_sum(&self, set: &[usize], i: usize) -> Result<u64> {
        let mut acc = 0;
        for &lambda in set {
            self.check_index(lambda)?;
            acc += self.odd_sum(modulo(lambda as i64 - i as i64, self.e))?;
        }
        Ok(acc)
    }

    /// `θ_i` of the row-sum identity: 1 iff `2 | f, i = 0` or `2 ∤ f, i = e/2`.
    pub fn row_defect(&self, i: usize) -> u64 {
        let hit = if self.f % 2 == 0 {
            i == 0
        } else {
            i == self.e / 2
        };
        hit as u64
    }
}

/// `q = s^2 + 4t^2` with `s ≡ 1 (mod 4)` and canonical `t >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuarticParams {
    pub s: i64,
    pub t: i64,
}

/// Finds the representation `q = s^2 + 4t^2` that governs the quartic
/// cyclotomic numbers of `F_q`.
///
/// For `p ≡ 1 (mod 4)` several representations can exist (`25 = 5^2 + 0`
/// and `25 = 3^2 + 4·2^2`); the proper one has `p ∤ s`. For `p ≡ 3 (mod 4)`
/// the only one is `s = ±p^{m/2}, t = 0`.
pub fn decompose_quartic(q: u64) -> Result<QuarticParams> {
    let (p, _) = arith::prime_power(q).ok_or(Error::NoDecomposition(q))?;
    if q % 4 != 1 {
        return Err(Error::NoDecomposition(q));
    }
    for t in 0..=arith::isqrt(q / 4) {
        let rest = q - 4 * t * t;
        let r = arith::isqrt(rest);
        if r * r != rest {
            continue;
        }
        let s = if r % 4 == 1 { r as i64 } else { -(r as i64) };
        if s.rem_euclid(4) != 1 {
            continue;
        }
        if p % 4 == 1 && r % p == 0 {
            continue;
        }
        return Ok(QuarticParams { s, t: t as i64 });
    }
    Err(Error::NoDecomposition(q))
}

/// Parameters of the semiprimitive case: `p^t ≡ -1 (mod e)` for a least
/// `t`, `q = r^2` with `r = p^{t s}`, `R = r (-1)^s` and `η = (R - 1) / e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemiprimitiveParams {
    pub p: u64,
    pub e: usize,
    pub t_min: u32,
    pub s_exp: u32,
    pub m: u32,
    pub r: u64,
    pub q: u64,
    pub big_r: i64,
    pub eta_sp: i64,
}

impl SemiprimitiveParams {
    pub fn new(p: u64, e: usize, s_exp: u32) -> Result<Self> {
        if !arith::is_prime(p) || p == 2 || e < 2 || e % 2 != 0 || s_exp == 0 {
            return Err(Error::NotSemiprimitive);
        }
        let t_min = least_minus_one_exponent(p, e).ok_or(Error::NotSemiprimitive)?;
        let m = t_min.checked_mul(s_exp).ok_or(Error::NotSemiprimitive)?;
        let r = arith::checked_pow(p, m).ok_or(Error::NotSemiprimitive)?;
        let q = r
            .checked_mul(r)
            .filter(|&q| q <= i64::MAX as u64)
            .ok_or(Error::NotSemiprimitive)?;
        let big_r = if s_exp % 2 == 0 {
            r as i64
        } else {
            -(r as i64)
        };
        if (big_r - 1) % e as i64 != 0 {
            return Err(Error::Invariant("R - 1 not divisible by e"));
        }
        Ok(SemiprimitiveParams {
            p,
            e,
            t_min,
            s_exp,
            m,
            r,
            q,
            big_r,
            eta_sp: (big_r - 1) / e as i64,
        })
    }

    /// Semiprimitive parameters describing `GF(p^n)` with order `e`, if any.
    pub fn for_field(p: u64, n: u32, e: usize) -> Option<Self> {
        if n % 2 != 0 || e < 2 {
            return None;
        }
        let t_min = least_minus_one_exponent(p, e)?;
        let half = n / 2;
        if half % t_min != 0 {
            return None;
        }
        SemiprimitiveParams::new(p, e, half / t_min).ok()
    }

    pub fn f(&self) -> u64 {
        (self.q - 1) / self.e as u64
    }

    /// The table from the three-case semiprimitive formula.
    pub fn table(&self) -> CyclotomicTable {
        let e = self.e;
        let eta = self.eta_sp;
        let diag0 = eta * eta - (e as i64 - 3) * eta - 1;
        let edge = eta * eta + eta;
        let off = eta * eta;
        let mut values = Vec::with_capacity(e * e);
        for i in 0..e {
            for j in 0..e {
                let v = match (i, j) {
                    (0, 0) => diag0,
                    (0, _) | (_, 0) => edge,
                    _ if i == j => edge,
                    _ => off,
                };
                values.push(v as u64);
            }
        }
        CyclotomicTable {
            e,
            f: self.f(),
            q: self.q,
            values,
            source: TableSource::Semiprimitive,
            t_sign: None,
        }
    }
}

fn least_minus_one_exponent(p: u64, e: usize) -> Option<u32> {
    let e = e as u64;
    if e % p == 0 {
        return None;
    }
    let target = e - 1;
    let mut acc = 1u64;
    for t in 1..=e as u32 {
        acc = acc * (p % e) % e;
        if acc == target % e {
            return Some(t);
        }
        if acc == 1 {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, m: u32) -> Field {
        Field::new(p, m).unwrap()
    }

    #[test]
    fn classes_of_f13() {
        let field = f(13, 1);
        let c = Cyclotomy::new(&field, 2).unwrap();
        let mut d0: Vec<u32> = c.class(0).map(Elem::index).collect();
        let mut d1: Vec<u32> = c.class(1).map(Elem::index).collect();
        d0.sort();
        d1.sort();
        assert_eq!(d0, [1, 3, 4, 9, 10, 12]);
        assert_eq!(d1, [2, 5, 6, 7, 8, 11]);
        let c12 = Cyclotomy::new(&field, 12).unwrap();
        for i in 0..12 {
            assert_eq!(c12.class(i).collect::<Vec<_>>(), [field.exp(i as u64)]);
        }
    }

    #[test]
    fn bad_e() {
        let field = f(13, 1);
        for e in [0, 1, 3, 5, 8, 24] {
            assert!(matches!(Cyclotomy::new(&field, e), Err(Error::BadE { .. })));
        }
    }

    #[test]
    fn brute_force_counts() {
        let field = f(13, 1);
        let c = Cyclotomy::new(&field, 2).unwrap();
        assert_eq!(c.count(0, 0), Ok(2));
        assert_eq!(c.count(0, 1), Ok(3));
        assert!(matches!(c.count(2, 0), Err(Error::IndexOutOfRange { .. })));
        let f11 = f(11, 1);
        let c = Cyclotomy::new(&f11, 2).unwrap();
        assert_eq!(c.count(0, 1), Ok(3));
    }

    #[test]
    fn quadratic_closed_form() {
        for (q, expect) in [(13, [2, 3, 3, 3]), (11, [2, 3, 2, 2]), (9, [1, 2, 2, 2])] {
            let (p, m) = arith::prime_power(q).unwrap();
            let field = f(p, m);
            let c = Cyclotomy::new(&field, 2).unwrap();
            let closed = c.table_e2().unwrap();
            assert_eq!(closed.values, expect, "q = {q}");
            assert!(closed.same_values(&c.table()));
        }
        let field = f(13, 1);
        let c4 = Cyclotomy::new(&field, 4).unwrap();
        assert_eq!(
            c4.table_e2(),
            Err(Error::WrongE {
                expected: 2,
                got: 4
            })
        );
    }

    #[test]
    fn quartic_decompositions() {
        assert_eq!(decompose_quartic(113), Ok(QuarticParams { s: -7, t: 4 }));
        assert_eq!(decompose_quartic(25), Ok(QuarticParams { s: -3, t: 2 }));
        assert_eq!(decompose_quartic(41), Ok(QuarticParams { s: 5, t: 2 }));
        assert_eq!(decompose_quartic(9), Ok(QuarticParams { s: -3, t: 0 }));
        assert_eq!(decompose_quartic(13), Ok(QuarticParams { s: -3, t: 1 }));
        assert_eq!(decompose_quartic(7), Err(Error::NoDecomposition(7)));
        assert_eq!(decompose_quartic(21), Err(Error::NoDecomposition(21)));
    }

    #[test]
    fn quartic_closed_form_f13() {
        let field = f(13, 1);
        let c = Cyclotomy::new(&field, 4).unwrap();
        let t = c.table_e4().unwrap();
        // s = -3, f = 3: A = 0, C = 2, E = 1, {B, D} = {0, 1}
        assert_eq!(t.get(0, 0), 0);
        assert_eq!(t.get(0, 2), 2);
        assert_eq!(t.get(1, 0), 1);
        assert_eq!(t.get(0, 1) + t.get(0, 3), 1);
        assert_eq!(t.values, c.table().values);
        assert!(t.t_sign.is_some());
    }

    #[test]
    fn quartic_closed_form_f17() {
        let field = f(17, 1);
        let c = Cyclotomy::new(&field, 4).unwrap();
        let t = c.table_e4().unwrap();
        assert_eq!(t.get(0, 0), 0);
        assert_eq!(t.values, c.table().values);
    }

    #[test]
    fn semiprimitive_params() {
        let sp = SemiprimitiveParams::new(3, 4, 1).unwrap();
        assert_eq!(
            (sp.t_min, sp.m, sp.r, sp.q, sp.big_r, sp.eta_sp),
            (1, 1, 3, 9, -3, -1)
        );
        let sp = SemiprimitiveParams::new(7, 4, 1).unwrap();
        assert_eq!((sp.t_min, sp.q, sp.big_r, sp.eta_sp), (1, 49, -7, -2));
        assert_eq!(
            SemiprimitiveParams::new(5, 4, 1),
            Err(Error::NotSemiprimitive)
        );
        assert_eq!(
            SemiprimitiveParams::for_field(3, 2, 4),
            Some(SemiprimitiveParams::new(3, 4, 1).unwrap())
        );
        assert_eq!(SemiprimitiveParams::for_field(3, 3, 4), None);
    }

    #[test]
    fn semiprimitive_matches_counting() {
        for (p, s_exp, e) in [(3, 1, 4), (7, 1, 4), (3, 2, 4), (5, 1, 6), (3, 1, 2)] {
            let sp = SemiprimitiveParams::new(p, e, s_exp).unwrap();
            let field = f(p, 2 * sp.m);
            let c = Cyclotomy::new(&field, e).unwrap();
            assert_eq!(sp.table().values, c.table().values, "p={p} s={s_exp} e={e}");
        }
    }

    #[test]
    fn aggregates() {
        let field = f(13, 1);
        let t = Cyclotomy::new(&field, 2).unwrap().table();
        assert_eq!(t.odd_sum(0), Ok(3));
        assert_eq!(t.odd_shift_sum(&[0], 0), Ok(3));
        assert_eq!(t.set_sum(&[], &[0, 1]), Ok(0));
        assert_eq!(t.set_sum(&[0, 1], &[0, 1]), Ok(11));
        assert!(t.odd_sum(2).is_err());
        for i in 0..2 {
            assert_eq!(
                t.odd_sum(i).unwrap() + t.even_sum(i).unwrap(),
                6 - (i == 0) as u64
            );
        }
        let f17 = f(17, 1);
        let t = Cyclotomy::new(&f17, 2).unwrap().table();
        assert_eq!(t.odd_sum(0), Ok(4));
    }
}
