//! Table-driven arithmetic in `GF(p^m)` for odd primes `p`.
//!
//! Elements are stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! of their coefficient vector in the polynomial basis. That integer order
//! is also the order used to pick the modulus and the primitive element, so
//! every run builds the same field.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::arith;
use crate::{Error, Result};

/// Largest field built by default.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// A field element, as the base-`p` integer of its coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Characteristic, degree and the monic modulus (low degree first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

/// A fully tabulated finite field with a fixed primitive element.
///
/// Immutable once built; share it by reference.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    theta: Elem,
    log: Vec<u32>,
    /// `theta^k` for `k < 2(q - 1)`, so products of two logs index directly.
    exp: Vec<u32>,
    place: Vec<u32>,
    /// Addition and negation tables for small extension fields.
    sum: Vec<u32>,
    negs: Vec<u32>,
}

const ADD_TABLE_MAX: u32 = 1024;

const NO_LOG: u32 = u32::MAX;

impl Field {
    /// Builds `GF(p^m)` with the default size cap.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        Field::with_cap(p, m, DEFAULT_CAP)
    }

    pub fn with_cap(p: u64, m: u32, cap: u64) -> Result<Field> {
        if !arith::is_prime(p) {
            return Err(Error::NotAPrime(p));
        }
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = match arith::checked_pow(p, m) {
            Some(q) if q <= cap && q <= u32::MAX as u64 => q,
            Some(q) => return Err(Error::CapExceeded { size: q, cap }),
            None => {
                return Err(Error::CapExceeded {
                    size: u64::MAX,
                    cap,
                })
            }
        };
        let p = p as u32;
        let modulus = first_irreducible(p, m);
        let theta = least_primitive(p, m, &modulus, q);
        Ok(Field::tabulate(
            FieldSpec { p, m, modulus },
            q as u32,
            theta,
        ))
    }

    fn tabulate(spec: FieldSpec, q: u32, theta: Vec<u32>) -> Field {
        let p = spec.p;
        let m = spec.m as usize;
        let mut place = Vec::with_capacity(m);
        let mut w = 1u32;
        for _ in 0..m {
            place.push(w);
            w = w.wrapping_mul(p);
        }
        let encode = |c: &[u32]| c.iter().zip(&place).map(|(a, b)| a * b).sum::<u32>();
        let order = (q - 1) as usize;
        let mut log = vec![NO_LOG; q as usize];
        let mut exp = Vec::with_capacity(order);
        let mut cur = vec![0u32; m];
        cur[0] = 1;
        for k in 0..order {
            let x = encode(&cur);
            debug_assert_eq!(log[x as usize], NO_LOG, "theta is not primitive");
            log[x as usize] = k as u32;
            exp.push(x);
            cur = poly_mulmod(&cur, &theta, &spec.modulus, p);
        }
        exp.extend_from_within(..);
        let theta = Elem(encode(&theta));
        let mut field = Field {
            spec,
            q,
            theta,
            log,
            exp,
            place,
            sum: Vec::new(),
            negs: Vec::new(),
        };
        if m > 1 {
            field.negs = (0..q).map(|a| field.neg(Elem(a)).0).collect();
            if q <= ADD_TABLE_MAX {
                field.sum = (0..q * q)
                    .map(|i| field.add(Elem(i / q), Elem(i % q)).0)
                    .collect();
            }
        }
        field
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// The primitive element every discrete log is taken against.
    pub fn theta(&self) -> Elem {
        self.theta
    }

    /// All `q` elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Element with the given encoding, if it is in range.
    pub fn elem(&self, index: u32) -> Option<Elem> {
        (index < self.q).then_some(Elem(index))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Option<Elem> {
        if coeffs.len() != self.spec.m as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return None;
        }
        Some(Elem(
            coeffs.iter().zip(&self.place).map(|(c, w)| c * w).sum(),
        ))
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.spec.m)
            .map(|_| {
                let c = v % self.spec.p;
                v /= self.spec.p;
                c
            })
            .collect()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        if !self.sum.is_empty() {
            return Elem(self.sum[(a.0 * self.q + b.0) as usize]);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0);
        for &w in &self.place {
            let s = x % p + y % p;
            out += if s >= p { s - p } else { s } * w;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.spec.p;
        if self.spec.m == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        if let Some(&n) = self.negs.get(a.0 as usize) {
            return Elem(n);
        }
        let (mut x, mut out) = (a.0, 0);
        for &w in &self.place {
            let c = x % p;
            out += if c == 0 { 0 } else { p - c } * w;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Elem(self.exp[s as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(Elem(
            self.exp[((order - self.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^k` with `x^0 = 1` (including `0^0`).
    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        let order = self.q as u64 - 1;
        let l = (self.log[x.0 as usize] as u64 % order) * (k % order) % order;
        Elem(self.exp[l as usize])
    }

    /// Discrete log to base `theta`, in `[0, q - 2]`.
    pub fn log(&self, x: Elem) -> Option<u32> {
        match self.log.get(x.0 as usize) {
            Some(&l) if l != NO_LOG => Some(l),
            _ => None,
        }
    }

    /// `theta^l`, for any `l`.
    pub fn exp(&self, l: u64) -> Elem {
        Elem(self.exp[(l % (self.q as u64 - 1)) as usize])
    }

    /// Additive form of the quadratic character: 0 for squares, 1 otherwise.
    pub fn phi(&self, x: Elem) -> Result<u8> {
        self.log(x)
            .map(|l| (l & 1) as u8)
            .ok_or(Error::ZeroArgument)
    }

    /// Quadratic character as `+1` / `-1`.
    pub fn eta(&self, x: Elem) -> Result<i8> {
        Ok(if self.phi(x)? == 0 { 1 } else { -1 })
    }

    /// Canonical square root: the root whose log lies in `[0, (q-1)/2)`.
    pub fn sqrt(&self, x: Elem) -> Option<Elem> {
        if x.0 == 0 {
            return Some(Elem::ZERO);
        }
        let l = self.log[x.0 as usize];
        (l % 2 == 0).then(|| Elem(self.exp[(l / 2) as usize]))
    }

    /// Human-readable form: the residue when `m = 1`, else `c0,c1,...`.
    pub fn format(&self, x: Elem) -> String {
        if self.spec.m == 1 {
            let mut s = String::new();
            let _ = write!(s, "{}", x.0);
            return s;
        }
        let mut s = String::new();
        for (i, c) in self.coeffs(x).into_iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s
    }

    pub fn parse(&self, s: &str) -> Option<Elem> {
        let coeffs: Option<Vec<u32>> = s.split(',').map(|c| c.trim().parse().ok()).collect();
        self.from_coeffs(&coeffs?)
    }
}

/// `a * b mod modulus` for coefficient vectors of length `m`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = a.len();
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for d in (m..2 * m - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        // x^m = -(modulus[0] + ... + modulus[m-1] x^{m-1})
        for k in 0..m {
            let sub = c * modulus[k] as u64 % p64;
            prod[d - m + k] = (prod[d - m + k] + p64 - sub) % p64;
        }
        prod[d] = 0;
    }
    prod.truncate(m);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_powmod(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let m = base.len();
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Coefficients of the `index`-th polynomial of degree < `m` in base-`p` order.
fn digits(mut index: u64, p: u32, m: usize) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = (index % p as u64) as u32;
            index /= p as u64;
            d
        })
        .collect()
}

/// True when the monic polynomial `divisor` divides the monic `poly`.
fn divides(divisor: &[u32], poly: &[u32], p: u32) -> bool {
    let p64 = p as u64;
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let d = divisor.len() - 1;
    for top in (d..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for k in 0..=d {
            let sub = c * divisor[k] as u64 % p64;
            rem[top - d + k] = (rem[top - d + k] + p64 - sub) % p64;
        }
    }
    rem[..d].iter().all(|&c| c == 0)
}

/// Irreducibility by trial division with every monic polynomial of degree
/// at most `m / 2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..(p as u64).pow(d as u32) {
            let mut cand = digits(low, p, d);
            cand.push(1);
            if divides(&cand, poly, p) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `m`, ordering candidates by
/// the base-`p` integer of their low coefficients.
fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    let m = m as usize;
    for low in 0..(p as u64).pow(m as u32) {
        let mut cand = digits(low, p, m);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Least element (by encoding) whose multiplicative order is `q - 1`.
fn least_primitive(p: u32, m: u32, modulus: &[u32], q: u64) -> Vec<u32> {
    let order = q - 1;
    let factors = arith::prime_factors(order);
    let m = m as usize;
    let mut one = vec![0u32; m];
    one[0] = 1;
    for x in 1..q {
        let cand = digits(x, p, m);
        let primitive = factors
            .iter()
            .all(|r| poly_powmod(&cand, order / r, modulus, p) != one);
        if primitive {
            return cand;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}
