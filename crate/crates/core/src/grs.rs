//! Generalized Reed-Solomon codes on unions of cyclotomic classes, the
//! scaling vectors that make them self-dual, and the checks that certify
//! the result.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::binomial;
use crate::cyclotomy::Cyclotomy;
use crate::field::{Elem, Field};
use crate::matrix::{self, Matrix};
use crate::oracle;
use crate::{Error, Result};

/// Ordered, pairwise distinct evaluation points.
///
/// When built from cyclotomic classes the order is canonical: classes in
/// ascending index, each in ascending discrete log, zero last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationSet {
    e: Option<usize>,
    classes: Vec<usize>,
    include_zero: bool,
    elements: Vec<Elem>,
}

impl EvaluationSet {
    /// `S = ∪_{λ ∈ I} D_λ`, plus `0` when `include_zero`.
    pub fn from_classes(
        cyc: &Cyclotomy<'_>,
        classes: &[usize],
        include_zero: bool,
    ) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mut classes = classes.to_vec();
        classes.sort_unstable();
        classes.dedup();
        if let Some(&bad) = classes.iter().find(|&&c| c >= cyc.e()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                e: cyc.e(),
            });
        }
        let mut elements: Vec<Elem> = classes.iter().flat_map(|&c| cyc.class(c)).collect();
        if include_zero {
            elements.push(Elem::ZERO);
        }
        Ok(EvaluationSet {
            e: Some(cyc.e()),
            classes,
            include_zero,
            elements,
        })
    }

    /// An arbitrary set of distinct points, in the given order.
    pub fn from_elements(elements: Vec<Elem>) -> Result<Self> {
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement);
        }
        let include_zero = elements.contains(&Elem::ZERO);
        Ok(EvaluationSet {
            e: None,
            classes: Vec::new(),
            include_zero,
            elements,
        })
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The class order `e`, for class-built sets.
    pub fn e(&self) -> Option<usize> {
        self.e
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn include_zero(&self) -> bool {
        self.include_zero
    }

    /// `Δ_S(a) = Π_{b ∈ S, b ≠ a} (a - b)`.
    pub fn delta(&self, field: &Field, a: Elem) -> Result<Elem> {
        if !self.elements.contains(&a) {
            return Err(Error::NotInSet);
        }
        Ok(self.delta_unchecked(field, a))
    }

    fn delta_unchecked(&self, field: &Field, a: Elem) -> Elem {
        self.elements
            .iter()
            .filter(|&&b| b != a)
            .fold(Elem::ONE, |acc, &b| field.mul(acc, field.sub(a, b)))
    }

    /// `Δ_S(a_i)` for every point, in set order.
    pub fn deltas(&self, field: &Field) -> Vec<Elem> {
        self.elements
            .iter()
            .map(|&a| self.delta_unchecked(field, a))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CodeKind {
    Grs,
    Egrs,
}

impl CodeKind {
    pub fn name(self) -> &'static str {
        match self {
            CodeKind::Grs => "grs",
            CodeKind::Egrs => "egrs",
        }
    }
}

/// A (possibly extended) GRS code: evaluation set, column multipliers,
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeInstance {
    pub set: EvaluationSet,
    pub v: Vec<Elem>,
    pub k: usize,
    pub kind: CodeKind,
}

impl CodeInstance {
    pub fn new(set: EvaluationSet, v: Vec<Elem>, k: usize, kind: CodeKind) -> Result<Self> {
        if v.len() != set.len() {
            return Err(Error::Invariant(
                "scaling vector length differs from set size",
            ));
        }
        if v.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroArgument);
        }
        let n = set.len();
        let ok = match kind {
            CodeKind::Grs => (1..n).contains(&k),
            CodeKind::Egrs => (1..=n).contains(&k),
        };
        if !ok {
            return Err(Error::DimensionMismatch { rows: k, cols: n });
        }
        Ok(CodeInstance { set, v, k, kind })
    }

    /// The self-dual code of the given kind on `set`, i.e. dimension half
    /// the length.
    pub fn self_dual(field: &Field, set: EvaluationSet, kind: CodeKind) -> Result<Self> {
        let v = match kind {
            CodeKind::Grs => solve_scaling_grs(field, &set)?,
            CodeKind::Egrs => solve_scaling_egrs(field, &set)?,
        };
        let k = (set.len() + (kind == CodeKind::Egrs) as usize) / 2;
        CodeInstance::new(set, v, k, kind)
    }

    pub fn length(&self) -> usize {
        self.set.len() + (self.kind == CodeKind::Egrs) as usize
    }
}

/// Scaling vector making `GRS_{n/2}(S, v)` self-dual, if one exists.
///
/// With `u_i = Δ_S(a_i)^{-1}` all in one square class `λ F_q^{*2}`, the
/// choice `v_i^2 = λ u_i` works because `Σ u_i a_i^j = 0` for `j <= n - 2`.
pub fn solve_scaling_grs(field: &Field, set: &EvaluationSet) -> Result<Vec<Elem>> {
    let n = set.len();
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    let u = inverse_deltas(field, set)?;
    let class = field.phi(u[0])?;
    for &x in &u {
        if field.phi(x)? != class {
            return Err(Error::Infeasible);
        }
    }
    let lambda = if class == 0 { Elem::ONE } else { field.theta() };
    let v = u
        .iter()
        .map(|&x| {
            field
                .sqrt(field.mul(lambda, x))
                .ok_or(Error::Invariant("no square root"))
        })
        .collect::<Result<Vec<_>>>()?;
    let sums = power_sums(field, set.elements(), &v);
    if sums[..n - 1].iter().any(|s| !s.is_zero()) {
        return Err(Error::Invariant("GRS interpolation identity fails"));
    }
    Ok(v)
}

/// Scaling vector making `EGRS_{(n+1)/2}(S, v)` self-dual, if one exists.
///
/// Needs `-Δ_S(a)` to be a square for every `a`; then `v_i^2 = -Δ_S(a_i)^{-1}`.
pub fn solve_scaling_egrs(field: &Field, set: &EvaluationSet) -> Result<Vec<Elem>> {
    let n = set.len();
    if n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    let u = inverse_deltas(field, set)?;
    let mut v = Vec::with_capacity(n);
    for &x in &u {
        let w = field.neg(x);
        if field.phi(w)? != 0 {
            return Err(Error::Infeasible);
        }
        v.push(field.sqrt(w).ok_or(Error::Invariant("no square root"))?);
    }
    let sums = power_sums(field, set.elements(), &v);
    let minus_one = field.neg(Elem::ONE);
    if sums[..n - 1].iter().any(|s| !s.is_zero()) || sums[n - 1] != minus_one {
        return Err(Error::Invariant("EGRS interpolation identity fails"));
    }
    Ok(v)
}

fn inverse_deltas(field: &Field, set: &EvaluationSet) -> Result<Vec<Elem>> {
    if set.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    set.deltas(field)
        .into_iter()
        .map(|d| field.inv(d))
        .collect()
}

/// `Σ_i v_i^2 a_i^j` for `0 <= j < n`.
pub fn power_sums(field: &Field, points: &[Elem], v: &[Elem]) -> Vec<Elem> {
    let n = points.len();
    let mut sums = vec![Elem::ZERO; n];
    for (&a, &vi) in points.iter().zip(v) {
        let mut term = field.mul(vi, vi);
        for s in sums.iter_mut() {
            *s = field.add(*s, term);
            term = field.mul(term, a);
        }
    }
    sums
}

/// Row `r` holds `v_i a_i^r`; the extended code appends the coefficient of
/// `x^{k-1}` in `x^r`, which is 1 only in the last row.
pub fn generator_matrix(field: &Field, code: &CodeInstance) -> Matrix {
    let n = code.set.len();
    let cols = code.length();
    let mut g = Matrix::zeros(code.k, cols);
    for (i, (&a, &vi)) in code.set.elements().iter().zip(&code.v).enumerate() {
        let mut x = vi;
        for r in 0..code.k {
            g.set(r, i, x);
            x = field.mul(x, a);
        }
    }
    if code.kind == CodeKind::Egrs {
        g.set(code.k - 1, n, Elem::ONE);
    }
    g
}

/// `G Gᵀ = 0` for a `k x 2k` generator of rank `k`.
pub fn check_self_dual(field: &Field, g: &Matrix) -> Result<bool> {
    if g.cols() != 2 * g.rows() {
        return Err(Error::DimensionMismatch {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    Ok(g.gram(field).is_zero())
}

/// How the MDS property is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdsMethod {
    /// Minimum weight over all `q^k` codewords.
    Exhaustive,
    /// Every `k`-column minor is nonsingular.
    AllMinors,
    /// `count` random `k`-column minors. A necessary condition only.
    SampledMinors { count: u64, seed: u64 },
}

impl MdsMethod {
    pub fn is_proof(self) -> bool {
        !matches!(self, MdsMethod::SampledMinors { .. })
    }
}

/// Work caps for the MDS checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MdsBudget {
    pub max_minors: u128,
    pub max_codewords: u128,
    pub samples: u64,
}

impl Default for MdsBudget {
    fn default() -> Self {
        MdsBudget {
            max_minors: 1_000_000,
            max_codewords: 10_000_000,
            samples: 10_000,
        }
    }
}

impl MdsBudget {
    /// All minors when there are at most `max_minors` of them, otherwise
    /// sampled minors.
    pub fn choose(&self, n: usize, k: usize, seed: u64) -> MdsMethod {
        if binomial(n as u64, k as u64) <= self.max_minors {
            MdsMethod::AllMinors
        } else {
            MdsMethod::SampledMinors {
                count: self.samples,
                seed,
            }
        }
    }
}

pub fn check_mds(field: &Field, g: &Matrix, method: MdsMethod, budget: &MdsBudget) -> Result<bool> {
    let (k, n) = (g.rows(), g.cols());
    match method {
        MdsMethod::AllMinors => {
            let work = binomial(n as u64, k as u64);
            if work > budget.max_minors {
                return Err(Error::BudgetExceeded {
                    work,
                    budget: budget.max_minors,
                });
            }
            Ok(matrix::all_minors_nonsingular(field, g))
        }
        MdsMethod::Exhaustive => {
            let d = oracle::min_distance(field, g, budget.max_codewords)?;
            Ok(d == n - k + 1)
        }
        MdsMethod::SampledMinors { count, seed } => {
            if count > budget.samples {
                return Err(Error::BudgetExceeded {
                    work: count as u128,
                    budget: budget.samples as u128,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let mut cols = index::sample(&mut rng, n, k).into_vec();
                cols.sort_unstable();
                if !matrix::columns_independent(field, g, &cols) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MdsVerdict {
    pub method: MdsMethod,
    pub result: bool,
}

/// A concrete code together with the outcome of its checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCertificate {
    pub code: CodeInstance,
    pub generator: Matrix,
    pub self_dual: bool,
    pub mds: MdsVerdict,
}

impl SelfDualCertificate {
    /// Builds the generator and runs both checks.
    pub fn certify(
        field: &Field,
        code: CodeInstance,
        method: MdsMethod,
        budget: &MdsBudget,
    ) -> Result<Self> {
        let generator = generator_matrix(field, &code);
        let self_dual = check_self_dual(field, &generator)?;
        let result = check_mds(field, &generator, method, budget)?;
        Ok(SelfDualCertificate {
            code,
            generator,
            self_dual,
            mds: MdsVerdict { method, result },
        })
    }

    /// Solves for `v` on `set` and certifies the resulting self-dual code,
    /// choosing the MDS method from the budget.
    pub fn construct(
        field: &Field,
        set: EvaluationSet,
        kind: CodeKind,
        budget: &MdsBudget,
        seed: u64,
    ) -> Result<Self> {
        let code = CodeInstance::self_dual(field, set, kind)?;
        let method = budget.choose(code.length(), code.k, seed);
        SelfDualCertificate::certify(field, code, method, budget)
    }

    pub fn verified(&self) -> bool {
        self.self_dual && self.mds.result
    }
}
