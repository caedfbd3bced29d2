use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the library can report.
///
/// `Infeasible` is a legitimate negative answer (the self-duality criterion
/// does not hold), not a fault. `Invariant` signals an internal bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotAPrime(u64),
    EvenCharacteristic,
    ZeroDegree,
    CapExceeded { size: u64, cap: u64 },
    DivisionByZero,
    ZeroArgument,
    BadE { e: usize, q: u64 },
    WrongE { expected: usize, got: usize },
    IndexOutOfRange { index: usize, e: usize },
    NoDecomposition(u64),
    SignResolutionFailure,
    NotSemiprimitive,
    EmptyIndexSet,
    DuplicateElement,
    NotInSet,
    OddLength(usize),
    EvenLength(usize),
    Infeasible,
    DimensionMismatch { rows: usize, cols: usize },
    BudgetExceeded { work: u128, budget: u128 },
    Invariant(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAPrime(p) => write!(f, "{p} is not a prime"),
            Error::EvenCharacteristic => write!(f, "characteristic must be an odd prime"),
            Error::ZeroDegree => write!(f, "extension degree must be at least 1"),
            Error::CapExceeded { size, cap } => {
                write!(f, "size {size} exceeds the configured cap {cap}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroArgument => write!(f, "argument must be nonzero"),
            Error::BadE { e, q } => {
                write!(
                    f,
                    "e = {e} must be even, at least 2, and divide q - 1 = {}",
                    q - 1
                )
            }
            Error::WrongE { expected, got } => {
                write!(f, "closed form needs e = {expected}, got e = {got}")
            }
            Error::IndexOutOfRange { index, e } => {
                write!(f, "class index {index} out of range for e = {e}")
            }
            Error::NoDecomposition(q) => write!(f, "{q} has no representation s^2 + 4t^2"),
            Error::SignResolutionFailure => {
                write!(
                    f,
                    "neither sign of t reproduces the counted cyclotomic numbers"
                )
            }
            Error::NotSemiprimitive => write!(f, "parameters are not semiprimitive"),
            Error::EmptyIndexSet => write!(f, "index set must be nonempty"),
            Error::DuplicateElement => write!(f, "evaluation points must be distinct"),
            Error::NotInSet => write!(f, "element is not in the evaluation set"),
            Error::OddLength(n) => write!(f, "GRS construction needs an even set size, got {n}"),
            Error::EvenLength(n) => write!(f, "EGRS construction needs an odd set size, got {n}"),
            Error::Infeasible => write!(f, "criterion fails: phi values differ"),
            Error::DimensionMismatch { rows, cols } => {
                write!(
                    f,
                    "self-dual check needs a k x 2k matrix, got {rows} x {cols}"
                )
            }
            Error::BudgetExceeded { work, budget } => {
                write!(f, "work {work} exceeds budget {budget}")
            }
            Error::Invariant(what) => write!(f, "internal invariant violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
