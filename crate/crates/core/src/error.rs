use thiserror::Error;

use crate::family::Kind;

pub type Result<T, E = GfpError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfpError {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("{0}: the zero polynomial is not allowed here")]
    ZeroPolynomial(&'static str),

    #[error("Sylvester matrix of two constants is empty; use resultant() instead")]
    BothConstant,

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("unknown family {name:?}; valid names: {valid}")]
    UnknownFamily { name: String, valid: String },

    #[error("\"pell-lucas\" violates the Lucas-type side conditions; use \"pell-lucas-prime\" (Q_n / 2)")]
    UnprimedPellLucas,

    #[error("gcd(d, g) = {gcd}, expected 1")]
    NotCoprime { gcd: String },

    #[error("deg(d) = {deg_d} must exceed deg(g) = {deg_g}")]
    DegreeOrder { deg_d: usize, deg_g: usize },

    #[error("Lucas-type side condition violated: {0}")]
    LucasCondition(String),

    #[error("d must equal alpha * p1 (alpha = {alpha})")]
    DNotAlphaP1 { alpha: i64 },

    #[error("Fibonacci-type families start from p0 = 0, p1 = 1")]
    FibonacciInitialValues,

    #[error("expected a {expected} family, got {found} family {name:?}")]
    WrongKind {
        expected: Kind,
        found: Kind,
        name: String,
    },

    #[error("{fibonacci:?} and {lucas:?} are not a conjugate pair (d and g differ)")]
    NotConjugate { fibonacci: String, lucas: String },

    #[error("no known conjugate for family {0:?}")]
    NoConjugate(String),

    #[error("no closed form applies: {0}")]
    NoClosedForm(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division did not come out exact: {0}")]
    InexactDivision(String),
}
