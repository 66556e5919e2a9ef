use thiserror::Error;

/// Errors raised by the toolkit. Numeric payloads are reported as `f64`
/// regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coefficient at index {index}")]
    NonFiniteCoefficient { index: usize },

    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("invalid class parameters: {0}")]
    InvalidClass(String),

    #[error("coefficient index {index} is fixed by the class (first free index is {first_free})")]
    FixedIndex { index: usize, first_free: usize },

    #[error("inner series must vanish at the origin (c0 = {re} + {im}i)")]
    InnerNotCentered { re: f64, im: f64 },

    #[error("square root requires constant term 1 (c0 = {re} + {im}i)")]
    SqrtAnchor { re: f64, im: f64 },

    #[error("division by a series whose leading coefficient vanishes")]
    DivisionByZeroSeries,

    #[error("invalid map parameters: {0}")]
    InvalidMap(String),

    #[error("evaluation at the pole of the map (z = {re} + {im}i)")]
    Pole { re: f64, im: f64 },

    #[error("value {re} + {im}i is omitted by the map")]
    OmittedValue { re: f64, im: f64 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("contact precondition violated: |zeta0| = {modulus}")]
    NotOnBoundary { modulus: f64 },

    #[error("p(0) = {p0_re} + {p0_im}i differs from q(0) = {q0_re} + {q0_im}i")]
    NotComparable {
        p0_re: f64,
        p0_im: f64,
        q0_re: f64,
        q0_im: f64,
    },

    #[error("beta = {beta} exceeds |q'(0)| = {bound}")]
    BetaTooLarge { beta: f64, bound: f64 },

    #[error("normalization psi(q(0),0,0) = h(0) fails (difference {gap})")]
    Normalization { gap: f64 },

    #[error("no admissible n up to {limit}")]
    NoAdmissibleN { limit: usize },

    #[error("infimum of |psi| over the admissible set is zero")]
    ZeroSharpRadius,

    #[error("hypothesis screen failed: {0}")]
    HypothesisScreen(String),

    #[error("root not bracketed: g(lo) = {g_lo}, g(hi) = {g_hi}")]
    NotBracketed { g_lo: f64, g_hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
