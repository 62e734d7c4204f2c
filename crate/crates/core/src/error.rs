use crate::poly::IntPolynomial;
use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("defining polynomial {0} is not monic")]
    NotMonic(IntPolynomial),
    #[error("defining polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("defining polynomial has degree {0}, above the supported maximum of 8")]
    DegreeTooLarge(usize),
    #[error("defining polynomial {poly} is reducible; factor {factor}")]
    Reducible {
        poly: IntPolynomial,
        factor: IntPolynomial,
    },
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field {0} is not a supported Galois family")]
    UnsupportedFamily(IntPolynomial),
    #[error("invalid field embedding: {0}")]
    InvalidEmbedding(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {prime} divides the index of Z[theta] in the ring of integers of Q[x]/({poly})")]
    NonMaximalOrderAtP { prime: u64, poly: IntPolynomial },
    #[error("the zero element has no valuation")]
    ZeroElement,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("p-adic precision exceeded the cap of {0} digits")]
    PrecisionOverflow(u32),
    #[error("prime factor too large to handle: {0}")]
    FactorizationTooLarge(String),
    #[error("no place with index {index} above {prime}")]
    PlaceNotFound { prime: u64, index: usize },
    #[error("place does not belong to the given field")]
    PlaceFieldMismatch,
    #[error("no common overfield registered for the map's base field and the query field")]
    NoCommonOverfield,
    #[error("place ({prime}, {index}) occurs twice in the table")]
    DuplicatePlace { prime: u64, index: usize },
    #[error("search exhausted at bound {0}")]
    SearchExhausted(u64),
    #[error("discriminant {0} is not fundamental")]
    NotFundamental(i64),
    #[error("discriminant {0} is not negative")]
    NotNegative(i64),
    #[error("no completely split place found below bound {0}")]
    SplitPlaceNotFound(u64),
    #[error("field {0} is not Galois over Q (or its automorphisms are unsupported)")]
    NotGalois(IntPolynomial),
    #[error("step {step} of the chain has a single place above each place over {prime}")]
    NoSplittingStep { step: usize, prime: u64 },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("tables violate the ascent identity at level {level}, place ({prime}, {index}): {lhs} != {rhs}")]
    AscendViolation {
        level: usize,
        prime: u64,
        index: usize,
        lhs: Rational,
        rhs: Rational,
    },
    #[error("invalid perturbation scheme: {0}")]
    InvalidScheme(String),
    #[error("f({0}) = 0 inside the summation range")]
    ZeroValueInRange(u64),
    #[error("weight at the distinguished prime {0} must be nonzero")]
    ZeroWeight(u64),
    #[error("{0} is not integral")]
    NonIntegralPolynomial(String),
    #[error("argument {value} exceeds the limit {limit}")]
    ArgumentTooLarge { value: u64, limit: u64 },
    #[error("probe set is empty")]
    EmptyProbeSet,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors caused by malformed input rather than by an unsupported
    /// mathematical situation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::NonIntegralPolynomial(_)
                | Error::NotMonic(_)
                | Error::DegreeTooSmall
                | Error::DegreeTooLarge(_)
                | Error::Reducible { .. }
                | Error::InvalidEmbedding(_)
                | Error::DuplicatePlace { .. }
                | Error::AscendViolation { .. }
                | Error::InvalidScheme(_)
                | Error::InvalidChain(_)
        )
    }
}
