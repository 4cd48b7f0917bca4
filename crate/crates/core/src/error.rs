use thiserror::Error;

/// Every failure the library can report. Variants mirror the contract errors of
/// the individual modules so callers can match on them directly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // base rings
    #[error("operands live in different rings: {0}")]
    MixedRings(String),
    #[error("{0} is not a unit")]
    DivisionByNonUnit(String),
    #[error("empty coefficient list")]
    EmptyList,
    #[error("ring {0} is not semi-local")]
    NotSemiLocal(String),
    #[error("factorization failed: {0}")]
    FactorizationFailure(String),
    #[error("unsupported residue field: {0}")]
    UnsupportedResidueField(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    // polynomials
    #[error("polynomial contexts do not match: {0}")]
    ContextMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution targets incompatible domain: {0}")]
    DomainIncompatible(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("total degree {found} exceeds the guardrail {limit}")]
    DegreeGuardExceeded { found: u32, limit: u32 },

    // groebner
    #[error("coefficients of {0} do not form a field")]
    NonFieldCoefficients(String),
    #[error("generator is not homogeneous: {0}")]
    NotHomogeneous(String),

    // transcendental extensions
    #[error("elements of different extensions: {0}")]
    MixedExtensions(String),
    #[error("element is not a unit of the extension")]
    NonUnitInverse,
    #[error("quotient ring outside the supported universe: {0}")]
    UnsupportedQuotient(String),
    #[error("denominator became inadmissible after reduction (internal invariant violated)")]
    InadmissibleAfterReduction,
    #[error("input polynomial is not admissible: {0}")]
    InadmissibleInput(String),
    #[error("unsupported fiber target: {0}")]
    UnsupportedTarget(String),
    #[error("chart function is not admissible: {0}")]
    InadmissibleChartFunction(String),

    // bertini
    #[error("forms are not homogeneous of one common degree: {0}")]
    InhomogeneousForms(String),
    #[error("hyperplane coefficients do not generate the unit ideal")]
    NonFlatHyperplane,
    #[error("chart {0} is empty")]
    ChartEmpty(usize),
    #[error("unsupported base ring: {0}")]
    UnsupportedBase(String),
    #[error("base ring is not a field: {0}")]
    NonFieldBase(String),

    // regularity
    #[error("unsupported codimension: {0}")]
    UnsupportedCodimension(String),
    #[error("fiberwise certificate requires a properness assertion")]
    NonProperWithoutFlag,
    #[error("hyperplane enumeration too large: {0} members")]
    EnumerationTooLarge(u128),
    #[error("input is outside the supported family: {0}")]
    WrongFamily(String),
    #[error("bad local parameters: {0}")]
    BadParameters(String),

    // input language
    #[error("syntax error at {line}:{col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("arity error: {0}")]
    ArityError(String),
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
