use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan specification: {0}")]
    InvalidCartanSpec(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Weyl group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: u128, bound: u128 },

    #[error("Weyl orbit of mu exceeds the bound {bound}")]
    OrbitTooLarge { bound: usize },

    #[error("cocharacter is not dominant: <alpha_{index}, mu> = {value}")]
    NotDominant { index: usize, value: String },

    #[error("the Galois action does not fix mu")]
    MuNotGaloisStable,

    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("Galois action does not preserve lengths on an orbit of Kostant representatives")]
    LengthNotPreserved,

    #[error("Newton vectors live in different frames or have different lengths")]
    FrameMismatch,

    #[error("invalid Newton vector: {0}")]
    InvalidNewtonVector(String),

    #[error("Newton vector is not basic")]
    NotBasic,

    #[error("invalid mu: {0}")]
    InvalidMu(String),

    #[error("slope denominator {denominator} does not divide n = {n}")]
    DenominatorNotDividing { denominator: String, n: usize },

    #[error("empty period domain: {0}")]
    EmptyPeriodDomain(String),

    #[error("Galois action incompatible with the datum: {0}")]
    GaloisIncompatible(String),

    #[error("relative coweights are not dual to the relative simple roots: {0}")]
    DualBasisViolation(String),

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("orbit members disagree on I_[w] (orbit {orbit})")]
    OrbitInconsistency { orbit: usize },

    #[error("subset is not contained in the relative simple roots (size {size})")]
    BadSubset { size: usize },

    #[error("stratum index {index} outside 1..={max}")]
    BadIndex { index: usize, max: usize },

    #[error("p = 2 is not supported: the unit group of Q_2 has a different structure")]
    EvenPrimeUnsupported,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unknown Tits index {0:?}")]
    UnknownIndex(String),
}
