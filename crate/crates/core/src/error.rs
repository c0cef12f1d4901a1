use thiserror::Error;

/// Errors raised by the set, crystal and Fock-space operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("residue {residue} out of range for n={n}")]
    ResidueOutOfRange { residue: u32, n: u32 },
    #[error("sets have different moduli ({left} vs {right})")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("sets have different orders ({left} vs {right})")]
    OrderMismatch { left: i64, right: i64 },
    #[error("set is not n-bounded")]
    NotBounded,
    #[error("set is already n-stable")]
    AlreadyStable,
    #[error("set is not n-stable")]
    NotStable,
    #[error("word {0} is not reduced on the highest-weight set")]
    NotReduced(String),
    #[error("partition is not weakly decreasing")]
    NonMonotonePartition,
    #[error("operator E'({p},{q}) requires p < q")]
    InvalidOperator { p: i64, q: i64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("divided power left a non-integral coefficient")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
