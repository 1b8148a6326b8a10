use thiserror::Error;

/// Failures of the exact integer layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("input must be positive, got 0")]
    Zero,
    #[error("empty congruence list")]
    EmptyCongruences,
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("moduli {left} (index {i}) and {right} (index {j}) share the factor {gcd}")]
    NonCoprimeModuli {
        i: usize,
        j: usize,
        left: u128,
        right: u128,
        gcd: u128,
    },
}
