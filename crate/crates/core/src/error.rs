use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("not in SO+({p},{q}): {reason}")]
    Membership { p: usize, q: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("factor kind not tabulated for this signature: {0}")]
    FactorNotTabulated(String),

    #[error("genericity failure: MM^rev scalar part {0:.3e}")]
    Genericity(f64),

    #[error("no cataloged one-vector basis for signature ({0},{1})")]
    NotCataloged(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("singular matrix")]
    Singular,
}
