use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable x{index}: ring has {nvars} variables")]
    UnknownVariable { index: usize, nvars: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad field spec: {0}")]
    FieldSpec(String),
    #[error("ambient ring mismatch: {0}")]
    RingMismatch(String),
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("degree pattern mismatch: {0}")]
    DegreePattern(String),
    #[error("the six input polynomials have a common zero (ideal not irrelevant)")]
    CommonZero,
    #[error("f, g, h do not form a regular sequence: {0}")]
    NotRegularSequence(String),
    #[error("zero polynomial where a nonzero one is required: {0}")]
    ZeroPolynomial(String),
    #[error("resolution is not minimal")]
    NotMinimal,
    #[error("module is not finite length: {0}")]
    NotFiniteLength(String),
    #[error("unsupported ambient dimension n={0} (expected 4 or 5)")]
    UnsupportedAmbient(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
