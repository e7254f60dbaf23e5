use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?} (expected p or p/q)")]
    ParseRational(String),
    #[error("square root of a negative integer")]
    NegativeSqrt,
    #[error("{0} is not the square of a rational")]
    NotASquare(String),

    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("operation is undefined at the identity")]
    AtIdentity,
    #[error("curve does not have split rational 2-torsion")]
    NotSplit,

    #[error("invalid triple element: {0}")]
    InvalidElement(String),
    #[error("not a Diophantine triple: {left}*{right}+1 = {value} is not a square")]
    NotATriple {
        left: String,
        right: String,
        value: String,
    },

    #[error("degenerate family parameter: {0}")]
    FamilyDegenerate(String),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("exceptional point for the quartic map")]
    ExceptionalPoint,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
