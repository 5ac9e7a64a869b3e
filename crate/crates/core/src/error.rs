use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    Trace(f64),
    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("invalid probability distribution: {0}")]
    Distribution(String),
    #[error("parameter {name} = {value} outside {domain}")]
    Parameter {
        name: String,
        value: f64,
        domain: &'static str,
    },
    #[error("state vector has zero norm")]
    ZeroNorm,
    #[error("cannot parse state `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("invalid optimizer config: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Parameter {
            name: name.to_string(),
            value,
            domain: "[0, 1]",
        })
    }
}
