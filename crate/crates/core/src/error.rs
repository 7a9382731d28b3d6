use planarconst_cert::Rejection;
use planarconst_exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{function} is undefined at {argument}: {reason}")]
    Domain {
        function: &'static str,
        argument: String,
        reason: &'static str,
    },
    #[error("pole: {factor} vanishes")]
    Pole { factor: String },
    #[error("sign of {polynomial} on {interval} not determined{detail}")]
    Indeterminate {
        polynomial: String,
        interval: String,
        detail: String,
    },
    #[error("no monotonicity argument applies to {expr}")]
    NotMonotone { expr: String },
    #[error("{expr} is not a polynomial")]
    NotPolynomial { expr: String },
    #[error("values at {seed} do not straddle {target}")]
    NoSignChange { seed: String, target: String },
    #[error("enclosure at {point} straddles {target} even at exp degree {degree}; raise the degree or budget")]
    Precision {
        point: String,
        target: String,
        degree: u32,
    },
    #[error("configuration: {0}")]
    Config(String),
    #[error("self-check failed: {0}")]
    Certificate(Rejection),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
