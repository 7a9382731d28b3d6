use planarconst_exact::{RatInterval, Rational, Sign};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::evidence::{Aggregation, ExpBound, Node, RootBracket};
use crate::formula::FunctionId;

pub const SCHEMA: &str = "planarconst-certificate/1";

/// Parameters the producer ran with. Informational: the checker never needs
/// them, because every evidence record carries its own degrees and terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub width_budget: Rational,
    pub t0_width: Rational,
    pub exp_degree_positive: u32,
    pub exp_degree_negative: u32,
    pub max_depth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub schema: String,
    pub config: ConfigEcho,
    /// Hex SHA-256 of the compact encoding of `config` and `certificates`.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub meta: Meta,
    pub certificates: Vec<BoundCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub name: String,
    pub claim: Claim,
    pub evidence: Evidence,
}

/// "`subject` lies in `enclosure`".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub subject: Subject,
    pub enclosure: RatInterval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    /// Range of a function over an interval.
    Function {
        function: FunctionId,
        argument: Argument,
    },
    /// The unique solution of `function(t) = target`.
    Root {
        function: FunctionId,
        target: Rational,
    },
    /// Signed sum of earlier named quantities.
    Sum { terms: Vec<SignedName> },
    /// `exp(±x)` for an earlier named quantity `x`.
    Exp { sign: Sign, of: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Argument {
    Interval(RatInterval),
    /// The enclosure of an earlier certificate.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedName {
    pub sign: Sign,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Node(Node),
    RootBracket(RootBracket),
    Aggregation(Aggregation),
    Exp(ExpBound),
}

#[derive(Debug, thiserror::Error)]
pub enum DecodeError {
    #[error("certificate is not valid JSON for this schema: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {found:?}, expected {SCHEMA:?}")]
    Schema { found: String },
}

impl CertificateFile {
    /// Wraps certificates with metadata and a fresh digest.
    pub fn new(config: ConfigEcho, certificates: Vec<BoundCertificate>) -> CertificateFile {
        let digest = digest_of(&config, &certificates);
        CertificateFile {
            meta: Meta {
                schema: SCHEMA.to_string(),
                config,
                digest,
            },
            certificates,
        }
    }

    /// Canonical text: pretty-printed JSON with fixed field order, newline terminated.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("certificate serializes");
        out.push(b'\n');
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<CertificateFile, DecodeError> {
        let mut de = serde_json::Deserializer::from_slice(bytes);
        de.disable_recursion_limit();
        let file = CertificateFile::deserialize(&mut de)?;
        de.end()?;
        if file.meta.schema != SCHEMA {
            return Err(DecodeError::Schema {
                found: file.meta.schema,
            });
        }
        Ok(file)
    }

    pub fn digest_matches(&self) -> bool {
        digest_of(&self.meta.config, &self.certificates) == self.meta.digest
    }

    pub fn get(&self, name: &str) -> Option<&BoundCertificate> {
        self.certificates.iter().find(|c| c.name == name)
    }
}

pub fn digest_of(config: &ConfigEcho, certificates: &[BoundCertificate]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_vec(config).expect("config serializes"));
    hasher.update(serde_json::to_vec(certificates).expect("certificates serialize"));
    hex::encode(hasher.finalize())
}
