use std::collections::HashMap;

use planarconst_exact::{RatInterval, Rational, Sign};

use crate::check::{check_exp_point, check_node, check_root_bracket, Rejection};
use crate::evidence::ExpBound;
use crate::file::{Argument, BoundCertificate, CertificateFile, Evidence, Subject};

/// Named enclosures of an accepted file, in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verified {
    pub enclosures: Vec<(String, RatInterval)>,
}

impl Verified {
    pub fn get(&self, name: &str) -> Option<&RatInterval> {
        self.enclosures
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
    }
}

/// Decodes and replays a certificate file.
pub fn verify_bytes(bytes: &[u8]) -> Result<Verified, Rejection> {
    let file = CertificateFile::from_bytes(bytes).map_err(|e| Rejection {
        path: "<input>".to_string(),
        reason: e.to_string(),
    })?;
    verify(&file)
}

/// Replays every certificate in order, then checks the digest. The first
/// failure is reported.
pub fn verify(file: &CertificateFile) -> Result<Verified, Rejection> {
    let mut known: HashMap<&str, RatInterval> = HashMap::new();
    let mut enclosures = Vec::with_capacity(file.certificates.len());
    for (i, cert) in file.certificates.iter().enumerate() {
        let path = format!("certificates[{i}]({})", cert.name);
        if known.contains_key(cert.name.as_str()) {
            return Err(Rejection {
                path,
                reason: "duplicate name".into(),
            });
        }
        let derived = replay(cert, &known, &path)?;
        if cert.claim.enclosure != derived {
            return Err(Rejection {
                path: format!("{path}/evidence/{}", evidence_kind(&cert.evidence)),
                reason: format!(
                    "claimed {} but the evidence yields {}",
                    cert.claim.enclosure, derived
                ),
            });
        }
        known.insert(&cert.name, derived.clone());
        enclosures.push((cert.name.clone(), derived));
    }
    if !file.digest_matches() {
        return Err(Rejection {
            path: "meta.digest".into(),
            reason: "content digest does not match".into(),
        });
    }
    Ok(Verified { enclosures })
}

fn evidence_kind(e: &Evidence) -> &'static str {
    match e {
        Evidence::Node(_) => "node",
        Evidence::RootBracket(_) => "root_bracket",
        Evidence::Aggregation(_) => "aggregation",
        Evidence::Exp(_) => "exp",
    }
}

fn lookup<'a>(
    known: &'a HashMap<&str, RatInterval>,
    name: &str,
    path: &str,
) -> Result<&'a RatInterval, Rejection> {
    known.get(name).ok_or_else(|| Rejection {
        path: path.to_string(),
        reason: format!("refers to {name:?}, which no earlier certificate defines"),
    })
}

fn replay(
    cert: &BoundCertificate,
    known: &HashMap<&str, RatInterval>,
    path: &str,
) -> Result<RatInterval, Rejection> {
    let mismatch = || Rejection {
        path: format!("{path}/evidence"),
        reason: "evidence kind does not fit the claim subject".into(),
    };
    match (&cert.claim.subject, &cert.evidence) {
        (Subject::Function { function, argument }, Evidence::Node(node)) => {
            let arg = match argument {
                Argument::Interval(iv) => iv.clone(),
                Argument::Named(name) => lookup(known, name, path)?.clone(),
            };
            check_node(&function.expr(), &arg, node, &format!("{path}/evidence/node"))?;
            Ok(node.value.clone())
        }
        (Subject::Root { function, target }, Evidence::RootBracket(rb)) => {
            let rpath = format!("{path}/evidence/root_bracket");
            if rb.function != *function || &rb.target != target {
                return Err(Rejection {
                    path: rpath,
                    reason: "bracket is for a different equation".into(),
                });
            }
            check_root_bracket(rb, &rpath)
        }
        (Subject::Sum { terms }, Evidence::Aggregation(agg)) => {
            let apath = format!("{path}/evidence/aggregation");
            if terms.is_empty() || agg.terms.len() != terms.len() {
                return Err(Rejection {
                    path: apath,
                    reason: "term count mismatch".into(),
                });
            }
            let mut acc = RatInterval::point(Rational::zero());
            for (i, (term, copy)) in terms.iter().zip(&agg.terms).enumerate() {
                let source = lookup(known, &term.name, &apath)?;
                if source != copy {
                    return Err(Rejection {
                        path: format!("{apath}/terms[{i}]"),
                        reason: format!("copy of {} differs from its certificate", term.name),
                    });
                }
                acc = match term.sign {
                    Sign::Positive => acc.add(source),
                    Sign::Negative => acc.sub(source),
                };
            }
            Ok(acc)
        }
        (Subject::Exp { sign, of }, Evidence::Exp(bound)) => {
            let epath = format!("{path}/evidence/exp");
            let x = lookup(known, of, &epath)?;
            let x = match sign {
                Sign::Positive => x.clone(),
                Sign::Negative => x.neg(),
            };
            replay_exp_bound(bound, &x, &epath)
        }
        _ => Err(mismatch()),
    }
}

fn replay_exp_bound(
    bound: &ExpBound,
    x: &RatInterval,
    path: &str,
) -> Result<RatInterval, Rejection> {
    for (p, end, name) in [
        (&bound.at_lo, x.lo(), "at_lo"),
        (&bound.at_hi, x.hi(), "at_hi"),
    ] {
        let ppath = format!("{path}/{name}");
        if &p.argument != end {
            return Err(Rejection {
                path: ppath,
                reason: format!("argument {} is not the endpoint {end}", p.argument),
            });
        }
        check_exp_point(p, &ppath)?;
    }
    RatInterval::new(
        bound.at_lo.enclosure.lo().clone(),
        bound.at_hi.enclosure.hi().clone(),
    )
    .map_err(|e| Rejection {
        path: path.to_string(),
        reason: e.to_string(),
    })
}
