//! JSON certificates for well-connectedness checks and arrow verdicts, and
//! their re-verification.
//!
//! Verification does not reuse the code that produced a certificate: witness
//! paths are re-walked against `eval`, refutations are re-checked with a
//! separate search over the listed domain, counterexamples go through
//! [`verify_counterexample`], and a `holds` verdict is re-decided with the
//! other engine.

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrows::{
    decide_arrow, verify_counterexample, ArrowError, ArrowQuery, ArrowVerdict, Engine, WitnessStats,
};
use crate::colorings::{load_coloring, save_coloring, ColorValue, Coloring, FileError};
use crate::ordinal::{DomainError, Ordinal, OrdinalDomain};
use crate::wellconn::{WcCertificate, WcOutcome};

pub const TOOL_VERSION: &str = concat!("arrowlab ", env!("CARGO_PKG_VERSION"));

/// Paths in a certificate may use any vertex of its `domain`. For colorings
/// generated over ordinals the domain is a finite sample, so a refutation
/// carries over to the full domain and a witness need not.
pub const AMBIENT_NOTE: &str = "paths range over the listed domain only";

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("embedded coloring: {0}")]
    Coloring(#[from] FileError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Arrow(#[from] ArrowError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringRef {
    /// The coloring file text.
    Inline(String),
    /// Path to a coloring file, relative to the certificate's directory.
    File(String),
}

impl ColoringRef {
    pub fn inline(c: &Coloring) -> Result<Self, FileError> {
        Ok(ColoringRef::Inline(save_coloring(c)?))
    }

    pub fn resolve(&self, base: &Path) -> Result<Coloring, CertificateError> {
        let text = match self {
            ColoringRef::Inline(t) => t.clone(),
            ColoringRef::File(p) => {
                let path = base.join(p);
                std::fs::read_to_string(&path).map_err(|source| CertificateError::Io {
                    path: path.display().to_string(),
                    source,
                })?
            }
        };
        Ok(load_coloring(&text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub nodes: u64,
    pub prunes: u64,
    pub leaves: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    #[serde(rename = "wc-witness")]
    WcWitness {
        #[serde(rename = "tool-version")]
        tool_version: String,
        color: ColorValue,
        domain: Vec<Ordinal>,
        ambient: String,
        coloring: ColoringRef,
        witness: Vec<Ordinal>,
        paths: Vec<Vec<Ordinal>>,
    },
    #[serde(rename = "wc-refutation")]
    WcRefutation {
        #[serde(rename = "tool-version")]
        tool_version: String,
        color: ColorValue,
        domain: Vec<Ordinal>,
        ambient: String,
        coloring: ColoringRef,
        witness: Vec<Ordinal>,
        #[serde(rename = "failing-pair")]
        failing_pair: (Ordinal, Ordinal),
        reachable: Vec<Ordinal>,
    },
    #[serde(rename = "arrow-verdict")]
    ArrowVerdict {
        #[serde(rename = "tool-version")]
        tool_version: String,
        query: ArrowQuery,
        holds: bool,
        counterexample: Option<ColoringRef>,
        #[serde(rename = "witness-stats")]
        witness_stats: WitnessStats,
        search: SearchSummary,
    },
}

impl Certificate {
    pub fn from_wc(cert: &WcCertificate, domain: &OrdinalDomain, coloring: ColoringRef) -> Self {
        let tool_version = TOOL_VERSION.to_string();
        let ambient = AMBIENT_NOTE.to_string();
        match &cert.outcome {
            WcOutcome::Witness { paths } => Certificate::WcWitness {
                tool_version,
                color: cert.color,
                domain: domain.elements(),
                ambient,
                coloring,
                witness: cert.witness.clone(),
                paths: paths.iter().map(|p| p.vertices.clone()).collect(),
            },
            WcOutcome::Refutation { pair, reachable } => Certificate::WcRefutation {
                tool_version,
                color: cert.color,
                domain: domain.elements(),
                ambient,
                coloring,
                witness: cert.witness.clone(),
                failing_pair: pair.clone(),
                reachable: reachable.clone(),
            },
        }
    }

    pub fn from_verdict(v: &ArrowVerdict, counterexample: Option<ColoringRef>) -> Self {
        Certificate::ArrowVerdict {
            tool_version: TOOL_VERSION.to_string(),
            query: v.query,
            holds: v.holds,
            counterexample,
            witness_stats: v.witness_stats.clone(),
            search: SearchSummary {
                nodes: v.stats.nodes,
                prunes: v.stats.prunes,
                leaves: v.stats.leaves,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::WcWitness { .. } => "wc-witness",
            Certificate::WcRefutation { .. } => "wc-refutation",
            Certificate::ArrowVerdict { .. } => "arrow-verdict",
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Outcome of re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub detail: String,
}

impl Verification {
    fn pass(detail: impl Into<String>) -> Self {
        Verification {
            ok: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verification {
            ok: false,
            detail: detail.into(),
        }
    }
}

/// Re-checks a certificate. `base` resolves file references.
pub fn verify(cert: &Certificate, base: &Path) -> Result<Verification, CertificateError> {
    match cert {
        Certificate::WcWitness {
            color,
            domain,
            coloring,
            witness,
            paths,
            ..
        } => {
            let c = coloring.resolve(base)?;
            Ok(verify_witness(&c, *color, domain, witness, paths))
        }
        Certificate::WcRefutation {
            color,
            domain,
            coloring,
            witness,
            failing_pair,
            reachable,
            ..
        } => {
            let c = coloring.resolve(base)?;
            Ok(verify_refutation(
                &c,
                *color,
                domain,
                witness,
                failing_pair,
                reachable,
            ))
        }
        Certificate::ArrowVerdict {
            query,
            holds,
            counterexample,
            ..
        } => verify_verdict(query, *holds, counterexample.as_ref(), base),
    }
}

fn domain_problem(c: &Coloring, domain: &[Ordinal], witness: &[Ordinal]) -> Option<String> {
    if domain.windows(2).any(|w| w[0] >= w[1]) {
        return Some("domain is not strictly increasing".into());
    }
    if let Some(a) = domain.iter().find(|a| !c.domain().contains(a)) {
        return Some(format!("domain element {a} is outside the coloring"));
    }
    if witness.is_empty() {
        return Some("empty witness set".into());
    }
    if witness.windows(2).any(|w| w[0] >= w[1]) {
        return Some("witness is not strictly increasing".into());
    }
    if let Some(a) = witness.iter().find(|a| domain.binary_search(a).is_err()) {
        return Some(format!("witness element {a} is outside the domain"));
    }
    None
}

fn verify_witness(
    c: &Coloring,
    color: ColorValue,
    domain: &[Ordinal],
    witness: &[Ordinal],
    paths: &[Vec<Ordinal>],
) -> Verification {
    if let Some(p) = domain_problem(c, domain, witness) {
        return Verification::fail(p);
    }
    let mut pairs = Vec::new();
    for (k, a) in witness.iter().enumerate() {
        for b in &witness[k + 1..] {
            pairs.push((a, b));
        }
    }
    if pairs.len() != paths.len() {
        return Verification::fail(format!("{} pairs but {} paths", pairs.len(), paths.len()));
    }
    for ((a, b), path) in pairs.into_iter().zip(paths) {
        if path.first() != Some(a) || path.last() != Some(b) {
            return Verification::fail(format!("path for ({a}, {b}) has the wrong endpoints"));
        }
        let distinct: BTreeSet<&Ordinal> = path.iter().collect();
        if distinct.len() != path.len() {
            return Verification::fail(format!("path for ({a}, {b}) repeats a vertex"));
        }
        if let Some(v) = path
            .iter()
            .find(|v| *v < a || domain.binary_search(v).is_err())
        {
            return Verification::fail(format!(
                "path for ({a}, {b}) leaves the domain above {a} at {v}"
            ));
        }
        for step in path.windows(2) {
            match c.eval(&step[0], &step[1]) {
                Ok(got) if got == color => {}
                Ok(got) => {
                    return Verification::fail(format!(
                        "edge ({}, {}) has color {got}, not {color}",
                        step[0], step[1]
                    ))
                }
                Err(e) => return Verification::fail(e.to_string()),
            }
        }
    }
    Verification::pass(format!("{} paths re-walked in color {color}", paths.len()))
}

// Everything reachable from `a` in color `color` through domain vertices ≥ a.
fn suffix_closure(
    c: &Coloring,
    color: ColorValue,
    domain: &[Ordinal],
    a: &Ordinal,
) -> BTreeSet<Ordinal> {
    let above: Vec<&Ordinal> = domain.iter().filter(|v| *v >= a).collect();
    let mut seen: BTreeSet<Ordinal> = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(v) = queue.pop_front() {
        for &w in &above {
            if !seen.contains(w) && c.eval(&v, w).is_ok_and(|x| x == color) {
                seen.insert(w.clone());
                queue.push_back(w.clone());
            }
        }
    }
    seen
}

fn verify_refutation(
    c: &Coloring,
    color: ColorValue,
    domain: &[Ordinal],
    witness: &[Ordinal],
    pair: &(Ordinal, Ordinal),
    reachable: &[Ordinal],
) -> Verification {
    if let Some(p) = domain_problem(c, domain, witness) {
        return Verification::fail(p);
    }
    let (a, b) = pair;
    if a >= b || witness.binary_search(a).is_err() || witness.binary_search(b).is_err() {
        return Verification::fail("failing pair is not an increasing pair of the witness set");
    }
    let closure = suffix_closure(c, color, domain, a);
    if closure.contains(b) {
        return Verification::fail(format!("{b} is reachable from {a} above {a}"));
    }
    let recorded: BTreeSet<Ordinal> = reachable.iter().cloned().collect();
    if recorded != closure {
        return Verification::fail("recorded reachable set differs from the recomputed one");
    }
    // Every lexicographically smaller pair must be connected.
    for (k, x) in witness.iter().enumerate() {
        let reach = suffix_closure(c, color, domain, x);
        for y in &witness[k + 1..] {
            if (x, y) >= (a, b) {
                break;
            }
            if !reach.contains(y) {
                return Verification::fail(format!(
                    "({x}, {y}) fails earlier than the recorded pair"
                ));
            }
        }
    }
    Verification::pass(format!("no color-{color} path from {a} to {b} above {a}"))
}

fn verify_verdict(
    query: &ArrowQuery,
    holds: bool,
    counterexample: Option<&ColoringRef>,
    base: &Path,
) -> Result<Verification, CertificateError> {
    if !holds {
        let Some(r) = counterexample else {
            return Ok(Verification::fail(
                "failing verdict without a counterexample",
            ));
        };
        let c = r.resolve(base)?;
        if c.len() != query.n || c.arity().finite() != Some(query.colors as u64) || !c.is_dense() {
            return Ok(Verification::fail(
                "counterexample does not match the query",
            ));
        }
        return Ok(if verify_counterexample(&c, query.m, query.kind)? {
            Verification::pass(format!(
                "counterexample has no size-{} {} witness",
                query.m, query.kind
            ))
        } else {
            Verification::fail(format!(
                "counterexample has a size-{} {} witness",
                query.m, query.kind
            ))
        });
    }
    let mut again = *query;
    again.deterministic = true;
    again.node_budget = None;
    again.time_budget_ms = None;
    let other = match query.engine {
        Engine::Exhaustive => Engine::Backtrack,
        Engine::Backtrack => Engine::Exhaustive,
    };
    again.engine = other;
    let recheck = match decide_arrow(&again) {
        Ok(v) => v,
        Err(e) if e.is_resource_guard() => {
            again.engine = query.engine;
            decide_arrow(&again)?
        }
        Err(e) => return Err(e.into()),
    };
    Ok(if recheck.holds {
        Verification::pass(format!("re-decided with the {} engine", again.engine))
    } else {
        Verification::fail(format!("{} engine finds a counterexample", again.engine))
    })
}
