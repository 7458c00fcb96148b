use std::fmt::Write;

use nodalcodes::bounds::BoundReport;
use nodalcodes::classify::TableRecord;
use nodalcodes::evencode::{CodeFile, WeightEnumerator};
use nodalcodes::nodal::DefectReport;
use nodalcodes::symmetroid::{MatrixFile, QuadricCertificate, ScanResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct VanishingReport {
    pub mu: usize,
    pub form_degree: u32,
    pub field: String,
    pub dimension: usize,
    pub probabilistic: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verified: Vec<bool>,
    pub all_nodes: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CodeInfo {
    pub mu: usize,
    pub dim: usize,
    pub strict_dim: usize,
    pub profile: String,
    pub enumerator: WeightEnumerator,
    pub canonical: String,
    pub quartic_admissible: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CanonicalReport {
    pub canonical: String,
    pub representative: CodeFile,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IsomorphismReport {
    pub isomorphic: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub matrix: MatrixFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub scan: ScanResult,
    pub certificate: Option<QuadricCertificate>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HilbertReport {
    pub coefficients: Vec<String>,
    pub check: bool,
}

pub fn defect_text(r: &DefectReport) -> String {
    let mut s = format!(
        "b = {}, mu = {}, forms of degree {}: dim M = {}, expected {}\ndefect = {}\n",
        r.b, r.mu, r.m_degree, r.dim_m, r.estimate, r.defect
    );
    if r.probabilistic {
        s.push_str("(dim M computed over a prime field: evidence only)\n");
    }
    s
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for (i, ok) in r.verified.iter().enumerate() {
        let _ = writeln!(s, "node {i}: {}", if *ok { "ok" } else { "NOT a node" });
    }
    s
}

fn vacuous(v: i64) -> &'static str {
    if v <= 0 { " (vacuous)" } else { "" }
}

pub fn bounds_text(r: &BoundReport, printed: bool) -> String {
    let (main, other, label) = if printed {
        (r.beauville_printed, r.beauville, "b2 form")
    } else {
        (r.beauville, r.beauville_printed, "printed closed form")
    };
    let mut s = String::new();
    let _ = writeln!(s, "beauville: {main}{} ({label}: {other})", vacuous(main));
    let _ = writeln!(s, "improved: {}{}", r.improved, vacuous(r.improved));
    let _ = writeln!(s, "miyaoka max nodes: {}", r.miyaoka_max);
    let _ = writeln!(s, "jacobian slice dim: {}", r.jacobian_slice_dim);
    if r.exceeds_miyaoka {
        let _ = writeln!(s, "note: mu exceeds the Miyaoka cap");
    }
    s
}

pub fn classify_text(t: &TableRecord) -> String {
    let mut s = format!("mu = {}: {} code(s)\n", t.mu, t.entries.len());
    for e in &t.entries {
        let _ = writeln!(s, "  {}  strict dim {}  {}", e.profile, e.strict_dim, e.enumerator);
    }
    if !t.excluded.is_empty() {
        let _ = writeln!(s, "excluded by the dimension bounds: {}", t.excluded.len());
        for e in &t.excluded {
            let _ = writeln!(s, "  {}  strict dim {}", e.profile, e.strict_dim);
        }
    }
    s
}

pub fn code_info_text(c: &CodeInfo) -> String {
    format!(
        "{}  strict dim {}\nenumerator: {}\nquartic admissible: {}\ncanonical: {}\n",
        c.profile, c.strict_dim, c.enumerator, c.quartic_admissible, c.canonical
    )
}

pub fn scan_text(r: &ScanReport) -> String {
    let mut s = format!("p = {}: {} point(s) of rank <= 2", r.scan.prime, r.scan.points.len());
    if r.scan.degenerate {
        s.push_str(if r.scan.contains_line { " (degenerate: contains a line)" } else { " (degenerate)" });
    }
    s.push('\n');
    for x in &r.scan.points {
        let _ = writeln!(s, "  ({}:{}:{}:{})", x[0], x[1], x[2], x[3]);
    }
    match &r.certificate {
        Some(c) => {
            let _ = writeln!(s, "quadric evaluation rank {}; certified: {} (finite-field evidence)", c.rank, c.certified);
        }
        None => s.push_str("no certificate: need exactly 10 points on a non-degenerate locus\n"),
    }
    s
}

pub fn hilbert_text(r: &HilbertReport) -> String {
    format!("coefficients: {}\ncheck: {}\n", r.coefficients.join(", "), r.check)
}
