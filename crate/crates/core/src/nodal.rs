//! Node configurations, evaluation matrices and the defect of the double solid.
//!
//! For a surface `B` of even degree `b` with `mu` nodes, let `M` be the space
//! of forms of degree `3b/2 - 4` vanishing at every node. The defect is
//!
//! ```text
//! d = dim M - (C(3b/2 - 1, 3) - mu)
//! ```
//!
//! reported signed and unclamped: a negative value means the input cannot be
//! the node set of a genuine branch surface.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{exact_rank, is_prime, ExactMatrix, Field, FieldScalar};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, HomogeneousForm, Monomial};

pub type Point = [FieldScalar; 4];

/// Binomial coefficient, zero when `n < k` (including negative `n`).
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Scales a point so its first nonzero coordinate is one.
pub fn normalize_point(p: &Point) -> Result<Point> {
    let lead = p
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::data("the all-zero tuple is not a projective point"))?;
    let inv = lead.inv().expect("nonzero");
    Ok([&p[0] * &inv, &p[1] * &inv, &p[2] * &inv, &p[3] * &inv])
}

/// Nodes of a surface of degree `b`, optionally with the surface equation.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeConfiguration {
    degree: u32,
    field: Field,
    nodes: Vec<Point>,
    surface: Option<HomogeneousForm>,
}

impl NodeConfiguration {
    pub fn new(degree: u32, field: Field, nodes: Vec<Point>, surface: Option<HomogeneousForm>) -> Result<Self> {
        if let Field::Prime(p) = field {
            if p == 2 || !is_prime(p) {
                return Err(Error::data(format!("{p} is not an odd prime")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (i, node) in nodes.iter().enumerate() {
            if let Some(c) = node.iter().find(|c| c.field() != field) {
                return Err(Error::data(format!("node {i} has a coordinate in {} instead of {field}", c.field())));
            }
            if !seen.insert(normalize_point(node)?) {
                return Err(Error::data(format!("node {i} repeats an earlier projective point")));
            }
        }
        let surface = match surface {
            Some(f) => {
                if f.degree() != degree {
                    return Err(Error::data(format!(
                        "surface has degree {} but the configuration says {degree}",
                        f.degree()
                    )));
                }
                Some(f.to_field(field)?)
            }
            None => None,
        };
        Ok(Self { degree, field, nodes, surface })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn mu(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn surface(&self) -> Option<&HomogeneousForm> {
        self.surface.as_ref()
    }

    /// A copy with one more node appended.
    pub fn with_node(&self, node: Point) -> Result<Self> {
        let mut nodes = self.nodes.clone();
        nodes.push(node);
        Self::new(self.degree, self.field, nodes, self.surface.clone())
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NodeFile = serde_json::from_str(text)?;
        file.into_configuration()
    }

    pub fn to_node_file(&self) -> NodeFile {
        NodeFile {
            degree: self.degree,
            field: FieldSpec::from(self.field),
            surface: self.surface.as_ref().map(|f| f.to_string()),
            nodes: self
                .nodes
                .iter()
                .map(|p| p.iter().map(|c| Coordinate::Text(c.to_string())).collect())
                .collect(),
        }
    }
}

/// `"rational"` or `{"prime": p}` in node files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { prime: u64 },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Named(s) if s == "rational" => Ok(Field::Rational),
            FieldSpec::Named(s) => Err(Error::data(format!("unknown field {s:?}"))),
            FieldSpec::Prime { prime } => Ok(Field::Prime(*prime)),
        }
    }
}

impl From<Field> for FieldSpec {
    fn from(f: Field) -> Self {
        match f {
            Field::Rational => FieldSpec::Named("rational".into()),
            Field::Prime(prime) => FieldSpec::Prime { prime },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coordinate {
    Text(String),
    Int(i64),
}

/// On-disk node file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeFile {
    pub degree: u32,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<String>,
    pub nodes: Vec<Vec<Coordinate>>,
}

impl NodeFile {
    pub fn into_configuration(self) -> Result<NodeConfiguration> {
        let field = self.field.to_field()?;
        let surface = self.surface.as_deref().map(HomogeneousForm::parse).transpose()?;
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, coords)| {
                if coords.len() != 4 {
                    return Err(Error::data(format!("node {i} has {} coordinates, expected 4", coords.len())));
                }
                let mut out = Vec::with_capacity(4);
                for c in coords {
                    out.push(match c {
                        Coordinate::Text(s) => FieldScalar::parse(field, s)?,
                        Coordinate::Int(v) => FieldScalar::from_i64(field, *v),
                    });
                }
                Ok(out.try_into().expect("four coordinates"))
            })
            .collect::<Result<Vec<Point>>>()?;
        NodeConfiguration::new(self.degree, field, nodes, surface)
    }
}

/// Monomials of degree `d` in graded reverse-lex order; `C(d+3, 3)` of them.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    monomials_of_degree(d)
}

fn monomial_value(m: &Monomial, p: &Point) -> FieldScalar {
    let field = p[0].field();
    m.0.iter()
        .zip(p)
        .fold(FieldScalar::one(field), |acc, (&e, c)| &acc * &c.pow(e))
}

/// The `mu x C(d+3,3)` matrix of degree-`d` monomials evaluated at the nodes.
pub fn evaluation_matrix(nodes: &[Point], field: Field, d: u32) -> ExactMatrix {
    let basis = monomial_basis(d);
    let rows: Vec<Vec<FieldScalar>> = nodes
        .par_iter()
        .map(|p| basis.iter().map(|m| monomial_value(m, p)).collect())
        .collect();
    ExactMatrix::from_rows(field, basis.len(), rows).expect("rows match the basis size")
}

/// Dimension of the space of degree-`d` forms vanishing at every node.
pub fn vanishing_dimension(cfg: &NodeConfiguration, d: u32) -> usize {
    let e = evaluation_matrix(&cfg.nodes, cfg.field, d);
    e.cols() - exact_rank(&e)
}

/// Defect bookkeeping for a double solid branched along a degree-`b` surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub b: u32,
    pub mu: u64,
    /// Degree `3b/2 - 4` of the forms in `M` (negative for `b = 2`).
    pub m_degree: i64,
    pub dim_m: u64,
    /// `C(3b/2 - 1, 3) - mu`.
    pub estimate: i64,
    pub defect: i64,
    /// Set when `dim_m` was computed over a prime field: evidence, not proof.
    #[serde(default)]
    pub probabilistic: bool,
}

fn check_even_degree(b: u32) -> Result<()> {
    if b < 2 || b % 2 == 1 {
        return Err(Error::domain(format!(
            "branch degree must be even and at least 2, got {b}"
        )));
    }
    Ok(())
}

pub fn defect(b: u32, mu: u64, dim_m: u64) -> Result<DefectReport> {
    check_even_degree(b)?;
    let half = 3 * b as i64 / 2;
    let estimate = binomial(half - 1, 3) - mu as i64;
    Ok(DefectReport {
        b,
        mu,
        m_degree: half - 4,
        dim_m,
        estimate,
        defect: dim_m as i64 - estimate,
        probabilistic: false,
    })
}

pub fn defect_from_nodes(cfg: &NodeConfiguration) -> Result<DefectReport> {
    check_even_degree(cfg.degree)?;
    let m_degree = 3 * cfg.degree as i64 / 2 - 4;
    let dim_m = if m_degree < 0 { 0 } else { vanishing_dimension(cfg, m_degree as u32) };
    let mut report = defect(cfg.degree, cfg.mu() as u64, dim_m as u64)?;
    report.probabilistic = matches!(cfg.field, Field::Prime(_));
    Ok(report)
}

/// True iff `f` vanishes at `p` with all partials and has a rank-3 Hessian there.
pub fn verify_node(f: &HomogeneousForm, p: &Point) -> Result<bool> {
    if !f.evaluate_at(p)?.is_zero() {
        return Ok(false);
    }
    for g in f.gradient() {
        if !g.evaluate_at(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(f.hessian_rank_at(p)? == 3)
}

/// Per-node verification against the attached surface.
pub fn verify_configuration(cfg: &NodeConfiguration) -> Result<Vec<bool>> {
    let f = cfg
        .surface
        .as_ref()
        .ok_or_else(|| Error::data("node configuration has no surface equation"))?;
    cfg.nodes.par_iter().map(|p| verify_node(f, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: [i64; 4]) -> Point {
        c.map(|v| FieldScalar::from_i64(Field::Rational, v))
    }

    fn cfg(b: u32, nodes: Vec<Point>) -> NodeConfiguration {
        NodeConfiguration::new(b, Field::Rational, nodes, None).unwrap()
    }

    #[test]
    fn basis_sizes() {
        for d in 0..8u32 {
            assert_eq!(monomial_basis(d).len() as i64, binomial(d as i64 + 3, 3));
        }
    }

    #[test]
    fn empty_and_single_node() {
        assert_eq!(vanishing_dimension(&cfg(4, vec![]), 2), 10);
        assert_eq!(vanishing_dimension(&cfg(4, vec![q([1, 2, 3, 4])]), 2), 9);
    }

    #[test]
    fn duplicates_rejected() {
        let err = NodeConfiguration::new(4, Field::Rational, vec![q([1, 2, 0, 1]), q([-2, -4, 0, -2])], None);
        assert!(matches!(err, Err(Error::Data(_))));
        let err = NodeConfiguration::new(4, Field::Rational, vec![q([0, 0, 0, 0])], None);
        assert!(matches!(err, Err(Error::Data(_))));
    }

    #[test]
    fn defect_arithmetic() {
        assert_eq!(defect(4, 10, 0).unwrap().defect, 0);
        assert_eq!(defect(4, 11, 0).unwrap().defect, 1);
        assert_eq!(defect(6, 65, 4).unwrap().defect, 13);
        for b in [4u32, 6, 8] {
            let full = binomial(3 * b as i64 / 2 - 1, 3) as u64;
            assert_eq!(defect(b, 0, full).unwrap().defect, 0);
        }
        assert!(matches!(defect(5, 3, 0), Err(Error::Domain(_))));
        // inconsistent data stays visible as a negative defect
        assert_eq!(defect(4, 0, 3).unwrap().defect, -7);
    }

    #[test]
    fn defect_without_nodes() {
        let r = defect_from_nodes(&cfg(4, vec![])).unwrap();
        assert_eq!((r.dim_m, r.estimate, r.defect), (10, 10, 0));
        let r = defect_from_nodes(&cfg(2, vec![])).unwrap();
        assert_eq!((r.m_degree, r.dim_m, r.defect), (-1, 0, 0));
    }

    #[test]
    fn node_checks() {
        let f = HomogeneousForm::parse("x^2 + y^2 + z^2").unwrap();
        assert!(verify_node(&f, &q([0, 0, 0, 1])).unwrap());
        let f = HomogeneousForm::parse("x").unwrap();
        assert!(!verify_node(&f, &q([0, 1, 0, 0])).unwrap());
        let f = HomogeneousForm::parse("x^2 + y^2").unwrap();
        assert!(!verify_node(&f, &q([0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn node_file_roundtrip() {
        let text = r#"{"degree": 4, "field": "rational", "surface": "x^2*y^2 - z^4",
                       "nodes": [["0","0","0","1"], ["1/2", 3, "-1", "0"]]}"#;
        let c = NodeConfiguration::from_json(text).unwrap();
        assert_eq!(c.mu(), 2);
        let again = serde_json::to_string(&c.to_node_file()).unwrap();
        assert_eq!(NodeConfiguration::from_json(&again).unwrap(), c);

        let prime = r#"{"degree": 4, "field": {"prime": 101}, "nodes": [["1","-1","0","0"]]}"#;
        let c = NodeConfiguration::from_json(prime).unwrap();
        assert_eq!(c.nodes()[0][1].as_residue(), Some(100));
        let bad = r#"{"degree": 4, "field": {"prime": 100}, "nodes": []}"#;
        assert!(NodeConfiguration::from_json(bad).is_err());
        let bad = r#"{"degree": 4, "field": "real", "nodes": []}"#;
        assert!(NodeConfiguration::from_json(bad).is_err());
    }
}
