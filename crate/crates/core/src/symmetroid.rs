//! Rank-at-most-2 loci of symmetric 4x4 matrices of linear forms over `F_p`.
//!
//! The determinant of such a matrix is a quartic symmetroid; for a general
//! matrix it has 10 nodes, namely the points where the rank drops to 2. The
//! scan enumerates all of `P^3(F_p)` and the certificate checks that the
//! nodes found impose independent conditions on quadrics. Everything here is
//! finite-field evidence only.

use std::collections::HashSet;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, nullspace_basis, rank_and_rref, ExactMatrix, Field, FieldScalar};
use crate::error::{Error, Result};
use crate::nodal::{evaluation_matrix, Point};
use crate::poly::{HomogeneousForm, Monomial};

/// Largest prime accepted by [`scan_nodes_fp`].
pub const MAX_SCAN_PRIME: u64 = 1024;
pub const DEFAULT_DEGENERACY_THRESHOLD: usize = 50;

/// Index pairs `(i, j)`, `i <= j`, in the order a11, a12, a13, a14, a22, ...
pub const UPPER_TRIANGLE: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

fn check_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// A symmetric matrix `A(x) = sum_k x_k A_k` over `F_p`, stored by the
/// coefficients of its upper-triangle entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricLinearMatrix {
    prime: u64,
    /// `coeffs[e][k]`: coefficient of variable `k` in upper-triangle entry `e`.
    coeffs: [[u64; 4]; 10],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub prime: u64,
    pub upper_triangle: Vec<String>,
}

impl SymmetricLinearMatrix {
    pub fn new(prime: u64, coeffs: [[u64; 4]; 10]) -> Result<Self> {
        check_prime(prime)?;
        let coeffs = coeffs.map(|row| row.map(|c| c % prime));
        Ok(Self { prime, coeffs })
    }

    /// Builds the matrix from ten linear forms, upper triangle in row-major order.
    pub fn from_forms(prime: u64, forms: &[HomogeneousForm]) -> Result<Self> {
        check_prime(prime)?;
        if forms.len() != 10 {
            return Err(Error::data(format!("expected 10 upper-triangle entries, got {}", forms.len())));
        }
        let mut coeffs = [[0u64; 4]; 10];
        for (e, f) in forms.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            if f.degree() != 1 {
                return Err(Error::data(format!("entry {} is not linear: {f}", e + 1)));
            }
            let f = f.to_field(Field::Prime(prime))?;
            for (m, c) in f.terms() {
                let k = m.0.iter().position(|&x| x == 1).expect("linear monomial");
                coeffs[e][k] = c.as_residue().expect("prime field coefficient");
            }
        }
        Self::new(prime, coeffs)
    }

    pub fn from_matrix_file(file: &MatrixFile) -> Result<Self> {
        let forms = file
            .upper_triangle
            .iter()
            .map(|s| {
                let f = HomogeneousForm::parse(s)?;
                if f.is_zero() {
                    Ok(HomogeneousForm::zero(1, Field::Prime(file.prime)))
                } else {
                    Ok(f)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_forms(file.prime, &forms)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_matrix_file(&serde_json::from_str(text)?)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_matrix_file(&self) -> MatrixFile {
        MatrixFile { prime: self.prime, upper_triangle: self.entries().iter().map(|f| f.to_string()).collect() }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// The ten upper-triangle entries as linear forms over `F_p`.
    pub fn entries(&self) -> Vec<HomogeneousForm> {
        let field = Field::Prime(self.prime);
        self.coeffs
            .iter()
            .map(|row| {
                HomogeneousForm::linear(field, row.map(|c| FieldScalar::from_i64(field, c as i64)))
                    .expect("coefficients lie in the field")
            })
            .collect()
    }

    /// Entries `(i, j)` of the full symmetric matrix as linear forms.
    pub fn form_at(&self, i: usize, j: usize) -> HomogeneousForm {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let e = UPPER_TRIANGLE.iter().position(|&t| t == (a, b)).expect("index in range");
        self.entries().swap_remove(e)
    }

    /// `A(x)` with entries reduced mod `p`.
    pub fn evaluate(&self, x: &[u64; 4]) -> [[u64; 4]; 4] {
        let p = self.prime;
        let mut m = [[0u64; 4]; 4];
        for (e, &(i, j)) in UPPER_TRIANGLE.iter().enumerate() {
            let v = self.coeffs[e].iter().zip(x).map(|(c, xi)| c * xi % p).sum::<u64>() % p;
            m[i][j] = v;
            m[j][i] = v;
        }
        m
    }

    /// `det A` as a quartic form.
    pub fn determinant(&self) -> Result<HomogeneousForm> {
        let field = Field::Prime(self.prime);
        let mut det = HomogeneousForm::zero(4, field);
        for perm in permutations4() {
            let mut term = HomogeneousForm::from_terms(0, field, [(Monomial([0; 4]), FieldScalar::one(field))])?;
            for (i, &j) in perm.iter().enumerate() {
                term = term.mul(&self.form_at(i, j))?;
            }
            if permutation_sign(&perm) < 0 {
                term = term.scale(&FieldScalar::from_i64(field, -1));
            }
            det = det.add(&term)?;
        }
        Ok(det)
    }

    /// Uniformly random coefficients.
    pub fn random_general(seed: u64, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs = [[0u64; 4]; 10];
        for row in coeffs.iter_mut() {
            for c in row.iter_mut() {
                *c = rng.gen_range(0..prime);
            }
        }
        Self::new(prime, coeffs)
    }

    /// A random member of the family whose ten rank-2 points are all
    /// `F_p`-rational: the web of quadrics through six random points in
    /// general position of the dual space. Its rank-2 members are the ten
    /// plane pairs splitting the six points three and three.
    pub fn random_split(seed: u64, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        if prime < 7 {
            return Err(Error::domain("the split family needs p >= 7"));
        }
        let field = Field::Prime(prime);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kernel = loop {
            let pts: Vec<[u64; 4]> = (0..6).map(|_| [0; 4].map(|_: u64| rng.gen_range(0..prime))).collect();
            if !general_position(&pts, prime) {
                continue;
            }
            let rows: Vec<Vec<FieldScalar>> = pts
                .iter()
                .map(|y| {
                    UPPER_TRIANGLE
                        .iter()
                        .map(|&(i, j)| FieldScalar::from_i64(field, (y[i] * y[j] % prime) as i64))
                        .collect()
                })
                .collect();
            let kernel = nullspace_basis(&ExactMatrix::from_rows(field, 10, rows)?);
            if kernel.len() == 4 {
                break kernel;
            }
        };
        let mix = loop {
            let m: Vec<Vec<u64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(0..prime)).collect()).collect();
            if det_mod(&m, prime) != 0 {
                break m;
            }
        };
        // quadric sum_{i<=j} c_ij y_i y_j has symmetric matrix 2c_ii on the diagonal, c_ij off it
        let mut coeffs = [[0u64; 4]; 10];
        for k in 0..4 {
            for (e, &(i, j)) in UPPER_TRIANGLE.iter().enumerate() {
                let mut v = 0u64;
                for (l, basis) in kernel.iter().enumerate() {
                    v = (v + mix[k][l] * basis[e].as_residue().expect("prime field")) % prime;
                }
                coeffs[e][k] = if i == j { 2 * v % prime } else { v };
            }
        }
        Self::new(prime, coeffs)
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

fn permutation_sign(p: &[usize; 4]) -> i32 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

fn det_mod(m: &[Vec<u64>], p: u64) -> u64 {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
        if r != c {
            a.swap(r, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = crate::algebra::pow_mod(a[c][c], p - 2, p);
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            for k in c..n {
                a[r][k] = (a[r][k] + p - f * a[c][k] % p) % p;
            }
        }
    }
    det
}

/// No four of the points are coplanar.
fn general_position(pts: &[[u64; 4]], p: u64) -> bool {
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let m: Vec<Vec<u64>> = [a, b, c, d].iter().map(|&i| pts[i].to_vec()).collect();
                    if det_mod(&m, p) == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether every 3x3 minor of `m` vanishes mod `p`.
pub fn rank_at_most_two(m: &[[u64; 4]; 4], p: u64) -> bool {
    let p = p as i64;
    let e = |i: usize, j: usize| m[i][j] as i64;
    const TRIPLES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    for r in &TRIPLES {
        for c in &TRIPLES {
            let minor = e(r[0], c[0]) * ((e(r[1], c[1]) * e(r[2], c[2]) - e(r[1], c[2]) * e(r[2], c[1])) % p)
                - e(r[0], c[1]) * ((e(r[1], c[0]) * e(r[2], c[2]) - e(r[1], c[2]) * e(r[2], c[0])) % p)
                + e(r[0], c[2]) * ((e(r[1], c[0]) * e(r[2], c[1]) - e(r[1], c[1]) * e(r[2], c[0])) % p);
            if minor % p != 0 {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// More points than this marks the locus as degenerate.
    pub degeneracy_threshold: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { degeneracy_threshold: DEFAULT_DEGENERACY_THRESHOLD }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub prime: u64,
    /// Normalized points (first nonzero coordinate 1), lexicographically sorted.
    pub points: Vec<[u64; 4]>,
    /// Set when the count exceeds the threshold or the points contain a
    /// whole `F_p`-line, both signs of a positive-dimensional locus.
    pub degenerate: bool,
    pub contains_line: bool,
    pub threshold: usize,
    pub probabilistic: bool,
}

impl ScanResult {
    pub fn to_nodal_points(&self) -> Vec<Point> {
        let field = Field::Prime(self.prime);
        self.points.iter().map(|x| x.map(|c| FieldScalar::from_i64(field, c as i64))).collect()
    }
}

pub fn normalize_fp(x: &[u64; 4], p: u64) -> Option<[u64; 4]> {
    let lead = *x.iter().find(|&&c| c % p != 0)?;
    let inv = crate::algebra::pow_mod(lead % p, p - 2, p);
    Some(x.map(|c| c % p * inv % p))
}

/// Normalized points of `P^3(F_p)` whose first nonzero coordinate is at `a`
/// and whose next coordinate is `t`.
fn points_with(a: usize, t: u64, p: u64) -> impl Iterator<Item = [u64; 4]> {
    let free = 2usize.saturating_sub(a);
    let count = if a == 3 { 1 } else { p.pow(free as u32) };
    (0..count).map(move |mut idx| {
        let mut x = [0u64; 4];
        x[a] = 1;
        if a < 3 {
            x[a + 1] = t;
        }
        for k in (a + 2..4).rev() {
            x[k] = idx % p;
            idx /= p;
        }
        x
    })
}

fn contains_line(points: &[[u64; 4]], p: u64) -> bool {
    let set: HashSet<[u64; 4]> = points.iter().copied().collect();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let full = (0..p).all(|t| {
                let q = [0, 1, 2, 3].map(|k| (a[k] + t * b[k]) % p);
                normalize_fp(&q, p).is_some_and(|q| set.contains(&q))
            });
            if full {
                return true;
            }
        }
    }
    false
}

pub fn scan_nodes_fp(a: &SymmetricLinearMatrix) -> Result<ScanResult> {
    scan_nodes_fp_with(a, ScanOptions::default())
}

pub fn scan_nodes_fp_with(a: &SymmetricLinearMatrix, options: ScanOptions) -> Result<ScanResult> {
    let p = a.prime;
    if p > MAX_SCAN_PRIME {
        return Err(Error::resource(format!("scan is capped at p <= {MAX_SCAN_PRIME}, got {p}")));
    }
    let tasks: Vec<(usize, u64)> =
        (0..4).flat_map(|lead| (0..if lead == 3 { 1 } else { p }).map(move |t| (lead, t))).collect();
    let mut points: Vec<[u64; 4]> = tasks
        .par_iter()
        .flat_map_iter(|&(lead, t)| points_with(lead, t, p).filter(|x| rank_at_most_two(&a.evaluate(x), p)))
        .collect();
    points.sort_unstable();
    let threshold = options.degeneracy_threshold;
    let line = points.len() <= threshold && contains_line(&points, p);
    Ok(ScanResult {
        prime: p,
        degenerate: points.len() > threshold || line,
        contains_line: line,
        points,
        threshold,
        probabilistic: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricCertificate {
    pub rank: usize,
    /// No quadric over `F_p` passes through all ten points.
    pub certified: bool,
}

/// Rank of the 10x10 matrix of quadratic monomials evaluated at the points.
pub fn no_quadric_certificate(points: &[[u64; 4]], p: u64) -> Result<QuadricCertificate> {
    check_prime(p)?;
    let normalized: Vec<[u64; 4]> = points
        .iter()
        .map(|x| normalize_fp(x, p).ok_or_else(|| Error::domain("the zero vector is not a point")))
        .collect::<Result<_>>()?;
    let distinct: HashSet<&[u64; 4]> = normalized.iter().collect();
    if normalized.len() != 10 || distinct.len() != 10 {
        return Err(Error::domain(format!(
            "certificate needs exactly 10 distinct points, got {} ({} distinct)",
            normalized.len(),
            distinct.len()
        )));
    }
    let field = Field::Prime(p);
    let nodes: Vec<Point> = normalized.iter().map(|x| x.map(|c| FieldScalar::from_i64(field, c as i64))).collect();
    let (rank, _) = rank_and_rref(&evaluation_matrix(&nodes, field, 2));
    Ok(QuadricCertificate { rank, certified: rank == 10 })
}
