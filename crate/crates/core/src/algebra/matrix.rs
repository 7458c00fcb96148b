use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::primes::random_prime;
use super::scalar::{Field, FieldScalar};
use crate::error::{Error, Result};

/// Dense row-major matrix whose entries all live in one [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, field: Field, entries: Vec<FieldScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::data(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::data(format!(
                "matrix over {field} has an entry from {}",
                bad.field()
            )));
        }
        Ok(Self { rows, cols, field, entries })
    }

    /// Builds a matrix from rows; the field is taken from `field` so that
    /// empty matrices are still well-typed.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<FieldScalar>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::data(format!("row of length {} in a matrix with {cols} columns", r.len())));
        }
        Self::new(n, cols, field, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| FieldScalar::from_i64(field, v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Self { rows, cols, field, entries: vec![FieldScalar::zero(field); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = FieldScalar::one(field);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FieldScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, field: self.field, entries }
    }

    fn to_rows(&self) -> Vec<Vec<FieldScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// In-place reduction to reduced row-echelon form; returns pivot columns.
///
/// Over `Q` the pivot in each column is the candidate with the smallest
/// `bits(numerator) + bits(denominator)`, which keeps intermediate sizes down.
/// The reduced form itself does not depend on that choice.
fn reduce(rows: &mut [Vec<FieldScalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == rows.len() {
            break;
        }
        let pick = (top..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| rows[r][c].bit_cost());
        let Some(p) = pick else { continue };
        rows.swap(top, p);
        let inv = rows[top][c].inv().expect("pivot is nonzero");
        for v in rows[top].iter_mut().skip(c) {
            *v = &*v * &inv;
        }
        let (head, tail) = rows.split_at_mut(top);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row exists");
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let factor = other[c].clone();
            for (j, v) in other.iter_mut().enumerate().skip(c) {
                if !pivot_row[j].is_zero() {
                    *v = &*v - &(&factor * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        top += 1;
    }
    pivots
}

/// Rank and the reduced row-echelon form of `m`.
pub fn rank_and_rref(m: &ExactMatrix) -> (usize, ExactMatrix) {
    let mut rows = m.to_rows();
    let pivots = reduce(&mut rows, m.cols);
    let rref = ExactMatrix { rows: m.rows, cols: m.cols, field: m.field, entries: rows.into_iter().flatten().collect() };
    (pivots.len(), rref)
}

/// A basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn nullspace_basis(m: &ExactMatrix) -> Vec<Vec<FieldScalar>> {
    let mut rows = m.to_rows();
    let pivots = reduce(&mut rows, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![FieldScalar::zero(m.field); m.cols];
            v[free] = FieldScalar::one(m.field);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[r][free];
            }
            v
        })
        .collect()
}

/// Rank of a rational matrix reduced modulo `p`.
///
/// Never exceeds the rational rank. Fails with [`Error::BadPrime`] when `p`
/// divides some denominator.
pub fn modular_rank(m: &ExactMatrix, p: u64) -> Result<usize> {
    if m.field != Field::Rational {
        return Err(Error::domain(format!("modular rank expects a matrix over Q, got {}", m.field)));
    }
    let modulus = BigInt::from(p);
    let residue = |v: &BigInt| v.mod_floor(&modulus).to_u64().expect("residue fits");
    let mut rows = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for e in m.row(r) {
            let q = e.as_rational().expect("rational matrix");
            let den = residue(q.denom());
            if den == 0 {
                return Err(Error::BadPrime(p));
            }
            let num = residue(q.numer());
            let value = (num as u128 * super::scalar::pow_mod(den, p - 2, p) as u128 % p as u128) as u64;
            row.push(FieldScalar::Prime { value, modulus: p });
        }
        rows.push(row);
    }
    Ok(reduce(&mut rows, m.cols).len())
}

/// Exact rank. Over `Q` a modular rank at a 30-bit prime is tried first;
/// when it already reaches `min(rows, cols)` the matrix has full rank and
/// rational elimination is skipped. Otherwise the rational elimination decides.
pub fn exact_rank(m: &ExactMatrix) -> usize {
    if m.field == Field::Rational {
        let full = m.rows.min(m.cols);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f_6465 ^ (m.rows as u64) << 20 ^ m.cols as u64);
        for _ in 0..4 {
            match modular_rank(m, random_prime(&mut rng, 30)) {
                Ok(r) if r == full => return full,
                Ok(_) => break,
                Err(_) => continue,
            }
        }
    }
    let mut rows = m.to_rows();
    reduce(&mut rows, m.cols).len()
}
