//! Canonical forms of codes under permutations of the nodes.
//!
//! For an ordered basis `b_1, ..., b_k` of the code, sort the node columns
//! lexicographically by their bit vectors `(b_1[j], ..., b_k[j])`. Row `i` of
//! the sorted matrix, with the parity bit of `b_i` in front, is then fixed by
//! the cells that rows `1..i` cut the nodes into: inside each cell it reads
//! `0...01...1` with as many ones as `b_i` has in the cell. The canonical
//! form is the lexicographically smallest such row sequence over all ordered
//! bases. It only depends on the multiset of columns, so it is invariant
//! under node permutations, and it determines that multiset, so equal forms
//! mean equivalent codes.
//!
//! The minimum is found by depth-first search over partial bases, keeping
//! only the children that minimize the next row. Two leaves with equal rows
//! differ by a code automorphism; such automorphisms are collected and used
//! to skip children in the same orbit, and a leaf matching the first leaf
//! lets the search abandon the whole sibling subtree it lies in.

use std::collections::{HashMap, HashSet};

use super::{EvenSetCode, XorBasis};
use crate::error::{Error, Result};

/// Largest node count accepted by [`canonical_form`].
pub const MAX_CANONICAL_MU: usize = 24;

/// Permutation-invariant byte encoding of a code: `[mu, k]` followed by `k`
/// big-endian 32-bit rows (parity bit first, then the sorted node columns).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn mu(&self) -> usize {
        self.0[0] as usize
    }

    pub fn dim(&self) -> usize {
        self.0[1] as usize
    }

    fn rows(&self) -> impl Iterator<Item = u32> + '_ {
        self.0[2..].chunks(4).map(|c| u32::from_be_bytes(c.try_into().expect("4-byte rows")))
    }

    /// The representative code whose generator matrix is the canonical one.
    pub fn to_code(&self) -> EvenSetCode {
        let mu = self.mu();
        let packed: Vec<u64> = self
            .rows()
            .map(|row| {
                let mut p = (row >> mu) as u64 & 1;
                for j in 0..mu {
                    if row >> (mu - 1 - j) & 1 == 1 {
                        p |= 1 << (j + 1);
                    }
                }
                p
            })
            .collect();
        EvenSetCode::from_packed_generators(mu, &packed).expect("canonical rows are independent")
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Row produced by `word` against `cells`, parity bit in front.
fn row_value(word: u64, cells: &[u64]) -> u32 {
    let mut row = (word & 1) as u32;
    for &cell in cells {
        let size = cell.count_ones();
        let ones = (word & cell).count_ones();
        row = (row << size) | ((1u32 << ones) - 1);
    }
    row
}

fn refine(cells: &[u64], word: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(cells.len() * 2);
    for &cell in cells {
        let zero = cell & !word;
        let one = cell & word;
        if zero != 0 {
            out.push(zero);
        }
        if one != 0 {
            out.push(one);
        }
    }
    out
}

struct Leaf {
    rows: Vec<u32>,
    path: Vec<u64>,
}

struct Search {
    words: Vec<u64>,
    index: HashMap<u64, u32>,
    dim: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as permutations of word indices.
    gens: Vec<Vec<u32>>,
}

impl Search {
    fn automorphism(&self, from: &[u64], to: &[u64]) -> Vec<u32> {
        let mut perm = vec![0u32; self.words.len()];
        let (mut a, mut b) = (0u64, 0u64);
        perm[self.index[&0] as usize] = self.index[&0];
        for i in 1u64..(1 << self.dim) {
            let j = i.trailing_zeros() as usize;
            a ^= from[j];
            b ^= to[j];
            perm[self.index[&a] as usize] = self.index[&b];
        }
        perm
    }

    fn same_orbit(&self, w: u64, explored: &[u64], path: &[u64]) -> bool {
        let fixing: Vec<&Vec<u32>> = self
            .gens
            .iter()
            .filter(|g| path.iter().all(|p| {
                let i = self.index[p];
                g[i as usize] == i
            }))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let start = self.index[&w];
        let mut orbit = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g in &fixing {
                let j = g[i as usize];
                if orbit.insert(j) {
                    stack.push(j);
                }
            }
        }
        explored.iter().any(|e| orbit.contains(&self.index[e]))
    }

    fn leaf(&mut self, rows: &[u32], path: &[u64]) -> Option<usize> {
        let Some(first) = &self.first else {
            self.first = Some(Leaf { rows: rows.to_vec(), path: path.to_vec() });
            self.best = Some(Leaf { rows: rows.to_vec(), path: path.to_vec() });
            return None;
        };
        if first.rows == rows {
            let common = first.path.iter().zip(path).take_while(|(a, b)| a == b).count();
            let g = self.automorphism(&first.path, path);
            self.gens.push(g);
            return Some(common);
        }
        let best = self.best.as_ref().expect("set with first");
        match rows.cmp(&best.rows) {
            std::cmp::Ordering::Equal => {
                let g = self.automorphism(&best.path, path);
                self.gens.push(g);
            }
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf { rows: rows.to_vec(), path: path.to_vec() });
            }
            std::cmp::Ordering::Greater => {}
        }
        None
    }

    /// Returns the depth to unwind to when a subtree turns out redundant.
    fn dfs(&mut self, cells: &[u64], basis: &XorBasis, path: &mut Vec<u64>, rows: &mut Vec<u32>) -> Option<usize> {
        if path.len() == self.dim {
            return self.leaf(rows, path);
        }
        let mut min = u32::MAX;
        let mut children = Vec::new();
        for &w in &self.words {
            if basis.reduce(w) == 0 {
                continue;
            }
            let r = row_value(w, cells);
            if r < min {
                min = r;
                children.clear();
            }
            if r == min {
                children.push(w);
            }
        }
        rows.push(min);
        if let Some(best) = &self.best {
            if rows[..] > best.rows[..rows.len()] {
                rows.pop();
                return None;
            }
        }
        let mut explored: Vec<u64> = Vec::new();
        for w in children {
            if self.same_orbit(w, &explored, path) {
                continue;
            }
            explored.push(w);
            let next_cells = refine(cells, w);
            let mut next_basis = basis.clone();
            next_basis.insert(w);
            path.push(w);
            let jump = self.dfs(&next_cells, &next_basis, path, rows);
            path.pop();
            if let Some(depth) = jump {
                if depth < path.len() {
                    rows.pop();
                    return Some(depth);
                }
            }
        }
        rows.pop();
        None
    }
}

pub fn canonical_form(code: &EvenSetCode) -> Result<CanonicalForm> {
    let mu = code.mu();
    if mu > MAX_CANONICAL_MU {
        return Err(Error::resource(format!(
            "canonical form supports at most {MAX_CANONICAL_MU} nodes, got {mu}"
        )));
    }
    let words = code.packed_words()?;
    let index = words.iter().enumerate().map(|(i, &w)| (w, i as u32)).collect();
    let all_nodes = if mu == 0 { 0 } else { ((1u64 << mu) - 1) << 1 };
    let cells = if mu == 0 { vec![] } else { vec![all_nodes] };
    let mut search = Search { words, index, dim: code.dim(), first: None, best: None, gens: Vec::new() };
    search.dfs(&cells, &XorBasis::default(), &mut Vec::new(), &mut Vec::new());
    let rows = search.best.map(|l| l.rows).unwrap_or_default();
    let mut bytes = Vec::with_capacity(2 + 4 * rows.len());
    bytes.push(mu as u8);
    bytes.push(code.dim() as u8);
    for r in rows {
        bytes.extend_from_slice(&r.to_be_bytes());
    }
    Ok(CanonicalForm(bytes))
}

pub fn is_isomorphic(a: &EvenSetCode, b: &EvenSetCode) -> Result<bool> {
    if a.mu() != b.mu() {
        return Err(Error::data(format!("codes of lengths {} and {} cannot be compared", a.mu(), b.mu())));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
