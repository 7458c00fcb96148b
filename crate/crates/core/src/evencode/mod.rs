//! Even sets of nodes as a parity-augmented binary code.
//!
//! A word is a subset of the `mu` nodes together with a parity tag: strictly
//! even or weakly even. Both are packed into one `u64`: bit 0 carries the
//! parity (set = weak) and bit `i + 1` carries node `i`. Adding words is XOR,
//! so the strictly even words form the hyperplane `bit 0 = 0` of the code and
//! `dim C <= dim C_bar <= dim C + 1` holds structurally.

mod canonical;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::BitMatrix;
use crate::error::{Error, Result};

pub use canonical::{canonical_form, is_isomorphic, CanonicalForm};

/// Longest node list a packed word can hold.
pub const MAX_MU: usize = 63;
/// Largest code dimension whose words are enumerated.
pub const MAX_ENUM_DIM: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Strict,
    Weak,
}

impl Parity {
    fn bit(self) -> u64 {
        match self {
            Parity::Strict => 0,
            Parity::Weak => 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Strict => "strict",
            Parity::Weak => "weak",
        })
    }
}

pub(crate) fn packed_weight(packed: u64) -> u32 {
    (packed >> 1).count_ones()
}

pub(crate) fn packed_parity(packed: u64) -> Parity {
    if packed & 1 == 1 {
        Parity::Weak
    } else {
        Parity::Strict
    }
}

fn check_mu(mu: usize) -> Result<()> {
    if mu > MAX_MU {
        return Err(Error::resource(format!("{mu} nodes exceeds the {MAX_MU}-node word size")));
    }
    Ok(())
}

/// An even set of nodes with its parity tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvenSetWord {
    mu: usize,
    packed: u64,
}

impl EvenSetWord {
    pub fn new(mu: usize, parity: Parity, support: &[usize]) -> Result<Self> {
        check_mu(mu)?;
        let mut packed = parity.bit();
        for &i in support {
            if i >= mu {
                return Err(Error::data(format!("node index {i} out of range for {mu} nodes")));
            }
            if packed >> (i + 1) & 1 == 1 {
                return Err(Error::data(format!("node index {i} listed twice")));
            }
            packed |= 1 << (i + 1);
        }
        Ok(Self { mu, packed })
    }

    pub fn zero(mu: usize) -> Result<Self> {
        check_mu(mu)?;
        Ok(Self { mu, packed: 0 })
    }

    /// From the packed layout (bit 0 parity, bit `i+1` node `i`).
    pub fn from_packed(mu: usize, packed: u64) -> Result<Self> {
        check_mu(mu)?;
        if packed >> (mu + 1) != 0 {
            return Err(Error::data(format!("packed word has nodes beyond index {}", mu as i64 - 1)));
        }
        Ok(Self { mu, packed })
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn packed(&self) -> u64 {
        self.packed
    }

    pub fn parity(&self) -> Parity {
        packed_parity(self.packed)
    }

    pub fn weight(&self) -> u32 {
        packed_weight(self.packed)
    }

    pub fn is_zero(&self) -> bool {
        self.packed == 0
    }

    /// Node indices in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.mu).filter(|i| self.packed >> (i + 1) & 1 == 1).collect()
    }

    pub fn overlap(&self, other: &Self) -> u32 {
        packed_weight(self.packed & other.packed)
    }
}

impl fmt::Display for EvenSetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{} {:?}", self.parity(), self.weight(), self.support())
    }
}

/// Sum of even sets: symmetric difference, parities added mod 2.
pub fn word_sum(u: &EvenSetWord, v: &EvenSetWord) -> Result<EvenSetWord> {
    if u.mu != v.mu {
        return Err(Error::data(format!("cannot add words on {} and {} nodes", u.mu, v.mu)));
    }
    Ok(EvenSetWord { mu: u.mu, packed: u.packed ^ v.packed })
}

pub(crate) fn admissible_packed(packed: u64) -> bool {
    matches!(
        (packed & 1, packed_weight(packed)),
        (1, 6) | (1, 10) | (0, 8) | (0, 16)
    )
}

/// Cardinalities allowed for even sets of nodes on a nodal quartic: weakly
/// even sets have 6 or 10 nodes, strictly even sets 8 or 16.
pub fn quartic_admissible(w: &EvenSetWord) -> Result<bool> {
    if w.is_zero() {
        return Err(Error::domain("admissibility is only defined for nonzero words"));
    }
    Ok(admissible_packed(w.packed))
}

/// Griesmer bound `n >= sum_{i<k} ceil(d / 2^i)` for a binary `[n, k, d]` code.
pub fn griesmer_ok(n: usize, k: usize, d: usize) -> bool {
    let mut need = 0usize;
    for i in 0..k {
        need += d.div_ceil(1 << i.min(63));
        if need > n {
            return false;
        }
    }
    true
}

/// Word counts by weight, split by parity; the zero word is not counted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub weak: BTreeMap<u32, u64>,
    pub strict: BTreeMap<u32, u64>,
}

impl WeightEnumerator {
    pub fn total(&self) -> u64 {
        self.weak.values().chain(self.strict.values()).sum()
    }

    pub fn count(&self, parity: Parity, weight: u32) -> u64 {
        let map = match parity {
            Parity::Weak => &self.weak,
            Parity::Strict => &self.strict,
        };
        map.get(&weight).copied().unwrap_or(0)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut weights: Vec<(u32, Parity, u64)> = self
            .weak
            .iter()
            .map(|(&w, &n)| (w, Parity::Weak, n))
            .chain(self.strict.iter().map(|(&w, &n)| (w, Parity::Strict, n)))
            .collect();
        weights.sort();
        let parts: Vec<String> = weights.iter().map(|(w, p, n)| format!("{w}: {n} {p}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Row-reduced xor basis used for span membership.
#[derive(Clone, Debug, Default)]
pub(crate) struct XorBasis {
    rows: Vec<u64>,
}

impl XorBasis {
    pub(crate) fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            v = v.min(v ^ r);
        }
        v
    }

    /// Adds `v` if independent; returns whether it was added.
    pub(crate) fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }
}

/// All `2^k` combinations of `generators`, zero first, in Gray-code order.
pub(crate) fn span_words(generators: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << generators.len());
    let mut cur = 0u64;
    out.push(cur);
    for i in 1u64..(1 << generators.len()) {
        cur ^= generators[i.trailing_zeros() as usize];
        out.push(cur);
    }
    out
}

/// An `F_2`-linear code of even node sets, stored by independent generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvenSetCode {
    mu: usize,
    generators: Vec<EvenSetWord>,
}

impl EvenSetCode {
    /// Span of `words`; dependent words are dropped so the stored generators
    /// stay independent.
    pub fn new(mu: usize, words: &[EvenSetWord]) -> Result<Self> {
        check_mu(mu)?;
        let mut generators: Vec<EvenSetWord> = Vec::new();
        let mut rank = 0;
        for w in words {
            if w.mu != mu {
                return Err(Error::data(format!("word on {} nodes in a code of length {mu}", w.mu)));
            }
            let mut masks: Vec<u64> = generators.iter().map(|g| g.packed).collect();
            masks.push(w.packed);
            let r = BitMatrix::from_masks(mu + 1, &masks)?.rank();
            if r > rank {
                rank = r;
                generators.push(*w);
            }
        }
        Ok(Self { mu, generators })
    }

    pub(crate) fn from_packed_generators(mu: usize, packed: &[u64]) -> Result<Self> {
        let words = packed
            .iter()
            .map(|&p| EvenSetWord::from_packed(mu, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(mu, &words)
    }

    /// Caller guarantees `packed` is independent and fits `mu`.
    pub(crate) fn from_independent_packed(mu: usize, packed: &[u64]) -> Self {
        let generators = packed.iter().map(|&p| EvenSetWord { mu, packed: p }).collect();
        Self { mu, generators }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[EvenSetWord] {
        &self.generators
    }

    /// Generator matrix with the parity bit as column 0.
    pub fn generator_matrix(&self) -> BitMatrix {
        let masks: Vec<u64> = self.generators.iter().map(|g| g.packed).collect();
        BitMatrix::from_masks(self.mu + 1, &masks).expect("code length checked at construction")
    }

    pub(crate) fn packed_generators(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.packed).collect()
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.dim() > MAX_ENUM_DIM {
            return Err(Error::resource(format!(
                "code of dimension {} exceeds the enumeration cap {MAX_ENUM_DIM}",
                self.dim()
            )));
        }
        Ok(())
    }

    /// Every codeword in packed form, including zero.
    pub(crate) fn packed_words(&self) -> Result<Vec<u64>> {
        self.check_enumerable()?;
        Ok(span_words(&self.packed_generators()))
    }

    pub fn nonzero_words(&self) -> Result<Vec<EvenSetWord>> {
        Ok(self
            .packed_words()?
            .into_iter()
            .filter(|&p| p != 0)
            .map(|packed| EvenSetWord { mu: self.mu, packed })
            .collect())
    }

    pub fn contains(&self, w: &EvenSetWord) -> bool {
        let mut basis = XorBasis::default();
        for g in &self.generators {
            basis.insert(g.packed);
        }
        w.mu == self.mu && basis.reduce(w.packed) == 0
    }

    /// Dimension of the subcode of strictly even words.
    pub fn strict_dim(&self) -> usize {
        if self.generators.iter().any(|g| g.parity() == Parity::Weak) {
            self.dim() - 1
        } else {
            self.dim()
        }
    }

    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        let mut e = WeightEnumerator::default();
        for p in self.packed_words()? {
            if p == 0 {
                continue;
            }
            let map = match packed_parity(p) {
                Parity::Weak => &mut e.weak,
                Parity::Strict => &mut e.strict,
            };
            *map.entry(packed_weight(p)).or_default() += 1;
        }
        Ok(e)
    }

    /// A basis of minimum total weight, found greedily (words ordered by
    /// weight, then packed value). Its weight multiset does not depend on
    /// tie-breaking.
    pub fn min_weight_basis(&self) -> Result<Vec<EvenSetWord>> {
        let mut words = self.packed_words()?;
        words.retain(|&p| p != 0);
        words.sort_by_key(|&p| (packed_weight(p), p));
        let mut basis = XorBasis::default();
        let mut out = Vec::with_capacity(self.dim());
        for p in words {
            if basis.insert(p) {
                out.push(EvenSetWord { mu: self.mu, packed: p });
                if out.len() == self.dim() {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Profile `[n,k,{d1_m1,...}]`: the weights occurring in the code, each
    /// subscripted by how many words of a minimum-weight basis have it
    /// (subscript omitted when zero).
    pub fn weight_profile(&self) -> Result<String> {
        let mut weights: BTreeMap<u32, usize> = BTreeMap::new();
        for p in self.packed_words()? {
            if p != 0 {
                weights.entry(packed_weight(p)).or_default();
            }
        }
        for w in self.min_weight_basis()? {
            *weights.get_mut(&w.weight()).expect("basis words are codewords") += 1;
        }
        let parts: Vec<String> = weights
            .iter()
            .map(|(w, &m)| if m == 0 { w.to_string() } else { format!("{w}_{m}") })
            .collect();
        Ok(format!("[{},{},{{{}}}]", self.mu, self.dim(), parts.join(",")))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CodeFile = serde_json::from_str(text)?;
        file.into_code()
    }

    pub fn to_code_file(&self) -> CodeFile {
        CodeFile {
            mu: self.mu,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorEntry { parity: g.parity(), support: g.support() })
                .collect(),
        }
    }
}

/// On-disk code description; support indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub mu: usize,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub parity: Parity,
    pub support: Vec<usize>,
}

impl CodeFile {
    pub fn into_code(self) -> Result<EvenSetCode> {
        let words = self
            .generators
            .iter()
            .map(|g| EvenSetWord::new(self.mu, g.parity, &g.support))
            .collect::<Result<Vec<_>>>()?;
        EvenSetCode::new(self.mu, &words)
    }
}
