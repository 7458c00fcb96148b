//! Isomorph-free generation of the codes of even node sets on nodal quartics.
//!
//! Codes are grown one basis word at a time. A candidate word is kept only if
//! every word of the enlarged span is quartic-admissible, so the weight
//! addition constraints are enforced by span closure alone. After each level
//! the new codes are reduced to one representative per permutation class via
//! [`canonical_form`]. The geometric lower bounds `dim C_bar >= mu - 10` and
//! `dim C >= mu - 11` are applied afterwards; codes failing only those bounds
//! are kept aside for auditing.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evencode::{
    admissible_packed, canonical_form, griesmer_ok, packed_weight, span_words, CanonicalForm, CodeFile,
    EvenSetCode, WeightEnumerator,
};

pub const MAX_QUARTIC_NODES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Reject partial codes violating the Griesmer bound before canonicalizing.
    pub griesmer_pruning: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { griesmer_pruning: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationEntry {
    /// Canonical representative; its generators are a minimum-weight basis.
    pub code: EvenSetCode,
    pub dim: usize,
    pub strict_dim: usize,
    pub profile: String,
    pub enumerator: WeightEnumerator,
    pub canonical: CanonicalForm,
}

impl ClassificationEntry {
    fn new(canonical: CanonicalForm) -> Result<Self> {
        let rep = canonical.to_code();
        let basis = rep.min_weight_basis()?;
        let code = EvenSetCode::new(rep.mu(), &basis)?;
        Ok(Self {
            dim: code.dim(),
            strict_dim: code.strict_dim(),
            profile: code.weight_profile()?,
            enumerator: code.weight_enumerator()?,
            code,
            canonical,
        })
    }

    /// Weights of the nonzero words, ascending.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self.enumerator.weak.keys().chain(self.enumerator.strict.keys()).copied().collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationTable {
    pub mu: usize,
    /// Admissible codes meeting the dimension bounds, by dimension then canonical bytes.
    pub entries: Vec<ClassificationEntry>,
    /// Weight-admissible codes ruled out only by the dimension bounds.
    pub excluded: Vec<ClassificationEntry>,
}

/// JSON shape of one table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub profile: String,
    pub dim: usize,
    pub strict_dim: usize,
    pub canonical: String,
    pub enumerator: WeightEnumerator,
    pub code: CodeFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub mu: usize,
    pub entries: Vec<EntryRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<EntryRecord>,
}

impl ClassificationEntry {
    pub fn to_record(&self) -> EntryRecord {
        EntryRecord {
            profile: self.profile.clone(),
            dim: self.dim,
            strict_dim: self.strict_dim,
            canonical: self.canonical.to_hex(),
            enumerator: self.enumerator.clone(),
            code: self.code.to_code_file(),
        }
    }
}

impl ClassificationTable {
    pub fn to_record(&self, include_excluded: bool) -> TableRecord {
        TableRecord {
            mu: self.mu,
            entries: self.entries.iter().map(|e| e.to_record()).collect(),
            excluded: if include_excluded { self.excluded.iter().map(|e| e.to_record()).collect() } else { vec![] },
        }
    }

    pub fn profiles(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.profile.as_str()).collect()
    }
}

/// Whether the lower bounds on `dim C_bar` and `dim C` admit the code.
pub fn meets_dimension_bounds(mu: usize, dim: usize, strict_dim: usize) -> bool {
    let mu = mu as i64;
    dim as i64 >= (mu - 10).max(1) && strict_dim as i64 >= mu - 11
}

fn griesmer_consistent(mu: usize, words: &[u64]) -> bool {
    let dim = words.len().trailing_zeros() as usize;
    let min_all = words.iter().filter(|&&w| w != 0).map(|&w| packed_weight(w)).min();
    let strict: Vec<u64> = words.iter().copied().filter(|&w| w != 0 && w & 1 == 0).collect();
    let strict_dim = (strict.len() + 1).trailing_zeros() as usize;
    let ok_all = min_all.is_none_or(|d| d == 0 || griesmer_ok(mu, dim, d as usize));
    let min_strict = strict.iter().map(|&w| packed_weight(w)).min();
    let ok_strict = min_strict.is_none_or(|d| d == 0 || griesmer_ok(mu, strict_dim, d as usize));
    ok_all && ok_strict
}

/// All admissible packed words on `mu` nodes: weak 6, strict 8, weak 10,
/// then strict 16.
fn admissible_words(mu: usize) -> Vec<u64> {
    let class = |p: u64| match (p & 1, packed_weight(p)) {
        (1, 6) => 0,
        (0, 8) => 1,
        (1, 10) => 2,
        _ => 3,
    };
    let mut out: Vec<u64> = (0u64..(1 << mu))
        .flat_map(|support| [support << 1 | 1, support << 1])
        .filter(|&p| admissible_packed(p))
        .collect();
    out.sort_by_key(|&p| (class(p), p));
    out
}

/// Every canonical class of codes on `mu` nodes whose nonzero words are all
/// quartic-admissible, keyed by canonical form.
fn admissible_classes(mu: usize, options: ClassifyOptions) -> Result<Vec<CanonicalForm>> {
    let candidates = admissible_words(mu);
    let mut all = Vec::new();
    let mut level: BTreeMap<CanonicalForm, Vec<u64>> = BTreeMap::new();
    level.insert(canonical_form(&EvenSetCode::new(mu, &[])?)?, vec![]);
    loop {
        let extensions: Vec<(CanonicalForm, Vec<u64>)> = level
            .par_iter()
            .map(|(_, gens)| extend(mu, gens, &candidates, options))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut next: BTreeMap<CanonicalForm, Vec<u64>> = BTreeMap::new();
        for (form, gens) in extensions {
            next.entry(form).or_insert(gens);
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.keys().cloned());
        level = next;
    }
    Ok(all)
}

fn extend(
    mu: usize,
    gens: &[u64],
    candidates: &[u64],
    options: ClassifyOptions,
) -> Result<Vec<(CanonicalForm, Vec<u64>)>> {
    let words = span_words(gens);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for &x in candidates {
        // one representative per coset x + code, and x outside the code
        if words.iter().any(|&w| (x ^ w) < x) {
            continue;
        }
        if !words.iter().skip(1).all(|&w| admissible_packed(x ^ w)) {
            continue;
        }
        let mut new_gens = gens.to_vec();
        new_gens.push(x);
        if options.griesmer_pruning && !griesmer_consistent(mu, &span_words(&new_gens)) {
            continue;
        }
        let form = canonical_form(&EvenSetCode::from_independent_packed(mu, &new_gens))?;
        if seen.insert(form.clone()) {
            out.push((form, new_gens));
        }
    }
    Ok(out)
}

pub fn classify_quartic_codes(mu: usize) -> Result<ClassificationTable> {
    classify_quartic_codes_with(mu, ClassifyOptions::default())
}

pub fn classify_quartic_codes_with(mu: usize, options: ClassifyOptions) -> Result<ClassificationTable> {
    if !(1..=MAX_QUARTIC_NODES).contains(&mu) {
        return Err(Error::domain(format!("quartic node count must lie in 1..=16, got {mu}")));
    }
    let mut entries = Vec::new();
    let mut excluded = Vec::new();
    for form in admissible_classes(mu, options)? {
        let entry = ClassificationEntry::new(form)?;
        if meets_dimension_bounds(mu, entry.dim, entry.strict_dim) {
            entries.push(entry);
        } else {
            excluded.push(entry);
        }
    }
    let order = |a: &ClassificationEntry, b: &ClassificationEntry| (a.dim, &a.canonical).cmp(&(b.dim, &b.canonical));
    entries.sort_by(order);
    excluded.sort_by(order);
    Ok(ClassificationTable { mu, entries, excluded })
}
