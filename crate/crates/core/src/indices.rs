//! MZV indices and their combinatorics.
//!
//! Indices use the increasing-summation convention throughout the crate:
//! `ζ(α₁,…,αₙ) = Σ_{0<m₁<⋯<mₙ} 1/(m₁^α₁ ⋯ mₙ^αₙ)`, so the exponent on the
//! largest summation variable is the *last* entry and an index is admissible
//! (the series converges) iff its last entry is at least 2. Most of the
//! literature writes the reverse order; keep that in mind when comparing.
//!
//! The iterated-integral word of an index reads from the innermost variable
//! outwards: `Y X^{α₁−1} Y X^{α₂−1} ⋯ Y X^{αₙ−1}` with `X = dt/t` and
//! `Y = dt/(1−t)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyIndex);
        }
        if parts.contains(&0) {
            return Err(Error::ZeroPart(parts));
        }
        Ok(Index(parts))
    }

    /// Builds an index that must also be admissible.
    pub fn admissible(parts: Vec<u32>) -> Result<Self> {
        let index = Index::new(parts)?;
        index.require_admissible()?;
        Ok(index)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_some_and(|&last| last >= 2)
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(self.clone()))
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

/// Parses the comma-separated text form, e.g. `1,3`.
impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyIndex);
        }
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid index entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `dt/t`
    X,
    /// `dt/(1−t)`
    Y,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse the word and exchange `X` and `Y`.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.swap()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            f.write_str(match letter {
                Letter::X => "X",
                Letter::Y => "Y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                other => Err(Error::MalformedWord(format!("unexpected letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

pub fn index_to_word(index: &Index) -> Word {
    let mut letters = Vec::with_capacity(index.weight() as usize);
    for &part in index.parts() {
        letters.push(Letter::Y);
        letters.extend(std::iter::repeat_n(Letter::X, part as usize - 1));
    }
    Word(letters)
}

/// Reads the index back off a word: each `Y` opens a new entry and each `X`
/// extends the current one.
pub fn word_to_index(word: &Word) -> Result<Index> {
    let mut parts: Vec<u32> = Vec::new();
    for letter in word.letters() {
        match letter {
            Letter::Y => parts.push(1),
            Letter::X => match parts.last_mut() {
                Some(last) => {
                    *last = last
                        .checked_add(1)
                        .ok_or_else(|| Error::MalformedWord("entry overflows u32".into()))?
                }
                None => return Err(Error::MalformedWord("word must start with Y".into())),
            },
        }
    }
    if parts.is_empty() {
        return Err(Error::MalformedWord("empty word".into()));
    }
    Index::new(parts)
}

/// The dual index: word reversed with `X ↔ Y`. Weight is preserved and
/// `depth(dual) = weight − depth`.
pub fn dual(index: &Index) -> Result<Index> {
    index.require_admissible()?;
    word_to_index(&index_to_word(index).dual())
}

/// A positive composition with its declared total and part count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    total: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>, total: u32, count: usize) -> Result<Self> {
        if parts.len() != count {
            return Err(Error::Shape(format!(
                "composition {parts:?} has {} parts, expected {count}",
                parts.len()
            )));
        }
        if parts.contains(&0) {
            return Err(Error::ZeroPart(parts));
        }
        let sum: u64 = parts.iter().map(|&p| u64::from(p)).sum();
        if sum != u64::from(total) {
            return Err(Error::Shape(format!(
                "composition {parts:?} sums to {sum}, expected {total}"
            )));
        }
        Ok(Composition { parts, total })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// All compositions of `total` into exactly `parts` positive parts, in
/// lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Result<Vec<Composition>> {
    if parts == 0 || (total as usize) < parts {
        return Err(Error::EmptyDomain(format!(
            "no compositions of {total} into {parts} positive parts"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts);
    fill_compositions(total, parts, 1, &mut current, &mut |c| {
        out.push(Composition {
            parts: c.to_vec(),
            total,
        })
    });
    Ok(out)
}

/// All tuples of `parts` nonnegative integers summing to `total`, in
/// lexicographic order.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = Vec::with_capacity(parts);
    fill_compositions(total, parts, 0, &mut current, &mut |c| out.push(c.to_vec()));
    out
}

fn fill_compositions(
    remaining: u32,
    slots: usize,
    min_part: u32,
    current: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if slots == 1 {
        current.push(remaining);
        emit(current);
        current.pop();
        return;
    }
    let reserve = min_part * (slots as u32 - 1);
    for first in min_part..=remaining - reserve {
        current.push(first);
        fill_compositions(remaining - first, slots - 1, min_part, current, emit);
        current.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Junction {
    /// Append the next block's entries.
    Concat,
    /// Add the next block's first entry onto the current last entry.
    Merge,
}

/// How a sequence of composition blocks is glued into one index.
///
/// `caps[i]` adds 1 to the final entry of block `i` once that block has been
/// placed. A cap and a merge that land on the same entry simply add up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockPattern {
    pub name: &'static str,
    pub junctions: &'static [Junction],
    pub caps: &'static [bool],
}

use Junction::{Concat, Merge};

/// `ζ(α₀,…,α_{a₁}+1, β₀,…,β_{a₂}+1)`
pub const T1_A: BlockPattern = BlockPattern {
    name: "T1-A",
    junctions: &[Concat],
    caps: &[true, true],
};

/// `ζ(α₀,…,α_{a₁}, β₀,…,β_{a₂}+γ₀, γ₁,…,γ_{a₃}+1)`
pub const T1_B: BlockPattern = BlockPattern {
    name: "T1-B",
    junctions: &[Concat, Merge],
    caps: &[false, false, true],
};

/// `ζ(α…+1, β…+1, γ…+1)`; coefficient `P₁`.
pub const T2_G1: BlockPattern = BlockPattern {
    name: "T2-G1",
    junctions: &[Concat, Concat],
    caps: &[true, true, true],
};

/// `ζ(α…, β…+γ₀, γ₁…+1, δ…+1)`; coefficients `P₂ + P₃`.
pub const T2_G2: BlockPattern = BlockPattern {
    name: "T2-G2",
    junctions: &[Concat, Merge, Concat],
    caps: &[false, false, true, true],
};

/// `ζ(α…, β…+γ₀, γ₁…, δ…+ε₀, ε₁…+1)`; coefficients `P₄ + P₅ + P₇ + P₁₂`.
pub const T2_G3: BlockPattern = BlockPattern {
    name: "T2-G3",
    junctions: &[Concat, Merge, Concat, Merge],
    caps: &[false, false, false, false, true],
};

/// `ζ(α…+1, β…, γ…+δ₀, δ₁…+1)`; coefficients `P₆ + P₁₁`.
pub const T2_G4: BlockPattern = BlockPattern {
    name: "T2-G4",
    junctions: &[Concat, Concat, Merge],
    caps: &[true, false, false, true],
};

/// `ζ(α…, β…, γ…+δ₀, δ₁…+ε₀, ε₁…+1)`; coefficients
/// `P₈ + P₉ + P₁₀ + P₁₃ + P₁₄ + P₁₅`.
pub const T2_G5: BlockPattern = BlockPattern {
    name: "T2-G5",
    junctions: &[Concat, Concat, Merge, Merge],
    caps: &[false, false, false, false, true],
};

pub const ALL_PATTERNS: [BlockPattern; 7] = [T1_A, T1_B, T2_G1, T2_G2, T2_G3, T2_G4, T2_G5];

impl BlockPattern {
    pub fn blocks(&self) -> usize {
        self.caps.len()
    }

    pub fn caps_count(&self) -> usize {
        self.caps.iter().filter(|&&c| c).count()
    }

    pub fn merges_count(&self) -> usize {
        self.junctions.iter().filter(|&&j| j == Merge).count()
    }

    fn check_shape(&self) -> Result<()> {
        if self.caps.is_empty() || self.junctions.len() + 1 != self.caps.len() {
            return Err(Error::Shape(format!(
                "pattern {} has {} blocks but {} junctions",
                self.name,
                self.caps.len(),
                self.junctions.len()
            )));
        }
        if self.caps.last() != Some(&true) {
            return Err(Error::Shape(format!(
                "pattern {}: final block must be capped",
                self.name
            )));
        }
        Ok(())
    }

    /// The `(parts, total)` slot of each block for exponent tuples `a`, `b`:
    /// block `j` is a composition of `a_j + b_j + 1` into `a_j + 1` parts.
    pub fn slots(&self, a: &[u32], b: &[u32]) -> Result<Vec<(usize, u32)>> {
        if a.len() != self.blocks() || b.len() != self.blocks() {
            return Err(Error::Shape(format!(
                "pattern {} needs {} exponent pairs, got a={} b={}",
                self.name,
                self.blocks(),
                a.len(),
                b.len()
            )));
        }
        Ok(a.iter()
            .zip(b)
            .map(|(&aj, &bj)| (aj as usize + 1, aj + bj + 1))
            .collect())
    }

    /// Every index obtained by assembling all block compositions for the
    /// exponent tuples `a`, `b` (cartesian product, lexicographic in the
    /// blocks).
    pub fn expand(&self, a: &[u32], b: &[u32]) -> Result<Vec<Index>> {
        let per_block = self
            .slots(a, b)?
            .into_iter()
            .map(|(parts, total)| compositions(total, parts))
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        let mut chosen: Vec<&Composition> = Vec::with_capacity(per_block.len());
        self.expand_rec(&per_block, &mut chosen, &mut out)?;
        Ok(out)
    }

    fn expand_rec<'a>(
        &self,
        per_block: &'a [Vec<Composition>],
        chosen: &mut Vec<&'a Composition>,
        out: &mut Vec<Index>,
    ) -> Result<()> {
        let depth = chosen.len();
        if depth == per_block.len() {
            out.push(assemble_refs(chosen, self)?);
            return Ok(());
        }
        for comp in &per_block[depth] {
            chosen.push(comp);
            self.expand_rec(per_block, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// Glues composition blocks into one index according to `pattern`.
pub fn assemble(blocks: &[Composition], pattern: &BlockPattern) -> Result<Index> {
    let refs: Vec<&Composition> = blocks.iter().collect();
    assemble_refs(&refs, pattern)
}

fn assemble_refs(blocks: &[&Composition], pattern: &BlockPattern) -> Result<Index> {
    pattern.check_shape()?;
    if blocks.len() != pattern.blocks() {
        return Err(Error::Shape(format!(
            "pattern {} takes {} blocks, got {}",
            pattern.name,
            pattern.blocks(),
            blocks.len()
        )));
    }
    let mut entries: Vec<u32> = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        let parts = block.parts();
        let Some((&first, rest)) = parts.split_first() else {
            return Err(Error::Shape(format!("block {i} is empty")));
        };
        if i > 0 && pattern.junctions[i - 1] == Merge {
            *entries.last_mut().expect("previous block placed") += first;
        } else {
            entries.push(first);
        }
        entries.extend_from_slice(rest);
        if pattern.caps[i] {
            *entries.last_mut().expect("block placed") += 1;
        }
    }
    Index::new(entries)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
