//! Binary words over `{0,1,⋆}` with circular indexing, plus the adjacency
//! encoder that turns a directed graph into a machine input.

use std::fmt;
use thiserror::Error;

/// A tape symbol. `⋆` marks the start of the circular input; it is never
/// stored in a word, only read back at position 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Star,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Star => '⋆',
        }
    }

    /// All three symbols, in the order used by wildcard expansion.
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Star];
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A letter of a binary word: `0` or `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn symbol(self) -> Symbol {
        match self {
            Bit::Zero => Symbol::Zero,
            Bit::One => Symbol::One,
        }
    }

    pub fn from_bool(b: bool) -> Bit {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid character {found:?} at position {position}: words contain only '0' and '1'")]
    Alphabet { position: usize, found: char },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphEncodeError {
    #[error("cannot encode an empty graph (n = 0)")]
    EmptyGraph,
    #[error("adjacency table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
}

/// The binary word `⋆a₁…a_k`. Only the letters are stored; `⋆` is implicit
/// at position 0 and positions reduce modulo `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    bits: Vec<Bit>,
}

impl BinaryWord {
    pub fn new(bits: Vec<Bit>) -> Self {
        BinaryWord { bits }
    }

    pub fn empty() -> Self {
        BinaryWord { bits: Vec::new() }
    }

    /// Number of letters `k` (the `⋆` is not counted).
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[Bit] {
        &self.bits
    }

    /// Letter at position `t` for `1 <= t <= k`.
    pub fn bit(&self, t: usize) -> Bit {
        self.bits[t - 1]
    }

    /// Symbol under position `i`, reduced modulo `k + 1`; position 0 is `⋆`.
    pub fn symbol_at(&self, i: usize) -> Symbol {
        let m = i % (self.bits.len() + 1);
        if m == 0 {
            Symbol::Star
        } else {
            self.bits[m - 1].symbol()
        }
    }

    /// Every word of length `k ≤ 24`, in lexicographic order.
    pub fn all_of_len(k: usize) -> Vec<BinaryWord> {
        assert!(k <= 24, "enumeration is for short words");
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u32..(1 << k) {
            let bits = (0..k)
                .map(|i| Bit::from_bool(mask >> (k - 1 - i) & 1 == 1))
                .collect();
            out.push(BinaryWord::new(bits));
        }
        out
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{}", b.symbol())?;
        }
        Ok(())
    }
}

/// Parses a plain `'0'/'1'` string; the empty string is the empty list `⋆`.
pub fn parse_word(text: &str) -> Result<BinaryWord, WordError> {
    let mut bits = Vec::with_capacity(text.len());
    for (position, ch) in text.chars().enumerate() {
        match ch {
            '0' => bits.push(Bit::Zero),
            '1' => bits.push(Bit::One),
            found => return Err(WordError::Alphabet { position, found }),
        }
    }
    Ok(BinaryWord::new(bits))
}

/// Encodes an `n×n` adjacency table as the word
/// `⋆ 0ⁿ 1 R₁ 1 R₂ 1 … 1 Rₙ 1`, where row `Rᵢ` lists the bits
/// `a_{i1} 0 a_{i2} 0 … 0 a_{in}` separated by single zeros.
pub fn encode_graph(adjacency: &[Vec<bool>]) -> Result<BinaryWord, GraphEncodeError> {
    let n = adjacency.len();
    if n == 0 {
        return Err(GraphEncodeError::EmptyGraph);
    }
    for (row, r) in adjacency.iter().enumerate() {
        if r.len() != n {
            return Err(GraphEncodeError::NotSquare { row, len: r.len(), expected: n });
        }
    }
    let mut bits = Vec::with_capacity(2 * n * n + n + 1);
    bits.extend(std::iter::repeat_n(Bit::Zero, n));
    bits.push(Bit::One);
    for row in adjacency {
        for (j, &a) in row.iter().enumerate() {
            if j > 0 {
                bits.push(Bit::Zero);
            }
            bits.push(Bit::from_bool(a));
        }
        bits.push(Bit::One);
    }
    Ok(BinaryWord::new(bits))
}

/// Recovers the adjacency table from an encoded word by position arithmetic.
/// Returns `None` if the word is not a graph encoding.
pub fn decode_graph(word: &BinaryWord) -> Option<Vec<Vec<bool>>> {
    let bits = word.bits();
    let n = bits.iter().take_while(|b| **b == Bit::Zero).count();
    if n == 0 || word.len() != 2 * n * n + n + 1 {
        return None;
    }
    let mut pos = n;
    if bits[pos] != Bit::One {
        return None;
    }
    pos += 1;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            if j > 0 {
                if bits[pos] != Bit::Zero {
                    return None;
                }
                pos += 1;
            }
            row.push(bits[pos] == Bit::One);
            pos += 1;
        }
        if bits[pos] != Bit::One {
            return None;
        }
        pos += 1;
        table.push(row);
    }
    Some(table)
}
