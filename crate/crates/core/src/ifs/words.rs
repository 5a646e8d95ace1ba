use super::IfsSystem;
use crate::AffineMap2;
use std::fmt;

/// Finite word over the map indices. Letters are stored 0-based; the
/// display form and serialized form are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize + 1).collect()
    }

    /// `w` followed by `letter`.
    pub fn extended(&self, letter: u16) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(letter);
        Self(v)
    }

    /// `letter` followed by `w`.
    pub fn prefixed(&self, letter: u16) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Self(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.one_based().iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Lexicographic iterator over `{1..J}^k`.
#[derive(Clone, Debug)]
pub struct Words {
    alphabet: u16,
    next: Option<Vec<u16>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] + 1 < self.alphabet {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Word(cur))
    }
}

/// All words of length `k` in lexicographic order (`J^k` of them).
pub fn words(sys: &IfsSystem, k: usize) -> Words {
    Words { alphabet: sys.len() as u16, next: Some(vec![0; k]) }
}

/// `φ_w = φ_{w_1} ∘ … ∘ φ_{w_k}`; the empty word gives the identity.
pub fn map_of_word(sys: &IfsSystem, w: &Word) -> AffineMap2 {
    w.0.iter()
        .fold(AffineMap2::identity(), |acc, &l| acc.compose(&sys.maps()[l as usize]))
}
