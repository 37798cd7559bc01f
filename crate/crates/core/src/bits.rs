use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of 64-bit words needed for `n` bits.
#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A subset of `0..n` stored as packed 64-bit words.
///
/// Bits past `n` are always zero, so word-wise equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

/// A state is just a vertex set.
pub type State = VertexSet;

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.words.iter_mut().for_each(|w| *w = !0);
        s.trim();
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Self {
        let mut s = Self::empty(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Builds a set of width `n` from raw words; bits past `n` are dropped.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(n), 0);
        let mut s = VertexSet { n, words };
        s.trim();
        s
    }

    /// Low `n` bits of `mask` (n ≤ 64).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        Self::from_words(n, vec![mask])
    }

    fn trim(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    /// Width of the universe, not the number of members.
    #[inline]
    pub fn width(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// The set as one word, for widths up to 64.
    pub fn mask(&self) -> u64 {
        assert!(self.n <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn toggle(&mut self, v: usize) {
        assert!(v < self.n);
        self.words[v / 64] ^= 1 << (v % 64);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn first(&self) -> Option<usize> {
        first_bit(&self.words)
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let mut c = VertexSet {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        c.trim();
        c
    }

    pub fn xor_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn minus_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn xor(&self, other: &VertexSet) -> Self {
        let mut s = self.clone();
        s.xor_with(other);
        s
    }

    pub fn and(&self, other: &VertexSet) -> Self {
        let mut s = self.clone();
        s.and_with(other);
        s
    }

    pub fn or(&self, other: &VertexSet) -> Self {
        let mut s = self.clone();
        s.or_with(other);
        s
    }

    pub fn minus(&self, other: &VertexSet) -> Self {
        let mut s = self.clone();
        s.minus_with(other);
        s
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Same members, different width; members past the new width are dropped.
    pub fn resized(&self, n: usize) -> Self {
        Self::from_words(n, self.words.clone())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Deserializes as a bare list; the width is fixed up by the caller with [`VertexSet::resized`].
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        let n = v.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_iter(n, v))
    }
}

#[inline]
pub fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_stays_in_range() {
        let s = VertexSet::from_iter(70, [0, 65, 69]);
        let c = s.complement();
        assert_eq!(c.len(), 67);
        assert!(!c.contains(69));
        assert!(c.contains(68));
        assert_eq!(c.complement(), s);
    }

    #[test]
    fn iter_crosses_word_boundaries() {
        let s = VertexSet::from_iter(200, [3, 63, 64, 127, 199]);
        assert_eq!(s.to_vec(), vec![3, 63, 64, 127, 199]);
        assert_eq!(s.first(), Some(3));
        assert_eq!(VertexSet::empty(200).first(), None);
    }

    #[test]
    fn full_and_empty() {
        assert!(VertexSet::full(64).is_full());
        assert_eq!(VertexSet::full(65).len(), 65);
        assert!(VertexSet::empty(0).is_empty());
        assert!(VertexSet::full(0).is_empty());
    }

    #[test]
    fn display_is_braced_list() {
        assert_eq!(VertexSet::from_iter(5, [1, 3]).to_string(), "{1,3}");
    }
}
