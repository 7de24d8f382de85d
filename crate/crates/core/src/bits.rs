//! Dense binary vectors and F2 row reduction.
//!
//! [`BitVec`] stores bits little-endian inside `u64` words; bit 0 is the
//! leftmost coordinate when printed. [`EchelonBasis`] keeps a set of vectors
//! in reduced row echelon form, which doubles as a canonical representation
//! of the subspace they span.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = !0;
        }
        v.clear_tail();
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn hamming_distance(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Cyclic shift to the right: bit `i` moves to position `(i + s) mod len`.
    pub fn rotate_right(&self, s: usize) -> BitVec {
        if self.len == 0 {
            return self.clone();
        }
        let s = s % self.len;
        let mut out = BitVec::zeros(self.len);
        for i in self.ones_iter() {
            out.set((i + s) % self.len, true);
        }
        out
    }

    /// Copies `bits` into positions `offset..offset + bits.len()`.
    pub fn write_slice(&mut self, offset: usize, bits: &BitVec) {
        debug_assert!(offset + bits.len <= self.len);
        for i in bits.ones_iter() {
            self.set(offset + i, true);
        }
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Reads up to 64 bits starting at `start` as an integer (bit `start` is the LSB).
    pub fn read_word(&self, start: usize, width: usize) -> u64 {
        debug_assert!(width <= WORD && start + width <= self.len);
        if width == 0 {
            return 0;
        }
        let (wi, off) = (start / WORD, start % WORD);
        let mut v = self.words[wi] >> off;
        if off + width > WORD {
            v |= self.words[wi + 1] << (WORD - off);
        }
        if width < WORD {
            v &= (1u64 << width) - 1;
        }
        v
    }

    /// XORs the low `width` bits of `value` into positions starting at `start`.
    pub fn xor_word(&mut self, start: usize, width: usize, value: u64) {
        debug_assert!(width <= WORD && start + width <= self.len);
        let value = if width < WORD {
            value & ((1u64 << width) - 1)
        } else {
            value
        };
        let (wi, off) = (start / WORD, start % WORD);
        self.words[wi] ^= value << off;
        if off != 0 && off + width > WORD {
            self.words[wi + 1] ^= value >> (WORD - off);
        }
    }

    pub fn permuted(&self, images: &[usize]) -> BitVec {
        debug_assert_eq!(images.len(), self.len);
        let mut out = BitVec::zeros(self.len);
        for i in self.ones_iter() {
            out.set(images[i], true);
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::parse(format!("invalid bit '{other}' in \"{s}\""))),
            }
        }
        Ok(v)
    }
}

/// A subspace of F2^n kept in reduced row echelon form.
///
/// Pivots are the first set bit of each row; rows are sorted by pivot and
/// every pivot column is zero in all other rows, so two bases span the same
/// space exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a, I: IntoIterator<Item = &'a BitVec>>(len: usize, rows: I) -> Self {
        let mut b = Self::new(len);
        for r in rows {
            b.insert(r.clone());
        }
        b
    }

    /// Length of the vectors the basis lives in.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len, "vector length does not match basis");
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }
}
