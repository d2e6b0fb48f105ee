//! Packed GF(2) vectors and the small amount of row reduction the codes need.

use std::fmt;

#[inline]
pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub(crate) fn flip(words: &mut [u64], i: usize) {
    words[i / 64] ^= 1 << (i % 64);
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Parity of the bitwise AND, i.e. the GF(2) inner product.
#[inline]
pub(crate) fn dot(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() & 1 == 1
}

#[inline]
pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
pub(crate) fn is_zero(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

/// Fixed-length bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; word_count(len)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(len));
        Self { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        get(&self.words, i)
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        if get(&self.words, i) != value {
            flip(&mut self.words, i);
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.words)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| get(&self.words, i))
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        dot(&self.words, &other.words)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
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

/// Reduced row-echelon basis of a list of rows, remembering which input rows
/// combine into each basis row.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    /// (pivot column, reduced row, combination of input rows)
    rows: Vec<(usize, BitVec, BitVec)>,
    dependent: Vec<usize>,
    input_len: usize,
}

impl Echelon {
    pub fn new(input: &[BitVec]) -> Self {
        let m = input.len();
        let mut rows: Vec<(usize, BitVec, BitVec)> = Vec::new();
        let mut dependent = Vec::new();
        for (i, row) in input.iter().enumerate() {
            let mut r = row.clone();
            let mut combo = BitVec::from_indices(m, &[i]);
            for (p, basis, c) in &rows {
                if r.get(*p) {
                    r.xor_assign(basis);
                    combo.xor_assign(c);
                }
            }
            let pivot = r.ones().next();
            match pivot {
                Some(p) => {
                    // keep the basis fully reduced at the new pivot
                    for (_, basis, c) in rows.iter_mut() {
                        if basis.get(p) {
                            basis.xor_assign(&r);
                            c.xor_assign(&combo);
                        }
                    }
                    rows.push((p, r, combo));
                }
                None => dependent.push(i),
            }
        }
        Self { rows, dependent, input_len: m }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Input rows that were linear combinations of earlier rows.
    pub fn dependent(&self) -> &[usize] {
        &self.dependent
    }

    /// Reduces `v` against the basis. Returns the residual and the set of
    /// input rows whose sum was removed; the residual is zero iff `v` lies in
    /// the row span.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut r = v.clone();
        let mut combo = BitVec::zeros(self.input_len);
        for (p, basis, c) in &self.rows {
            if r.get(*p) {
                r.xor_assign(basis);
                combo.xor_assign(c);
            }
        }
        (r, combo)
    }

    /// `(pivot, row)` pairs of the reduced basis.
    pub fn basis(&self) -> impl Iterator<Item = (usize, &BitVec)> {
        self.rows.iter().map(|(p, r, _)| (*p, r))
    }
}

/// Basis of `{ v : row · v = 0 for every row }`, vectors of length `ncols`.
pub(crate) fn nullspace(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let ech = Echelon::new(rows);
    let pivots: Vec<(usize, &BitVec)> = ech.rows.iter().map(|(p, r, _)| (*p, r)).collect();
    let is_pivot = {
        let mut v = vec![false; ncols];
        for (p, _) in &pivots {
            v[*p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::zeros(ncols);
        v.set(free, true);
        for (p, row) in &pivots {
            if row.get(free) {
                v.set(*p, true);
            }
        }
        basis.push(v);
    }
    basis
}
