//! Dense linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed into `u64` words; bit `i` of a row lives
//! in word `i / 64` at position `i % 64`. Unused high bits of the last word are
//! always zero, so word-wise equality and popcount are exact.
//!
//! Row reduction produces the reduced row echelon form with the leftmost
//! pivot chosen first. Kernel bases are read off the free columns in
//! ascending order, which makes every derived basis deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A vector in Z₂ⁿ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector with ones at the given positions. Repeated positions
    /// cancel in pairs.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.flip(i);
        }
        v
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

    /// Parses a string of `0`/`1` characters, leftmost character is index 0.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
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
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.ones().collect()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + t)
                }
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        xor_words(&mut self.words, &other.words);
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "and of vectors with different lengths");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        BitVector { len: self.len, words }
    }

    /// Standard inner product mod 2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        dot_words(&self.words, &other.words)
    }

    /// Number of positions where both vectors are 1.
    pub fn overlap(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Copies out coordinates `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len);
        let mut out = BitVector::zeros(len);
        for i in self.ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
pub(crate) fn dot_words(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
}

/// A dense row-major matrix over Z₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Gf2Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn from_bit_strs(cols: usize, rows: &[&str]) -> Option<Self> {
        let rows: Option<Vec<BitVector>> = rows.iter().map(|s| BitVector::from_bit_str(s)).collect();
        Self::from_rows(cols, &rows?).ok()
    }

    /// Builds a matrix whose column `c` has ones at `columns[c]` (mod 2).
    pub fn from_columns(rows: usize, columns: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for &r in col {
                m.flip(r, c);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD_BITS] ^= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_iter(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVector::from_words(self.cols, self.row_words(r).to_vec()).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix-vector product `self · v`, one output bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if dot_words(self.row_words(r), v.words()) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in BitVector::from_words(self.cols, self.row_words(r).to_vec()).ones() {
                let src = other.row_words(k).to_vec();
                xor_words(out.row_words_mut(r), &src);
            }
        }
        Ok(out)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(self)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// A basis of `{x : self · x = 0}`, one basis vector per free column
    /// (ascending). Equivalently the orthogonal complement of the row space.
    pub fn kernel_basis(&self) -> BitMatrix {
        self.echelon().kernel_basis()
    }

    /// Alias of [`BitMatrix::kernel_basis`] under the inner-product reading.
    pub fn orthogonal_complement(&self) -> BitMatrix {
        self.kernel_basis()
    }

    pub fn row_space_contains(&self, v: &BitVector) -> Result<bool, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.echelon().contains(v))
    }

    /// A basis of the row space (the nonzero rows of the RREF).
    pub fn row_basis(&self) -> BitMatrix {
        self.echelon().basis()
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.cols == other.cols && self.echelon().basis() == other.echelon().basis()
    }

    /// Solves `self · x = b`, returning the solution with all free variables
    /// set to zero, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if b.len() != self.rows {
            return Err(Gf2Error::LengthMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        // Row-reduce the augmented matrix [self | b].
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                aug.set(r, c, true);
            }
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in ech.pivots.iter().enumerate() {
            if ech.reduced.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of a matrix together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// The first `rank` rows are the nonzero RREF rows.
    reduced: BitMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &BitMatrix) -> Self {
        let mut a = m.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..a.cols {
            if next == a.rows {
                break;
            }
            let word = c / WORD_BITS;
            let mask = 1u64 << (c % WORD_BITS);
            let Some(p) = (next..a.rows).find(|&r| a.data[r * a.stride + word] & mask != 0) else {
                continue;
            };
            if p != next {
                for w in 0..a.stride {
                    a.data.swap(p * a.stride + w, next * a.stride + w);
                }
            }
            let pivot_row = a.row_words(next).to_vec();
            for r in 0..a.rows {
                if r != next && a.data[r * a.stride + word] & mask != 0 {
                    xor_words(a.row_words_mut(r), &pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        Self { reduced: a, pivots }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn cols(&self) -> usize {
        self.reduced.cols
    }

    pub fn basis(&self) -> BitMatrix {
        let mut b = BitMatrix::zeros(self.rank(), self.reduced.cols);
        let n = self.rank() * self.reduced.stride;
        b.data.copy_from_slice(&self.reduced.data[..n]);
        b
    }

    /// Reduces packed words in place against the basis. The result is zero
    /// exactly when the input lies in the row space.
    pub fn reduce_words(&self, v: &mut [u64]) {
        for (i, &p) in self.pivots.iter().enumerate() {
            if (v[p / WORD_BITS] >> (p % WORD_BITS)) & 1 == 1 {
                xor_words(v, self.reduced.row_words(i));
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.reduced.cols);
        let mut w = v.words().to_vec();
        self.reduce_words(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn kernel_basis(&self) -> BitMatrix {
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = BitMatrix::zeros(free.len(), cols);
        for (i, &f) in free.iter().enumerate() {
            k.set(i, f, true);
            for (r, &p) in self.pivots.iter().enumerate() {
                if self.reduced.get(r, f) {
                    k.set(i, p, true);
                }
            }
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[&str]) -> BitMatrix {
        BitMatrix::from_bit_strs(cols, rows).unwrap()
    }

    /// All Z₂ combinations of the rows, by brute force.
    fn span_by_enumeration(a: &BitMatrix) -> Vec<BitVector> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << a.rows()) {
            let mut v = BitVector::zeros(a.cols());
            for r in 0..a.rows() {
                if mask >> r & 1 == 1 {
                    v.xor_assign(&a.row(r));
                }
            }
            out.push(v);
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(2, 4).rank(), 0);
        let a = m(3, &["110", "011", "101"]);
        assert_eq!(span_by_enumeration(&a).len(), 4);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(3).kernel_basis().rows(), 0);
        let k = m(3, &["111"]).kernel_basis();
        assert_eq!(k.rows(), 2);
        let mut span = span_by_enumeration(&k);
        span.sort();
        let mut expect: Vec<BitVector> = ["000", "110", "101", "011"]
            .iter()
            .map(|s| BitVector::from_bit_str(s).unwrap())
            .collect();
        expect.sort();
        assert_eq!(span, expect);
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().rows(), 3);
    }

    #[test]
    fn kernel_basis_is_in_free_column_order() {
        // RREF of [111] has pivot 0; free columns 1, 2.
        let k = m(3, &["111"]).kernel_basis();
        assert_eq!(k.row(0), BitVector::from_bit_str("110").unwrap());
        assert_eq!(k.row(1), BitVector::from_bit_str("101").unwrap());
    }

    #[test]
    fn row_space_membership() {
        let a = m(3, &["110", "011"]);
        let q = |s: &str| a.row_space_contains(&BitVector::from_bit_str(s).unwrap()).unwrap();
        assert!(q("101"));
        assert!(!q("100"));
        assert!(q("000"));
        assert!(BitMatrix::zeros(0, 3).row_space_contains(&BitVector::zeros(3)).unwrap());
        assert_eq!(
            a.row_space_contains(&BitVector::zeros(4)),
            Err(Gf2Error::LengthMismatch { expected: 3, found: 4 })
        );
    }

    #[test]
    fn orthogonal_complement_examples() {
        let c = m(3, &["111"]).orthogonal_complement();
        assert_eq!(c.rows(), 2);
        for v in c.row_iter() {
            assert_eq!(v.weight() % 2, 0);
        }
        assert_eq!(BitMatrix::identity(3).orthogonal_complement().rows(), 0);
        assert!(BitMatrix::zeros(1, 3)
            .orthogonal_complement()
            .same_row_space(&BitMatrix::identity(3)));
    }

    #[test]
    fn empty_shapes() {
        let a = BitMatrix::zeros(0, 0);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().rows(), 0);
        let b = BitMatrix::zeros(0, 5);
        assert_eq!(b.kernel_basis().rows(), 5);
        let c = BitMatrix::zeros(4, 0);
        assert_eq!(c.rank(), 0);
        assert_eq!(c.transpose().rows(), 0);
    }

    #[test]
    fn solve_finds_particular_solution() {
        let a = m(3, &["110", "011"]);
        let b = BitVector::from_bit_str("11").unwrap();
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        let inconsistent = m(2, &["11", "11"]);
        assert_eq!(
            inconsistent.solve(&BitVector::from_bit_str("10").unwrap()).unwrap(),
            None
        );
    }

    #[test]
    fn words_straddle_boundary() {
        let mut v = BitVector::zeros(130);
        v.set(63, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.support(), vec![63, 64, 129]);
        assert_eq!(v.weight(), 3);
        let a = BitMatrix::from_rows(130, &[v.clone()]).unwrap();
        assert!(a.row_space_contains(&v).unwrap());
        assert_eq!(a.kernel_basis().rows(), 129);
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let mut a = BitMatrix::zeros(r, c);
                for (i, b) in bits.into_iter().enumerate() {
                    if b {
                        a.set(i / c.max(1), i % c.max(1), true);
                    }
                }
                a
            })
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(a in arb_matrix(12, 90)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn rank_nullity(a in arb_matrix(12, 90)) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.rows(), a.cols());
            prop_assert_eq!(k.rank(), k.rows());
            for x in k.row_iter() {
                prop_assert!(a.mul_vec(&x).unwrap().is_zero());
            }
        }

        #[test]
        fn complement_is_involution(a in arb_matrix(10, 70)) {
            let cc = a.orthogonal_complement().orthogonal_complement();
            prop_assert!(cc.same_row_space(&a));
        }

        #[test]
        fn membership_matches_enumeration(a in arb_matrix(8, 12), probe in proptest::collection::vec(any::<bool>(), 12)) {
            let span = span_by_enumeration(&a);
            let v = BitVector::from_bools(&probe[..a.cols()]);
            prop_assert_eq!(a.row_space_contains(&v).unwrap(), span.contains(&v));
            for s in &span {
                prop_assert!(a.row_space_contains(s).unwrap());
            }
        }
    }
}
