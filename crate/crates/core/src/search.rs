//! Minimum-weight search for vectors that satisfy a linear constraint but lie
//! outside a given subspace.
//!
//! Both the stabilizer distance and the classical coset problems behind CSS
//! distances and combinatorial systoles reduce to this: enumerate supports in
//! order of increasing size, and on each support try every assignment of a
//! nonzero "letter" per position. A letter carries the syndrome it adds (its
//! contribution to the constraint) and the bits it sets in the candidate
//! vector. Leaves with zero syndrome are tested against the excluded span.
//!
//! The search for a fixed weight splits by the smallest position in the
//! support, so callers can run partitions independently and take the
//! partition with the lowest index that produced a hit.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf2::{words_for, xor_words, BitMatrix, BitVector, Echelon};

#[derive(Clone, Debug)]
struct LetterTable {
    /// `syndromes[pos * letters + l]` packed into `syn_words` words each.
    syndromes: Vec<u64>,
    /// Vector bits set by each letter, as indices into the candidate.
    bits: Vec<[usize; 2]>,
    bit_counts: Vec<u8>,
}

/// A prepared search problem.
#[derive(Clone, Debug)]
pub struct CosetSearch {
    positions: usize,
    letters: usize,
    syn_words: usize,
    vec_len: usize,
    table: LetterTable,
    /// Letters sorted by (syndrome, position, letter) for the last-step lookup.
    by_syndrome: Vec<(usize, usize)>,
    exclude: Echelon,
}

impl CosetSearch {
    /// Vectors `x ∈ Z₂ⁿ` with `constraint · x = 0` and `x ∉ rowspace(exclude)`.
    pub fn classical(constraint: &BitMatrix, exclude: &BitMatrix) -> Self {
        let n = constraint.cols();
        assert_eq!(
            exclude.cols(),
            n,
            "constraint and excluded span live in different spaces"
        );
        let syn_words = words_for(constraint.rows()).max(1);
        let mut syndromes = vec![0u64; n * syn_words];
        for r in 0..constraint.rows() {
            for c in constraint.row(r).ones() {
                syndromes[c * syn_words + r / 64] |= 1u64 << (r % 64);
            }
        }
        let table = LetterTable {
            syndromes,
            bits: (0..n).map(|j| [j, 0]).collect(),
            bit_counts: vec![1; n],
        };
        Self::finish(n, 1, syn_words, n, table, exclude.echelon())
    }

    /// Symplectic vectors `e ∈ Z₂^{2n}` with `e * g = 0` for every generator
    /// row `g` and `e ∉ span(generators)`. Weight counts qubits.
    pub fn symplectic(generators: &BitMatrix) -> Self {
        assert!(
            generators.cols().is_multiple_of(2),
            "symplectic rows must have even length"
        );
        let n = generators.cols() / 2;
        let m = generators.rows();
        let syn_words = words_for(m).max(1);
        // Letter order per qubit: X (1|0), Z (0|1), Y (1|1).
        let mut syndromes = vec![0u64; n * 3 * syn_words];
        for r in 0..m {
            let row = generators.row(r);
            let (word, mask) = (r / 64, 1u64 << (r % 64));
            for j in 0..n {
                // (a|b) * (α|β) = a·β + b·α
                let hits_x = row.get(n + j);
                let hits_z = row.get(j);
                if hits_x {
                    syndromes[(j * 3) * syn_words + word] |= mask;
                }
                if hits_z {
                    syndromes[(j * 3 + 1) * syn_words + word] |= mask;
                }
                if hits_x ^ hits_z {
                    syndromes[(j * 3 + 2) * syn_words + word] |= mask;
                }
            }
        }
        let mut bits = Vec::with_capacity(n * 3);
        let mut bit_counts = Vec::with_capacity(n * 3);
        for j in 0..n {
            bits.push([j, 0]);
            bit_counts.push(1);
            bits.push([n + j, 0]);
            bit_counts.push(1);
            bits.push([j, n + j]);
            bit_counts.push(2);
        }
        let table = LetterTable {
            syndromes,
            bits,
            bit_counts,
        };
        Self::finish(n, 3, syn_words, 2 * n, table, generators.echelon())
    }

    fn finish(
        positions: usize,
        letters: usize,
        syn_words: usize,
        vec_len: usize,
        table: LetterTable,
        exclude: Echelon,
    ) -> Self {
        let mut by_syndrome: Vec<(usize, usize)> =
            (0..positions).flat_map(|p| (0..letters).map(move |l| (p, l))).collect();
        let syn = |&(p, l): &(usize, usize)| {
            let k = (p * letters + l) * syn_words;
            table.syndromes[k..k + syn_words].to_vec()
        };
        by_syndrome.sort_by(|a, b| syn(a).cmp(&syn(b)).then(a.cmp(b)));
        Self {
            positions,
            letters,
            syn_words,
            vec_len,
            table,
            by_syndrome,
            exclude,
        }
    }

    /// Number of support positions (bits for classical, qubits for symplectic).
    pub fn positions(&self) -> usize {
        self.positions
    }

    pub fn vector_len(&self) -> usize {
        self.vec_len
    }

    #[inline]
    fn syndrome(&self, pos: usize, letter: usize) -> &[u64] {
        let k = (pos * self.letters + letter) * self.syn_words;
        &self.table.syndromes[k..k + self.syn_words]
    }

    /// Searches supports of exactly `weight` positions whose smallest
    /// position is `first`. Returns the first hit in enumeration order.
    pub fn search_partition(&self, weight: usize, first: usize) -> Option<BitVector> {
        if weight == 0 || first >= self.positions || first + weight > self.positions {
            return None;
        }
        let mut levels = vec![0u64; (weight + 1) * self.syn_words];
        let mut chosen = Vec::with_capacity(weight);
        for letter in 0..self.letters {
            let s = self.syndrome(first, letter);
            levels[self.syn_words..2 * self.syn_words].copy_from_slice(s);
            chosen.push((first, letter));
            if let Some(hit) = self.descend(first + 1, weight - 1, 1, &mut levels, &mut chosen) {
                return Some(hit);
            }
            chosen.pop();
        }
        None
    }

    fn descend(
        &self,
        start: usize,
        remaining: usize,
        depth: usize,
        levels: &mut [u64],
        chosen: &mut Vec<(usize, usize)>,
    ) -> Option<BitVector> {
        let w = self.syn_words;
        if remaining == 0 {
            let acc = &levels[depth * w..(depth + 1) * w];
            if acc.iter().all(|&x| x == 0) {
                return self.accept(chosen);
            }
            return None;
        }
        if remaining == 1 {
            // The last letter must cancel the accumulated syndrome exactly.
            let acc = levels[depth * w..(depth + 1) * w].to_vec();
            let lo = self
                .by_syndrome
                .partition_point(|&(p, l)| self.syndrome(p, l) < acc.as_slice());
            for &(p, l) in &self.by_syndrome[lo..] {
                if self.syndrome(p, l) != acc.as_slice() {
                    break;
                }
                if p < start {
                    continue;
                }
                chosen.push((p, l));
                let hit = self.accept(chosen);
                chosen.pop();
                if hit.is_some() {
                    return hit;
                }
            }
            return None;
        }
        for pos in start..=(self.positions - remaining) {
            for letter in 0..self.letters {
                let (head, tail) = levels.split_at_mut((depth + 1) * w);
                let next = &mut tail[..w];
                next.copy_from_slice(&head[depth * w..(depth + 1) * w]);
                xor_words(next, self.syndrome(pos, letter));
                chosen.push((pos, letter));
                let hit = self.descend(pos + 1, remaining - 1, depth + 1, levels, chosen);
                chosen.pop();
                if hit.is_some() {
                    return hit;
                }
            }
        }
        None
    }

    fn accept(&self, chosen: &[(usize, usize)]) -> Option<BitVector> {
        let mut v = BitVector::zeros(self.vec_len);
        for &(p, l) in chosen {
            let k = p * self.letters + l;
            for &b in &self.table.bits[k][..self.table.bit_counts[k] as usize] {
                v.flip(b);
            }
        }
        let mut words = v.words().to_vec();
        self.exclude.reduce_words(&mut words);
        if words.iter().all(|&x| x == 0) {
            None
        } else {
            Some(v)
        }
    }

    /// All partitions of one weight, lowest `first` wins.
    pub fn search_weight(&self, weight: usize) -> Option<BitVector> {
        (0..self.positions).find_map(|first| self.search_partition(weight, first))
    }

    /// Minimal weight `≤ max_weight` with a witness, or `None`.
    pub fn run(&self, max_weight: usize) -> Option<(usize, BitVector)> {
        (1..=max_weight.min(self.positions)).find_map(|w| self.search_weight(w).map(|v| (w, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn classical_even_weight_code() {
        // x ∈ Z₂⁴ orthogonal to 1111 and outside span{1111}: weight 2.
        let h = BitMatrix::from_bit_strs(4, &["1111"]).unwrap();
        let s = CosetSearch::classical(&h, &h);
        let (w, v) = s.run(4).unwrap();
        assert_eq!(w, 2);
        assert_eq!(v.to_string(), "1100");
    }

    #[test]
    fn nothing_outside_full_span() {
        let h = BitMatrix::zeros(0, 3);
        let s = CosetSearch::classical(&h, &BitMatrix::identity(3));
        assert_eq!(s.run(3), None);
    }

    #[test]
    fn partitions_cover_the_search() {
        let h = BitMatrix::from_bit_strs(5, &["11000", "01100", "00110", "00011"]).unwrap();
        let s = CosetSearch::classical(&h, &BitMatrix::zeros(0, 5));
        // Only 11111 satisfies all parity checks.
        assert_eq!(s.search_weight(4), None);
        assert_eq!(s.search_partition(5, 0).unwrap().to_string(), "11111");
        assert_eq!(s.search_partition(5, 1), None);
    }
}
