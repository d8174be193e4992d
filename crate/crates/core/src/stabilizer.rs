//! Stabilizer groups: validation, parameters and exact distance.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex;
use num_rational::Ratio;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::{DenseMatrix, PauliElement, PauliError, MAX_DENSE_QUBITS};
use crate::search::CosetSearch;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error("generator {index} acts on {found} qubits, expected {expected}")]
    SizeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {0} has an imaginary phase and does not square to +I")]
    PhaseNotReal(usize),
    #[error("generators {0} and {1} anticommute")]
    AntiCommuting(usize, usize),
    #[error("generator {0} is a product of earlier generators")]
    Dependent(usize),
    #[error("the group contains -I (forced by generator {0})")]
    MinusIdentity(usize),
    #[error("code encodes no logical qubits; distance undefined")]
    ZeroLogicalQubits,
    #[error("no logical operator of weight <= {max_weight}")]
    NotFound { max_weight: usize },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// `[[n, k, d]]` with `d` present once computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

impl CodeParameters {
    pub fn rate(&self) -> Ratio<u64> {
        Ratio::new(self.k as u64, self.n.max(1) as u64)
    }

    pub fn relative_distance(&self) -> Option<Ratio<u64>> {
        self.d.map(|d| Ratio::new(d as u64, self.n.max(1) as u64))
    }

    pub fn with_distance(self, d: usize) -> Self {
        Self { d: Some(d), ..self }
    }
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[[{},{},{}]]", self.n, self.k, d),
            None => write!(f, "[[{},{},?]]", self.n, self.k),
        }
    }
}

/// Minimal-weight logical operator found by [`StabilizerCode::distance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance {
    pub d: usize,
    /// Symplectic vector `(α|β)` of a minimal logical operator.
    pub witness: BitVector,
}

/// An independent, commuting set of Hermitian Pauli generators with `-I ∉ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliElement>,
    check: BitMatrix,
}

impl StabilizerCode {
    /// Validates a generator list on `n` qubits.
    ///
    /// Dependence and `-I` are detected together: generators are row-reduced
    /// one at a time while carrying the full Pauli product (with phase) of
    /// every reduced row. A generator that reduces to the identity exposes a
    /// relation `g_j · ∏ g_i = ±I`; `+I` means it was dependent, `-I` means
    /// the group contains `-I`.
    pub fn new(n: usize, generators: Vec<PauliElement>) -> Result<Self, StabilizerError> {
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(StabilizerError::SizeMismatch {
                    index: i,
                    expected: n,
                    found: g.n(),
                });
            }
        }
        if let Some(i) = generators.iter().position(|g| !g.is_hermitian()) {
            return Err(StabilizerError::PhaseNotReal(i));
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes_with(&generators[j])? {
                    return Err(StabilizerError::AntiCommuting(i, j));
                }
            }
        }

        // Reduced rows, each with its pivot column and the Pauli product it stands for.
        let mut reduced: Vec<(usize, PauliElement)> = Vec::new();
        for (j, g) in generators.iter().enumerate() {
            let mut acc = g.clone();
            for (pivot, row) in &reduced {
                if acc.symplectic().get(*pivot) {
                    acc = acc.multiply(row)?;
                }
            }
            let first = acc.symplectic().ones().next();
            match first {
                Some(pivot) => {
                    // Keep earlier rows reduced at the new pivot.
                    for (_, row) in reduced.iter_mut() {
                        if row.symplectic().get(pivot) {
                            *row = row.multiply(&acc)?;
                        }
                    }
                    reduced.push((pivot, acc));
                }
                None if acc.phase_exp() == 2 => return Err(StabilizerError::MinusIdentity(j)),
                None => return Err(StabilizerError::Dependent(j)),
            }
        }

        let rows: Vec<BitVector> = generators.iter().map(PauliElement::symplectic).collect();
        let check = BitMatrix::from_rows(2 * n, &rows).expect("lengths checked");
        Ok(Self { n, generators, check })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of encoded qubits, `n - l`.
    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliElement] {
        &self.generators
    }

    /// The `l × 2n` matrix of symplectic images.
    pub fn check_matrix(&self) -> &BitMatrix {
        &self.check
    }

    pub fn parameters(&self) -> CodeParameters {
        CodeParameters {
            n: self.n,
            k: self.k(),
            d: None,
        }
    }

    /// The prepared logical-operator search, shared with parallel drivers.
    pub fn logical_search(&self) -> Result<CosetSearch, StabilizerError> {
        if self.k() == 0 {
            return Err(StabilizerError::ZeroLogicalQubits);
        }
        Ok(CosetSearch::symplectic(&self.check))
    }

    /// Minimal weight of a vector in the centralizer of the stabilizer but
    /// outside its span, searching weights `1..=max_weight`.
    pub fn distance(&self, max_weight: usize) -> Result<Distance, StabilizerError> {
        let search = self.logical_search()?;
        search
            .run(max_weight)
            .map(|(d, witness)| Distance { d, witness })
            .ok_or(StabilizerError::NotFound { max_weight })
    }

    /// Dimension of the joint +1 eigenspace, from the dense projector.
    ///
    /// `Q = ∏ (I + g_j)` equals `2^l` times the code projector, so the
    /// dimension is `trace(Q) / 2^l`, computed exactly.
    pub fn dense_fixed_dim(&self) -> Result<usize, StabilizerError> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(PauliError::TooLarge(self.n).into());
        }
        let dim = 1usize << self.n;
        let id = DenseMatrix::identity(dim);
        let mut q = id.clone();
        for g in &self.generators {
            q = q.mul(&id.add(&g.dense_matrix()?));
        }
        let tr = q.trace();
        let scale = 1i64 << self.generators.len();
        debug_assert_eq!(tr.im, 0);
        debug_assert_eq!(tr.re % scale, 0);
        debug_assert_eq!(q.mul(&q), q.scale(Complex::new(scale, 0)));
        Ok((tr.re / scale) as usize)
    }
}

/// Validates a generator list; see [`StabilizerCode::new`].
pub fn validate_group(n: usize, generators: Vec<PauliElement>) -> Result<StabilizerCode, StabilizerError> {
    StabilizerCode::new(n, generators)
}

/// Vector of twisted products of `error` with each generator row.
pub fn syndrome(check: &BitMatrix, error: &BitVector) -> BitVector {
    let n = check.cols() / 2;
    let swapped = error.slice(n, n).concat(&error.slice(0, n));
    check.mul_vec(&swapped).expect("error length matches check matrix")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code(words: &[&str]) -> Result<StabilizerCode, StabilizerError> {
        let gens: Vec<PauliElement> = words.iter().map(|w| w.parse().unwrap()).collect();
        let n = gens.first().map_or(0, PauliElement::n);
        StabilizerCode::new(n, gens)
    }

    const FIVE_QUBIT: [&str; 4] = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];

    #[test]
    fn validation_examples() {
        let c = code(&["XX", "ZZ"]).unwrap();
        assert_eq!((c.n(), c.k()), (2, 0));
        assert_eq!(code(&["XI", "XI"]), Err(StabilizerError::Dependent(1)));
        assert_eq!(code(&["XI", "ZI"]), Err(StabilizerError::AntiCommuting(0, 1)));
        assert_eq!(code(&["XX", "ZZ", "YY"]), Err(StabilizerError::MinusIdentity(2)));
        assert_eq!(code(&["XX", "ZZ", "-YY"]), Err(StabilizerError::Dependent(2)));
        assert_eq!(code(&["iXX"]), Err(StabilizerError::PhaseNotReal(0)));
        assert_eq!(code(&["-II"]), Err(StabilizerError::MinusIdentity(0)));
        assert_eq!(code(&["II"]), Err(StabilizerError::Dependent(0)));
        assert!(matches!(
            StabilizerCode::new(2, vec!["X".parse().unwrap()]),
            Err(StabilizerError::SizeMismatch { .. })
        ));
        assert_eq!(code(&["Z", "-Z"]), Err(StabilizerError::MinusIdentity(1)));
    }

    #[test]
    fn parameters_examples() {
        assert_eq!(code(&["XX", "ZZ"]).unwrap().parameters().k, 0);
        let rep = code(&["ZZI", "IZZ"]).unwrap();
        assert_eq!(rep.parameters().k, 1);
        assert_eq!(rep.dense_fixed_dim().unwrap(), 2);
        let empty = StabilizerCode::new(1, vec![]).unwrap();
        assert_eq!(empty.parameters().k, 1);
        assert_eq!(*empty.parameters().rate().numer(), 1);
    }

    #[test]
    fn distance_examples() {
        let rep = code(&["ZZI", "IZZ"]).unwrap();
        let d = rep.distance(3).unwrap();
        assert_eq!(d.d, 1);
        let five = code(&FIVE_QUBIT).unwrap();
        assert_eq!(five.distance(5).unwrap().d, 3);
        assert_eq!(code(&["XX"]).unwrap().distance(2).unwrap().d, 1);
        assert_eq!(
            code(&["XX", "ZZ"]).unwrap().distance(2),
            Err(StabilizerError::ZeroLogicalQubits)
        );
        assert_eq!(five.distance(2), Err(StabilizerError::NotFound { max_weight: 2 }));
    }

    /// Brute force over every symplectic vector.
    fn distance_oracle(c: &StabilizerCode) -> usize {
        let n = c.n();
        let span = c.check_matrix().echelon();
        let mut best = usize::MAX;
        for bits in 1u32..(1 << (2 * n)) {
            let e = BitVector::from_bools(&(0..2 * n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
            if syndrome(c.check_matrix(), &e).is_zero() && !span.contains(&e) {
                best = best.min(PauliElement::from_symplectic(&e).unwrap().weight());
            }
        }
        best
    }

    #[test]
    fn five_qubit_distance_matches_exhaustive() {
        let five = code(&FIVE_QUBIT).unwrap();
        assert_eq!(distance_oracle(&five), 3);
        let w = five.distance(5).unwrap().witness;
        assert!(syndrome(five.check_matrix(), &w).is_zero());
        assert!(!five.check_matrix().row_space_contains(&w).unwrap());
    }

    #[test]
    fn dense_fixed_dim_examples() {
        assert_eq!(code(&["X"]).unwrap().dense_fixed_dim().unwrap(), 1);
        assert_eq!(code(&["ZZ", "XX"]).unwrap().dense_fixed_dim().unwrap(), 1);
        assert_eq!(StabilizerCode::new(2, vec![]).unwrap().dense_fixed_dim().unwrap(), 4);
        assert_eq!(code(&FIVE_QUBIT).unwrap().dense_fixed_dim().unwrap(), 2);
        assert!(StabilizerCode::new(7, vec![]).unwrap().dense_fixed_dim().is_err());
    }

    #[test]
    fn five_qubit_syndromes_separate_correctable_errors() {
        // Weight-1 errors have distinct syndromes unless their product is a stabilizer.
        let five = code(&FIVE_QUBIT).unwrap();
        let span = five.check_matrix().echelon();
        let mut errors = vec![BitVector::zeros(10)];
        for q in 0..5 {
            for (a, b) in [(true, false), (false, true), (true, true)] {
                let mut e = BitVector::zeros(10);
                e.set(q, a);
                e.set(5 + q, b);
                errors.push(e);
            }
        }
        for (i, e) in errors.iter().enumerate() {
            for f in &errors[i + 1..] {
                let same = syndrome(five.check_matrix(), e) == syndrome(five.check_matrix(), f);
                assert!(!same || span.contains(&e.xor(f)));
            }
        }
    }

    fn random_word(rng: &mut ChaCha8Rng, n: usize) -> PauliElement {
        let letters: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)]).collect();
        let sign = if rng.gen_bool(0.5) { "-" } else { "+" };
        alloc::format!("{sign}{letters}").parse().unwrap()
    }
    use alloc::string::String;

    /// Subset-product check for -I, independent of the elimination transcript.
    fn contains_minus_identity(gens: &[PauliElement]) -> Option<bool> {
        let n = gens[0].n();
        let mut dependent = false;
        for mask in 1u32..(1 << gens.len()) {
            let mut acc = PauliElement::identity(n);
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.multiply(g).unwrap();
                }
            }
            if acc.is_identity_up_to_phase() {
                if acc.phase_exp() == 2 {
                    return Some(true);
                }
                dependent = true;
            }
        }
        if dependent {
            Some(false)
        } else {
            None
        }
    }

    #[test]
    fn minus_identity_transcript_matches_subset_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = [0usize; 3];
        for _ in 0..3000 {
            let n = rng.gen_range(1..=4);
            let l = rng.gen_range(1..=n + 2).min(n);
            let gens: Vec<PauliElement> = (0..l).map(|_| random_word(&mut rng, n)).collect();
            let commuting = (0..l).all(|i| (i + 1..l).all(|j| gens[i].commutes_with(&gens[j]).unwrap()));
            if !commuting {
                continue;
            }
            match (StabilizerCode::new(n, gens.clone()), contains_minus_identity(&gens)) {
                (Ok(_), None) => seen[0] += 1,
                (Err(StabilizerError::MinusIdentity(_)), Some(true)) => seen[1] += 1,
                (Err(StabilizerError::Dependent(_)), Some(false)) => seen[2] += 1,
                (got, oracle) => panic!("{gens:?}: {got:?} vs oracle {oracle:?}"),
            }
        }
        assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
    }

    #[test]
    fn distance_invariant_under_generator_moves() {
        let base: Vec<PauliElement> = FIVE_QUBIT.iter().map(|w| w.parse().unwrap()).collect();
        let mut permuted = base.clone();
        permuted.reverse();
        let mut combined = base.clone();
        combined[0] = combined[0].multiply(&combined[2]).unwrap();
        for gens in [permuted, combined] {
            let c = StabilizerCode::new(5, gens).unwrap();
            assert_eq!(c.distance(5).unwrap().d, 3);
        }
    }

    #[test]
    fn random_codes_match_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 60 {
            let n = rng.gen_range(1..=4);
            let mut gens: Vec<PauliElement> = Vec::new();
            for _ in 0..rng.gen_range(0..n) {
                let g = random_word(&mut rng, n);
                let mut trial = gens.clone();
                trial.push(g);
                if StabilizerCode::new(n, trial.clone()).is_ok() {
                    gens = trial;
                }
            }
            let c = StabilizerCode::new(n, gens).unwrap();
            assert_eq!(c.dense_fixed_dim().unwrap(), 1 << c.k());
            if c.k() >= 1 {
                let d = c.distance(n).unwrap().d;
                assert_eq!(d, distance_oracle(&c));
                assert!((1..=n).contains(&d));
            }
            checked += 1;
        }
    }
}
