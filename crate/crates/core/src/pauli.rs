//! The n-qubit Pauli group and its symplectic image in Z₂^{2n}.
//!
//! An element is stored as `i^k · ⊗ⱼ Z^{βⱼ} X^{αⱼ}`, so the pair `(1|1)` at a
//! qubit is the operator `ZX = iY`. The public [`PauliElement::phase_exp`]
//! reports the phase relative to the written word in the letters
//! `I, X, Y, Z`, which differs from `k` by one per `Y`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};

/// Gaussian integers; entries of Pauli matrices and their products.
pub type GaussianInt = Complex<i64>;

pub const MAX_DENSE_QUBITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("empty Pauli word")]
    EmptyWord,
    #[error("invalid character {0:?} in Pauli word")]
    InvalidLetter(char),
    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("symplectic vector has odd length {0}")]
    OddLength(usize),
    #[error("dense matrices are limited to {MAX_DENSE_QUBITS} qubits, got {0}")]
    TooLarge(usize),
    #[error("generator rows are linearly dependent")]
    DependentRows,
    #[error("target index {index} out of range for {count} generators")]
    TargetOutOfRange { index: usize, count: usize },
    #[error("no vector satisfies the requested commutation pattern")]
    Unsolvable,
}

/// A single-qubit letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliElement {
    x: BitVector,
    z: BitVector,
    /// Exponent of i in front of the `Z^β X^α` word.
    zx_phase: u8,
}

impl PauliElement {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            zx_phase: 0,
        }
    }

    /// Builds `i^phase_exp · (letter word)`.
    pub fn from_letters(letters: &[Letter], phase_exp: u8) -> Self {
        let n = letters.len();
        let mut x = BitVector::zeros(n);
        let mut z = BitVector::zeros(n);
        let mut y_count = 0u32;
        for (j, l) in letters.iter().enumerate() {
            match l {
                Letter::I => {}
                Letter::X => x.set(j, true),
                Letter::Z => z.set(j, true),
                Letter::Y => {
                    x.set(j, true);
                    z.set(j, true);
                    y_count += 1;
                }
            }
        }
        // Y = -i·ZX, so each Y contributes i³ relative to the ZX word.
        let zx_phase = ((phase_exp as u32 + 3 * y_count) % 4) as u8;
        Self { x, z, zx_phase }
    }

    /// The Hermitian representative `+(word)` of a symplectic vector `(α|β)`.
    pub fn from_symplectic(v: &BitVector) -> Result<Self, PauliError> {
        if !v.len().is_multiple_of(2) {
            return Err(PauliError::OddLength(v.len()));
        }
        let n = v.len() / 2;
        let x = v.slice(0, n);
        let z = v.slice(n, n);
        let y_count = x.overlap(&z);
        Ok(Self {
            x,
            z,
            zx_phase: ((3 * y_count) % 4) as u8,
        })
    }

    /// X-type element `X^v`.
    pub fn x_type(v: &BitVector) -> Self {
        Self {
            x: v.clone(),
            z: BitVector::zeros(v.len()),
            zx_phase: 0,
        }
    }

    /// Z-type element `Z^v`.
    pub fn z_type(v: &BitVector) -> Self {
        Self {
            x: BitVector::zeros(v.len()),
            z: v.clone(),
            zx_phase: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &BitVector {
        &self.x
    }

    pub fn z_part(&self) -> &BitVector {
        &self.z
    }

    /// Phase exponent relative to the letter word: the element equals
    /// `i^phase_exp · ⊗ letters`.
    pub fn phase_exp(&self) -> u8 {
        ((self.zx_phase as usize + self.x.overlap(&self.z)) % 4) as u8
    }

    /// Phase exponent relative to the `Z^β X^α` word.
    pub fn zx_phase_exp(&self) -> u8 {
        self.zx_phase
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n())
            .map(|j| Letter::from_bits(self.x.get(j), self.z.get(j)))
            .collect()
    }

    /// The image `(α|β)` in Z₂^{2n}; forgets the phase.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        let n = self.n();
        let mut support = self.x.clone();
        for j in self.z.ones() {
            support.set(j, true);
        }
        debug_assert!(support.len() == n);
        support.weight()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Hermitian elements square to +I; this is the case iff the letter
    /// phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase_exp().is_multiple_of(2)
    }

    pub fn multiply(&self, other: &PauliElement) -> Result<PauliElement, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::SizeMismatch(self.n(), other.n()));
        }
        // Z^β X^α Z^β' X^α' = (-1)^{α·β'} Z^{β+β'} X^{α+α'}
        let swap = self.x.overlap(&other.z);
        let phase = (self.zx_phase as usize + other.zx_phase as usize + 2 * swap) % 4;
        Ok(PauliElement {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            zx_phase: phase as u8,
        })
    }

    /// Multiplies by `i^k`.
    pub fn scaled(&self, k: u8) -> PauliElement {
        PauliElement {
            x: self.x.clone(),
            z: self.z.clone(),
            zx_phase: (self.zx_phase + k) % 4,
        }
    }

    pub fn commutes_with(&self, other: &PauliElement) -> Result<bool, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::SizeMismatch(self.n(), other.n()));
        }
        Ok(!(self.x.dot(&other.z) ^ other.x.dot(&self.z)))
    }

    /// The 2ⁿ×2ⁿ matrix, with qubit 0 as the leftmost Kronecker factor.
    pub fn dense_matrix(&self) -> Result<DenseMatrix, PauliError> {
        let n = self.n();
        if n > MAX_DENSE_QUBITS {
            return Err(PauliError::TooLarge(n));
        }
        let mut m = DenseMatrix::scalar(i_pow(self.zx_phase));
        for j in 0..n {
            m = m.kron(&single_qubit_zx(self.x.get(j), self.z.get(j)));
        }
        Ok(m)
    }
}

/// `(α, β) * (α', β') = α·β' + α'·β (mod 2)`. Zero iff the corresponding
/// Pauli elements commute.
pub fn twisted_product(u: &BitVector, v: &BitVector) -> Result<bool, PauliError> {
    if u.len() != v.len() {
        return Err(PauliError::SizeMismatch(u.len(), v.len()));
    }
    if !u.len().is_multiple_of(2) {
        return Err(PauliError::OddLength(u.len()));
    }
    let n = u.len() / 2;
    let (ua, ub) = (u.slice(0, n), u.slice(n, n));
    let (va, vb) = (v.slice(0, n), v.slice(n, n));
    Ok(ua.dot(&vb) ^ va.dot(&ub))
}

/// Applies the block swap Λ: `(α|β) ↦ (β|α)`.
pub fn lambda(v: &BitVector) -> BitVector {
    let n = v.len() / 2;
    v.slice(n, n).concat(&v.slice(0, n))
}

/// Finds `x` with `rows[j] * x = [j == target]` for every generator row.
pub fn anticommuting_partner(gens: &BitMatrix, target: usize) -> Result<BitVector, PauliError> {
    if !gens.cols().is_multiple_of(2) {
        return Err(PauliError::OddLength(gens.cols()));
    }
    if target >= gens.rows() {
        return Err(PauliError::TargetOutOfRange {
            index: target,
            count: gens.rows(),
        });
    }
    if gens.rank() != gens.rows() {
        return Err(PauliError::DependentRows);
    }
    let swapped: Vec<BitVector> = gens.row_iter().map(|r| lambda(&r)).collect();
    let system = BitMatrix::from_rows(gens.cols(), &swapped).expect("row lengths agree");
    let rhs = BitVector::unit(gens.rows(), target);
    system
        .solve(&rhs)
        .expect("rhs length matches")
        .ok_or(PauliError::Unsolvable)
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase_exp() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliElement {
    type Err = PauliError;

    /// Accepts an optional sign prefix (`+`, `-`, `i`, `+i`, `-i`) followed by
    /// letters from `IXYZ`. Tensor symbols `⊗` and whitespace are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body: String = s.chars().filter(|c| !c.is_whitespace() && *c != '⊗').collect();
        let (phase, rest) = if let Some(r) = body.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = body.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = body.strip_prefix('i') {
            (1, r)
        } else if let Some(r) = body.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = body.strip_prefix('-') {
            (2, r)
        } else {
            (0, body.as_str())
        };
        if rest.is_empty() {
            return Err(PauliError::EmptyWord);
        }
        let letters = rest
            .chars()
            .map(|c| match c {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                other => Err(PauliError::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PauliElement::from_letters(&letters, phase))
    }
}

/// Parses a Pauli word; see [`PauliElement::from_str`].
pub fn encode(word: &str) -> Result<PauliElement, PauliError> {
    word.parse()
}

fn i_pow(k: u8) -> GaussianInt {
    match k % 4 {
        0 => Complex::new(1, 0),
        1 => Complex::new(0, 1),
        2 => Complex::new(-1, 0),
        _ => Complex::new(0, -1),
    }
}

fn single_qubit_zx(x: bool, z: bool) -> DenseMatrix {
    let o = Complex::new(0, 0);
    let p = Complex::new(1, 0);
    let m = Complex::new(-1, 0);
    let entries = match (x, z) {
        (false, false) => [p, o, o, p],
        (true, false) => [o, p, p, o],
        (false, true) => [p, o, o, m],
        // ZX
        (true, true) => [o, p, m, o],
    };
    DenseMatrix {
        dim: 2,
        entries: entries.to_vec(),
    }
}

/// Square matrix over the Gaussian integers, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    dim: usize,
    entries: Vec<GaussianInt>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex::new(0, 0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex::new(1, 0);
        }
        Self { dim, entries }
    }

    pub fn scalar(c: GaussianInt) -> Self {
        Self {
            dim: 1,
            entries: vec![c],
        }
    }

    pub fn from_entries(dim: usize, entries: Vec<GaussianInt>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> GaussianInt {
        self.entries[r * self.dim + c]
    }

    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let d = self.dim * other.dim;
        let mut entries = vec![Complex::new(0, 0); d * d];
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a == Complex::new(0, 0) {
                    continue;
                }
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        entries[(r1 * other.dim + r2) * d + c1 * other.dim + c2] = a * other.get(r2, c2);
                    }
                }
            }
        }
        DenseMatrix { dim: d, entries }
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut entries = vec![Complex::new(0, 0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == Complex::new(0, 0) {
                    continue;
                }
                for c in 0..d {
                    entries[r * d + c] += a * other.get(k, c);
                }
            }
        }
        DenseMatrix { dim: d, entries }
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        DenseMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: GaussianInt) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> GaussianInt {
        (0..self.dim)
            .map(|i| self.get(i, i))
            .fold(Complex::new(0, 0), |a, b| a + b)
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let d = self.dim;
        let mut entries = vec![Complex::new(0, 0); d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.get(r, c).conj();
            }
        }
        DenseMatrix { dim: d, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliElement {
        s.parse().unwrap()
    }

    fn c(re: i64, im: i64) -> GaussianInt {
        Complex::new(re, im)
    }

    #[test]
    fn encode_worked_example() {
        let e = p("XYXZI");
        assert_eq!(e.x_part().to_string(), "11100");
        assert_eq!(e.z_part().to_string(), "01010");
        assert_eq!(e.symplectic().to_string(), "1110001010");
        assert_eq!(e.phase_exp(), 0);
    }

    #[test]
    fn encode_edge_cases() {
        let e = p("III");
        assert!(e.symplectic().is_zero());
        assert_eq!(e.symplectic().len(), 6);
        assert_eq!(e.phase_exp(), 0);
        assert_eq!(p("ZI").symplectic().to_string(), "0010");
        assert_eq!("".parse::<PauliElement>(), Err(PauliError::EmptyWord));
        assert_eq!("-".parse::<PauliElement>(), Err(PauliError::EmptyWord));
        assert_eq!("XQ".parse::<PauliElement>(), Err(PauliError::InvalidLetter('Q')));
        assert_eq!(p("X ⊗ Y ⊗ Z"), p("XYZ"));
    }

    #[test]
    fn multiplication_table() {
        // ZX = iY
        let zx = p("Z").multiply(&p("X")).unwrap();
        assert_eq!(zx.symplectic().to_string(), "11");
        assert_eq!(zx.phase_exp(), 1);
        assert_eq!(zx.to_string(), "+iY");
        let xx = p("X").multiply(&p("X")).unwrap();
        assert!(xx.is_identity_up_to_phase());
        assert_eq!(xx.phase_exp(), 0);
        let yy = p("XZ").multiply(&p("ZX")).unwrap();
        assert_eq!(yy, p("YY"));
        assert_eq!(yy.phase_exp(), 0);
        assert_eq!(p("X").multiply(&p("XX")), Err(PauliError::SizeMismatch(1, 2)));
    }

    #[test]
    fn product_matches_dense_oracle() {
        let a = p("XZ");
        let b = p("ZX");
        let dense = a.dense_matrix().unwrap().mul(&b.dense_matrix().unwrap());
        assert_eq!(dense, p("YY").dense_matrix().unwrap());
    }

    #[test]
    fn weights() {
        assert_eq!(p("III").weight(), 0);
        assert_eq!(p("XYXZI").weight(), 4);
        assert_eq!(p("ZI").weight(), 1);
    }

    #[test]
    fn twisted_product_examples() {
        let bv = |s: &str| BitVector::from_bit_str(s).unwrap();
        assert!(!twisted_product(&bv("1011"), &bv("1011")).unwrap());
        assert!(twisted_product(&p("X").symplectic(), &p("Z").symplectic()).unwrap());
        assert!(!twisted_product(&p("XX").symplectic(), &p("ZZ").symplectic()).unwrap());
        assert_eq!(twisted_product(&bv("101"), &bv("101")), Err(PauliError::OddLength(3)));
        assert_eq!(
            twisted_product(&bv("10"), &bv("1010")),
            Err(PauliError::SizeMismatch(2, 4))
        );
        // Dense oracle: XZ = -ZX.
        let xz = p("X").dense_matrix().unwrap().mul(&p("Z").dense_matrix().unwrap());
        let zx = p("Z").dense_matrix().unwrap().mul(&p("X").dense_matrix().unwrap());
        assert_eq!(xz, zx.scale(c(-1, 0)));
    }

    fn gens(words: &[&str]) -> BitMatrix {
        let rows: Vec<BitVector> = words.iter().map(|w| p(w).symplectic()).collect();
        BitMatrix::from_rows(rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn partner_examples() {
        let g = gens(&["Z"]);
        let x = anticommuting_partner(&g, 0).unwrap();
        assert_eq!(x, p("X").symplectic());

        let g = gens(&["ZI", "IZ"]);
        let x = anticommuting_partner(&g, 1).unwrap();
        assert!(!twisted_product(&g.row(0), &x).unwrap());
        assert!(twisted_product(&g.row(1), &x).unwrap());
        assert_eq!(x, p("IX").symplectic());

        let x = anticommuting_partner(&gens(&["X"]), 0).unwrap();
        assert_eq!(x, p("Z").symplectic());

        assert_eq!(
            anticommuting_partner(&gens(&["XI", "XI"]), 0),
            Err(PauliError::DependentRows)
        );
        assert!(matches!(
            anticommuting_partner(&gens(&["X"]), 1),
            Err(PauliError::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn dense_examples() {
        assert_eq!(p("I").dense_matrix().unwrap(), DenseMatrix::identity(2));
        let x = p("X").dense_matrix().unwrap();
        assert_eq!(
            x,
            DenseMatrix::from_entries(2, vec![c(0, 0), c(1, 0), c(1, 0), c(0, 0)])
        );
        let zx = p("ZX").dense_matrix().unwrap();
        let o = c(0, 0);
        let one = c(1, 0);
        let m1 = c(-1, 0);
        let expect = DenseMatrix::from_entries(4, vec![o, one, o, o, one, o, o, o, o, o, o, m1, o, o, m1, o]);
        assert_eq!(zx, expect);
        assert_eq!(p("IIIIIII").dense_matrix(), Err(PauliError::TooLarge(7)));
        let y = p("Y").dense_matrix().unwrap();
        assert_eq!(y, DenseMatrix::from_entries(2, vec![o, c(0, -1), c(0, 1), o]));
    }

    #[test]
    fn display_round_trips_signed_words() {
        for w in ["+XYXZI", "-ZZ", "+iY", "-iXZ", "+I"] {
            assert_eq!(p(w).to_string(), w);
        }
        assert_eq!(p("XX").to_string(), "+XX");
        assert_eq!(p("iX").to_string(), "+iX");
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliElement> {
        (proptest::collection::vec(0u8..4, n), 0u8..4).prop_map(|(ls, ph)| {
            let letters: Vec<Letter> = ls
                .into_iter()
                .map(|l| [Letter::I, Letter::X, Letter::Y, Letter::Z][l as usize])
                .collect();
            PauliElement::from_letters(&letters, ph)
        })
    }

    fn arb_pair() -> impl Strategy<Value = (PauliElement, PauliElement)> {
        (1usize..=4).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n)))
    }

    proptest! {
        #[test]
        fn image_is_homomorphism((a, b) in arb_pair()) {
            let ab = a.multiply(&b).unwrap();
            prop_assert_eq!(ab.symplectic(), a.symplectic().xor(&b.symplectic()));
        }

        #[test]
        fn product_agrees_with_dense((a, b) in arb_pair()) {
            let ab = a.multiply(&b).unwrap();
            let dense = a.dense_matrix().unwrap().mul(&b.dense_matrix().unwrap());
            prop_assert_eq!(ab.dense_matrix().unwrap(), dense);
        }

        #[test]
        fn commutation_bridge((a, b) in arb_pair()) {
            let da = a.dense_matrix().unwrap();
            let db = b.dense_matrix().unwrap();
            let sign = if twisted_product(&a.symplectic(), &b.symplectic()).unwrap() { -1 } else { 1 };
            prop_assert_eq!(da.mul(&db), db.mul(&da).scale(c(sign, 0)));
            prop_assert_eq!(a.commutes_with(&b).unwrap(), sign == 1);
        }

        #[test]
        fn square_is_plus_or_minus_identity(a in (1usize..=4).prop_flat_map(arb_pauli)) {
            let sq = a.multiply(&a).unwrap();
            prop_assert!(sq.is_identity_up_to_phase());
            prop_assert!(sq.phase_exp() == 0 || sq.phase_exp() == 2);
            let d = DenseMatrix::identity(1 << a.n());
            let expect = if sq.phase_exp() == 0 { d } else { d.scale(c(-1, 0)) };
            prop_assert_eq!(a.dense_matrix().unwrap().mul(&a.dense_matrix().unwrap()), expect);
        }

        #[test]
        fn dense_is_unitary(a in (1usize..=4).prop_flat_map(arb_pauli)) {
            let d = a.dense_matrix().unwrap();
            prop_assert_eq!(d.mul(&d.adjoint()), DenseMatrix::identity(d.dim()));
        }

        #[test]
        fn alternating(v in proptest::collection::vec(any::<bool>(), 0..40)) {
            let mut bits = v.clone();
            if bits.len() % 2 == 1 { bits.pop(); }
            let u = BitVector::from_bools(&bits);
            prop_assert!(!twisted_product(&u, &u).unwrap());
        }

        #[test]
        fn text_round_trip(a in (1usize..=8).prop_flat_map(arb_pauli)) {
            prop_assert_eq!(a.to_string().parse::<PauliElement>().unwrap(), a);
        }
    }
}
