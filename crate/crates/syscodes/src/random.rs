//! Seeded generators for random stabilizer groups and CSS codes.

use rand::Rng;
use syscodes_core::gf2::{BitMatrix, BitVector};
use syscodes_core::pauli::{twisted_product, PauliElement};
use syscodes_core::{CssCode, StabilizerCode};

/// Default seed for every randomized check.
pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

fn random_bits<R: Rng>(rng: &mut R, len: usize) -> BitVector {
    BitVector::from_bools(&(0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

/// A valid stabilizer group on `n` qubits with `l` generators, `l` drawn
/// uniformly from `0..=n`. Each generator is a random symplectic vector that
/// commutes with the earlier ones and is independent of them, with a random
/// sign.
pub fn random_stabilizer<R: Rng>(rng: &mut R, n: usize) -> StabilizerCode {
    let target = rng.gen_range(0..=n);
    let mut rows: Vec<BitVector> = Vec::with_capacity(target);
    let mut gens = Vec::with_capacity(target);
    let mut span = BitMatrix::zeros(0, 2 * n);
    while rows.len() < target {
        let v = random_bits(rng, 2 * n);
        if v.is_zero() || rows.iter().any(|r| twisted_product(r, &v).expect("same length")) {
            continue;
        }
        if span.row_space_contains(&v).expect("same length") {
            continue;
        }
        span = span
            .vstack(&BitMatrix::from_rows(2 * n, std::slice::from_ref(&v)).unwrap())
            .unwrap();
        let g = PauliElement::from_symplectic(&v).expect("even length");
        gens.push(if rng.gen_bool(0.5) { g.scaled(2) } else { g });
        rows.push(v);
    }
    StabilizerCode::new(n, gens).expect("independent commuting Hermitian generators")
}

/// A CSS code on `n` bits with at least one logical qubit.
pub fn random_css<R: Rng>(rng: &mut R, n: usize) -> CssCode {
    loop {
        let mut v1 = BitMatrix::zeros(0, n);
        for _ in 0..rng.gen_range(0..n) {
            let trial = v1
                .vstack(&BitMatrix::from_rows(n, &[random_bits(rng, n)]).unwrap())
                .unwrap();
            if trial.rank() == trial.rows() {
                v1 = trial;
            }
        }
        let perp = v1.orthogonal_complement();
        let mut v2 = BitMatrix::zeros(0, n);
        for _ in 0..rng.gen_range(0..n - v1.rows()) {
            let mut r = BitVector::zeros(n);
            for i in 0..perp.rows() {
                if rng.gen_bool(0.5) {
                    r.xor_assign(&perp.row(i));
                }
            }
            let trial = v2.vstack(&BitMatrix::from_rows(n, &[r]).unwrap()).unwrap();
            if trial.rank() == trial.rows() && v1.rows() + trial.rows() < n {
                v2 = trial;
            }
        }
        if let Ok(c) = CssCode::new(v1, v2) {
            return c;
        }
    }
}
