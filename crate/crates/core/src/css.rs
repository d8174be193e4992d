//! CSS codes from a pair of orthogonal subspaces of Z₂ⁿ.
//!
//! Rows of `v1` become X-type generators and rows of `v2` Z-type generators.

use alloc::vec::Vec;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::pauli::PauliElement;
use crate::search::CosetSearch;
use crate::stabilizer::{CodeParameters, StabilizerCode, StabilizerError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    V1,
    V2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CssError {
    #[error("v1 has {v1} columns but v2 has {v2}")]
    ColumnMismatch { v1: usize, v2: usize },
    #[error("row {0} of v1 and row {1} of v2 have odd overlap")]
    NotOrthogonal(usize, usize),
    #[error("rows of {0:?} are linearly dependent")]
    Dependent(Block),
    #[error("code encodes no logical qubits; distance undefined")]
    ZeroLogicalQubits,
    #[error("no logical operator of weight <= {max_weight}")]
    NotFound { max_weight: usize },
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// Which Pauli type a minimal logical operator has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicalKind {
    /// `X^x` with `x ∈ V₂^⊥ \ V₁`.
    X,
    /// `Z^z` with `z ∈ V₁^⊥ \ V₂`.
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssDistance {
    pub d: usize,
    pub kind: LogicalKind,
    pub witness: BitVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    n: usize,
    v1: BitMatrix,
    v2: BitMatrix,
    stabilizer: StabilizerCode,
}

impl CssCode {
    pub fn new(v1: BitMatrix, v2: BitMatrix) -> Result<Self, CssError> {
        if v1.cols() != v2.cols() {
            return Err(CssError::ColumnMismatch {
                v1: v1.cols(),
                v2: v2.cols(),
            });
        }
        let n = v1.cols();
        for i in 0..v1.rows() {
            let a = v1.row(i);
            for j in 0..v2.rows() {
                if a.dot(&v2.row(j)) {
                    return Err(CssError::NotOrthogonal(i, j));
                }
            }
        }
        if v1.rank() != v1.rows() {
            return Err(CssError::Dependent(Block::V1));
        }
        if v2.rank() != v2.rows() {
            return Err(CssError::Dependent(Block::V2));
        }
        let generators: Vec<PauliElement> = v1
            .row_iter()
            .map(|r| PauliElement::x_type(&r))
            .chain(v2.row_iter().map(|r| PauliElement::z_type(&r)))
            .collect();
        let stabilizer = StabilizerCode::new(n, generators)?;
        Ok(Self { n, v1, v2, stabilizer })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `n - k₁ - k₂`.
    pub fn k(&self) -> usize {
        self.n - self.v1.rows() - self.v2.rows()
    }

    pub fn v1(&self) -> &BitMatrix {
        &self.v1
    }

    pub fn v2(&self) -> &BitMatrix {
        &self.v2
    }

    pub fn stabilizer(&self) -> &StabilizerCode {
        &self.stabilizer
    }

    pub fn parameters(&self) -> CodeParameters {
        self.stabilizer.parameters()
    }

    /// The two classical coset problems: X-type logicals first, then Z-type.
    pub fn logical_searches(&self) -> Result<[(LogicalKind, CosetSearch); 2], CssError> {
        if self.k() == 0 {
            return Err(CssError::ZeroLogicalQubits);
        }
        Ok([
            (LogicalKind::X, CosetSearch::classical(&self.v2, &self.v1)),
            (LogicalKind::Z, CosetSearch::classical(&self.v1, &self.v2)),
        ])
    }

    /// Minimal weight over `(V₂^⊥ \ V₁) ∪ (V₁^⊥ \ V₂)`, searching weights
    /// `1..=max_weight`. Ties go to the X-type side.
    pub fn distance(&self, max_weight: usize) -> Result<CssDistance, CssError> {
        let searches = self.logical_searches()?;
        let mut best: Option<CssDistance> = None;
        for (kind, search) in &searches {
            let cap = best.as_ref().map_or(max_weight, |b| b.d - 1);
            if let Some((d, witness)) = search.run(cap) {
                best = Some(CssDistance {
                    d,
                    kind: *kind,
                    witness,
                });
            }
        }
        best.ok_or(CssError::NotFound { max_weight })
    }
}

/// Builds a CSS code; see [`CssCode::new`].
pub fn build_css(v1: BitMatrix, v2: BitMatrix) -> Result<CssCode, CssError> {
    CssCode::new(v1, v2)
}
