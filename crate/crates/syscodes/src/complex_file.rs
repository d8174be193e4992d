//! JSON cell complex files.
//!
//! ```json
//! {
//!   "dims": [1, 2, 1],
//!   "boundary": [[[0, 0], [0, 0]], [[0, 1, 0, 1]]],
//!   "labels": [["v"], ["a", "b"], ["F"]],
//!   "closed_surface": true
//! }
//! ```
//!
//! `boundary[p - 1][j]` lists the `(p - 1)`-cells in the boundary of `p`-cell
//! `j`. Indices that repeat cancel in pairs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use syscodes_core::gf2::BitMatrix;
use syscodes_core::{CellComplex, ComplexError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

impl FormatError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError::Field {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub dims: Vec<usize>,
    pub boundary: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    /// Trust the complex to be a closed surface without a rotation system.
    #[serde(default)]
    pub closed_surface: bool,
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { String::from("<root>") } else { path };
            FormatError::field(field, e.into_inner().to_string())
        })
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_complex(c: &CellComplex) -> Self {
        let boundary = (1..=c.dim())
            .map(|p| {
                let m = c.boundary(p);
                (0..m.cols()).map(|j| m.column(j).support()).collect()
            })
            .collect();
        Self {
            dims: c.cells().to_vec(),
            boundary,
            labels: c.labels().map(<[Vec<String>]>::to_vec),
            closed_surface: matches!(c.surface(), syscodes_core::chain_complex::SurfaceInfo::Trusted)
                || c.rotation().is_some(),
        }
    }

    pub fn into_complex(self) -> Result<CellComplex, FormatError> {
        if self.dims.is_empty() {
            return Err(FormatError::field("dims", "needs at least one dimension"));
        }
        if self.boundary.len() + 1 != self.dims.len() {
            return Err(FormatError::field(
                "boundary",
                format!(
                    "expected {} boundary maps for {} dimensions, found {}",
                    self.dims.len() - 1,
                    self.dims.len(),
                    self.boundary.len()
                ),
            ));
        }
        let mut maps = Vec::with_capacity(self.boundary.len());
        for (k, columns) in self.boundary.iter().enumerate() {
            let p = k + 1;
            if columns.len() != self.dims[p] {
                return Err(FormatError::field(
                    format!("boundary[{k}]"),
                    format!(
                        "expected {} columns (one per {p}-cell), found {}",
                        self.dims[p],
                        columns.len()
                    ),
                ));
            }
            let mut m = BitMatrix::zeros(self.dims[p - 1], self.dims[p]);
            for (j, col) in columns.iter().enumerate() {
                for (t, &face) in col.iter().enumerate() {
                    if face >= self.dims[p - 1] {
                        return Err(FormatError::field(
                            format!("boundary[{k}][{j}][{t}]"),
                            format!(
                                "index {face} out of range for {} cells of dimension {}",
                                self.dims[p - 1],
                                p - 1
                            ),
                        ));
                    }
                    m.flip(face, j);
                }
            }
            maps.push(m);
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.dims.len() {
                return Err(FormatError::field("labels", "needs one list per dimension"));
            }
            for (p, l) in labels.iter().enumerate() {
                if l.len() != self.dims[p] {
                    return Err(FormatError::field(
                        format!("labels[{p}]"),
                        format!("expected {} labels, found {}", self.dims[p], l.len()),
                    ));
                }
            }
        }
        let mut c = CellComplex::new(self.dims, maps).map_err(|e| match e {
            ComplexError::BoundarySquareNonzero { p, column } => FormatError::field(
                format!("boundary[{p}][{column}]"),
                format!("boundary of the boundary of {}-cell {column} is nonzero", p + 1),
            ),
            other => FormatError::field("boundary", other.to_string()),
        })?;
        if let Some(labels) = self.labels {
            c = c.with_labels(labels);
        }
        if self.closed_surface {
            if c.dim() != 2 {
                return Err(FormatError::field(
                    "closed_surface",
                    "only 2-dimensional complexes can be surfaces",
                ));
            }
            c = c.trusted_surface();
        }
        Ok(c)
    }
}

pub fn load_complex(path: &Path) -> Result<CellComplex, FormatError> {
    ComplexFile::read(path)?.into_complex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use syscodes_core::surface_family::torus_lattice;

    const TORUS_ONE_VERTEX: &str = r#"{
        "dims": [1, 2, 1],
        "boundary": [[[0, 0], [0, 0]], [[0, 1, 0, 1]]],
        "labels": [["v"], ["a", "b"], ["F"]],
        "closed_surface": true
    }"#;

    #[test]
    fn parses_example() {
        let c = ComplexFile::parse(TORUS_ONE_VERTEX).unwrap().into_complex().unwrap();
        assert_eq!(c.cells(), &[1, 2, 1]);
        assert!(c.boundary(1).is_zero());
        assert!(c.boundary(2).is_zero());
        assert_eq!(c.labels().unwrap()[1], ["a", "b"]);
    }

    fn field_of(text: &str) -> String {
        let err = ComplexFile::parse(text)
            .and_then(ComplexFile::into_complex)
            .unwrap_err();
        match err {
            FormatError::Field { field, .. } => field,
            other => panic!("{other}"),
        }
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(field_of(r#"{"boundary": []}"#), "<root>");
        assert_eq!(field_of(r#"{"dims": [1, "x"], "boundary": []}"#), "dims[1]");
        assert_eq!(field_of(r#"{"dims": [1], "boundary": [], "extra": 1}"#), "extra");
        assert_eq!(
            field_of(r#"{"dims": [2, 1], "boundary": [[[0, 5]]]}"#),
            "boundary[0][0][1]"
        );
        assert_eq!(field_of(r#"{"dims": [2, 1], "boundary": []}"#), "boundary");
        assert_eq!(field_of(r#"{"dims": [2, 2], "boundary": [[[0, 1]]]}"#), "boundary[0]");
        assert_eq!(
            field_of(r#"{"dims": [2, 1, 1], "boundary": [[[0, 1]], [[0]]]}"#),
            "boundary[1][0]"
        );
        assert_eq!(
            field_of(r#"{"dims": [2, 1], "boundary": [[[0, 1]]], "labels": [["a"]]}"#),
            "labels"
        );
        assert_eq!(
            field_of(r#"{"dims": [2, 1], "boundary": [[[0, 1]]], "closed_surface": true}"#),
            "closed_surface"
        );
        assert_eq!(field_of("not json"), "<root>");
    }

    #[test]
    fn round_trip() {
        let t = torus_lattice(3).unwrap().complex;
        let file = ComplexFile::from_complex(&t);
        assert!(file.closed_surface);
        let back = ComplexFile::parse(&file.to_json()).unwrap().into_complex().unwrap();
        assert_eq!(back.cells(), t.cells());
        assert_eq!(back.boundary(1), t.boundary(1));
        assert_eq!(back.boundary(2), t.boundary(2));
    }

    #[test]
    fn repeated_indices_cancel() {
        let c = ComplexFile::parse(r#"{"dims": [2, 1], "boundary": [[[0, 1, 1]]]}"#)
            .unwrap()
            .into_complex()
            .unwrap();
        assert_eq!(c.boundary(1).column(0).support(), [0]);
    }
}
