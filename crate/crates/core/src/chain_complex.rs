//! Z₂ chain complexes of abstract cell complexes.
//!
//! A complex stores cell counts per dimension and the boundary matrices
//! `∂_p : C_p → C_{p-1}` as `cells[p-1] × cells[p]` bit matrices (column `c`
//! lists the faces of cell `c` with odd multiplicity). Closed surfaces can
//! additionally carry a rotation system (oriented edges and face boundary
//! words), which is what the vertex-link check, duals and subdivision use.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::css::{CssCode, CssError};
use crate::gf2::{BitMatrix, BitVector};
use crate::search::CosetSearch;
use crate::stabilizer::CodeParameters;

/// Largest cycle-space dimension the exhaustive systole oracle accepts.
pub const EXHAUSTIVE_MAX_CYCLE_DIM: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceWitness {
    /// The edge does not lie on exactly two face sides.
    Edge(usize),
    /// The link of the vertex is not a single cycle.
    Vertex(usize),
    /// The complex is not two-dimensional.
    Dimension(usize),
    /// Neither a rotation system nor a trust flag is available.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("boundary matrix of dimension {p} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        p: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("boundary of boundary is nonzero at dimension {p} (column {column})")]
    BoundarySquareNonzero { p: usize, column: usize },
    #[error("dimension {p} out of range for a {dim}-dimensional complex")]
    DimensionOutOfRange { p: usize, dim: usize },
    #[error("no coboundary out of the top dimension {0}")]
    NoCoboundary(usize),
    #[error("homology in dimension {0} is trivial")]
    TrivialHomology(usize),
    #[error("no non-bounding cycle of weight <= {max_weight}")]
    NotFound { max_weight: usize },
    #[error("not a closed surface: {0:?}")]
    NotClosedSurface(SurfaceWitness),
    #[error("face {face} is not a closed walk at position {position}")]
    MalformedFace { face: usize, position: usize },
    #[error("edge {edge} references vertex {vertex} which does not exist")]
    BadEdge { edge: usize, vertex: usize },
    #[error("cycle space of dimension {0} is too large for exhaustive enumeration")]
    TooLarge(usize),
    #[error("systole route gives d = {systole} but the CSS search gives d = {css}")]
    RouteDisagreement { systole: usize, css: usize },
    #[error(transparent)]
    Css(#[from] CssError),
}

/// An oriented edge as it appears in a face boundary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    /// `true` when traversed from `edge_ends[edge][0]` to `edge_ends[edge][1]`.
    pub forward: bool,
}

impl Dart {
    pub fn fwd(edge: usize) -> Self {
        Self { edge, forward: true }
    }

    pub fn rev(edge: usize) -> Self {
        Self { edge, forward: false }
    }
}

/// Rotation system of a surface cellulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData {
    /// `[tail, head]` per edge.
    pub edge_ends: Vec<[usize; 2]>,
    /// Cyclic boundary word per face.
    pub faces: Vec<Vec<Dart>>,
}

impl SurfaceData {
    fn leaves(&self, d: Dart) -> usize {
        self.edge_ends[d.edge][if d.forward { 0 } else { 1 }]
    }

    fn arrives(&self, d: Dart) -> usize {
        self.edge_ends[d.edge][if d.forward { 1 } else { 0 }]
    }

    /// Vertices around a face in order, starting at the tail of its first dart.
    pub fn face_vertices(&self, face: usize) -> Vec<usize> {
        self.faces[face].iter().map(|&d| self.leaves(d)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceInfo {
    /// No information; the closed-surface check fails.
    None,
    /// Caller asserts a closed surface; only the edge check is run.
    Trusted,
    Rotation(SurfaceData),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologySummary {
    pub p: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

/// A minimal non-bounding cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Systole {
    pub weight: usize,
    pub witness: BitVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    cells: Vec<usize>,
    /// `boundary[p - 1]` is `∂_p`.
    boundary: Vec<BitMatrix>,
    labels: Option<Vec<Vec<String>>>,
    surface: SurfaceInfo,
}

impl CellComplex {
    /// Checks shapes and `∂∂ = 0`.
    pub fn new(cells: Vec<usize>, boundary: Vec<BitMatrix>) -> Result<Self, ComplexError> {
        assert!(!cells.is_empty(), "a complex has at least dimension 0");
        let dim = cells.len() - 1;
        if boundary.len() != dim {
            return Err(ComplexError::DimensionOutOfRange { p: boundary.len(), dim });
        }
        for (i, b) in boundary.iter().enumerate() {
            let p = i + 1;
            let expected = (cells[p - 1], cells[p]);
            if (b.rows(), b.cols()) != expected {
                return Err(ComplexError::ShapeMismatch {
                    p,
                    expected,
                    found: (b.rows(), b.cols()),
                });
            }
        }
        let c = Self {
            cells,
            boundary,
            labels: None,
            surface: SurfaceInfo::None,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a 2-complex from a rotation system.
    pub fn from_surface(vertices: usize, data: SurfaceData) -> Result<Self, ComplexError> {
        for (e, ends) in data.edge_ends.iter().enumerate() {
            for &v in ends {
                if v >= vertices {
                    return Err(ComplexError::BadEdge { edge: e, vertex: v });
                }
            }
        }
        for (f, word) in data.faces.iter().enumerate() {
            if word.is_empty() {
                return Err(ComplexError::MalformedFace { face: f, position: 0 });
            }
            if let Some(d) = word.iter().find(|d| d.edge >= data.edge_ends.len()) {
                return Err(ComplexError::BadEdge {
                    edge: d.edge,
                    vertex: usize::MAX,
                });
            }
            for (k, &d) in word.iter().enumerate() {
                let next = word[(k + 1) % word.len()];
                if data.arrives(d) != data.leaves(next) {
                    return Err(ComplexError::MalformedFace { face: f, position: k });
                }
            }
        }
        let e = data.edge_ends.len();
        let d1 = BitMatrix::from_columns(
            vertices,
            &data.edge_ends.iter().map(|ends| ends.to_vec()).collect::<Vec<_>>(),
        );
        let d2 = BitMatrix::from_columns(
            e,
            &data
                .faces
                .iter()
                .map(|w| w.iter().map(|d| d.edge).collect())
                .collect::<Vec<_>>(),
        );
        let mut c = Self::new(vec![vertices, e, data.faces.len()], vec![d1, d2])?;
        c.surface = SurfaceInfo::Rotation(data);
        Ok(c)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// Marks the complex as a closed surface without a rotation system.
    pub fn trusted_surface(mut self) -> Self {
        if !matches!(self.surface, SurfaceInfo::Rotation(_)) {
            self.surface = SurfaceInfo::Trusted;
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn cell_count(&self, p: usize) -> usize {
        self.cells.get(p).copied().unwrap_or(0)
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn surface(&self) -> &SurfaceInfo {
        &self.surface
    }

    pub fn rotation(&self) -> Option<&SurfaceData> {
        match &self.surface {
            SurfaceInfo::Rotation(d) => Some(d),
            _ => None,
        }
    }

    /// `∂_p` for `1 ≤ p ≤ dim`; the zero maps `∂_0` (into nothing) and
    /// `∂_{dim+1}` (from nothing) otherwise.
    pub fn boundary(&self, p: usize) -> BitMatrix {
        if p == 0 {
            BitMatrix::zeros(0, self.cells[0])
        } else if p <= self.dim() {
            self.boundary[p - 1].clone()
        } else {
            BitMatrix::zeros(self.cell_count(p - 1), 0)
        }
    }

    pub fn boundary_ref(&self, p: usize) -> Option<&BitMatrix> {
        (p >= 1).then(|| self.boundary.get(p - 1)).flatten()
    }

    /// Confirms `∂_p · ∂_{p+1} = 0` for every `p`.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for p in 1..self.dim() {
            let lower = &self.boundary[p - 1];
            let upper = &self.boundary[p];
            for c in 0..upper.cols() {
                if !lower.mul_vec(&upper.column(c)).expect("shapes checked").is_zero() {
                    return Err(ComplexError::BoundarySquareNonzero { p, column: c });
                }
            }
        }
        Ok(())
    }

    fn check_dim(&self, p: usize) -> Result<(), ComplexError> {
        if p > self.dim() {
            Err(ComplexError::DimensionOutOfRange { p, dim: self.dim() })
        } else {
            Ok(())
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn homology_dim(&self, p: usize) -> Result<HomologySummary, ComplexError> {
        self.check_dim(p)?;
        let dim_z = self.cells[p] - self.boundary(p).rank();
        let dim_b = self.boundary(p + 1).rank();
        Ok(HomologySummary {
            p,
            dim_z,
            dim_b,
            dim_h: dim_z - dim_b,
        })
    }

    /// `δ_p = ∂_{p+1}ᵀ`, so that `⟨δσ, Δ⟩ = ⟨σ, ∂Δ⟩`.
    pub fn coboundary_matrix(&self, p: usize) -> Result<BitMatrix, ComplexError> {
        self.check_dim(p)?;
        if p == self.dim() {
            return Err(ComplexError::NoCoboundary(p));
        }
        Ok(self.boundary[p].transpose())
    }

    /// Basis of the cycles `Z_p = ker ∂_p`.
    pub fn cycle_basis(&self, p: usize) -> Result<BitMatrix, ComplexError> {
        self.check_dim(p)?;
        Ok(self.boundary(p).kernel_basis())
    }

    /// Basis of the boundaries `B_p = im ∂_{p+1}`.
    pub fn boundary_basis(&self, p: usize) -> Result<BitMatrix, ComplexError> {
        self.check_dim(p)?;
        Ok(self.boundary(p + 1).transpose().row_basis())
    }

    fn require_homology(&self, p: usize) -> Result<(), ComplexError> {
        if self.homology_dim(p)?.dim_h == 0 {
            return Err(ComplexError::TrivialHomology(p));
        }
        Ok(())
    }

    /// Minimal weight of a `p`-cycle that is not a boundary.
    ///
    /// For `p = 1` on a graph-like 1-skeleton the minimum is found among the
    /// fundamental cycles of breadth-first trees; otherwise supports are
    /// enumerated by increasing size.
    pub fn combinatorial_systole(&self, p: usize, max_weight: usize) -> Result<Systole, ComplexError> {
        self.require_homology(p)?;
        let found = if p == 1 {
            match self.graph_edges() {
                Some(edges) => self.tree_cycle_systole(&edges),
                None => self.systole_search(p).run(max_weight),
            }
        } else {
            self.systole_search(p).run(max_weight)
        };
        match found {
            Some((weight, witness)) if weight <= max_weight => Ok(Systole { weight, witness }),
            _ => Err(ComplexError::NotFound { max_weight }),
        }
    }

    /// The support-enumeration search behind [`Self::combinatorial_systole`].
    pub fn systole_search(&self, p: usize) -> CosetSearch {
        CosetSearch::classical(&self.boundary(p), &self.boundary(p + 1).transpose())
    }

    /// Systole by support enumeration only.
    pub fn systole_by_enumeration(&self, p: usize, max_weight: usize) -> Result<Systole, ComplexError> {
        self.require_homology(p)?;
        self.systole_search(p)
            .run(max_weight)
            .map(|(weight, witness)| Systole { weight, witness })
            .ok_or(ComplexError::NotFound { max_weight })
    }

    /// Systole by enumerating every element of the cycle space.
    pub fn systole_exhaustive(&self, p: usize) -> Result<Systole, ComplexError> {
        self.require_homology(p)?;
        let z = self.cycle_basis(p)?;
        if z.rows() > EXHAUSTIVE_MAX_CYCLE_DIM {
            return Err(ComplexError::TooLarge(z.rows()));
        }
        let b = self.boundary(p + 1).transpose().echelon();
        let mut current = BitVector::zeros(self.cells[p]);
        let mut best: Option<Systole> = None;
        // Gray-code walk: step t flips basis row trailing_zeros(t).
        for t in 1u64..(1u64 << z.rows()) {
            current.xor_assign(&z.row(t.trailing_zeros() as usize));
            let w = current.weight();
            if best.as_ref().is_some_and(|s| s.weight <= w) || b.contains(&current) {
                continue;
            }
            best = Some(Systole {
                weight: w,
                witness: current.clone(),
            });
        }
        Ok(best.expect("nontrivial homology has a non-bounding cycle"))
    }

    /// Endpoints of every edge, `None` for loops, if each column of `∂_1`
    /// has weight 0 or 2.
    fn graph_edges(&self) -> Option<Vec<Option<(usize, usize)>>> {
        let d1 = self.boundary_ref(1)?;
        let t = d1.transpose();
        t.row_iter()
            .map(|col| {
                let s = col.support();
                match s.as_slice() {
                    [] => Some(None),
                    [a, b] => Some(Some((*a, *b))),
                    _ => None,
                }
            })
            .collect()
    }

    fn tree_cycle_systole(&self, edges: &[Option<(usize, usize)>]) -> Option<(usize, BitVector)> {
        let nv = self.cells[0];
        let ne = edges.len();
        let bounding = self.boundary(2).transpose().echelon();
        let mut best: Option<(usize, BitVector)> = None;

        for (e, ends) in edges.iter().enumerate() {
            if ends.is_none() {
                let c = BitVector::unit(ne, e);
                if !bounding.contains(&c) {
                    return Some((1, c));
                }
            }
        }

        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for (e, ends) in edges.iter().enumerate() {
            if let Some((a, b)) = *ends {
                adjacency[a].push((b, e));
                adjacency[b].push((a, e));
            }
        }

        let mut depth = vec![usize::MAX; nv];
        let mut parent = vec![(usize::MAX, usize::MAX); nv];
        let mut queue = VecDeque::new();
        for root in 0..nv {
            depth.fill(usize::MAX);
            depth[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(w, e) in &adjacency[u] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = (u, e);
                        queue.push_back(w);
                    }
                }
            }
            for (e, ends) in edges.iter().enumerate() {
                let Some((x, y)) = *ends else { continue };
                if depth[x] == usize::MAX || parent[x].1 == e || parent[y].1 == e {
                    continue;
                }
                let bound = depth[x] + depth[y] + 1;
                if best.as_ref().is_some_and(|(w, _)| *w <= bound) {
                    continue;
                }
                let mut chain = BitVector::unit(ne, e);
                for mut v in [x, y] {
                    while v != root {
                        let (u, pe) = parent[v];
                        chain.flip(pe);
                        v = u;
                    }
                }
                let w = chain.weight();
                if w == 0 || best.as_ref().is_some_and(|(bw, _)| *bw <= w) || bounding.contains(&chain) {
                    continue;
                }
                best = Some((w, chain));
            }
        }
        best
    }

    /// Checks that the complex is a closed surface: every edge lies on
    /// exactly two face sides and (with a rotation system) every vertex link
    /// is a single cycle.
    pub fn check_closed_surface(&self) -> Result<(), ComplexError> {
        if self.dim() != 2 {
            return Err(ComplexError::NotClosedSurface(SurfaceWitness::Dimension(self.dim())));
        }
        match &self.surface {
            SurfaceInfo::None => Err(ComplexError::NotClosedSurface(SurfaceWitness::Unverified)),
            SurfaceInfo::Trusted => {
                let d2 = &self.boundary[1];
                for e in 0..d2.rows() {
                    let w = d2.row(e).weight();
                    if w != 0 && w != 2 {
                        return Err(ComplexError::NotClosedSurface(SurfaceWitness::Edge(e)));
                    }
                }
                Ok(())
            }
            SurfaceInfo::Rotation(data) => vertex_walks(self.cells[0], data).map(|_| ()),
        }
    }

    /// Poincaré dual of a closed surface: faces become vertices, edges stay
    /// edges (same index), vertices become faces. The dual boundary maps are
    /// `∂*_1 = ∂_2ᵀ` and `∂*_2 = ∂_1ᵀ`, so `δ*(*σ) = *(∂σ)` holds with the
    /// identity star map on indices.
    pub fn dual_surface_cellulation(&self) -> Result<CellComplex, ComplexError> {
        self.check_closed_surface()?;
        let d1 = self.boundary[1].transpose();
        let d2 = self.boundary[0].transpose();
        let cells = vec![self.cells[2], self.cells[1], self.cells[0]];
        match &self.surface {
            SurfaceInfo::Rotation(data) => {
                let faces = vertex_walks(self.cells[0], data)?;
                let edge_ends = edge_occurrences(data).iter().map(|occ| [occ[0].0, occ[1].0]).collect();
                let dual = CellComplex::from_surface(self.cells[2], SurfaceData { edge_ends, faces })?;
                debug_assert_eq!(dual.boundary[0], d1);
                debug_assert_eq!(dual.boundary[1], d2);
                Ok(dual)
            }
            _ => Ok(CellComplex::new(cells, vec![d1, d2])?.trusted_surface()),
        }
    }

    /// Checks the duality identities against [`Self::dual_surface_cellulation`]:
    /// the dual coboundary agrees with the primal boundary under the cell
    /// correspondence, and in every dimension `B_p^⊥ = Z_{2-p}(S*)` and
    /// `Z_p^⊥ = B_{2-p}(S*)` as row spaces.
    pub fn duality_identities(&self) -> Result<DualityCheck, ComplexError> {
        let dual = self.dual_surface_cellulation()?;
        let chain_map = (1..=2).all(|p| dual.boundary(3 - p).transpose() == self.boundary(p));
        let mut boundary_perp = [false; 3];
        let mut cycle_perp = [false; 3];
        for p in 0..=2 {
            let b_perp = self.boundary_basis(p)?.orthogonal_complement();
            boundary_perp[p] = b_perp.same_row_space(&dual.cycle_basis(2 - p)?);
            let z_perp = self.cycle_basis(p)?.orthogonal_complement();
            cycle_perp[p] = z_perp.same_row_space(&dual.boundary_basis(2 - p)?);
        }
        Ok(DualityCheck {
            chain_map,
            boundary_perp,
            cycle_perp,
        })
    }
}

/// Outcome of [`CellComplex::duality_identities`], indexed by primal dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualityCheck {
    pub chain_map: bool,
    pub boundary_perp: [bool; 3],
    pub cycle_perp: [bool; 3],
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.chain_map && self.boundary_perp.iter().all(|&b| b) && self.cycle_perp.iter().all(|&b| b)
    }
}

/// Face occurrences `(face, position)` of each edge, in scan order. Only
/// meaningful once every edge is known to occur twice.
fn edge_occurrences(data: &SurfaceData) -> Vec<Vec<(usize, usize)>> {
    let mut occ = vec![Vec::new(); data.edge_ends.len()];
    for (f, word) in data.faces.iter().enumerate() {
        for (k, d) in word.iter().enumerate() {
            occ[d.edge].push((f, k));
        }
    }
    occ
}

/// Walks the link of every vertex and returns, per vertex, the cyclic word
/// of dual darts crossed (the boundary of the dual face).
fn vertex_walks(vertices: usize, data: &SurfaceData) -> Result<Vec<Vec<Dart>>, ComplexError> {
    let occ = edge_occurrences(data);
    if let Some(e) = occ.iter().position(|o| o.len() != 2) {
        return Err(ComplexError::NotClosedSurface(SurfaceWitness::Edge(e)));
    }
    let side = |e: usize, f: usize, k: usize| -> usize {
        if occ[e][0] == (f, k) {
            0
        } else {
            1
        }
    };

    // Corner (f, k) sits between dart k and dart k+1 of face f. Slot 0 is the
    // arriving end of dart k, slot 1 the leaving end of dart k+1.
    let mut corners: Vec<(usize, usize)> = Vec::new();
    let mut corner_vertex = Vec::new();
    // (edge, end) -> incidences (corner, slot)
    let mut node_hits: Vec<[Vec<(usize, u8)>; 2]> = vec![[Vec::new(), Vec::new()]; data.edge_ends.len()];
    for (f, word) in data.faces.iter().enumerate() {
        for k in 0..word.len() {
            let c = corners.len();
            let d_in = word[k];
            let d_out = word[(k + 1) % word.len()];
            corners.push((f, k));
            corner_vertex.push(data.arrives(d_in));
            node_hits[d_in.edge][usize::from(d_in.forward)].push((c, 0));
            node_hits[d_out.edge][usize::from(!d_out.forward)].push((c, 1));
        }
    }
    let slot_dart = |c: usize, slot: u8| -> (Dart, usize, usize) {
        let (f, k) = corners[c];
        let word = &data.faces[f];
        let k = if slot == 0 { k } else { (k + 1) % word.len() };
        (word[k], f, k)
    };
    let slot_node = |c: usize, slot: u8| -> (usize, usize) {
        let (d, _, _) = slot_dart(c, slot);
        let end = if slot == 0 { d.forward } else { !d.forward };
        (d.edge, usize::from(end))
    };

    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    for (c, &v) in corner_vertex.iter().enumerate() {
        by_vertex[v].push(c);
    }
    let mut visited = vec![false; corners.len()];
    let mut walks = Vec::with_capacity(vertices);
    for (v, cs) in by_vertex.iter().enumerate() {
        let Some(&start) = cs.first() else {
            return Err(ComplexError::NotClosedSurface(SurfaceWitness::Vertex(v)));
        };
        let mut word = Vec::new();
        let (mut c, mut slot) = (start, 1u8);
        loop {
            if visited[c] {
                return Err(ComplexError::NotClosedSurface(SurfaceWitness::Vertex(v)));
            }
            visited[c] = true;
            let (edge, end) = slot_node(c, slot);
            let hits = &node_hits[edge][end];
            let Some(&(next_c, next_slot)) = hits.iter().find(|&&h| h != (c, slot)) else {
                return Err(ComplexError::NotClosedSurface(SurfaceWitness::Vertex(v)));
            };
            let (_, f, k) = slot_dart(c, slot);
            word.push(Dart {
                edge,
                forward: side(edge, f, k) == 0,
            });
            c = next_c;
            slot = 1 - next_slot;
            if c == start {
                if slot != 1 {
                    return Err(ComplexError::NotClosedSurface(SurfaceWitness::Vertex(v)));
                }
                break;
            }
        }
        if cs.iter().any(|&c| !visited[c]) {
            return Err(ComplexError::NotClosedSurface(SurfaceWitness::Vertex(v)));
        }
        walks.push(word);
    }
    Ok(walks)
}

/// How the distance of a homological code was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceRoute {
    /// `min{csys_i(S), csys_{2-i}(S*)}` on a closed surface.
    Systoles,
    /// Direct CSS coset search.
    Css,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologicalCode {
    pub dimension: usize,
    pub css: CssCode,
    pub params: CodeParameters,
    pub primal_systole: Option<Systole>,
    pub dual_systole: Option<Systole>,
    pub route: DistanceRoute,
}

/// CSS code with `V₁ = B_i` and `V₂ = Z_i^⊥`. On closed surfaces the
/// distance is the smaller of the primal systole in dimension `i` and the
/// dual systole in dimension `2 - i`; otherwise it comes from the CSS search.
pub fn homological_code(c: &CellComplex, i: usize) -> Result<HomologicalCode, ComplexError> {
    homological_code_bounded(c, i, c.cell_count(i))
}

/// [`homological_code`] with every distance search capped at `max_weight`.
pub fn homological_code_bounded(c: &CellComplex, i: usize, max_weight: usize) -> Result<HomologicalCode, ComplexError> {
    let summary = c.homology_dim(i)?;
    if summary.dim_h == 0 {
        return Err(ComplexError::TrivialHomology(i));
    }
    let v1 = c.boundary_basis(i)?;
    let v2 = c.cycle_basis(i)?.orthogonal_complement();
    let css = CssCode::new(v1, v2)?;
    debug_assert_eq!(css.k(), summary.dim_h);
    let params = css.parameters();

    if c.dim() == 2 && c.check_closed_surface().is_ok() {
        let dual = c.dual_surface_cellulation()?;
        let capped = |r: Result<Systole, ComplexError>| match r {
            Ok(s) => Ok(Some(s)),
            Err(ComplexError::NotFound { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        let primal = capped(c.combinatorial_systole(i, max_weight))?;
        let dual_sys = capped(dual.combinatorial_systole(2 - i, max_weight))?;
        let d = primal
            .iter()
            .chain(dual_sys.iter())
            .map(|s| s.weight)
            .min()
            .ok_or(ComplexError::NotFound { max_weight })?;
        return Ok(HomologicalCode {
            dimension: i,
            css,
            params: params.with_distance(d),
            primal_systole: primal,
            dual_systole: dual_sys,
            route: DistanceRoute::Systoles,
        });
    }
    let d = css.distance(max_weight)?.d;
    Ok(HomologicalCode {
        dimension: i,
        css,
        params: params.with_distance(d),
        primal_systole: None,
        dual_systole: None,
        route: DistanceRoute::Css,
    })
}

/// [`homological_code`] followed by an independent CSS distance search that
/// must agree with the systole route.
pub fn homological_code_checked(c: &CellComplex, i: usize) -> Result<HomologicalCode, ComplexError> {
    let code = homological_code(c, i)?;
    let d = code.params.d.expect("distance computed");
    if code.route == DistanceRoute::Systoles {
        let css = code.css.distance(code.params.n)?.d;
        if css != d {
            return Err(ComplexError::RouteDisagreement { systole: d, css });
        }
    }
    Ok(code)
}
