//! Families of surface cellulations and the `d² ≤ 36n` scan.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::chain_complex::{homological_code, CellComplex, ComplexError, Dart, SurfaceData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("torus side length must be at least 2, got {0}")]
    TorusTooSmall(usize),
    #[error("genus must be at least 1, got {0}")]
    GenusTooSmall(usize),
    #[error("subdivision needs at least one round")]
    NoRounds,
    #[error("subdivision needs a rotation system")]
    NoRotation,
    #[error("cannot parse family descriptor {0:?}")]
    Parse(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Names a generated family member, e.g. `torus:4` or `subdiv:rp2:rounds=2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyDescriptor {
    /// L×L square lattice on the torus.
    Torus(usize),
    /// The square lattice with one diagonal per square.
    TriangulatedTorus(usize),
    /// One vertex, 2g loops, one 4g-gon.
    Genus(usize),
    /// Six-vertex triangulation of the projective plane.
    ProjectivePlane,
    Subdivided {
        base: Box<FamilyDescriptor>,
        rounds: usize,
    },
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Torus(l) => write!(f, "torus:{l}"),
            FamilyDescriptor::TriangulatedTorus(l) => write!(f, "tritorus:{l}"),
            FamilyDescriptor::Genus(g) => write!(f, "genus:{g}"),
            FamilyDescriptor::ProjectivePlane => f.write_str("rp2"),
            FamilyDescriptor::Subdivided { base, rounds } => write!(f, "subdiv:{base}:rounds={rounds}"),
        }
    }
}

impl FromStr for FamilyDescriptor {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Parse(String::from(s));
        let number = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if s == "rp2" {
            return Ok(FamilyDescriptor::ProjectivePlane);
        }
        if let Some(rest) = s.strip_prefix("subdiv:") {
            let (base, rounds) = rest.rsplit_once(":rounds=").ok_or_else(bad)?;
            return Ok(FamilyDescriptor::Subdivided {
                base: Box::new(base.parse()?),
                rounds: number(rounds)?,
            });
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "torus" => Ok(FamilyDescriptor::Torus(number(arg)?)),
            "tritorus" => Ok(FamilyDescriptor::TriangulatedTorus(number(arg)?)),
            "genus" => Ok(FamilyDescriptor::Genus(number(arg)?)),
            _ => Err(bad()),
        }
    }
}

impl FamilyDescriptor {
    pub fn build(&self) -> Result<FamilyMember, FamilyError> {
        match self {
            FamilyDescriptor::Torus(l) => torus_lattice(*l),
            FamilyDescriptor::TriangulatedTorus(l) => triangulated_torus(*l),
            FamilyDescriptor::Genus(g) => genus_polygon(*g),
            FamilyDescriptor::ProjectivePlane => Ok(projective_plane()),
            FamilyDescriptor::Subdivided { base, rounds } => edge_subdivide(&base.build()?, *rounds),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub descriptor: FamilyDescriptor,
    pub complex: CellComplex,
    pub is_triangulation: bool,
}

impl FamilyMember {
    fn new(descriptor: FamilyDescriptor, vertices: usize, data: SurfaceData) -> Result<Self, FamilyError> {
        let complex = CellComplex::from_surface(vertices, data)?;
        let is_triangulation = is_triangulation(&complex);
        Ok(Self {
            descriptor,
            complex,
            is_triangulation,
        })
    }
}

/// Every face has three sides through three distinct vertices.
pub fn is_triangulation(c: &CellComplex) -> bool {
    let Some(data) = c.rotation() else {
        return false;
    };
    (0..data.faces.len()).all(|f| {
        let vs = data.face_vertices(f);
        let mut edges: Vec<usize> = data.faces[f].iter().map(|d| d.edge).collect();
        edges.sort_unstable();
        edges.dedup();
        vs.len() == 3 && vs[0] != vs[1] && vs[1] != vs[2] && vs[0] != vs[2] && edges.len() == 3
    })
}

struct Lattice {
    l: usize,
}

impl Lattice {
    fn vertex(&self, i: usize, j: usize) -> usize {
        (i % self.l) * self.l + (j % self.l)
    }
    /// (i, j) → (i, j + 1)
    fn horizontal(&self, i: usize, j: usize) -> usize {
        self.vertex(i, j)
    }
    /// (i, j) → (i + 1, j)
    fn vertical(&self, i: usize, j: usize) -> usize {
        self.l * self.l + self.vertex(i, j)
    }
    fn edge_ends(&self) -> Vec<[usize; 2]> {
        let l = self.l;
        let mut ends = Vec::with_capacity(2 * l * l);
        for i in 0..l {
            for j in 0..l {
                ends.push([self.vertex(i, j), self.vertex(i, j + 1)]);
            }
        }
        for i in 0..l {
            for j in 0..l {
                ends.push([self.vertex(i, j), self.vertex(i + 1, j)]);
            }
        }
        ends
    }
}

/// Square lattice on the torus: `L²` vertices, `2L²` edges, `L²` faces.
pub fn torus_lattice(l: usize) -> Result<FamilyMember, FamilyError> {
    if l < 2 {
        return Err(FamilyError::TorusTooSmall(l));
    }
    let g = Lattice { l };
    let mut faces = Vec::with_capacity(l * l);
    for i in 0..l {
        for j in 0..l {
            faces.push(vec![
                Dart::fwd(g.horizontal(i, j)),
                Dart::fwd(g.vertical(i, j + 1)),
                Dart::rev(g.horizontal(i + 1, j)),
                Dart::rev(g.vertical(i, j)),
            ]);
        }
    }
    FamilyMember::new(
        FamilyDescriptor::Torus(l),
        l * l,
        SurfaceData {
            edge_ends: g.edge_ends(),
            faces,
        },
    )
}

/// The torus lattice with the diagonal (i, j) → (i + 1, j + 1) added in
/// every square, giving `2L²` triangles.
pub fn triangulated_torus(l: usize) -> Result<FamilyMember, FamilyError> {
    if l < 2 {
        return Err(FamilyError::TorusTooSmall(l));
    }
    let g = Lattice { l };
    let mut edge_ends = g.edge_ends();
    let diagonal0 = edge_ends.len();
    for i in 0..l {
        for j in 0..l {
            edge_ends.push([g.vertex(i, j), g.vertex(i + 1, j + 1)]);
        }
    }
    let diagonal = |i: usize, j: usize| diagonal0 + g.vertex(i, j);
    let mut faces = Vec::with_capacity(2 * l * l);
    for i in 0..l {
        for j in 0..l {
            faces.push(vec![
                Dart::fwd(g.horizontal(i, j)),
                Dart::fwd(g.vertical(i, j + 1)),
                Dart::rev(diagonal(i, j)),
            ]);
            faces.push(vec![
                Dart::fwd(diagonal(i, j)),
                Dart::rev(g.horizontal(i + 1, j)),
                Dart::rev(g.vertical(i, j)),
            ]);
        }
    }
    FamilyMember::new(
        FamilyDescriptor::TriangulatedTorus(l),
        l * l,
        SurfaceData { edge_ends, faces },
    )
}

/// One vertex, loops `a_1, b_1, …, a_g, b_g`, and one face with boundary
/// word `a_1 b_1 a_1⁻¹ b_1⁻¹ ⋯ a_g b_g a_g⁻¹ b_g⁻¹`.
pub fn genus_polygon(g: usize) -> Result<FamilyMember, FamilyError> {
    if g < 1 {
        return Err(FamilyError::GenusTooSmall(g));
    }
    let mut word = Vec::with_capacity(4 * g);
    for k in 0..g {
        let (a, b) = (2 * k, 2 * k + 1);
        word.extend([Dart::fwd(a), Dart::fwd(b), Dart::rev(a), Dart::rev(b)]);
    }
    FamilyMember::new(
        FamilyDescriptor::Genus(g),
        1,
        SurfaceData {
            edge_ends: vec![[0, 0]; 2 * g],
            faces: vec![word],
        },
    )
}

const RP2_TRIANGLES: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 5, 1],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 1],
    [4, 5, 2],
    [5, 1, 3],
];

/// The minimal triangulation of the projective plane: the 15 edges of K₆
/// and 10 triangles.
pub fn projective_plane() -> FamilyMember {
    let mut edge_ends = Vec::with_capacity(15);
    for a in 0..6 {
        for b in a + 1..6 {
            edge_ends.push([a, b]);
        }
    }
    let edge = |a: usize, b: usize| {
        let key = [a.min(b), a.max(b)];
        edge_ends.iter().position(|e| *e == key).expect("K6 edge")
    };
    let faces = RP2_TRIANGLES
        .iter()
        .map(|t| {
            (0..3)
                .map(|k| {
                    let (a, b) = (t[k], t[(k + 1) % 3]);
                    Dart {
                        edge: edge(a, b),
                        forward: a < b,
                    }
                })
                .collect()
        })
        .collect();
    FamilyMember::new(FamilyDescriptor::ProjectivePlane, 6, SurfaceData { edge_ends, faces })
        .expect("fixed triangulation is valid")
}

/// Splits every edge at a new midpoint, `rounds` times. Edge `e` becomes
/// edges `2e` (tail half) and `2e + 1` (head half); midpoint of edge `e` is
/// vertex `V + e`.
pub fn edge_subdivide(member: &FamilyMember, rounds: usize) -> Result<FamilyMember, FamilyError> {
    if rounds == 0 {
        return Err(FamilyError::NoRounds);
    }
    let mut data = member.complex.rotation().ok_or(FamilyError::NoRotation)?.clone();
    let mut vertices = member.complex.cell_count(0);
    for _ in 0..rounds {
        let mut edge_ends = Vec::with_capacity(2 * data.edge_ends.len());
        for (e, &[t, h]) in data.edge_ends.iter().enumerate() {
            let mid = vertices + e;
            edge_ends.push([t, mid]);
            edge_ends.push([mid, h]);
        }
        let faces = data
            .faces
            .iter()
            .map(|word| {
                word.iter()
                    .flat_map(|d| {
                        let (a, b) = (2 * d.edge, 2 * d.edge + 1);
                        if d.forward {
                            [Dart::fwd(a), Dart::fwd(b)]
                        } else {
                            [Dart::rev(b), Dart::rev(a)]
                        }
                    })
                    .collect()
            })
            .collect();
        vertices += data.edge_ends.len();
        data = SurfaceData { edge_ends, faces };
    }
    let (base, total) = match &member.descriptor {
        FamilyDescriptor::Subdivided { base, rounds: r } => (base.clone(), r + rounds),
        other => (Box::new(other.clone()), rounds),
    };
    FamilyMember::new(FamilyDescriptor::Subdivided { base, rounds: total }, vertices, data)
}

/// Optional lower-bound column `d² / (f(n/c₁) · n / (c₁ c₂²))` for a
/// supplied freedom function `f`.
#[derive(Clone, Copy)]
pub struct FreedomCheck {
    pub f: fn(f64) -> f64,
    pub c1: f64,
    pub c2: f64,
}

impl fmt::Debug for FreedomCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreedomCheck")
            .field("c1", &self.c1)
            .field("c2", &self.c2)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub descriptor: String,
    pub is_triangulation: bool,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub primal_systole: usize,
    pub dual_systole: usize,
    pub d2_over_n: Ratio<u64>,
    /// `R δ² n² = k d² / n`.
    pub rate_delta2_n2: Ratio<u64>,
    pub bound_36_satisfied: bool,
    pub freedom_ratio: Option<f64>,
}

impl BoundReport {
    /// `csys₁(S)² / |S₁|` for the primal side alone.
    pub fn primal_ratio(&self) -> Ratio<u64> {
        let s = self.primal_systole as u64;
        Ratio::new(s * s, self.n as u64)
    }
}

/// Homological code at dimension 1 for one member, with its bound columns.
pub fn bound_report(member: &FamilyMember, freedom: Option<FreedomCheck>) -> Result<BoundReport, FamilyError> {
    let code = homological_code(&member.complex, 1)?;
    let n = code.params.n;
    let k = code.params.k;
    let d = code.params.d.expect("distance computed");
    let primal = code.primal_systole.as_ref().map_or(d, |s| s.weight);
    let dual = code.dual_systole.as_ref().map_or(d, |s| s.weight);
    let (n64, k64, d64) = (n as u64, k as u64, d as u64);
    let freedom_ratio = freedom.map(|fc| {
        let nf = n as f64;
        let lower = (fc.f)(nf / fc.c1) * nf / (fc.c1 * fc.c2 * fc.c2);
        (d * d) as f64 / lower
    });
    Ok(BoundReport {
        descriptor: format!("{}", member.descriptor),
        is_triangulation: member.is_triangulation,
        n,
        k,
        d,
        primal_systole: primal,
        dual_systole: dual,
        d2_over_n: Ratio::new(d64 * d64, n64),
        rate_delta2_n2: Ratio::new(k64 * d64 * d64, n64),
        bound_36_satisfied: d64 * d64 <= 36 * n64,
        freedom_ratio,
    })
}

/// One report per member, in input order.
pub fn bound_scan(members: &[FamilyMember], freedom: Option<FreedomCheck>) -> Result<Vec<BoundReport>, FamilyError> {
    members.iter().map(|m| bound_report(m, freedom)).collect()
}

/// Triangulation members whose report violates `d² ≤ 36n`.
pub fn triangulation_violations(reports: &[BoundReport]) -> Vec<&BoundReport> {
    reports
        .iter()
        .filter(|r| r.is_triangulation && !r.bound_36_satisfied)
        .collect()
}
