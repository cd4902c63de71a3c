//! Error types shared by the crate.

use thiserror::Error;

/// Mesh reading / validation failures.
#[derive(Debug, Error)]
pub enum MeshError {
    #[error("i/o failure reading mesh: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed mesh file: {0}")]
    Parse(String),
    #[error("unsupported element type {etype} (only 3-node triangles and 4-node tetrahedra are read)")]
    UnsupportedElement { etype: u32 },
    #[error("degenerate tetrahedron {tet}: volume {volume} below tolerance")]
    DegenerateTet { tet: usize, volume: f64 },
    #[error("tetrahedron {tet} references unknown vertex {vertex}")]
    BadVertexRef { tet: usize, vertex: usize },
    #[error("face shared by {count} tetrahedra (non-manifold mesh)")]
    NonManifoldFace { count: usize },
    #[error("boundary face {face:?} carries no surface tag")]
    UntaggedBoundaryFace { face: [usize; 3] },
    #[error("surface element {face:?} tagged {tag} does not match any boundary face")]
    DanglingSurfaceElement { face: [usize; 3], tag: i32 },
    #[error("region tag {tag} has no material definition")]
    MissingMaterial { tag: i32 },
    #[error("radiating surface is not closed: edge shared by {count} radiating faces")]
    OpenRadiatingSurface { count: usize },
    #[error("surface tag {tag} is classified neither as radiating nor as PEC")]
    UnclassifiedSurfaceTag { tag: i32 },
    #[error("degenerate surface triangle {tri}: area {area} below tolerance")]
    DegenerateTriangle { tri: usize, area: f64 },
    #[error("mesh has no tetrahedra")]
    Empty,
}

/// Assembly failures (HDG or BI).
#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("element matrix for tetrahedron {tet} is numerically singular")]
    SingularElement { tet: usize },
    #[error("unsupported quadrature degree {degree} (supported 1..=10)")]
    UnsupportedQuadratureDegree { degree: usize },
    #[error("frequency must be positive, got {f}")]
    NonPositiveFrequency { f: f64 },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("mesh error during assembly: {0}")]
    Mesh(#[from] MeshError),
}

/// Binary block-dump failures.
#[derive(Debug, Error)]
pub enum DumpError {
    #[error("i/o failure on block dump: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad magic {0:?} (expected \"HBIC\")")]
    BadMagic([u8; 4]),
    #[error("dimension {0} exceeds the 32-bit header field")]
    TooLarge(usize),
    #[error("trailing bytes after the last entry")]
    TrailingBytes,
}

/// Excitation / far-field / Mie-oracle failures.
#[derive(Debug, Error)]
pub enum PhysicsError {
    #[error("invalid plane wave: {0}")]
    InvalidWave(&'static str),
    #[error("empty angle grid")]
    EmptyAngleGrid,
    #[error("sample grids disagree: {0} vs {1} samples")]
    GridMismatch(usize, usize),
    #[error("reference cross section is identically zero")]
    ZeroReference,
    #[error("Mie series did not converge by order {order}: |term|/|sum| = {ratio:e}")]
    NonConvergent { order: usize, ratio: f64 },
    #[error("sphere radii must satisfy 0 < pec radius <= outer radius, got {a} and {b}")]
    BadRadii { a: f64, b: f64 },
}

/// Solver failures.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error("zero or vanishing pivot at column {col} during sparse factorization")]
    ZeroPivot { col: usize },
    #[error("GMRES stagnated or hit the iteration cap: residual {residual} after {iterations} iterations (target {target})")]
    NotConverged {
        residual: f64,
        iterations: usize,
        target: f64,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Run-configuration failures (CLI layer).
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("i/o failure reading config: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing required key [{section}] {key}")]
    MissingKey { section: String, key: String },
    #[error("invalid value for [{section}] {key}: {msg}")]
    BadValue {
        section: String,
        key: String,
        msg: String,
    },
}
