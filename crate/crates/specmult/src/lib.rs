//! Normalized-Laplacian spectra of small graphs, exactly and numerically.
//!
//! The crate computes spectra of the normalized Laplacian
//! `L = I - D^{-1/2} A D^{-1/2}` along two independent routes:
//!
//! * a floating-point cyclic-Jacobi eigensolver on the symmetric form, and
//! * an exact characteristic polynomial of the similar (hence cospectral)
//!   rational random-walk form `I - D^{-1} A`, with square-free
//!   factorization for authoritative eigenvalue multiplicities.
//!
//! On top of the two spectral routes it provides:
//!
//! * [`graph`] — bitset graphs up to 64 vertices, graph6 interchange,
//!   canonical labeling, exact independence number;
//! * [`structure`] — twin classes, shared-neighborhood cliques, equitable
//!   partitions, quotient and characteristic matrices, and combinatorial
//!   lemma verifiers;
//! * [`families`] — constructors and recognizers for the graph families
//!   with an eigenvalue of multiplicity `n - 3` (complete tripartite,
//!   `K_n - e`, and the three clique-gadget families);
//! * [`verify`] — isomorph-free enumeration of small connected graphs, the
//!   multiplicity-(n-3) classifier, two-directional theorem verification,
//!   determined-by-spectrum checking, and the search for uncharacterized
//!   candidates with independence number 2.
//!
//! Every exported operation is a pure function over immutable values, so
//! batches of graphs can be processed in parallel freely. See the crate
//! `examples/` directory for one runnable program per capability and
//! [`cli`] for the `specmult` command-line front end.

pub mod cli;
pub mod families;
pub mod graph;
pub mod spectral;
pub mod structure;
pub mod verify;


use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph order {0} exceeds the built-in limit of {1} vertices")]
    TooManyVertices(usize, usize),
    #[error("edge endpoint {0} out of range for order {1}")]
    EndpointOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("canonical labeling limited to {1} vertices, got {0}")]
    CanonicalSizeExceeded(usize, usize),
    #[error("vertex {0} is isolated; normalized Laplacian is undefined")]
    IsolatedVertex(usize),
    #[error("matrix entry ({0}, {1}) is not finite")]
    NonFiniteEntry(usize, usize),
    #[error("Jacobi iteration did not converge within the sweep cap")]
    JacobiNonConvergence,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("partition does not partition 0..{0}")]
    InvalidPartition(usize),
    #[error("partition is not equitable for the given matrix")]
    InequitablePartition,
    #[error("graph is not connected")]
    NotConnected,
    #[error("{0}")]
    InvalidParameter(String),
    #[error("order {0} outside the supported range {1}")]
    OutOfRange(usize, &'static str),
    #[error("{0} requires an independent triple")]
    TripleNotIndependent(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
