use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("no primitive representative for the zero vector")]
    ZeroVector,

    #[error("sublattice generators are linearly dependent")]
    DependentRows,

    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),

    #[error("no full-dimensional facet presentation (affine span: {span})")]
    NotFullDimensional { span: String },

    #[error("ambient rank mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("cells {first} and {second} do not meet in a common face")]
    ComplexAxiom { first: String, second: String },

    #[error("complex is not complete")]
    NotComplete,

    #[error("complex is not regular (pass the force flag to compute anyway)")]
    NotRegular,

    #[error("cone {0} is not in the recession fan")]
    UnknownCone(String),

    #[error("{0} is not a cell of the complex")]
    UnknownCell(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a function on the recession fan: {0}")]
    NotRecessionFunction(String),

    #[error("piecewise affine data is not continuous: {0}")]
    Discontinuous(String),

    #[error("cell system has no unique solution: {0}")]
    InconsistentSystem(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("invalid fixture parameters: {0}")]
    InvalidFixtureParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
