use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors reported by constructions, transforms, and conversions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The grid does not have the declared number of rows.
    #[error("grid has {rows} rows, expected {n}")]
    RowCount { n: usize, rows: usize },

    /// A row does not have the declared number of cells.
    #[error("row {row} has {len} cells, expected {n}")]
    RowLength { n: usize, row: usize, len: usize },

    /// Zero is not a valid entry; empty cells use a dedicated marker.
    #[error("cell ({row},{col}) holds 0, which is not a valid entry")]
    ZeroEntry { row: usize, col: usize },

    /// A construction was called outside its parameter range.
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),

    /// A diagonal that must be empty holds at least one filled cell.
    #[error("diagonal D_{0} is not empty")]
    DiagonalOccupied(usize),

    /// An operation requiring a valid Heffter array was given one that
    /// fails verification.
    #[error("array does not verify as a valid H({n};{k})")]
    InvalidArray { n: usize, k: usize },

    /// The main diagonal is not a primary transversal with balanced removal.
    #[error("array has no primary transversal on the main diagonal")]
    NotStrippable,

    /// A current assignment does not describe a regular bipartite graph.
    #[error("inconsistent current assignment: {0}")]
    InconsistentCurrents(String),

    /// The parameters pass the necessary conditions but no construction
    /// for this class is known. Carries existence status Unknown.
    #[error("no construction is known for H({n};{k})")]
    UnknownClass { n: usize, k: usize },
}
