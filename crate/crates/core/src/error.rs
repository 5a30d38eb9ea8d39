use thiserror::Error;

/// Errors raised by group construction and the lattice/character analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order exceeds the configured cap of {cap}")]
    ClosureCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("operation requires a nontrivial group")]
    TrivialGroup,
    #[error("subgroup is not elementary abelian")]
    NotElementaryAbelian,
    #[error("group is not a direct product of simple groups")]
    NotSemisimple,
    #[error("subgroups are not comparable")]
    NotComparable,
    #[error("subgroup is not a node of the normal lattice")]
    NotInLattice,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("group order {order} exceeds the character table cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("no Dixon prime below {bound} for exponent {exponent}")]
    PrimeSearchFailed { exponent: u64, bound: u64 },
    #[error("character kernel is not a normal subgroup (tolerance too loose or too tight)")]
    KernelNotNormal,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
