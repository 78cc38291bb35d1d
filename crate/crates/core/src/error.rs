use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A group spec could not be parsed or failed validation.
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    /// A generator is not a bijection / not invertible over its domain.
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(String),

    /// Closure enumeration exceeded the configured element budget.
    #[error("group closure exceeded the element budget of {budget}")]
    ClosureBudgetExceeded { budget: usize },

    /// Subgroup enumeration was requested for a group above the lattice budget.
    #[error("subgroup enumeration budget is {budget} elements, group has {order}")]
    SubgroupBudgetExceeded { order: usize, budget: usize },

    /// An operation that requires nonempty sets received an empty one.
    #[error("{0} requires nonempty sets")]
    EmptySet(&'static str),

    /// A subgroup-only test algorithm received a set that is not a subgroup.
    #[error("{role} is not a subgroup; subgroup-only test algorithms reject it")]
    NotASubgroup { role: &'static str },

    /// The Murthy subset test is defined on basic triples (1 in every set).
    #[error("triple is not basic (identity missing from {role}); translate with to_basic first")]
    NotBasicTriple { role: &'static str },

    /// quotient_group was called with a non-normal subgroup.
    #[error("subgroup is not normal; quotient undefined")]
    NotNormal,

    /// Subset unranking was asked for a rank outside 1..=C(n,k).
    #[error("subset rank {rank} out of range 1..={count}")]
    RankOutOfRange { rank: u128, count: u128 },

    /// A binomial coefficient exceeded the exact integer range.
    #[error("binomial C({n},{k}) overflows the exact integer range")]
    BinomialOverflow { n: u64, k: u64 },

    /// A naive product list would exceed the memory guard.
    #[error("product list of {entries} entries exceeds the budget of {budget}")]
    ProductBudgetExceeded { entries: u128, budget: u128 },

    /// A search was asked to run on a group larger than its order budget.
    #[error("group order {order} exceeds the search budget of {budget}")]
    OrderBudgetExceeded { order: usize, budget: usize },

    /// Character degrees failed to stabilize after the retry limit.
    #[error("character degree extraction failed after {retries} random restarts")]
    DegreeComputation { retries: u32 },

    /// An I/O error while reading or writing reports.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A JSON (de)serialization error.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
