use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by all modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("index {index} out of range for {n} items")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("item {item} compared with itself")]
    SelfComparison { item: usize },

    #[error("scores must be strictly positive: entry {index} = {value}")]
    NonPositiveScore { index: usize, value: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dynamic range must be >= 1, got {b}")]
    InvalidDynamicRange { b: f64 },

    #[error("need at least {needed} items, got {n}")]
    TooFewItems { needed: usize, n: usize },

    #[error("average degree must lie in [0, n]: d = {d}, n = {n}")]
    InvalidDegree { d: f64, n: usize },

    #[error("vertex {vertex} has no comparison partners")]
    IsolatedVertex { vertex: usize },

    #[error("edge ({i}, {j}) carries zero recorded comparisons; regularize with epsilon > 0")]
    ZeroComparisons { i: usize, j: usize },

    #[error("comparison graph is disconnected into {} components: {}", components.len(), summarize_components(components))]
    Disconnected { components: Vec<Vec<usize>> },

    #[error(
        "random-walk support is not strongly connected (some items never win or never lose \
         against their whole neighborhood); regularization with epsilon > 0 makes the chain \
         irreducible"
    )]
    OneSidedSupport,

    #[error("epsilon must be >= 0, got {epsilon}")]
    NegativeEpsilon { epsilon: f64 },

    #[error("power iteration drove item {item} to zero mass; the chain is not irreducible")]
    ZeroMass { item: usize },

    #[error(
        "maximum-likelihood fit diverged (|theta|_inf > {bound}); some item or group of items \
         won or lost every comparison across a cut, so the unregularized optimum is at infinity; \
         refit with lambda > 0"
    )]
    MleDiverged { bound: f64 },

    #[error(
        "maximum-likelihood fit stalled: gradient norm {grad_norm:e} above tolerance {tol:e} \
         after {iterations} iterations"
    )]
    MleStalled {
        grad_norm: f64,
        tol: f64,
        iterations: usize,
    },

    #[error("item {item} appears in no comparison")]
    UncomparedItem { item: usize },

    #[error("ratio matrix entry ({i}, {j}) divides by zero; smooth with epsilon > 0")]
    RatioZeroDenominator { i: usize, j: usize },

    #[error("chain is not ergodic and ergodic_alpha = 0; set ergodic_alpha > 0")]
    NotErgodic,

    #[error("teleport weight must lie in [0, 1], got {alpha}")]
    InvalidAlpha { alpha: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("chains are supported on different edge sets")]
    SupportMismatch,

    #[error("chain is not reversible: max detailed-balance residual {residual:e}")]
    NotReversible { residual: f64 },

    #[error("Fisher matrix is malformed: eigenvalue {eigenvalue:e} below tolerance")]
    MalformedFisher { eigenvalue: f64 },

    #[error("invalid tolerance {tol}; must be > 0")]
    InvalidTolerance { tol: f64 },

    #[error("invalid probability distribution: {reason}")]
    InvalidDistribution { reason: &'static str },

    #[error("infeasible configuration: {reason}")]
    InfeasibleConfig { reason: String },

    #[error("could not sample a connected comparison graph after {attempts} attempts")]
    ResampleExhausted { attempts: usize },
}

fn summarize_components(components: &[Vec<usize>]) -> String {
    const MAX_LISTED: usize = 4;
    let mut parts: Vec<String> = components
        .iter()
        .take(MAX_LISTED)
        .map(|c| {
            if c.len() <= 8 {
                format!("{c:?}")
            } else {
                format!("[{} items starting at {}]", c.len(), c[0])
            }
        })
        .collect();
    if components.len() > MAX_LISTED {
        parts.push(format!("... {} more", components.len() - MAX_LISTED));
    }
    parts.join(", ")
}
