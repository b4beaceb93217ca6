use thiserror::Error;

/// Errors surfaced by graph construction, simulation and the coloring
/// algorithms. Variants carry enough context to be actionable from the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("infeasible family spec: {0}")]
    InfeasibleSpec(String),
    #[error("family exceeds the requested degree cap: degree {found} > cap {cap}")]
    DegreeOverflow { found: usize, cap: usize },
    #[error("edge {0}-{1} appears in more than one part")]
    EdgeCollision(usize, usize),
    #[error("algorithm returned no output for vertex or edge {0}")]
    AlgorithmUndefined(usize),
    #[error("improper input coloring: {0}")]
    ImproperInput(String),
    #[error("no radius R with f(R) < (1+eps)^R within the scan budget")]
    NoRFound,
    #[error("no augmenting recoloring for vertex {vertex} inside radius {radius}")]
    NoPatchInBall { vertex: usize, radius: usize },
    #[error("graph contains K_{0} which the Brooks hypothesis excludes", .clique_size)]
    KCliqueFound { clique_size: usize },
    #[error("odd cycle with maximum degree 2; no 2-coloring exists")]
    OddCycleWithDeltaTwo,
    #[error("growth bound violated at vertex {vertex}, radius {radius}: |B|={ball} >= f={bound}")]
    GrowthViolated {
        vertex: usize,
        radius: usize,
        ball: u64,
        bound: u64,
    },
    #[error("maximum degree {0} is below the minimum this algorithm supports")]
    DeltaTooSmall(usize),
    #[error("chain is not shiftable: {0}")]
    NotShiftable(String),
    #[error("chain is shiftable but its shift is improper at edge {0}")]
    ImproperShift(usize),
    #[error("chain is not augmenting")]
    NotAugmenting,
    #[error("multi-step search exhausted its step budget of {0}")]
    StepBudgetExhausted(usize),
    #[error("chain enumeration exceeded its budget of {0}")]
    EnumerationBudgetExhausted(usize),
    #[error("game solver exceeded its position budget of {0}")]
    BudgetExhausted(usize),
    #[error("GLOCAL algorithm undefined at a reachable terminal position")]
    AlgorithmUndefinedAtTerminal,
    #[error("no color index is won by player II for vertex {0}")]
    NoWinningIndex(usize),
    #[error("labeling is not an edge-label-preserving homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("path is not augmenting for the matching")]
    NotAugmentingPath,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
