use thiserror::Error;

/// Every failure surfaced by the library. The CLI maps these onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no almost self-dual lattice: ord_p(det) is even")]
    NoAlmostSelfDualLattice,
    #[error("lattice does not contain p^-1 x0")]
    NotInSharpImage,
    #[error("element is not even")]
    NotEven,
    #[error("criterion not applicable: {0}")]
    CriterionNotApplicable(String),
    #[error("budget exceeded: estimated {estimated} > cap {cap}")]
    BudgetExceeded { estimated: u128, cap: u128 },
    #[error("polynomial cannot be realized on the requested form: {0}")]
    UnrealizableOnForm(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Stable machine-readable kind used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::NoAlmostSelfDualLattice => "no-almost-self-dual-lattice",
            Error::NotInSharpImage => "not-in-sharp-image",
            Error::NotEven => "not-even",
            Error::CriterionNotApplicable(_) => "criterion-not-applicable",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::UnrealizableOnForm(_) => "unrealizable-on-form",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on enumeration sizes.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Runtime counter that trips once more than `cap` candidates are visited.
#[derive(Debug)]
pub struct Budget {
    cap: u128,
    used: u128,
}

impl Budget {
    pub fn new(cap: u128) -> Self {
        Budget { cap, used: 0 }
    }

    pub fn charge(&mut self, n: u128) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            Err(Error::BudgetExceeded { estimated: self.used, cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u128 {
        self.used
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }
}
