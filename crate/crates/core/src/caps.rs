use crate::module::DEFAULT_CARDINALITY_CAP;

/// Default bound on `|M|` for brute-force subgroup enumeration.
pub const DEFAULT_BRUTEFORCE_CAP: u128 = 512;

/// Runtime bounds for enumeration-based algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest module whose elements may be enumerated.
    pub cardinality: u128,
    /// Largest module whose subgroups may be enumerated.
    pub bruteforce: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cardinality: DEFAULT_CARDINALITY_CAP,
            bruteforce: DEFAULT_BRUTEFORCE_CAP,
        }
    }
}
