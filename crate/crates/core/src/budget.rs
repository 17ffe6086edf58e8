/// Enumeration limits. Every exhaustive computation checks one of these first
/// and fails with a budget error instead of running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest group materialised as an explicit element table.
    pub max_group: u64,
    /// Largest group walked by [`GroupSpec::enumerate_elements`](crate::GroupSpec::enumerate_elements).
    pub max_elements: u64,
    /// Largest endomorphism ring enumerated element by element.
    pub max_ring: u64,
    /// Largest ring whose full ideal lattice is enumerated.
    pub max_ideals: u64,
    /// Largest exponent for indicator and rising-path enumeration.
    pub max_exponent: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_group: 1 << 16,
            max_elements: 1 << 20,
            max_ring: 1 << 20,
            max_ideals: 1 << 12,
            max_exponent: 20,
        }
    }
}
