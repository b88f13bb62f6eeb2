/// Search bounds shared by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest power of a candidate factor in an ansatz denominator.
    pub max_den_power: u32,
    /// Largest total degree of an ansatz numerator.
    pub max_num_degree: u32,
    /// Largest degree of a splitting field over Q.
    pub field_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_den_power: 6, max_num_degree: 40, field_cap: 24 }
    }
}
