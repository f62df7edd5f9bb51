/// Switches for every pruning step that rests on a necessary condition.
///
/// None of these are needed for correctness; the exact checks at the end of
/// the pipeline decide what a solution is. Turning them off only makes the
/// search bigger, which is how the filters are shown not to lose solutions.
/// Symmetry reduction of compressed quadruples is not a filter; see
/// `SearchConfig::compressed_dedup`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Filters {
    /// Drop candidate rows whose own PSD exceeds `4n`.
    pub row_psd: bool,
    /// Drop symmetric candidates whose rowsum is not a possible rowsum.
    pub rowsum: bool,
    /// Drop `(A', B')` and `(C', D')` pairs whose PSD sum exceeds `4n`.
    pub pair_psd: bool,
    /// Add the product-theorem parity clauses to each SAT instance.
    pub parity: bool,
    /// Let the solver callback reject partial assignments by PSD.
    pub partial_psd: bool,
}

impl Filters {
    pub const ALL: Filters = Filters {
        row_psd: true,
        rowsum: true,
        pair_psd: true,
        parity: true,
        partial_psd: true,
    };

    pub const NONE: Filters = Filters {
        row_psd: false,
        rowsum: false,
        pair_psd: false,
        parity: false,
        partial_psd: false,
    };
}

impl Default for Filters {
    fn default() -> Self {
        Filters::ALL
    }
}
