//! Search and memory bounds shared by the exhaustive algorithms.

use std::env;

/// Size limits for the brute-force searches.
///
/// Every bound can be overridden through an environment variable named
/// `TRIFACT_BOUND_<NAME>` (see [`Bounds::from_env`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest order for which associativity is checked on every triple.
    pub associativity: usize,
    /// Largest order stored as a dense Cayley table.
    pub dense_table: usize,
    /// Largest order accepted by the automorphism search.
    pub automorphism: usize,
    /// Largest order accepted by the constrained isomorphism search.
    pub isomorphism: usize,
    /// Largest order accepted by the normal subgroup enumeration.
    pub normal_subgroups: usize,
    /// Largest order accepted by the full subgroup lattice enumeration.
    pub subgroups: usize,
    /// Largest additive group order accepted by the brace enumeration.
    pub enumeration: usize,
    /// Largest order for which trifactorisations cache every decomposition.
    pub decomposition_cache: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            associativity: 512,
            dense_table: 2048,
            automorphism: 120,
            isomorphism: 256,
            normal_subgroups: 128,
            subgroups: 256,
            enumeration: 8,
            decomposition_cache: 4096,
        }
    }
}

impl Bounds {
    /// Defaults overridden by `TRIFACT_BOUND_ASSOCIATIVITY`,
    /// `TRIFACT_BOUND_DENSE_TABLE`, `TRIFACT_BOUND_AUTOMORPHISM`,
    /// `TRIFACT_BOUND_ISOMORPHISM`, `TRIFACT_BOUND_NORMAL_SUBGROUPS`,
    /// `TRIFACT_BOUND_SUBGROUPS`, `TRIFACT_BOUND_ENUMERATION` and
    /// `TRIFACT_BOUND_DECOMPOSITION_CACHE`.
    ///
    /// Unparsable or zero values are reported as errors rather than ignored.
    pub fn from_env() -> Result<Self, String> {
        let mut bounds = Bounds::default();
        for (name, slot) in bounds.slots_mut() {
            let key = format!("TRIFACT_BOUND_{name}");
            if let Ok(raw) = env::var(&key) {
                match raw.trim().parse::<usize>() {
                    Ok(v) if v > 0 => *slot = v,
                    _ => return Err(format!("{key} must be a positive integer, got {raw:?}")),
                }
            }
        }
        Ok(bounds)
    }

    fn slots_mut(&mut self) -> [(&'static str, &mut usize); 8] {
        [
            ("ASSOCIATIVITY", &mut self.associativity),
            ("DENSE_TABLE", &mut self.dense_table),
            ("AUTOMORPHISM", &mut self.automorphism),
            ("ISOMORPHISM", &mut self.isomorphism),
            ("NORMAL_SUBGROUPS", &mut self.normal_subgroups),
            ("SUBGROUPS", &mut self.subgroups),
            ("ENUMERATION", &mut self.enumeration),
            ("DECOMPOSITION_CACHE", &mut self.decomposition_cache),
        ]
    }
}
