//! Size guards for enumeration-heavy operations.

use std::env;

/// Environment variable holding the name of a limits profile.
pub const LIMITS_ENV: &str = "ORTHOGRAPH_LIMITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring order `build_ring` accepts.
    pub max_ring_order: usize,
    /// Rings up to this order get precomputed addition and multiplication tables.
    pub table_order: usize,
    /// Largest number of candidate matrices (`|R|^(n*n)`) a graph may scan.
    pub max_candidates: u64,
    /// Graphs with at most this many vertices keep a precomputed adjacency list.
    pub adjacency_cache: usize,
    /// Largest vertex count `export_graph` will serialize.
    pub export_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_ring_order: 4096,
            table_order: 4096,
            max_candidates: 5_000_000,
            adjacency_cache: 20_000,
            export_vertices: 5_000,
        }
    }
}

impl Limits {
    /// Named profiles: `default`, `small` (CI-sized) and `large` (exploratory).
    pub fn profile(name: &str) -> Option<Self> {
        let base = Self::default();
        match name.trim().to_ascii_lowercase().as_str() {
            "" | "default" => Some(base),
            "small" | "ci" => Some(Self {
                max_ring_order: 512,
                table_order: 512,
                max_candidates: 300_000,
                adjacency_cache: 5_000,
                export_vertices: 2_000,
            }),
            "large" => Some(Self {
                max_ring_order: 65_536,
                table_order: 4096,
                max_candidates: 50_000_000,
                adjacency_cache: 200_000,
                export_vertices: 50_000,
            }),
            _ => None,
        }
    }

    /// Reads the profile named by [`LIMITS_ENV`]; unset means the default profile.
    pub fn from_env() -> Result<Self, String> {
        match env::var(LIMITS_ENV) {
            Ok(name) => Self::profile(&name)
                .ok_or_else(|| format!("unknown limits profile {name:?} in {LIMITS_ENV}")),
            Err(_) => Ok(Self::default()),
        }
    }
}
