//! Enumeration ceilings.
//!
//! Every exhaustive routine refuses work above its ceiling instead of
//! approximating. Defaults can be overridden per process through
//! environment variables (read once, on first use of [`Limits::global`]):
//!
//! | field                 | variable                        | default   |
//! |-----------------------|---------------------------------|-----------|
//! | `max_enum_n`          | `ATOMDEC_MAX_ENUM_N`            | 12        |
//! | `max_component_edges` | `ATOMDEC_MAX_COMPONENT_EDGES`   | 24        |
//! | `max_paths`           | `ATOMDEC_MAX_PATHS`             | 1 000 000 |
//! | `max_oracle_subsets`  | `ATOMDEC_MAX_ORACLE_SUBSETS`    | 10 000 000|
//! | `max_red_subsets`     | `ATOMDEC_MAX_RED_SUBSETS`       | 4 194 304 |
//! | `max_forests`         | `ATOMDEC_MAX_FORESTS`           | 2 000 000 |

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which every partition of `{0..n-1}` is enumerated.
    pub max_enum_n: usize,
    /// Largest edge count of one component in a spanning-subgraph scan.
    pub max_component_edges: usize,
    /// Largest number of simple paths produced by one path enumeration.
    pub max_paths: usize,
    /// Largest `C(|R|, s)` scanned by the rank/size oracle.
    pub max_oracle_subsets: u128,
    /// Largest `2^|R|` scanned when listing reachable partitions.
    pub max_red_subsets: u128,
    /// Largest number of spanning forests materialized by one enumeration.
    pub max_forests: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_enum_n: 12,
            max_component_edges: 24,
            max_paths: 1_000_000,
            max_oracle_subsets: 10_000_000,
            max_red_subsets: 1 << 22,
            max_forests: 2_000_000,
        }
    }
}

fn env_or<T: std::str::FromStr>(key: &str, default: T) -> T {
    std::env::var(key)
        .ok()
        .and_then(|v| v.trim().replace('_', "").parse().ok())
        .unwrap_or(default)
}

impl Limits {
    pub fn from_env() -> Self {
        let d = Self::default();
        Self {
            max_enum_n: env_or("ATOMDEC_MAX_ENUM_N", d.max_enum_n),
            max_component_edges: env_or("ATOMDEC_MAX_COMPONENT_EDGES", d.max_component_edges),
            max_paths: env_or("ATOMDEC_MAX_PATHS", d.max_paths),
            max_oracle_subsets: env_or("ATOMDEC_MAX_ORACLE_SUBSETS", d.max_oracle_subsets),
            max_red_subsets: env_or("ATOMDEC_MAX_RED_SUBSETS", d.max_red_subsets),
            max_forests: env_or("ATOMDEC_MAX_FORESTS", d.max_forests),
        }
    }

    /// Process-wide limits, initialized from the environment on first call.
    pub fn global() -> &'static Limits {
        static GLOBAL: OnceLock<Limits> = OnceLock::new();
        GLOBAL.get_or_init(Limits::from_env)
    }
}
