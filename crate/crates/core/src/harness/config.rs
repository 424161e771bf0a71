//! Campaign configuration: catalog selectors, checks, seed, output.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One verification check the campaign runner knows how to dispatch.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Base-family axiom validation (also the negative-control check).
    Axioms,
    /// The base-weight bound and its equality classification.
    Main,
    /// Contraction identities (closure invariance and associativity).
    Lemma1,
    /// The containment `(M/u)^w + G_u ⊆ M^w` for every non-loop `u`.
    Lemma2,
    /// Chowla-Kemperman on sum-of-singletons instances.
    Chowla,
    /// Vosper equality cases on sum-of-singletons instances over primes.
    Vosper,
    /// Zero-sum witness search plus the matroid route where it applies.
    Egz,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Axioms,
        CheckKind::Main,
        CheckKind::Lemma1,
        CheckKind::Lemma2,
        CheckKind::Chowla,
        CheckKind::Vosper,
        CheckKind::Egz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Axioms => "axioms",
            CheckKind::Main => "main",
            CheckKind::Lemma1 => "lemma1",
            CheckKind::Lemma2 => "lemma2",
            CheckKind::Chowla => "chowla",
            CheckKind::Vosper => "vosper",
            CheckKind::Egz => "egz",
        }
    }
}

/// Which instance families the catalog generates, and at what sizes.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CatalogConfig {
    /// Uniform matroids `U_r(m)` for `1 <= r <= m <= uniform_max_ground`.
    pub uniform_max_ground: usize,
    /// Direct sums of two uniforms with combined ground size up to this.
    pub direct_sum_max_total: usize,
    /// GF(2) linear matroids from all matrices up to these dimensions,
    /// deduplicated by base family.
    pub gf2_max_rows: usize,
    pub gf2_max_cols: usize,
    /// Seeded-random GF(3) matrices to sample (0 disables).
    pub random_gf3_matrices: usize,
    /// Hand-listed base families: the parallel-class matroid and the
    /// known non-matroid negative controls.
    pub hand_instances: bool,
    /// Moduli crossed exhaustively with every matroid.
    pub moduli: Vec<u32>,
    /// Moduli crossed with only the weight maps whose image satisfies
    /// Pollard's condition.
    pub pollard_filtered_moduli: Vec<u32>,
    /// Cap on weight maps per (matroid, modulus); 0 means exhaustive.
    /// When the exhaustive count exceeds the cap, maps are seeded-sampled.
    pub max_weight_maps: usize,
}

impl Default for CatalogConfig {
    fn default() -> Self {
        Self {
            uniform_max_ground: 4,
            direct_sum_max_total: 5,
            gf2_max_rows: 3,
            gf2_max_cols: 3,
            random_gf3_matrices: 0,
            hand_instances: true,
            moduli: vec![2, 3, 5],
            pollard_filtered_moduli: vec![4, 6],
            max_weight_maps: 0,
        }
    }
}

/// Full campaign description. A fixed (config, seed) pair determines the
/// catalog and the report bytes.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub catalog: CatalogConfig,
    /// Checks to run, in any order; records are emitted for each.
    pub checks: Vec<CheckKind>,
    /// RNG seed; mandatory when any random sampling is enabled.
    pub seed: Option<u64>,
    /// Worker threads; `None` lets the runtime decide.
    pub jobs: Option<usize>,
    /// JSONL report destination; `None` keeps only the summary.
    pub output: Option<PathBuf>,
    /// Raise the computed bound by one so every equality instance fails.
    pub fault_inject: bool,
    /// Record real wall times per check. Off by default because timing
    /// breaks byte-identical reruns; the `us` field is 0 when disabled.
    pub record_timing: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            catalog: CatalogConfig::default(),
            checks: CheckKind::ALL.to_vec(),
            seed: None,
            jobs: None,
            output: None,
            fault_inject: false,
            record_timing: false,
        }
    }
}

impl CampaignConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: CampaignConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn sampling_enabled(&self) -> bool {
        self.catalog.random_gf3_matrices > 0 || self.catalog.max_weight_maps > 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.sampling_enabled() && self.seed.is_none() {
            return Err(Error::Config(
                "seed is mandatory when random sampling is enabled".into(),
            ));
        }
        if self.checks.is_empty() {
            return Err(Error::Config("no checks requested".into()));
        }
        for &n in self
            .catalog
            .moduli
            .iter()
            .chain(&self.catalog.pollard_filtered_moduli)
        {
            if n == 0 || n > 64 {
                return Err(Error::Config(format!("modulus {n} out of range")));
            }
        }
        Ok(())
    }
}
