//! Deterministic instance-catalog generation.
//!
//! A descriptor fully reconstructs its instance: the matroid constructor
//! with explicit parameters, the group modulus, and the weight map. Its id
//! is a stable content hash, identical across runs and platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicGroup;
use crate::error::Result;
use crate::harness::config::CampaignConfig;
use crate::matroid::{GroundSet, Matroid};

/// A matroid constructor with explicit parameters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatroidSpec {
    Uniform { m: usize, r: usize },
    DirectSum { left: Box<MatroidSpec>, right: Box<MatroidSpec> },
    FromMatrix { p: u32, columns: Vec<Vec<u32>> },
    FromBases { m: usize, bases: Vec<u16> },
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Uniform { m, r } => Matroid::uniform(*m, *r),
            MatroidSpec::DirectSum { left, right } => left.build()?.direct_sum(&right.build()?),
            MatroidSpec::FromMatrix { p, columns } => Matroid::from_matrix_gf_p(*p, columns),
            MatroidSpec::FromBases { m, bases } => {
                Matroid::from_base_masks(GroundSet::new(*m)?, bases.clone())
            }
        }
    }

    pub fn ground_size(&self) -> usize {
        match self {
            MatroidSpec::Uniform { m, .. } => *m,
            MatroidSpec::DirectSum { left, right } => left.ground_size() + right.ground_size(),
            MatroidSpec::FromMatrix { columns, .. } => columns.len(),
            MatroidSpec::FromBases { m, .. } => *m,
        }
    }

    /// Stable key for grouping descriptors built from the same matroid.
    pub fn key(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

/// One catalog entry: a matroid spec crossed with a weight map.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub id: String,
    pub matroid_spec: MatroidSpec,
    pub group_modulus: u32,
    pub weights: Vec<u32>,
    /// False for the hand-listed non-matroid negative controls.
    pub expect_valid: bool,
}

impl InstanceDescriptor {
    fn new(spec: MatroidSpec, modulus: u32, weights: Vec<u32>, expect_valid: bool) -> Self {
        let body = serde_json::to_string(&(&spec, modulus, &weights, expect_valid))
            .expect("descriptor serializes");
        Self {
            id: format!("{:016x}", fnv1a64(body.as_bytes())),
            matroid_spec: spec,
            group_modulus: modulus,
            weights,
            expect_valid,
        }
    }

    pub fn group(&self) -> CyclicGroup {
        CyclicGroup::new(self.group_modulus).expect("modulus validated at build time")
    }
}

// 64-bit FNV-1a; hand-rolled so ids do not depend on std's hasher.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn uniform_specs(max_ground: usize) -> Vec<MatroidSpec> {
    let mut out = vec![];
    for m in 1..=max_ground {
        for r in 1..=m {
            out.push(MatroidSpec::Uniform { m, r });
        }
    }
    out
}

fn direct_sum_specs(max_total: usize) -> Vec<MatroidSpec> {
    let mut out = vec![];
    for m1 in 1..max_total {
        for m2 in 1..=max_total.saturating_sub(m1) {
            for r1 in 1..=m1 {
                for r2 in 1..=m2 {
                    out.push(MatroidSpec::DirectSum {
                        left: Box::new(MatroidSpec::Uniform { m: m1, r: r1 }),
                        right: Box::new(MatroidSpec::Uniform { m: m2, r: r2 }),
                    });
                }
            }
        }
    }
    out
}

// All GF(2) matrices up to the given dimensions, deduplicated by the
// matroid they present. Rank-0 results are dropped.
fn gf2_specs(max_rows: usize, max_cols: usize) -> Vec<MatroidSpec> {
    let mut seen = std::collections::HashSet::new();
    let mut out = vec![];
    for rows in 1..=max_rows {
        for cols in 1..=max_cols {
            for code in 0u32..1 << (rows * cols) {
                let columns: Vec<Vec<u32>> = (0..cols)
                    .map(|c| (0..rows).map(|r| code >> (c * rows + r) & 1).collect())
                    .collect();
                let spec = MatroidSpec::FromMatrix { p: 2, columns };
                let matroid = spec.build().expect("GF(2) matrix always builds");
                if matroid.rank_full() == 0 {
                    continue;
                }
                if seen.insert((matroid.ground().size(), matroid.base_masks().to_vec())) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

fn random_gf3_specs(count: usize, rng: &mut ChaCha8Rng) -> Vec<MatroidSpec> {
    let mut seen = std::collections::HashSet::new();
    let mut out = vec![];
    while out.len() < count {
        let rows = rng.gen_range(1..=3usize);
        let cols = rng.gen_range(1..=4usize);
        let columns: Vec<Vec<u32>> = (0..cols)
            .map(|_| (0..rows).map(|_| rng.gen_range(0..3u32)).collect())
            .collect();
        let spec = MatroidSpec::FromMatrix { p: 3, columns };
        let matroid = spec.build().expect("GF(3) matrix always builds");
        if matroid.rank_full() == 0 {
            continue;
        }
        if seen.insert((matroid.ground().size(), matroid.base_masks().to_vec())) {
            out.push(spec);
        }
    }
    out
}

/// The parallel-class matroid: one common element in every base.
pub fn parallel_class_spec() -> MatroidSpec {
    MatroidSpec::FromBases { m: 4, bases: vec![0b0011, 0b0101, 0b1001] }
}

fn hand_specs() -> Vec<(MatroidSpec, bool)> {
    vec![
        (parallel_class_spec(), true),
        // B3 fails: no exchange between disjoint pairs
        (MatroidSpec::FromBases { m: 4, bases: vec![0b0011, 0b1100] }, false),
        // B2 fails: one base contains another
        (MatroidSpec::FromBases { m: 2, bases: vec![0b01, 0b11] }, false),
        // B1 fails: empty family
        (MatroidSpec::FromBases { m: 2, bases: vec![] }, false),
    ]
}

fn weight_maps(
    m: usize,
    n: u32,
    pollard_only: bool,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<u32>> {
    let group = CyclicGroup::new(n).expect("modulus validated");
    let total = (u64::from(n)).checked_pow(m as u32);
    let exhaustive = match (total, cap) {
        (Some(t), 0) => Some(t),
        (Some(t), cap) if t <= cap as u64 => Some(t),
        _ => None,
    };
    let keep = |values: &[u32]| {
        !pollard_only
            || group
                .set_from(values.iter().map(|&v| u64::from(v)))
                .pollard_condition()
                .unwrap_or(false)
    };
    let mut out = vec![];
    if let Some(total) = exhaustive {
        for code in 0..total {
            let mut values = Vec::with_capacity(m);
            let mut rest = code;
            for _ in 0..m {
                values.push((rest % u64::from(n)) as u32);
                rest /= u64::from(n);
            }
            if keep(&values) {
                out.push(values);
            }
        }
    } else {
        let mut seen = std::collections::HashSet::new();
        let mut attempts = 0usize;
        while out.len() < cap && attempts < cap * 64 {
            attempts += 1;
            let values: Vec<u32> = (0..m).map(|_| rng.gen_range(0..n)).collect();
            if keep(&values) && seen.insert(values.clone()) {
                out.push(values);
            }
        }
    }
    // empty ground sets still get the single empty weight map
    if m == 0 && out.is_empty() {
        out.push(vec![]);
    }
    out
}

/// Build the full instance catalog for a config. Deterministic: the same
/// (config, seed) yields the identical list in the identical order.
pub fn build_catalog(config: &CampaignConfig) -> Result<Vec<InstanceDescriptor>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.unwrap_or(0));
    let catalog = &config.catalog;

    let mut specs: Vec<(MatroidSpec, bool)> = vec![];
    for s in uniform_specs(catalog.uniform_max_ground) {
        specs.push((s, true));
    }
    for s in direct_sum_specs(catalog.direct_sum_max_total) {
        specs.push((s, true));
    }
    for s in gf2_specs(catalog.gf2_max_rows, catalog.gf2_max_cols) {
        specs.push((s, true));
    }
    for s in random_gf3_specs(catalog.random_gf3_matrices, &mut rng) {
        specs.push((s, true));
    }
    if catalog.hand_instances {
        specs.extend(hand_specs());
    }

    let default_modulus = catalog.moduli.first().copied().unwrap_or(2);
    let mut out = vec![];
    for (spec, expect_valid) in specs {
        if !expect_valid {
            // negative controls carry a placeholder weight map
            let m = spec.ground_size();
            out.push(InstanceDescriptor::new(spec, default_modulus, vec![0; m], false));
            continue;
        }
        let m = spec.ground_size();
        for &n in &catalog.moduli {
            for values in weight_maps(m, n, false, catalog.max_weight_maps, &mut rng) {
                out.push(InstanceDescriptor::new(spec.clone(), n, values, true));
            }
        }
        for &n in &catalog.pollard_filtered_moduli {
            for values in weight_maps(m, n, true, catalog.max_weight_maps, &mut rng) {
                out.push(InstanceDescriptor::new(spec.clone(), n, values, true));
            }
        }
    }
    Ok(out)
}
