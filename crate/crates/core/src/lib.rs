//! Matroid base-weight machinery over finite cyclic groups.
//!
//! The crate computes sumsets and related structure in `Z_n`, validates
//! and manipulates explicit-base matroids, evaluates the distinct
//! base-weight set `M^w` and its fiber-rank lower bound, and runs
//! verification campaigns over exhaustive and seeded-random instance
//! catalogs: the bound itself, its equality-case classification, the
//! contraction lemmas, the Chowla-Kemperman and Vosper theorems, and the
//! Erdos-Ginzburg-Ziv zero-sum theorem.

pub mod cyclic;
pub mod error;
pub mod harness;
pub mod matroid;
pub mod theorems;
pub mod weighting;

pub use cyclic::{CyclicGroup, GroupElement, GroupSet};
pub use error::{Error, Result};
pub use harness::{
    build_catalog, run_campaign, CampaignConfig, CampaignSummary, CatalogConfig, CheckKind,
    InstanceDescriptor, MatroidSpec, ReportRecord,
};
pub use matroid::{Contraction, GroundSet, Matroid, SubsetOfE};
pub use theorems::{
    check_chowla_kemperman, check_contraction_identities, check_egz_via_matroid, check_main,
    check_main_with_bound_offset, check_ss_lemma, check_vosper, egz_witness, ChowlaVerdict,
    MainVerdict, SequenceInstance, VosperVerdict,
};
pub use weighting::{WeightFunction, WeightedMatroid};
