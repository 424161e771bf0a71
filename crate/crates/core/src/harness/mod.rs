//! Instance catalogs, verification campaigns, and deterministic reporting.

pub mod catalog;
pub mod config;
pub mod report;
pub mod runner;

pub use catalog::{build_catalog, parallel_class_spec, InstanceDescriptor, MatroidSpec};
pub use config::{CampaignConfig, CatalogConfig, CheckKind};
pub use report::{write_records, CheckStatus, ReportRecord};
pub use runner::{run_campaign, CampaignSummary};
