//! Exact modular-data toolkit for deciding whether a 3d topological order can carry a
//! gapped boundary.
//!
//! The pipeline runs from Grothendieck-ring data ([`fusion_ring`], [`multifusion`]) through exact
//! modular data over cyclotomic fields ([`scalar`], [`modular_data`]) to the boundary verdict in
//! [`obstruction`]. Pointed categories are handled exactly as metric groups in [`pointed`].

pub mod catalog;
pub mod category_file;
pub mod fusion_ring;
pub mod modular_data;
pub mod multifusion;
pub mod obstruction;
pub mod pointed;
pub mod report;
pub mod scalar;

pub use category_file::CategoryFile;
pub use fusion_ring::FusionRing;
pub use modular_data::{CentralCharge, ModularData};
pub use multifusion::BlockDecomposition;
pub use obstruction::{ObstructionReport, Verdict};
pub use pointed::MetricGroup;
pub use report::ValidationReport;
pub use scalar::Cyclotomic;
