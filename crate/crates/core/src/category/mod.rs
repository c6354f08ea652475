//! Tensor-category checks: Tambara–Yamagami pentagon data and the
//! module-category coherence diagrams.

pub mod modcat;
pub mod ty;

pub use modcat::{build_module_data, sign_repair_search, verify_module_diagrams, ModuleData, ModuleReport, Source};
pub use ty::{build_ty_data, chi_c, fusion_ring_match, pentagon_check, PentagonReport, RhoSRho, TyData};
