//! Parameter feasibility for distance-regular antipodal covers of `K_n`:
//! spectral data, the necessary-condition battery, the `τ` range forced by
//! the absolute bound, and the extremal families that meet it.

mod battery;
mod bounds;
mod families;
mod params;

pub use battery::{feasibility_battery, Condition, FeasibilityReport, Verdict};
pub use bounds::{tau_bounds, Parity, TauBounds, TauMembership};
pub use families::{
    family_enumerate, family_params, select_rows, tsv_header, FamilyCase, FamilyEntry, FamilyError, FamilyRow,
    FamilyT, RowFlags, PUBLISHED_CASE_IB, PUBLISHED_CASE_IIB, PUBLISHED_EXTREMAL,
};
pub use params::{spectral_params, EigenvalueKind, ParameterSet};
