//! Sharpness probes: exact univalent families and a seeded search over the
//! Grunsky-feasible relaxation.

mod families;
mod search;

pub use families::{evaluate_member, family_catalog, FamilyKind, FamilyMember, MemberEvaluation};
pub use search::{
    objective_by_name, objectives, search_feasible, FeasiblePoint, Objective, SearchOutcome,
    SearchReport, SideCondition, INITIAL_STEP, RESTARTS, SOUNDNESS_SLACK, STEP_FLOOR,
};
