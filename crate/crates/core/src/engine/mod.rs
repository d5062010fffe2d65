//! Growth of the non-projective parts of tensor powers: the `cc` sequence,
//! bounds on its exponential rate and exact values where a certificate exists.

mod cc;
mod classify;
mod cyclic;
mod harness;
mod orbit;
mod recurrence;
mod report;
mod subaction;
mod table;

pub use cc::{
    cc_extend, cc_sequence, cc_sequence_direct, running_min, upper_bounds, CcConfig, CcSequence, CcSnapshot,
    CoreMultiset, DirectCc, ModuleIdentity,
};
pub use orbit::{ClassKey, Limit, OrbitConfig, OrbitSnapshot, OrbitTable, Product};
pub use recurrence::{detect_recurrence, Recurrence, RecurrenceSearch, DEFAULT_HOLDOUT};
pub use table::{omega_table, table_from_orbits, table_npj, Laurent, TableClass, TableEntry, TableValue, TransitionTable};
pub use classify::{classify, Category, Classification};
pub use cyclic::{chebyshev_f, cyclic_blocks, cyclic_exact_npj, species_cyclic, CyclicValue};
pub use harness::{invariant_harness, random_module, random_modules, Failure, HarnessReport, Law, ALL_LAWS};
pub use subaction::{matrix_lower_bound, subaction_lower_bound, SubactionBound, SubactionConfig};
pub use report::{npj_report, Certificate, Diagnostic, LowerBound, NpjReport, ReportConfig, TableSummary, Verdict, LIMIT_NOTE};
