//! Axis-parallel k-flat tests: robustness and agreement testability, exact
//! on tiny instances and as bounds elsewhere, plus executable checks of the
//! inequalities relating them.

pub mod agreement;
pub mod checks;
pub mod constants;
pub mod ps;
pub mod robustness;

pub use agreement::{
    agreement_distance, agreement_pool, pairwise_disagreement, rho_a_exact, rho_a_sampled_upper, RhoAExact, RhoASampled,
};
pub use checks::{
    check_composition, check_lemma_robust_agreement, check_proposition, check_robust_tm1, direction_one_chain,
    CheckReport, CompositionMode, Inequality, Mode, Relation, TestReport,
};
pub use constants::{alpha_prop, closed_form_constants, ClosedFormConstants};
pub use flat_test::{test_expectation, FlatTest, TestPlan};
pub use ps::{check_ps_corollary, PsReport, PsTrial};
pub use robustness::{rho_r_exact, rho_r_sampled_upper, robustness_pool, RhoRExact, RhoRSampled};
