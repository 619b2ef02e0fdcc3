//! Exact computations around knot concordance: Seifert-matrix invariants and
//! Levine–Tristram signatures, abelian ρ-invariants, Fox calculus and the
//! commutator tuples `P_n`, mixed-coefficient commutator series, J-sequence
//! search, infection families and signature-defect certificates.

pub mod commutator;
pub mod fox;
pub mod infection;
pub mod interval;
pub mod jsequence;
pub mod ledger;
pub mod rho;
pub mod ring;
pub mod seifert;

pub use commutator::{
    alexander_module, annihilation_check, augmentation_one_check, member_p1, member_p2, AlexanderModule,
    CommutatorError, GroupPresentation, ModuleElement,
};
pub use fox::{
    fox_derivative, independence_test, project_level1, tuples_p, wedge_rank_check, CommutatorExpr, FoxError, FreeWord,
    GroupRingWordSum, Tuple, TupleCollection,
};
pub use infection::{
    build_family, derived_invariants, linear_combination, AxisSpec, FormalSum, InfectionError, SatelliteDesc,
};
pub use interval::Interval;
pub use jsequence::{find_sequence, verify_sequence, CandidateFamily, JSequence, JSequenceError, VerificationReport};
pub use ledger::{block_contributions, bound_check, certify, Certificate, LedgerError, Scenario, Verdict};
pub use rho::{cheeger_gromov_bound, rho_finite, rho_integral, RhoKind, RhoValue};
pub use ring::{CoeffDomain, Coefficient, FieldKind, IntMatrix, LaurentPoly, Matrix, RingError, UniPoly};
pub use seifert::{lt_signature, LtSignature, RootOfUnity, SeifertError, SeifertMatrix, SignatureProfile};
