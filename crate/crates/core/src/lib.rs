//! Exact and numerical toolkit for Dunkl-type orthogonal polynomial families.

pub mod error;
pub mod exactnum;
pub mod families;
pub mod dunklop;
pub mod transforms;
pub mod quad;
pub mod limits;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
pub use exactnum::{AffineMap, LaurentPoly, RatFunc, Rational, Sign};
pub use families::{Family, FamilyId};
pub use dunklop::{DunklOperator, GaussianPoly, OperatorSpec, OperatorTerm};
pub use limits::{run_limit, LimitCase, LimitId, LimitReport};
pub use report::{Outcome, VerificationRecord};
pub use suite::{run_criterion, Criterion, CriterionResult};
