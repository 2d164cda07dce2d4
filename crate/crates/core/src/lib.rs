//! Exact computations around the amalgamated duplication `R⋈I` of a ring
//! along an ideal: numerical semigroup value models, finite rings given by
//! tables, and truncated power series models of `k[[t^S]]⋈I`.

pub mod canon;
pub mod field;
pub mod finring;
pub mod linalg;
pub mod numsgp;
pub mod report;
pub mod serring;

pub use num_rational::BigRational;

pub use field::{Fp, Scalar};
pub use numsgp::{NumericalSemigroup, RelativeIdeal};
pub use report::{Claim, Report, Verdict};

/// Default coefficient field.
pub type F101 = Fp<101>;
pub type Model = serring::DupModel<F101>;
pub type RationalModel = serring::DupModel<BigRational>;
pub type Pair = serring::PairElement<F101>;
