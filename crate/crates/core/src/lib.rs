pub mod bilateral;
pub mod combinat;
pub mod error;
pub mod lambert;
pub mod products;
pub mod rankdiff;
pub mod registry;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use products::{PochFactor, ProductSpec, ProductSum, SignedMonomial};
pub use registry::{IdentityEntry, Registry, SuiteOptions, Tier};
pub use report::{IdentityReport, Mismatch};
pub use series::{Coefficient, LaurentSeries};
