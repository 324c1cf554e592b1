pub mod audits;
pub mod scenario;
pub mod suite;

pub use audits::*;
pub use scenario::*;
