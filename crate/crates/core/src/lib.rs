//! Allocation of applicants to projects with lower and upper quotas:
//! feasibility, popularity and Pareto questions, exact solvers for the
//! tractable cases, and exhaustive oracles to check them against.

pub mod blossom;
pub mod cli;
pub mod error;
pub mod flow;
pub mod format;
pub mod gadgets;
pub mod generators;
pub mod instance;
pub mod open_set;
pub mod oracle;
pub mod weighted;

pub use error::{Error, Result};
pub use instance::{Instance, Matching, Project};
