//! Declarative case files for the ten threefold classes, the driver that
//! verifies them, and report rendering.

pub mod builtin;
pub mod case;
pub mod driver;
pub mod ops;
pub mod report;
pub mod schema;
pub mod value;

pub use case::{load_case, parse_case_file, resolve, Case, LoadError};
pub use driver::{load_builtins, run_all, run_case, run_cases};
pub use report::{emit_report, render, Format, Status, Summary, VerificationReport};
